"""
Digit polynomials and cyclotomic factors
========================================

Which Phi_{p^t} divide the digit polynomial, and when that is the whole story.
"""
from cantor_spectra import build_system, cyclotomic, poly_from_digit_set, self_reciprocal_part

# the digit set {0, 2, 4, 6} with N = 8 factors completely into Phi_4 * Phi_8
s = build_system(2, 3, [0, 2, 4, 6])
print(s)
print("P_D        =", s.digit_polynomial)
print("Phi_4*Phi_8 =", cyclotomic(4) * cyclotomic(8))
print("branching bound p^|T| =", s.branching_bound, "and |D| =", s.m)

# swapping 6 for 5 destroys every cyclotomic factor
t = build_system(2, 3, [0, 2, 4, 5])
print("\n", t, "product:", t.is_cyclotomic_product)

# a digit set can pick up unit-circle roots that are not p-power roots of unity;
# here Phi_6 sits next to Phi_2 * Phi_4 and the circle flag goes false
u = build_system(2, 3, [0, 2, 3, 5])
print("\n", u, "circle roots covered by T:", u.circle_hypothesis)
print("self-reciprocal part of P_D:", self_reciprocal_part(poly_from_digit_set(u.D)))

# JSON is what the command line prints
print("\n", s.to_json())
