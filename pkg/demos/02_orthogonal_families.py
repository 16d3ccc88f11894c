"""
Orthogonal exponentials and digit branching
===========================================

Exact orthogonality tests, the branching bound, and greedy maximal sets.
"""
from cantor_spectra import (
    are_orthogonal,
    branching_profile,
    build_system,
    check_branching_exactness,
    enumerate_hadamard_L,
    expand,
    greedy_maximal_completion,
    is_orthogonal_family,
)

s = build_system(2, 2, [0, 2])

# e_0 and e_1 are orthogonal, e_0 and e_2 are not
print("0 _|_ 1:", are_orthogonal(s, 0, 1), "  0 _|_ 2:", are_orthogonal(s, 0, 2))
print("{0,1,4,5}:", is_orthogonal_family(s, [0, 1, 4, 5]))
print("{0,1,2}:  ", is_orthogonal_family(s, [0, 1, 2]))

# a non-orthogonal set is allowed to break the bound, an orthogonal one never does
for S in ([0, 1, 4, 5], [0, 1, 2]):
    prof = branching_profile(s, S, 2)
    print(S, "max branching", prof.max_count, "bound", prof.bound)

# grow a maximal orthogonal set inside [-255, 255] starting from {0}
S = greedy_maximal_completion(s, [0], 255)
print("\ngreedy set has", len(S), "elements; those nearest 0:")
for k in sorted(S, key=abs)[:6]:
    print(f"  {k:5d}  {expand(k, s.N)}")

# every prefix the window can see branches into exactly p^|T| digits
report = check_branching_exactness(s, S, 3, bound=255)
for e in report.entries:
    print(f"  prefix {list(e.prefix)!s:10} count {e.count}  {e.status}")

# sibling digit sets are exactly the Hadamard label sets
print("\nHadamard label sets for N=8, D={0,2,4,6}:")
print(enumerate_hadamard_L(build_system(2, 3, [0, 2, 4, 6])))
