"""
The Fourier transform as a truncated product
============================================

Check the exact zero test against floating-point evaluation.
"""
import numpy as np

from cantor_spectra import (
    build_system,
    grid_to_csv,
    mu_hat_grid,
    mu_hat_is_zero,
    mu_hat_truncated,
    mu_hat_values,
    truncation_level,
)

s = build_system(2, 3, [0, 2, 4, 6])

# choose J so that the omitted tail is below 1e-10 for every |xi| <= 4096
J = truncation_level(s, 4096)
print("truncation level:", J)

v = mu_hat_truncated(s, 3.5, J)
print(f"mu_hat(3.5) = {v.value:.6f}  |.| = {v.abs:.6f}  tail bound {v.tail_bound:.1e}")

# integers: exact zeros versus numeric modulus
ks = np.arange(-4096, 4097)
mods = np.abs(mu_hat_values(s, ks.tolist(), J))
exact = np.array([mu_hat_is_zero(s, int(k)) for k in ks])
print("agreement:", np.all(exact == (mods < 1e-9)))
print(f"largest |mu_hat| at an exact zero: {mods[exact].max():.1e}")
print(f"smallest |mu_hat| elsewhere:       {mods[~exact].min():.1e}")

# a short CSV table, the same bytes the muhat command writes
print()
print(grid_to_csv(mu_hat_grid(s, 0, 2, 0.25, J)), end="")
