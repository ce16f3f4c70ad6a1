"""
The Euler product Z_2 and its tail
==================================

Z_2(1) enters the main term.  Each truncation comes with a bound on
what the missing primes can contribute.
"""

from qtlab.dirichlet import euler_factor_Z_check, z2_at, z_series_check

for e in range(3, 8):
    v = z2_at(1.0, 10**e)
    print(f"P = 1e{e}:  Z_2(1) ~ {v.value:.15f}  +- {v.tail_bound:.1e}")

# the Dirichlet series and zeta(u) Z_2(u) agree within the tail bounds
for u in (2.0, 3.0):
    s = z_series_check(u, 10**6, 10**6)
    print(f"u={u:g}: |series - product| = {s.discrepancy:.2e} <= {s.tail_bound:.2e}")

# local factors of the three-variable series, one per prime class; the k2 = 0
# slice has a closed form, the rest is a small geometric remainder
for q, k1 in ((5, 1), (1, 5), (1, 1)):
    r = euler_factor_Z_check(5, 0.5, 1.0, 0.6, q, k1, 20)
    print(f"{r.case:8s} slice0 {r.slice0_direct.real:.12f} = {r.slice0_reference.real:.12f}"
          f"  full factor {r.direct_value.real:.12f}")
