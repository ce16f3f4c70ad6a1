"""
Gauss-type sums
===============

G_m(k) evaluated two ways: by its defining character sum and by the
closed form on prime powers, glued together multiplicatively.
"""

from qtlab.gauss import gauss_direct, gauss_fast

# the closed form is exact: an integer times a square root
for m, k in [(1, 3), (0, 9), (3, 9), (1, 15), (50, 125)]:
    g = gauss_fast(m, k)
    print(f"G_{m}({k}) = {g.q} * sqrt({g.s})   direct: {gauss_direct(m, k):.10f}")

# multiplicativity in k holds exactly, no rounding involved
print(gauss_fast(7, 21) == gauss_fast(7, 3) * gauss_fast(7, 7))

# G_0(k) vanishes unless k is a square
print([k for k in range(1, 200, 2) if gauss_fast(0, k)])
