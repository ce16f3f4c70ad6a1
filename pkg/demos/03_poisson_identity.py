"""
Poisson summation with a quadratic character
============================================

A smoothed sum of (d/n) over odd d equals a rapidly converging dual sum
over frequencies k weighted by G_k(n) and the transform of the weight.
"""

from qtlab.poisson import poisson_lhs, poisson_rhs
from qtlab.weights import BumpWeight, tilde_transform

W = BumpWeight()  # exp(-1/(x-1) - 1/(2-x)) on (1, 2)

# the transform decays faster than any power
for xi in (0, 1, 5, 10, 20):
    print(f"W~({xi}) = {tilde_transform(W, xi): .3e}")

for n, X in [(1, 10), (7, 10), (45, 100), (97, 100)]:
    lhs = poisson_lhs(n, X, W)
    rhs, K = poisson_rhs(n, X, W)
    print(f"n={n:3d} X={X:4d}  lhs={lhs: .15e}  rhs={rhs: .15e}  |k| <= {K}")
