"""Numerical laboratory for the mean square of quadratic twists of the Mobius function.

Modules
-------
arith       Kronecker symbol, Mobius sieve, twisted Mertens sums.
gauss       Gauss-type sums G_m(k), direct and exact.
weights     Bump weights, adaptive quadrature, transforms, h1(1, 1).
poisson     Poisson summation for (d/n) and its verification harness.
dirichlet   Euler products for Z_2(u) and local factors of Z(alpha, beta, gamma; q, k1).
meansquare  Brute-force S(X, Y; Phi, W), the predicted main term, sweeps.
cli         ``qtlab`` command line.
"""

from .arith import kronecker, mertens, mertens_twisted, sieve_mobius
from .dirichlet import z2_at
from .gauss import GaussValue, gauss_direct, gauss_fast
from .meansquare import ExperimentConfig, YRule, brute_force_S, main_term, run_experiment
from .weights import BumpWeight, QuadratureSpec, h1_tilde_11, integrate, tilde_transform

__version__ = "0.1.0"
