"""Euler products for ``Z(u) = zeta(u) Z_2(u)`` and local factors of ``Z(alpha, beta, gamma; q, k1)``.

``Z(u) = prod_{p > 2} (1 + p/(p+1) p^-u)``, so

``Z_2(u) = (1 - 2^-u) prod_{p > 2} (1 - (p^-u + p^(1-2u)) / (p+1))``.

Each factor is ``1 - delta_p`` with ``0 < delta_p <= 2 p^-sigma``,
``sigma = min(u + 1, 2u)``, which gives the tail bound used below.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from typing import Iterable

import mpmath
import numpy as np

from .arith import factorize, kronecker, sieve_mobius, sieve_primes
from .gauss import gauss_fast

__all__ = [
    "EulerProductValue",
    "SeriesCheck",
    "ZFactorReport",
    "DomainError",
    "z2_at",
    "zeta_real",
    "z_series_direct",
    "z_series_check",
    "euler_factor_Z_check",
    "write_zfactor_csv",
]

MIN_U = 0.51


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class EulerProductValue:
    value: float
    prime_limit: int
    tail_bound: float


@lru_cache(maxsize=4)
def _primes(limit: int) -> np.ndarray:
    p = sieve_primes(limit)
    p.setflags(write=False)
    return p


def _comparison_tail(P: int, s: float) -> float:
    """Upper bound for ``sum_{n > P} n^-s`` (``s > 1``)."""
    return P ** (1 - s) / (s - 1)


def z2_at(u: float, prime_limit: int) -> EulerProductValue:
    """Truncated Euler product for ``Z_2(u)`` over primes ``p <= prime_limit``."""
    if u < MIN_U:
        raise DomainError(f"u={u} is outside the region u >= {MIN_U} of absolute convergence")
    if prime_limit < 3:
        raise DomainError("prime_limit must be >= 3")
    p = _primes(prime_limit)[1:].astype(float)
    delta = (p ** (-u) + p ** (1 - 2 * u)) / (p + 1)
    log_prod = math.fsum(np.log1p(-delta))
    value = -math.expm1(-u * math.log(2)) * math.exp(log_prod)
    sigma = min(u + 1, 2 * u)
    return EulerProductValue(value, prime_limit, value * 2 * _comparison_tail(prime_limit, sigma))


def zeta_real(u: float, n_limit: int) -> tuple[float, float]:
    """``zeta(u)`` for real ``u > 1``: partial sum plus the midpoint of the integral tail bracket.

    Returns ``(value, error_bound)``.
    """
    if u <= 1:
        raise DomainError("zeta_real needs u > 1")
    n = np.arange(1, n_limit + 1, dtype=float)
    partial = math.fsum(n[::-1] ** (-u))
    upper = _comparison_tail(n_limit, u)
    lower = (n_limit + 1) ** (1 - u) / (u - 1)
    return partial + 0.5 * (upper + lower), 0.5 * (upper - lower)


def z_series_direct(u: float, n_limit: int) -> float:
    """``sum_{odd square-free n <= n_limit} n^-u prod_{p | n} p/(p+1)``."""
    mu = sieve_mobius(n_limit).mu
    g = np.ones(n_limit + 1)
    for p in _primes(n_limit)[1:].tolist():
        g[p::p] *= p / (p + 1)
    n = np.arange(n_limit + 1, dtype=float)
    keep = (mu != 0) & (np.arange(n_limit + 1) % 2 == 1)
    terms = g[keep] * n[keep] ** (-u)
    return math.fsum(terms[::-1])


@dataclass(frozen=True)
class SeriesCheck:
    u: float
    series: float
    product: float
    discrepancy: float
    tail_bound: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.tail_bound


def z_series_check(u: float, n_limit: int, prime_limit: int) -> SeriesCheck:
    """Compare the Dirichlet series for ``Z(u)`` against ``zeta(u) * Z_2(u)``.

    The series has non-negative terms bounded by ``n^-u``, so its tail is at
    most ``n_limit^(1-u)/(u-1)``; the bound on the product side combines the
    zeta bracket with the Euler-product tail.
    """
    if u < 2:
        raise DomainError("z_series_check requires u >= 2")
    series = z_series_direct(u, n_limit)
    zeta, zeta_err = zeta_real(u, n_limit)
    z2 = z2_at(u, prime_limit)
    product = zeta * z2.value
    bound = _comparison_tail(n_limit, u) + zeta_err * z2.value + zeta * z2.tail_bound
    return SeriesCheck(u, series, product, abs(series - product), bound)


@dataclass(frozen=True)
class ZFactorReport:
    """Local factor at ``p`` of ``Z(alpha, beta, gamma; q, k1)``.

    ``direct_value`` sums the defining triple series at ``p`` with the
    ``k2`` exponent running to ``k2_max``.  ``reference_value`` is the
    closed form ``(1 - p^-2gamma)^-1`` when ``p | 2q`` and the ``k2 = 0``
    closed form otherwise; ``abs_err`` is their distance and
    ``envelope`` the bound it is held to.
    """

    p: int
    alpha: complex
    beta: complex
    gamma: complex
    q: int
    k1: int
    case: str
    direct_value: complex
    reference_value: complex
    abs_err: float
    slice0_direct: complex
    slice0_reference: complex
    slice0_err: float
    envelope: float

    @property
    def passed(self) -> bool:
        return self.slice0_err <= 1e-12 and self.abs_err <= self.envelope


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % r for r in range(2, math.isqrt(p) + 1))


# local factors are summed at this precision: the truncation envelopes fall far below double precision
FACTOR_DPS = 50


def _summand(p, alpha, beta, gamma, k1, j, e1, e2):
    g = gauss_fast(k1 * p ** (2 * j), p ** (e1 + e2))
    if not g:
        return mpmath.mpc(0)
    sign = (-1) ** (e1 + e2)
    pm = mpmath.mpf(p)
    return sign * g.q * mpmath.sqrt(g.s) * pm ** (-(e1 * alpha + e2 * beta + 2 * j * gamma)) / pm ** (e1 + e2)


def euler_factor_Z_check(p: int, alpha: complex, beta: complex, gamma: complex, q: int, k1: int,
                         k2_max: int) -> ZFactorReport:
    """Local factor at ``p`` of ``Z(alpha, beta, gamma; q, k1)`` against its closed or leading form.

    Three classes: ``p | 2q`` (only ``n1 = n2 = 1`` locally, geometric in
    ``p^-2gamma``), ``p | k1`` with ``p`` not dividing ``2q``, and the
    generic case.  For the last two the ``k2 = 0`` slice has an exact closed
    form and the ``k2 >= 1`` remainder is held to ``3 p^-(1+2eps)`` with
    ``eps = Re(gamma) - 1/2``.
    """
    if not _is_prime(p):
        raise DomainError(f"p={p} is not prime")
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    if gamma.real < 0.5 + 0.01 or alpha.real < 0.01 or beta.real < 0.01:
        raise DomainError("need Re(gamma) >= 0.51 and Re(alpha), Re(beta) >= 0.01")
    if q < 1 or k1 < 1 or k1 % 2 == 0 or any(e > 1 for e in factorize(k1).values()):
        raise DomainError("q must be positive and k1 positive, odd, square-free")
    if k2_max < 4:
        raise DomainError("k2_max must be >= 4")

    if (2 * q) % p == 0:
        case = "p|2q"
        # (n1 n2, 2q) = 1 leaves only the p-exponent 0 for n1 and n2
        exps = [(0, 0)]
    else:
        case = "p|k1" if k1 % p == 0 else "generic"
        exps = [(0, 0), (1, 0), (0, 1), (1, 1)]

    with mpmath.workdps(FACTOR_DPS):
        a, b, g = mpmath.mpc(alpha), mpmath.mpc(beta), mpmath.mpc(gamma)
        pm = mpmath.mpf(p)
        slices = [mpmath.fsum(_summand(p, a, b, g, k1, j, e1, e2) for e1, e2 in exps) for j in range(k2_max + 1)]
        direct = mpmath.fsum(slices)
        s0 = slices[0]
        if case == "p|2q":
            ref0 = mpmath.mpc(1)
            reference = 1 / (1 - pm ** (-2 * g))
            envelope = 10 * p ** (-(1 + 2 * 0.01) * k2_max)
        else:
            if case == "p|k1":
                ref0 = 1 - pm ** (-(1 + a + b))
            else:
                ref0 = 1 - kronecker(k1, p) * (pm ** (-0.5 - a) + pm ** (-0.5 - b))
            reference = ref0
            # sum_{j>=1} |p^-2j gamma| (1 + |p^-alpha-beta|) <= 2 r / (1 - r), r <= p^-(1+2 eps) <= 1/3
            eps = gamma.real - 0.5
            envelope = 3 * p ** (-(1 + 2 * eps))
        abs_err = float(abs(direct - reference))
        slice0_err = float(abs(s0 - ref0))

    return ZFactorReport(p, alpha, beta, gamma, q, k1, case, complex(direct), complex(reference), abs_err,
                         complex(s0), complex(ref0), slice0_err, envelope)


def write_zfactor_csv(rows: Iterable[ZFactorReport], path) -> None:
    names = [f.name for f in fields(ZFactorReport)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for r in rows:
            d = asdict(r)
            w.writerow([repr(v) if isinstance(v, (float, complex)) else v for v in (d[k] for k in names)])
