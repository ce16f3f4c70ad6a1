"""Poisson summation for the quadratic character ``d -> (d/n)``.

For odd ``n`` and a weight ``W`` supported in ``(0, inf)``::

    sum_{d odd} (d/n) W(d/X) = X/(2n) (2/n) sum_{k in Z} (-1)^k G_k(n) W~(kX/(2n))

The left side is a finite sum; the right side is truncated at ``|k| <= K``
with ``K`` grown geometrically until the partial sums settle.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass, fields
from typing import Iterable

import numpy as np

from .arith import kronecker
from .gauss import gauss_fast
from .weights import BumpWeight, QuadratureSpec, tilde_transform_many

__all__ = [
    "PoissonCheck",
    "poisson_lhs",
    "poisson_rhs",
    "poisson_rhs_k0_term",
    "poisson_rhs_truncated",
    "verify_poisson",
    "write_poisson_csv",
    "EPS_FLOOR",
]

EPS_FLOOR = 1e-30
# lhs below this fraction of sum_d W(d/X) is treated as a cancellation zero
CANCELLATION_FRACTION = 1e-9
MAX_K_DOUBLINGS = 20


@dataclass(frozen=True)
class PoissonCheck:
    n: int
    X: float
    lhs: float
    rhs: float
    rel_err: float
    k_terms_used: int


def _check_odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")


def _odd_support(X: float, W: BumpWeight) -> range:
    lo = math.floor(W.a * X) + 1
    hi = math.ceil(W.b * X) - 1
    if lo % 2 == 0:
        lo += 1
    return range(lo, hi + 1, 2)


def poisson_lhs(n: int, X: float, W: BumpWeight) -> float:
    """``sum_{d odd} (d/n) W(d/X)``, summed exactly over the support window."""
    _check_odd(n)
    return math.fsum(kronecker(d, n) * W(d / X) for d in _odd_support(X, W))


def _mass(X: float, W: BumpWeight) -> float:
    return math.fsum(W(d / X) for d in _odd_support(X, W))


def _k_block(ks: np.ndarray, n: int, X: float, W: BumpWeight, spec: QuadratureSpec) -> float:
    g = np.array([float(gauss_fast(int(k), n)) for k in ks])
    keep = g != 0
    if not keep.any():
        return 0.0
    ks, g = ks[keep], g[keep]
    wt = tilde_transform_many(W, ks * X / (2 * n), spec)
    sign = np.where(ks % 2 == 0, 1.0, -1.0)
    return math.fsum(sign * g * wt)


def poisson_rhs_k0_term(n: int, X: float, W: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """The ``k = 0`` summand ``X/(2n) (2/n) G_0(n) W~(0)``."""
    _check_odd(n)
    return X / (2 * n) * kronecker(2, n) * _k_block(np.array([0]), n, X, W, spec)


def poisson_rhs_truncated(n: int, X: float, W: BumpWeight, K: int,
                          spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Dual side with the ``k`` sum cut at ``|k| <= K``."""
    _check_odd(n)
    ks = np.arange(-K, K + 1, dtype=np.int64)
    return X / (2 * n) * kronecker(2, n) * _k_block(ks, n, X, W, spec)


def poisson_rhs(n: int, X: float, W: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> tuple[float, int]:
    """Dual side of the identity and the cutoff ``K`` used (``|k| <= K``)."""
    _check_odd(n)
    pref = X / (2 * n) * kronecker(2, n)
    K = math.ceil(2 * n * (W.b + 1) / X) * 8
    ks = np.arange(-K, K + 1, dtype=np.int64)
    parts = [_k_block(ks, n, X, W, spec)]
    current = pref * math.fsum(parts)
    for _ in range(MAX_K_DOUBLINGS):
        new = np.concatenate([np.arange(-2 * K, -K, dtype=np.int64), np.arange(K + 1, 2 * K + 1, dtype=np.int64)])
        parts.append(_k_block(new, n, X, W, spec))
        K *= 2
        previous, current = current, pref * math.fsum(parts)
        if abs(current - previous) < spec.abs_tol / 10:
            return current, K
    raise RuntimeError(f"k-sum did not settle for n={n}, X={X} at K={K}")


def _rel_err(lhs: float, rhs: float, mass: float) -> float:
    scale = abs(lhs)
    if scale <= CANCELLATION_FRACTION * mass:
        # the character sum cancels to (numerically) zero: compare against the weight mass
        scale = mass
    return abs(lhs - rhs) / max(scale, EPS_FLOOR)


def verify_poisson(n_max: int, X_list: Iterable[float], W: BumpWeight,
                   spec: QuadratureSpec = QuadratureSpec()) -> list[PoissonCheck]:
    """One :class:`PoissonCheck` per odd ``n <= n_max`` and ``X`` in ``X_list``, ordered by ``(n, X)``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    X_list = list(X_list)
    rows = []
    for n in range(1, n_max + 1, 2):
        for X in X_list:
            lhs = poisson_lhs(n, X, W)
            rhs, K = poisson_rhs(n, X, W, spec)
            rows.append(PoissonCheck(n, X, lhs, rhs, _rel_err(lhs, rhs, _mass(X, W)), K))
    return rows


def write_poisson_csv(rows: Iterable[PoissonCheck], path) -> None:
    names = [f.name for f in fields(PoissonCheck)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for r in rows:
            d = asdict(r)
            w.writerow([repr(float(d[k])) if isinstance(d[k], float) else d[k] for k in names])
