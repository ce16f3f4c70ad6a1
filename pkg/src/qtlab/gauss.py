"""Gauss-type sums ``G_m(k)`` for odd moduli.

``G_m(k) = ((1-i)/2 + (-1/k)(1+i)/2) * sum_{a mod k} (a/k) e(am/k)``.

Two routes are provided: :func:`gauss_direct` sums the definition in
floating point, :func:`gauss_fast` factors ``k`` and multiplies the exact
prime-power values, which are all of the form ``q*sqrt(s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import factorize, kronecker

__all__ = ["GaussValue", "GaussQuery", "gauss_direct", "gauss_direct_many", "gauss_fast", "DIRECT_K_LIMIT"]

DIRECT_K_LIMIT = 10**6


def _squarefree_part(s: int) -> tuple[int, int]:
    """Write ``s = c^2 * t`` with ``t`` square-free; return ``(c, t)``."""
    c, t = 1, 1
    for p, e in factorize(s).items():
        c *= p ** (e // 2)
        if e % 2:
            t *= p
    return c, t


@dataclass(frozen=True)
class GaussValue:
    """The real number ``q * sqrt(s)`` with ``s`` square-free.

    Zero is always stored as ``GaussValue(0, 1)`` so equality of
    instances is equality of the numbers they denote.
    """

    q: int
    s: int = 1

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be positive, got {self.s}")
        if self.q == 0 and self.s != 1:
            object.__setattr__(self, "s", 1)
            return
        if self.s > 1:
            c, t = _squarefree_part(self.s)
            if c > 1:
                object.__setattr__(self, "q", self.q * c)
                object.__setattr__(self, "s", t)

    def __mul__(self, other: GaussValue) -> GaussValue:
        if not isinstance(other, GaussValue):
            return NotImplemented
        if self.q == 0 or other.q == 0:
            return GaussValue(0)
        g = math.gcd(self.s, other.s)
        return GaussValue(self.q * other.q * g, (self.s // g) * (other.s // g))

    def __float__(self) -> float:
        return self.q * math.sqrt(self.s)

    def __complex__(self) -> complex:
        return complex(float(self))

    def __bool__(self) -> bool:
        return self.q != 0


ONE = GaussValue(1)
ZERO = GaussValue(0)


@dataclass(frozen=True)
class GaussQuery:
    m: int
    k: int

    def __post_init__(self):
        _check_modulus(self.k)


def _check_modulus(k: int) -> None:
    if k < 1 or k % 2 == 0:
        raise ValueError(f"modulus k must be odd and positive, got {k}")


def _prefactor(k: int) -> complex:
    return (1 - 1j) / 2 + kronecker(-1, k) * (1 + 1j) / 2


def gauss_direct_many(ms, k: int) -> np.ndarray:
    """``G_m(k)`` from the definition for every ``m`` in ``ms`` (one character table per ``k``)."""
    _check_modulus(k)
    if k > DIRECT_K_LIMIT:
        raise OverflowError(f"k={k} exceeds direct-summation guard {DIRECT_K_LIMIT}")
    ms = np.atleast_1d(np.asarray(ms, dtype=np.int64))
    a = np.arange(k, dtype=np.int64)
    chi = np.array([kronecker(int(x), k) for x in range(k)], dtype=float)
    # reduce a*m mod k before scaling so the phase stays accurate
    phase = (a[None, :] * (ms[:, None] % k)) % k
    sums = np.exp(2j * np.pi * phase / k) @ chi
    return _prefactor(k) * sums


def gauss_direct(m: int, k: int) -> complex:
    """Evaluate ``G_m(k)`` straight from its definition (``O(k)`` work)."""
    return complex(gauss_direct_many([m], k)[0])


def _prime_power_value(m: int, p: int, b: int) -> GaussValue:
    if m == 0:
        a = math.inf
    else:
        a, mm = 0, m
        while mm % p == 0:
            mm //= p
            a += 1
    if b <= a:
        return ZERO if b % 2 else GaussValue(p ** (b - 1) * (p - 1))
    if b == a + 1:
        pa = p**a
        if b % 2 == 0:
            return GaussValue(-pa)
        return GaussValue(kronecker(m // pa, p) * pa, p)
    return ZERO


def gauss_fast(m: int, k: int) -> GaussValue:
    """Exact ``G_m(k)`` by multiplicativity over the prime powers of ``k``."""
    _check_modulus(k)
    value = ONE
    for p, b in factorize(k).items():
        value = value * _prime_power_value(m, p, b)
        if not value:
            return ZERO
    return value
