"""Sieved arithmetic functions and the Kronecker symbol.

Everything else in the package sits on top of these: the Mobius table,
the odd square-free indicator used for the starred sum over ``d``, and a
fully general ``kronecker(a, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

__all__ = [
    "MobiusTable",
    "SquarefreeOddSet",
    "kronecker",
    "sieve_mobius",
    "sieve_primes",
    "squarefree_odd_set",
    "mertens",
    "mertens_twisted",
    "squarefree_mobius_identity_check",
    "factorize",
    "euler_phi",
    "legendre_table",
    "jacobi_residue_table",
]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)`` for arbitrary integers.

    Conventions: ``(a/1) = 1``, ``(a/0) = 1`` iff ``a = +-1``, ``(a/2)``
    is read off ``a mod 8`` and ``(a/-1)`` is the sign of ``a``.  The odd
    part is handled by the binary Jacobi algorithm.
    """
    a = int(a)
    n = int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class MobiusTable:
    """Values ``mu[n]`` for ``0 <= n <= limit`` (``mu[0]`` is a 0 placeholder)."""

    limit: int
    mu: np.ndarray

    def __getitem__(self, n):
        return self.mu[n]

    def __len__(self) -> int:
        return self.limit


@dataclass(frozen=True)
class SquarefreeOddSet:
    limit: int
    membership: np.ndarray

    def __contains__(self, n) -> bool:
        return 0 < n <= self.limit and bool(self.membership[n])

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.membership)

    def count_in(self, lo: float, hi: float) -> int:
        """Number of members strictly inside ``(lo, hi)``."""
        m = self.members()
        return int(np.count_nonzero((m > lo) & (m < hi)))


def sieve_primes(limit: int) -> np.ndarray:
    """All primes ``p <= limit`` as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def sieve_mobius(limit: int) -> MobiusTable:
    """Sieve ``mu(n)`` for ``n <= limit`` into an int8 array."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in sieve_primes(limit).tolist():
        mu[p::p] *= -1
        pp = p * p
        if pp <= limit:
            mu[pp::pp] = 0
    mu.setflags(write=False)
    return MobiusTable(limit, mu)


def squarefree_odd_set(table: MobiusTable) -> SquarefreeOddSet:
    member = table.mu != 0
    member[::2] = False
    member.setflags(write=False)
    return SquarefreeOddSet(table.limit, member)


def _check_covers(table: MobiusTable, x: int) -> None:
    if table.limit < x:
        raise ValueError(f"Mobius table covers n <= {table.limit}, need {x}")


def mertens(x: int, table: MobiusTable) -> int:
    """``M(x) = sum_{n <= x} mu(n)``."""
    x = int(x)
    _check_covers(table, x)
    return int(table.mu[1 : x + 1].sum(dtype=np.int64))


def mertens_twisted(x: int, d: int | None, table: MobiusTable) -> int:
    """``sum_{n <= x} mu(n) (8d/n)``; ``d=None`` means the trivial character."""
    if d is None:
        return mertens(x, table)
    x = int(x)
    _check_covers(table, x)
    if d <= 0 or d % 2 == 0:
        raise ValueError(f"d must be positive and odd, got {d}")
    mu = table.mu
    total = 0
    for n in range(1, x + 1, 2):
        m = int(mu[n])
        if m:
            total += m * kronecker(8 * d, n)
    return total


def squarefree_mobius_identity_check(limit: int) -> bool:
    """Check ``sum_{a^2 | n} mu(a) = mu(n)^2`` for every ``n <= limit``."""
    table = sieve_mobius(limit)
    acc = np.zeros(limit + 1, dtype=np.int64)
    for a in range(1, isqrt(limit) + 1):
        m = int(table.mu[a])
        if m:
            acc[a * a :: a * a] += m
    sq = table.mu.astype(np.int64) ** 2
    return bool(np.array_equal(acc[1:], sq[1:]))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def legendre_table(p: int) -> np.ndarray:
    """``(a/p)`` for ``a = 0..p-1``, from the set of squares mod ``p``."""
    tab = -np.ones(p, dtype=np.int8)
    r = np.arange(1, p, dtype=np.int64)
    tab[(r * r) % p] = 1
    tab[0] = 0
    return tab


def jacobi_residue_table(n: int) -> np.ndarray:
    """``(a/n)`` for ``a = 0..n-1`` and odd ``n > 0``, as a product of Legendre tables."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    a = np.arange(n, dtype=np.int64)
    tab = np.ones(n, dtype=np.int8)
    for p, e in factorize(n).items():
        if e % 2:
            tab *= legendre_table(p)[a % p]
        else:
            tab *= (a % p != 0).astype(np.int8)
    return tab
