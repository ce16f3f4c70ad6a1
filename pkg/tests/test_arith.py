import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import jacobi_symbol

from qtlab.arith import (
    factorize,
    jacobi_residue_table,
    kronecker,
    mertens,
    mertens_twisted,
    sieve_mobius,
    sieve_primes,
    squarefree_mobius_identity_check,
    squarefree_odd_set,
)


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def kronecker_oracle(a, n):
    """Kronecker symbol assembled prime by prime from enumerated quadratic residues."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        result = -1 if a < 0 else 1
    for p, e in factorize(n).items() if n > 1 else []:
        if p == 2:
            v = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        else:
            v = legendre_by_squares(a, p)
        result *= v**e
    return result


def test_kronecker_examples():
    assert all(kronecker(m, 1) == 1 for m in range(-20, 21))
    assert kronecker(8, 3) == -1
    assert kronecker(8, 7) == 1
    # chi_8(n) = 1 iff n = +-1 mod 8
    squares_mod_8 = {x * x % 8 for x in range(8)}
    assert squares_mod_8 == {0, 1, 4}
    assert [kronecker(8, n) for n in (1, 3, 5, 7, 9, 15)] == [1, -1, -1, 1, 1, 1]


def test_kronecker_conventions():
    assert kronecker(5, 0) == 0 and kronecker(1, 0) == 1 and kronecker(-1, 0) == 1
    assert kronecker(-3, -1) == -1 and kronecker(3, -1) == 1 and kronecker(0, -1) == 1
    assert kronecker(3, 2) == -1 and kronecker(7, 2) == 1 and kronecker(4, 2) == 0
    assert kronecker(6, 9) == 0


@pytest.mark.parametrize("a", range(-30, 31))
def test_kronecker_matches_oracle(a):
    for n in range(-40, 41):
        assert kronecker(a, n) == kronecker_oracle(a, n), (a, n)


def test_multiplicativity_exhaustive():
    N = 60
    # bottom argument: (a/mn) = (a/m)(a/n)
    table = np.array([[kronecker(a, n) for n in range(N * N + 1)] for a in range(-N, N + 1)])
    m = np.arange(1, N + 1)
    prod = m[:, None] * m[None, :]
    for row in table:
        assert np.array_equal(row[prod], row[m][:, None] * row[m][None, :])
    # top argument: (ab/n) = (a/n)(b/n)
    top = {c: [kronecker(c, n) for n in range(N + 1)] for c in range(-N * N, N * N + 1)}
    for a in range(-N, N + 1):
        for b in range(-N, N + 1):
            ab, ra, rb = top[a * b], top[a], top[b]
            assert all(ab[n] == ra[n] * rb[n] for n in range(1, N + 1)), (a, b)


def _odd_squarefree(limit):
    return [d for d in range(1, limit + 1, 2) if all(e == 1 for e in factorize(d).values())]


@pytest.mark.parametrize("d", _odd_squarefree(99))
def test_chi_8d_period_zero_set_and_mean(d):
    q = 8 * d
    vals = [kronecker(q, n) for n in range(1, q + 1)]
    assert all(kronecker(q, n + q) == vals[n - 1] for n in range(1, q + 1))
    assert all((vals[n - 1] == 0) == (math.gcd(q, n) > 1) for n in range(1, q + 1))
    assert sum(vals) == 0


@given(st.integers(-10**12, 10**12), st.integers(1, 10**9).map(lambda k: 2 * k + 1))
def test_kronecker_matches_jacobi_for_odd_moduli(a, n):
    assert kronecker(a, n) == jacobi_symbol(a % n, n)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_kronecker_zero_iff_common_factor(a, n):
    v = kronecker(a, n)
    assert v in (-1, 0, 1)
    if n != 0:
        assert (v == 0) == (math.gcd(a, n) > 1)


def test_sieve_examples():
    t = sieve_mobius(10)
    assert t.mu[6] == 1 and t.mu[8] == 0
    assert sieve_mobius(1).mu[1] == 1
    with pytest.raises(ValueError):
        sieve_mobius(0)


def test_sieve_invariants():
    N = 3000
    t = sieve_mobius(N)
    assert t.mu.dtype == np.int8 and t.mu.itemsize == 1
    assert t.mu[1] == 1
    for p in sieve_primes(N).tolist():
        assert t.mu[p] == -1
    for n in range(2, N + 1):
        f = factorize(n)
        expected = 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)
        assert t.mu[n] == expected
    assert np.array_equal(t.mu.astype(int) ** 2, np.abs(t.mu.astype(int)))
    assert not t.mu.flags.writeable


def test_squarefree_odd_set():
    t = sieve_mobius(500)
    s = squarefree_odd_set(t)
    for n in range(1, 501):
        assert (n in s) == (n % 2 == 1 and t.mu[n] != 0)
    assert s.count_in(100, 200) == sum(1 for n in range(101, 200) if n in s)


def test_mertens_examples():
    t = sieve_mobius(100)
    assert mertens_twisted(10, 1, t) == 2
    assert mertens(10, t) == -1
    assert mertens_twisted(10, None, t) == -1
    assert all(mertens_twisted(1, d, t) == 1 for d in (1, 3, 5, 15, 33))


def test_mertens_twisted_direct_and_errors():
    t = sieve_mobius(200)
    for d in (1, 3, 7, 21):
        direct = sum(int(t.mu[n]) * kronecker_oracle(8 * d, n) for n in range(1, 201))
        assert mertens_twisted(200, d, t) == direct
    with pytest.raises(ValueError):
        mertens_twisted(201, 1, t)
    with pytest.raises(ValueError):
        mertens(500, t)


def test_squarefree_identity():
    assert squarefree_mobius_identity_check(1)
    assert squarefree_mobius_identity_check(12)
    t = sieve_mobius(12)
    assert int(t.mu[1]) + int(t.mu[2]) == 0 == int(t.mu[12]) ** 2
    assert squarefree_mobius_identity_check(10**5)


@pytest.mark.parametrize("n", [1, 3, 9, 15, 27, 45, 77, 105, 121, 999])
def test_jacobi_residue_table(n):
    tab = jacobi_residue_table(n)
    assert tab.tolist() == [kronecker(a, n) for a in range(n)]
