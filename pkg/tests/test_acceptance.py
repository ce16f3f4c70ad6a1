"""Acceptance criteria, one printed PASS/FAIL line each.

Run on its own with ``pytest tests/test_acceptance.py``; the lines print without ``-s``.
"""

import math
import time

import pytest

from qtlab.arith import sieve_mobius
from qtlab.config import RunConfig
from qtlab.dirichlet import euler_factor_Z_check, z2_at, z_series_check
from qtlab.meansquare import ExperimentConfig, YRule, brute_force_S, naive_S, run_experiment
from qtlab.suites import gauss_suite, poisson_suite
from qtlab.weights import (
    BumpWeight,
    QuadratureSpec,
    h1_tilde_11,
    h1_tilde_11_direct,
    h1_tilde_11_literal,
    h1_tilde_11_literal_direct,
)

W = BumpWeight()


@pytest.fixture
def report(capsys):
    def emit(label, passed, detail, started):
        with capsys.disabled():
            print(f"\n[{'PASS' if passed else 'FAIL'}] {label}: {detail} ({time.perf_counter() - started:.1f}s)")
        assert passed, detail

    return emit


def test_1_gauss_oracle(report):
    t0 = time.perf_counter()
    checks = gauss_suite(RunConfig())
    by_name = {c.name: c for c in checks}
    equal = by_name["gauss_fast == gauss_direct"]
    detail = f"odd k <= 999, |m| <= 50, {equal.detail}; coprime k1, k2 <= 99 multiplicative"
    report("1 Gauss sums", all(c.passed for c in checks), detail, t0)


def test_2_poisson_identity(report):
    t0 = time.perf_counter()
    checks, rows = poisson_suite(RunConfig(), W)
    worst = max(r.rel_err for r in rows)
    assert len(rows) == 100
    report("2 Poisson identity", worst < 1e-6, f"max rel_err {worst:.2e} < 1e-6 over {len(rows)} (n, X)", t0)


def test_3_euler_product_consistency(report):
    t0 = time.perf_counter()
    s2 = z_series_check(2.0, 10**6, 10**6)
    s3 = z_series_check(3.0, 10**6, 10**6)
    ok = s2.passed and s3.passed and s2.discrepancy < 1e-5
    detail = f"u=2 {s2.discrepancy:.2e} <= {s2.tail_bound:.2e}, u=3 {s3.discrepancy:.2e} <= {s3.tail_bound:.2e}"
    report("3 Z(u) = zeta(u) Z_2(u)", ok, detail, t0)


def test_4_euler_factors(report):
    t0 = time.perf_counter()
    reports = []
    for p in (3, 5, 7, 11):
        for alpha in (0.5, 1.0):
            for beta in (0.5, 1.0):
                for q, k1 in ((p, 1), (1, p), (1, 1)):
                    reports.append(euler_factor_Z_check(p, alpha, beta, 0.6, q, k1, 20))
    cases = {r.case for r in reports}
    worst = max(r.slice0_err for r in reports)
    ok = cases == {"p|2q", "p|k1", "generic"} and all(r.passed for r in reports)
    report("4 Euler factors", ok, f"{len(reports)} factors, k2=0 slice err {worst:.1e}, envelopes met", t0)


def test_5_main_term_components(report):
    t0 = time.perf_counter()
    tight = QuadratureSpec(1e-18, 1e-13)
    d_diag = abs(h1_tilde_11(W, W, tight) - h1_tilde_11_direct(W, W, tight))
    d_lit = abs(h1_tilde_11_literal(W, W, tight) - h1_tilde_11_literal_direct(W, W, QuadratureSpec(1e-14, 1e-8)))
    vals = [z2_at(1.0, 10**e) for e in range(3, 8)]
    cauchy = all(abs(a.value - b.value) <= a.tail_bound + b.tail_bound for a in vals for b in vals)
    ok = d_diag < 1e-10 and d_lit < 1e-10 and cauchy
    detail = f"h1 product vs direct {d_diag:.1e} and {d_lit:.1e} (triple); Z_2(1) Cauchy P=1e3..1e7 {cauchy}"
    report("5 main-term components", ok, detail, t0)


def test_6_mean_square(report):
    t0 = time.perf_counter()
    table = sieve_mobius(1000)
    exact = all(brute_force_S(X, Y, W, W, table) == naive_S(X, Y, W, W) for X in (100, 250, 500) for Y in (10, 25, 50))
    rows = run_experiment(ExperimentConfig(X_values=(1e3, 1e4, 1e5), Y_rule=YRule("power", 0.5), thread_count=8))
    gaps = [abs(r.ratio - 1) for r in rows]
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    last = rows[-1].ratio
    ok = exact and decreasing and 0.75 <= last <= 1.25
    detail = "ratios " + ", ".join(f"{r.ratio:.4f}" for r in rows) + f"; engine == naive oracle {exact}"
    report("6 mean-square convergence", ok, detail, t0)


def test_7_determinism(report):
    t0 = time.perf_counter()
    values = {t: run_experiment(ExperimentConfig(X_values=(1e4,), thread_count=t))[0].s_empirical for t in (1, 4, 8)}
    same = len({v.hex() for v in values.values()}) == 1 and not math.isnan(values[1])
    report("7 determinism", same, f"X=1e4 s_empirical {values[1]!r} for threads 1, 4, 8", t0)
