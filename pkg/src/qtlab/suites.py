"""Verification suites behind the ``verify-*`` commands.

Each suite returns a list of :class:`Check`; a suite passes when every
check does.  Suites that produce tables also return them so the CLI can
write CSV files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import euler_phi
from .config import RunConfig
from .dirichlet import euler_factor_Z_check, z2_at, z_series_check
from .gauss import GaussValue, gauss_direct_many, gauss_fast
from .poisson import verify_poisson
from .weights import (
    QuadratureSpec,
    adaptive_quad,
    h1_tilde_11,
    h1_tilde_11_direct,
    h1_tilde_11_literal,
    h1_tilde_11_literal_direct,
    integrate,
    tilde_transform,
    tilde_transform_many,
)

__all__ = ["Check", "gauss_suite", "poisson_suite", "weights_suite", "dirichlet_suite", "z2_table"]

POISSON_REL_TOL = 1e-6
H1_TOL = 1e-10


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)


def gauss_suite(cfg: RunConfig) -> list[Check]:
    ms = list(range(-cfg.gauss_m_max, cfg.gauss_m_max + 1))
    bad_eq, bad_im = [], []
    worst = 0.0
    for k in range(1, cfg.gauss_k_max + 1, 2):
        direct = gauss_direct_many(ms, k)
        for m, g in zip(ms, direct):
            diff = abs(g - float(gauss_fast(m, k)))
            worst = max(worst, diff / max(1, k))
            if diff >= 1e-6 * max(1, k):
                bad_eq.append((m, k, diff))
            if abs(g.imag) >= 1e-8 * k:
                bad_im.append((m, k, g.imag))
    checks = [
        Check("gauss_fast == gauss_direct", not bad_eq, f"max |diff|/k = {worst:.3e}", bad_eq[:20]),
        Check("Im gauss_direct ~ 0", not bad_im, "", bad_im[:20]),
    ]

    bad_mult = []
    odd = range(1, cfg.gauss_mult_max + 1, 2)
    for k1 in odd:
        for k2 in odd:
            if math.gcd(k1, k2) != 1:
                continue
            for m in range(-cfg.gauss_mult_m_max, cfg.gauss_mult_m_max + 1):
                if gauss_fast(m, k1 * k2) != gauss_fast(m, k1) * gauss_fast(m, k2):
                    bad_mult.append((m, k1, k2))
    checks.append(Check("exact multiplicativity", not bad_mult, "", bad_mult[:20]))

    bad_g0 = []
    for k in range(1, cfg.gauss_g0_k_max + 1, 2):
        r = math.isqrt(k)
        expected = euler_phi(k) if r * r == k else 0
        if gauss_fast(0, k) != GaussValue(expected):
            bad_g0.append(k)
    checks.append(Check("G_0(k) = phi(k) on squares, 0 otherwise", not bad_g0, "", bad_g0[:20]))
    return checks


def poisson_suite(cfg: RunConfig, W) -> tuple[list[Check], list]:
    spec = QuadratureSpec(cfg.poisson_tol, cfg.poisson_tol, cfg.experiment.quadrature.max_depth)
    rows = verify_poisson(cfg.poisson_n_max, cfg.poisson_X_values, W, spec)
    bad = [(r.n, r.X, r.rel_err) for r in rows if not r.rel_err < POISSON_REL_TOL]
    worst = max((r.rel_err for r in rows), default=0.0)
    return [Check("Poisson identity residual", not bad, f"max rel_err = {worst:.3e}", bad)], rows


def weights_suite(cfg: RunConfig) -> list[Check]:
    ex = cfg.experiment
    spec = ex.quadrature
    W, Phi = ex.W, ex.Phi
    checks = []

    iw = integrate(W, spec)
    ish = integrate(W.shifted(2.0), spec)
    checks.append(Check("translation invariance", abs(iw - ish) <= 1e-12, f"{iw!r} vs {ish!r}"))

    t0 = tilde_transform(W, 0.0, spec)
    checks.append(Check("W~(0) = ∫W", abs(t0 - iw) <= 1e-12 * max(1.0, abs(iw)), f"{t0!r} vs {iw!r}"))

    xi = 3.7
    plus, minus = tilde_transform_many(W, [xi, -xi], spec)
    two_cos = 2 * float(adaptive_quad(lambda x: np.cos(2 * np.pi * xi * x) * W.values(x), W.a, W.b, spec).value)
    checks.append(Check("W~(xi) + W~(-xi) = 2∫cos", abs(plus + minus - two_cos) <= 1e-12, ""))

    grid = np.linspace(1, 100, 199)
    vals = np.abs(tilde_transform_many(W, grid, spec))
    for B in (2, 4):
        prod = vals * grid**B
        head = prod[grid <= 10].max()
        tail = prod[grid > 10].max()
        checks.append(Check(f"|W~(xi)| xi^{B} bounded on [1, 100]", bool(tail <= head), f"head {head:.3e}, tail {tail:.3e}"))

    coarse = adaptive_quad(W.values, W.a, W.b, spec)
    fine = adaptive_quad(W.values, W.a, W.b, spec.halved())
    delta = abs(coarse.value - fine.value)
    checks.append(Check("halving tolerance stays within error bound", delta <= max(coarse.error, 1e-17),
                        f"delta {delta:.3e}, bound {coarse.error:.3e}"))

    tight = QuadratureSpec(1e-18, 1e-13, spec.max_depth)
    prod = h1_tilde_11(W, Phi, tight)
    direct = h1_tilde_11_direct(W, Phi, tight)
    checks.append(Check("h1(1,1) product formula = direct double integral", abs(prod - direct) < H1_TOL,
                        f"{prod!r} vs {direct!r}"))
    lit = h1_tilde_11_literal(W, Phi, tight)
    lit_direct = h1_tilde_11_literal_direct(W, Phi, QuadratureSpec(1e-14, 1e-8, spec.max_depth))
    checks.append(Check("∫W (∫Phi)^2 product formula = direct triple integral", abs(lit - lit_direct) < H1_TOL,
                        f"{lit!r} vs {lit_direct!r}"))
    return checks


def z2_table(limits) -> list:
    return [z2_at(1.0, P) for P in limits]


def dirichlet_suite(cfg: RunConfig) -> tuple[list[Check], list, list]:
    checks = []
    series = [z_series_check(u, cfg.z_series_limit, cfg.z_series_limit) for u in cfg.z_series_u]
    for s in series:
        checks.append(Check(f"Z(u) series = zeta(u) Z_2(u) at u={s.u:g}", s.passed,
                            f"discrepancy {s.discrepancy:.3e} <= bound {s.tail_bound:.3e}"))

    table = z2_table(cfg.z2_prime_limits)
    bad = []
    for i, a in enumerate(table):
        for b in table[i + 1 :]:
            if abs(a.value - b.value) > a.tail_bound + b.tail_bound:
                bad.append((a.prime_limit, b.prime_limit))
    monotone = all(a.tail_bound > b.tail_bound for a, b in zip(table, table[1:]))
    checks.append(Check("Z_2(1) truncations Cauchy within tail bounds", not bad and monotone, "", bad))

    reports = []
    for p in cfg.euler_primes:
        for alpha in (0.5, 1.0):
            for beta in (0.5, 1.0):
                # one parameter set per prime class
                for q, k1 in ((p, 1), (1, p), (1, 1)):
                    reports.append(euler_factor_Z_check(p, alpha, beta, 0.6, q, k1, cfg.euler_k2_max))
    bad = [(r.p, r.case, r.alpha.real, r.beta.real) for r in reports if not r.passed]
    checks.append(Check("Euler factors of Z(alpha, beta, gamma; q, k1)", not bad, f"{len(reports)} reports", bad))
    return checks, table, reports
