"""Brute-force smoothed mean square of twisted Mertens sums, and its predicted main term.

    S(X, Y; Phi, W) = sum*_d W(d/X) (sum_n mu(n) chi_8d(n) Phi(n/Y))^2

over odd square-free ``d``.  The prediction is

    (4/pi^2) X Y h1(1, 1) Z_2(1),   h1(1, 1) = ∫W * ∫Phi^2.

The engine runs ``n`` outer and ``d`` inner: for each odd square-free ``n``
the residues ``(a/n)``, ``a mod n``, are tabulated once and the ``d`` loop
becomes a gather.  Per-``d`` terms do not depend on how the ``d`` range is
chunked, and the final reduction is :func:`math.fsum`, so the result is
identical for any thread count.
"""

from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .arith import MobiusTable, factorize, jacobi_residue_table, kronecker, sieve_mobius
from .dirichlet import z2_at
from .weights import BumpWeight, QuadratureSpec, h1_tilde_11, h1_tilde_11_literal

__all__ = [
    "YRule",
    "ExperimentConfig",
    "MeanSquareRow",
    "CSV_HEADER",
    "brute_force_S",
    "naive_S",
    "main_term",
    "run_experiment",
    "write_rows_csv",
    "read_rows_csv",
]

log = logging.getLogger(__name__)

CSV_HEADER = ["X", "Y", "s_empirical", "s_predicted", "ratio", "d_count", "runtime_seconds"]
CHUNK = 1 << 14


@dataclass(frozen=True)
class YRule:
    """``fixed``: ``Y = value``; ``power``: ``Y = X**value`` with ``0 < value < 1``."""

    kind: str = "power"
    value: float = 0.5

    def __post_init__(self):
        if self.kind not in ("fixed", "power"):
            raise ValueError(f"unknown Y rule {self.kind!r}")
        if self.kind == "power" and not 0 < self.value < 1:
            raise ValueError(
                f"Y = X^{self.value} is outside the validity range of the asymptotic: "
                "the main term dominates only for Y << X^(1-eps), so the exponent must lie in (0, 1)"
            )
        if self.kind == "fixed" and not self.value > 0:
            raise ValueError("fixed Y must be positive")

    def __call__(self, X: float) -> float:
        return self.value if self.kind == "fixed" else X**self.value


@dataclass(frozen=True)
class ExperimentConfig:
    X_values: tuple[float, ...] = ()
    Y_rule: YRule = YRule()
    W: BumpWeight = BumpWeight()
    Phi: BumpWeight = BumpWeight()
    quadrature: QuadratureSpec = QuadratureSpec()
    thread_count: int = 1
    prime_limit: int = 10**6
    # "Y" scales the inner variable as n/Y; "X" reproduces the n/X reading of the definition
    inner_scale: str = "Y"
    # "diagonal": ∫W ∫Phi^2; "literal": ∫W (∫Phi)^2
    main_functional: str = "diagonal"

    def __post_init__(self):
        object.__setattr__(self, "X_values", tuple(float(x) for x in self.X_values))
        bad = [x for x in self.X_values if x < 10]
        if bad:
            raise ValueError(f"all X must be >= 10, got {bad}")
        if self.thread_count < 1:
            raise ValueError("thread_count must be >= 1")
        if self.inner_scale not in ("X", "Y"):
            raise ValueError(f"inner_scale must be 'X' or 'Y', got {self.inner_scale!r}")
        if self.main_functional not in ("diagonal", "literal"):
            raise ValueError(f"main_functional must be 'diagonal' or 'literal', got {self.main_functional!r}")
        if self.prime_limit < 3:
            raise ValueError("prime_limit must be >= 3")


@dataclass
class MeanSquareRow:
    X: float
    Y: float
    s_empirical: float
    s_predicted: float
    ratio: float
    d_count: int
    runtime_seconds: float
    error: str | None = field(default=None, compare=False)


def _window(lo_int: int, hi_int: int, scale: float, weight: BumpWeight, table: MobiusTable):
    """Odd square-free integers ``m`` with ``weight.a < m/scale < weight.b``."""
    m = np.arange(lo_int, hi_int + 1, dtype=np.int64)
    m = m[(m % 2 == 1) & (table.mu[m] != 0)]
    x = m / scale
    return m[(x > weight.a) & (x < weight.b)]


def _coverage(weight: BumpWeight, scale: float) -> int:
    return math.ceil(weight.b * scale)


def brute_force_S(X: float, Y: float, W: BumpWeight, Phi: BumpWeight, table: MobiusTable,
                  threads: int = 1, inner_scale: str = "Y") -> tuple[float, int]:
    """Evaluate ``S(X, Y; Phi, W)``; returns ``(value, d_count)``.

    ``table`` must cover ``ceil(W.b * X)`` and ``ceil(Phi.b * Y)`` (or
    ``ceil(Phi.b * X)`` when ``inner_scale == "X"``).
    """
    scale = Y if inner_scale == "Y" else X
    need = max(_coverage(W, X), _coverage(Phi, scale))
    if table.limit < need:
        raise ValueError(f"Mobius table covers n <= {table.limit}, need {need}")

    ds = _window(max(1, math.floor(W.a * X)), _coverage(W, X), X, W, table)
    ns = _window(max(1, math.floor(Phi.a * scale)), _coverage(Phi, scale), scale, Phi, table)
    if ds.size == 0:
        return 0.0, 0
    if ns.size == 0:
        return 0.0, int(ds.size)

    w = W.sample(ds / X)
    # (8d/n) = (2/n) (d/n) for odd n
    coef = [int(table.mu[n]) * kronecker(2, int(n)) * Phi(n / scale) for n in ns.tolist()]
    residues = [jacobi_residue_table(int(n)).astype(float) for n in ns.tolist()]

    def chunk_terms(start: int) -> np.ndarray:
        d = ds[start : start + CHUNK]
        inner = np.zeros(d.size)
        for n, c, tab in zip(ns.tolist(), coef, residues):
            inner += c * tab[d % n]
        return w[start : start + CHUNK] * (inner * inner)

    starts = range(0, ds.size, CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(chunk_terms, starts))
    else:
        parts = [chunk_terms(s) for s in starts]
    return math.fsum(np.concatenate(parts)), int(ds.size)


def _mu_by_factoring(n: int) -> int:
    f = factorize(n) if n > 1 else {}
    return 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)


def naive_S(X: float, Y: float, W: BumpWeight, Phi: BumpWeight, inner_scale: str = "Y") -> tuple[float, int]:
    """Straight double loop over ``d`` then ``n`` using the Kronecker symbol directly.

    Shares nothing with :func:`brute_force_S` beyond the weights; for
    checking it at small ``X`` and ``Y``.
    """
    scale = Y if inner_scale == "Y" else X
    n_terms = []
    for n in range(1, math.ceil(Phi.b * scale) + 1):
        phi = Phi(n / scale)
        mu = _mu_by_factoring(n)
        if phi > 0 and mu != 0:
            n_terms.append((n, mu, phi))
    terms = []
    for d in range(1, math.ceil(W.b * X) + 1):
        wd = W(d / X)
        if d % 2 == 0 or _mu_by_factoring(d) == 0 or not W.a < d / X < W.b:
            continue
        inner = 0.0
        for n, mu, phi in n_terms:
            inner += mu * kronecker(8 * d, n) * phi
        terms.append(wd * (inner * inner))
    return math.fsum(terms), len(terms)


def main_term(X: float, Y: float, W: BumpWeight, Phi: BumpWeight, spec: QuadratureSpec = QuadratureSpec(),
              prime_limit: int = 10**6, functional: str = "diagonal") -> float:
    """``(4/pi^2) X Y h1(1, 1) Z_2(1)``."""
    h1 = h1_tilde_11(W, Phi, spec) if functional == "diagonal" else h1_tilde_11_literal(W, Phi, spec)
    return 4 / math.pi**2 * X * Y * h1 * z2_at(1.0, prime_limit).value


def _fmt(v) -> str:
    return str(v) if isinstance(v, (int, np.integer)) else repr(float(v))


def _row_fields(row: MeanSquareRow) -> list[str]:
    return [_fmt(getattr(row, k)) for k in CSV_HEADER]


def write_rows_csv(rows: Sequence[MeanSquareRow], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(_row_fields(r))
    return path


def read_rows_csv(path) -> list[MeanSquareRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header {header}")
        return [MeanSquareRow(float(r[0]), float(r[1]), float(r[2]), float(r[3]), float(r[4]), int(r[5]), float(r[6]))
                for r in reader]


def run_experiment(config: ExperimentConfig, csv_path=None) -> list[MeanSquareRow]:
    """Sweep the configured ``X`` values in ascending order.

    When ``csv_path`` is given each row is appended and flushed as soon as it
    is computed.  A failing row is recorded with NaN values and the error
    message, and the sweep moves on.
    """
    xs = sorted(config.X_values)
    if not xs:
        if csv_path is not None:
            write_rows_csv([], csv_path)
        return []
    spec = config.quadrature
    h1 = (h1_tilde_11 if config.main_functional == "diagonal" else h1_tilde_11_literal)(config.W, config.Phi, spec)
    z2 = z2_at(1.0, config.prime_limit).value
    need = max(
        max(_coverage(config.W, X), _coverage(config.Phi, config.Y_rule(X) if config.inner_scale == "Y" else X))
        for X in xs
    )
    table = sieve_mobius(need)

    fh = writer = None
    if csv_path is not None:
        fh = open(csv_path, "w", newline="")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        fh.flush()
    rows = []
    try:
        for X in xs:
            Y = config.Y_rule(X)
            t0 = time.perf_counter()
            try:
                s, dc = brute_force_S(X, Y, config.W, config.Phi, table, config.thread_count, config.inner_scale)
                pred = 4 / math.pi**2 * X * Y * h1 * z2
                row = MeanSquareRow(X, Y, s, pred, s / pred, dc, time.perf_counter() - t0)
            except Exception as exc:  # noqa: BLE001 - recorded per row
                log.exception("row X=%s failed", X)
                nan = float("nan")
                row = MeanSquareRow(X, Y, nan, nan, nan, 0, time.perf_counter() - t0, error=str(exc))
            log.info("X=%g Y=%g ratio=%.6f (%.2fs)", row.X, row.Y, row.ratio, row.runtime_seconds)
            rows.append(row)
            if writer is not None:
                writer.writerow(_row_fields(row))
                fh.flush()
    finally:
        if fh is not None:
            fh.close()
    return rows
