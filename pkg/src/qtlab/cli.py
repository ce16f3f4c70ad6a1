"""Command-line entry point.

    qtlab <command> --config <path> --out <dir> [--threads N]

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config
error, 3 runtime error.  ``manifest.json`` is written to the output
directory in every case where the directory can be created.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .config import ConfigError, RunConfig, parse_config, with_threads
from .dirichlet import write_zfactor_csv
from .meansquare import MeanSquareRow, run_experiment
from .poisson import write_poisson_csv
from . import suites

__all__ = ["RunManifest", "emit_plot_script", "main", "COMMANDS"]

COMMANDS = ("verify-gauss", "verify-poisson", "verify-weights", "verify-dirichlet", "compute-z2", "run-meansquare")
EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3

log = logging.getLogger("qtlab")


@dataclass
class RunManifest:
    command: str
    config_path: str
    output_dir: str
    emitted_files: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    checks: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    error: str | None = None

    def write(self) -> Path:
        path = Path(self.output_dir) / "manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, default=str) + "\n")
        return path


def emit_plot_script(rows: Sequence[MeanSquareRow], output_dir, csv_name: str = "meansquare.csv") -> Path:
    """Write a gnuplot script plotting ``ratio`` against ``log10 X`` with a reference line at 1.

    The CSV named ``csv_name`` is expected next to the script; rows must be
    in ascending ``X``.
    """
    if not rows:
        raise ValueError("cannot plot an empty sweep")
    xs = [r.X for r in rows]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("rows must be sorted by strictly ascending X")
    out = Path(output_dir) / "meansquare.gp"
    out.write_text(
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 'log10 X'\n"
        "set ylabel 'S / main term'\n"
        "set grid\n"
        f"plot '{csv_name}' using (log10($1)):5 with linespoints title 'ratio', \\\n"
        "     1 with lines dashtype 2 title 'predicted'\n"
    )
    return out


def _record(manifest: RunManifest, checks: list) -> None:
    for c in checks:
        manifest.checks.append({"name": c.name, "passed": c.passed, "detail": c.detail})
        if not c.passed:
            manifest.failures.append({"name": c.name, "detail": c.detail, "cases": c.failures})
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name} {c.detail}".rstrip())
    if any(not c.passed for c in checks):
        manifest.exit_code = EXIT_CHECK


def _run(command: str, cfg: RunConfig, out: Path, manifest: RunManifest) -> None:
    ex = cfg.experiment
    if command == "verify-gauss":
        _record(manifest, suites.gauss_suite(cfg))
    elif command == "verify-poisson":
        checks, rows = suites.poisson_suite(cfg, ex.W)
        path = out / "poisson.csv"
        write_poisson_csv(rows, path)
        manifest.emitted_files.append(str(path))
        _record(manifest, checks)
    elif command == "verify-weights":
        _record(manifest, suites.weights_suite(cfg))
    elif command == "verify-dirichlet":
        checks, table, reports = suites.dirichlet_suite(cfg)
        path = out / "zfactors.csv"
        write_zfactor_csv(reports, path)
        manifest.emitted_files.append(str(path))
        _record(manifest, checks)
    elif command == "compute-z2":
        path = out / "z2.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["prime_limit", "value", "tail_bound"])
            for v in suites.z2_table(cfg.z2_prime_limits):
                w.writerow([v.prime_limit, repr(v.value), repr(v.tail_bound)])
                print(f"Z_2(1) ~ {v.value!r} (p <= {v.prime_limit}, |error| <= {v.tail_bound:.3e})")
        manifest.emitted_files.append(str(path))
    elif command == "run-meansquare":
        path = out / "meansquare.csv"
        rows = run_experiment(ex, path)
        manifest.emitted_files.append(str(path))
        for r in rows:
            print(f"X={r.X:g} Y={r.Y:g} S={r.s_empirical!r} predicted={r.s_predicted!r} ratio={r.ratio:.6f}")
        failed = [r for r in rows if r.error]
        if rows:
            manifest.emitted_files.append(str(emit_plot_script(rows, out)))
        if failed:
            manifest.failures.extend({"name": f"row X={r.X:g}", "detail": r.error} for r in failed)
            manifest.exit_code = EXIT_CHECK


def _threads(arg: int | None) -> int | None:
    if arg is not None:
        return arg
    env = os.environ.get("QTL_THREADS")
    if env:
        return int(env)
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtlab", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="key = value configuration file")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (fallback: $QTL_THREADS)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest = RunManifest(args.command, args.config, str(out))

    try:
        cfg = parse_config(args.config)
        threads = _threads(args.threads)
        if threads is not None:
            if threads < 1:
                raise ConfigError(f"thread count must be >= 1, got {threads}")
            cfg = with_threads(cfg, threads)
    except (ConfigError, ValueError) as exc:
        manifest.exit_code = EXIT_USAGE
        manifest.error = str(exc)
        print(f"error: {exc}", file=sys.stderr)
        manifest.write()
        return EXIT_USAGE

    try:
        _run(args.command, cfg, out, manifest)
    except Exception as exc:  # noqa: BLE001 - reported through exit code and manifest
        log.exception("command failed")
        manifest.exit_code = EXIT_RUNTIME
        manifest.error = f"{type(exc).__name__}: {exc}"
        print(f"error: {manifest.error}", file=sys.stderr)
    manifest.write()
    return manifest.exit_code


if __name__ == "__main__":
    sys.exit(main())
