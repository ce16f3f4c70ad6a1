"""Flat ``key = value`` run configuration.

Blank lines and ``#`` comments are ignored.  Lists are comma separated.
Every key has a default, so an empty file is a complete configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .meansquare import ExperimentConfig, YRule
from .weights import BumpWeight, QuadratureSpec

__all__ = ["ConfigError", "RunConfig", "parse_config", "parse_config_text", "DEFAULTS"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    experiment: ExperimentConfig = field(default_factory=lambda: ExperimentConfig(X_values=(1e3, 1e4, 1e5)))
    gauss_k_max: int = 999
    gauss_m_max: int = 50
    gauss_mult_max: int = 99
    gauss_mult_m_max: int = 30
    gauss_g0_k_max: int = 9999
    poisson_n_max: int = 99
    poisson_X_values: tuple[float, ...] = (10.0, 100.0)
    poisson_tol: float = 1e-12
    z_series_u: tuple[float, ...] = (2.0, 3.0)
    z_series_limit: int = 10**6
    z2_prime_limits: tuple[int, ...] = (10**3, 10**4, 10**5, 10**6, 10**7)
    euler_primes: tuple[int, ...] = (3, 5, 7, 11)
    euler_k2_max: int = 20


# defaults, written as they would appear in a config file
DEFAULTS = {
    "X_values": "1000, 10000, 100000",
    "Y_rule": "power 0.5",
    "W_a": "1", "W_b": "2", "W_amplitude": "1",
    "Phi_a": "1", "Phi_b": "2", "Phi_amplitude": "1",
    "abs_tol": "1e-13", "rel_tol": "1e-12", "max_depth": "40",
    "thread_count": "1",
    "prime_limit": "1000000",
    "inner_scale": "Y",
    "main_functional": "diagonal",
    "gauss_k_max": "999", "gauss_m_max": "50", "gauss_mult_max": "99", "gauss_mult_m_max": "30",
    "gauss_g0_k_max": "9999",
    "poisson_n_max": "99", "poisson_X_values": "10, 100", "poisson_tol": "1e-12",
    "z_series_u": "2, 3", "z_series_limit": "1000000",
    "z2_prime_limits": "1000, 10000, 100000, 1000000, 10000000",
    "euler_primes": "3, 5, 7, 11", "euler_k2_max": "20",
}


def _int(text: str) -> int:
    v = float(text)
    if not v.is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(_int(t) for t in text.split(",") if t.strip())


def _y_rule(text: str) -> YRule:
    parts = text.split()
    if len(parts) != 2 or parts[0] not in ("fixed", "power"):
        raise ValueError(f"Y_rule must be 'fixed <Y>' or 'power <theta>', got {text!r}")
    return YRule(parts[0], float(parts[1]))


def _choice(*options):
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {options}, got {text!r}")
        return text

    return parse


_PARSERS = {
    "X_values": _floats, "Y_rule": _y_rule,
    "W_a": float, "W_b": float, "W_amplitude": float,
    "Phi_a": float, "Phi_b": float, "Phi_amplitude": float,
    "abs_tol": float, "rel_tol": float, "max_depth": _int,
    "thread_count": _int, "prime_limit": _int,
    "inner_scale": _choice("X", "Y"), "main_functional": _choice("diagonal", "literal"),
    "gauss_k_max": _int, "gauss_m_max": _int, "gauss_mult_max": _int, "gauss_mult_m_max": _int,
    "gauss_g0_k_max": _int,
    "poisson_n_max": _int, "poisson_X_values": _floats, "poisson_tol": float,
    "z_series_u": _floats, "z_series_limit": _int, "z2_prime_limits": _ints,
    "euler_primes": _ints, "euler_k2_max": _int,
}


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    values = {k: _PARSERS[k](v) for k, v in DEFAULTS.items()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {key}: {exc}") from None

    try:
        experiment = ExperimentConfig(
            X_values=values["X_values"],
            Y_rule=values["Y_rule"],
            W=BumpWeight(values["W_a"], values["W_b"], values["W_amplitude"]),
            Phi=BumpWeight(values["Phi_a"], values["Phi_b"], values["Phi_amplitude"]),
            quadrature=QuadratureSpec(values["abs_tol"], values["rel_tol"], values["max_depth"]),
            thread_count=values["thread_count"],
            prime_limit=values["prime_limit"],
            inner_scale=values["inner_scale"],
            main_functional=values["main_functional"],
        )
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    suite = {k: values[k] for k in RunConfig.__dataclass_fields__ if k != "experiment"}
    return RunConfig(experiment=experiment, **suite)


def parse_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text(), str(path))


def with_threads(cfg: RunConfig, threads: int) -> RunConfig:
    return replace(cfg, experiment=replace(cfg.experiment, thread_count=threads))
