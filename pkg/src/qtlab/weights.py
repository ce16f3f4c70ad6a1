"""Smooth bump weights and their integral transforms.

The weight family is ``amplitude * exp(-1/(x-a) - 1/(b-x))`` on ``(a, b)``,
zero elsewhere.  All derivatives vanish at both endpoints, so a plain
adaptive Gauss-Legendre panel rule converges without endpoint treatment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "BumpWeight",
    "QuadratureSpec",
    "QuadratureResult",
    "ConvergenceError",
    "adaptive_quad",
    "integrate",
    "integrate_square",
    "tilde_transform",
    "tilde_transform_many",
    "mellin_transform",
    "h1_tilde",
    "h1_tilde_11",
    "h1_tilde_11_direct",
    "h1_tilde_11_literal",
    "h1_tilde_11_literal_direct",
]

GL_ORDER = 20
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


@dataclass(frozen=True)
class BumpWeight:
    a: float = 1.0
    b: float = 2.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"support must lie in (0, inf), got a={self.a}")
        if not self.b > self.a:
            raise ValueError(f"need b > a, got ({self.a}, {self.b})")
        # amplitude 0 is allowed as the degenerate zero weight
        if not self.amplitude >= 0:
            raise ValueError(f"amplitude must be non-negative, got {self.amplitude}")

    def __call__(self, x: float) -> float:
        """Scalar evaluation; the mean-square engines rely on this exact path."""
        if not self.a < x < self.b:
            return 0.0
        return self.amplitude * math.exp(-1.0 / (x - self.a) - 1.0 / (self.b - x))

    def values(self, xs) -> np.ndarray:
        """Vectorized evaluation for quadrature (may differ from ``__call__`` in the last ulp)."""
        x = np.asarray(xs, dtype=float)
        inside = (x > self.a) & (x < self.b)
        out = np.zeros_like(x)
        xi = x[inside]
        out[inside] = self.amplitude * np.exp(-1.0 / (xi - self.a) - 1.0 / (self.b - xi))
        return out

    def sample(self, xs: Sequence[float]) -> np.ndarray:
        return np.array([self(float(x)) for x in xs], dtype=float)

    def shifted(self, offset: float) -> BumpWeight:
        return BumpWeight(self.a + offset, self.b + offset, self.amplitude)

    def scaled(self, factor: float) -> BumpWeight:
        return BumpWeight(self.a, self.b, self.amplitude * factor)


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_depth: int = 40

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")

    def halved(self) -> QuadratureSpec:
        return QuadratureSpec(self.abs_tol / 2, self.rel_tol / 2, self.max_depth)


@dataclass(frozen=True)
class QuadratureResult:
    value: float | np.ndarray
    error: float
    panels: int


class ConvergenceError(RuntimeError):
    def __init__(self, estimate, error):
        super().__init__(f"quadrature did not converge: estimate={estimate!r}, error bound={error:.3e}")
        self.estimate = estimate
        self.error = error


def _panel(func, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * (func(mid + half * _NODES) @ _WEIGHTS)


def adaptive_quad(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    spec: QuadratureSpec,
    initial_panels: int = 1,
) -> QuadratureResult:
    """Adaptive bisection with a fixed-order Gauss-Legendre panel rule.

    ``func`` maps an array of nodes to values of shape ``(nodes,)`` or
    ``(components, nodes)``; vector integrands share one mesh and a panel is
    accepted only when every component meets the tolerance.

    A panel is accepted when the one-panel and two-half-panel estimates
    differ by at most ``max(abs_tol * width / (hi - lo), rel_tol * |halves|)``.
    The finer estimate is kept; ``error`` is the sum of accepted differences.
    """
    width_total = hi - lo
    if width_total <= 0:
        raise ValueError("need lo < hi")
    edges = np.linspace(lo, hi, max(1, initial_panels) + 1)
    stack = [(edges[i], edges[i + 1], _panel(func, edges[i], edges[i + 1]), 0) for i in range(len(edges) - 1)]
    stack.reverse()
    total = 0.0
    err = 0.0
    panels = 0
    failed = False
    while stack:
        l, r, whole, depth = stack.pop()
        m = 0.5 * (l + r)
        left = _panel(func, l, m)
        right = _panel(func, m, r)
        halves = left + right
        diff = float(np.max(np.abs(halves - whole)))
        tol = max(spec.abs_tol * (r - l) / width_total, spec.rel_tol * float(np.max(np.abs(halves))))
        if diff <= tol or depth >= spec.max_depth:
            if diff > tol:
                failed = True
            total = total + halves
            err += diff
            panels += 1
        else:
            stack.append((m, r, right, depth + 1))
            stack.append((l, m, left, depth + 1))
    if failed:
        raise ConvergenceError(total, err)
    return QuadratureResult(total, err, panels)


def integrate(f: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫ f`` over its support."""
    if f.amplitude == 0:
        return 0.0
    return float(adaptive_quad(f.values, f.a, f.b, spec).value)


def integrate_square(f: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫ f(x)^2 dx``."""
    if f.amplitude == 0:
        return 0.0
    return float(adaptive_quad(lambda x: f.values(x) ** 2, f.a, f.b, spec).value)


def _oscillation_panels(f: BumpWeight, xi_max: float) -> int:
    # at most one period of cos(2 pi xi x) per starting panel
    return max(1, math.ceil(abs(xi_max) * (f.b - f.a)))


def tilde_transform_many(f: BumpWeight, xis, spec: QuadratureSpec = QuadratureSpec()) -> np.ndarray:
    """``∫ (cos(2 pi xi x) + sin(2 pi xi x)) f(x) dx`` for every ``xi`` in ``xis`` on one mesh."""
    xis = np.atleast_1d(np.asarray(xis, dtype=float))
    if xis.size == 0:
        return np.zeros(0)
    if f.amplitude == 0:
        return np.zeros_like(xis)
    w = 2 * np.pi * xis[:, None]

    def integrand(x):
        # cos t + sin t = sqrt(2) sin(t + pi/4)
        return np.sin(w * x[None, :] + np.pi / 4) * (math.sqrt(2) * f.values(x))[None, :]

    res = adaptive_quad(integrand, f.a, f.b, spec, _oscillation_panels(f, np.max(np.abs(xis))))
    return np.asarray(res.value, dtype=float)


def tilde_transform(f: BumpWeight, xi: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    return float(tilde_transform_many(f, [xi], spec)[0])


def mellin_transform(func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, s: float,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫_lo^hi func(y) y^(s-1) dy`` for real ``s``; ``func`` must vanish off ``(lo, hi)``."""
    return float(adaptive_quad(lambda y: func(y) * y ** (s - 1), lo, hi, spec).value)


def h1_tilde(W: BumpWeight, Phi: BumpWeight, u: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Mellin transform at ``u`` of the diagonal ``y -> ∫ h(xX, yY, yY) dx``.

    With ``h(x, y, z) = W(x/X) Phi(y/Y) Phi(z/Y)`` this is
    ``∫W * ∫ Phi(y)^2 y^(u-1) dy``.
    """
    return integrate(W, spec) * mellin_transform(lambda y: Phi.values(y) ** 2, Phi.a, Phi.b, u, spec)


def h1_tilde_11(W: BumpWeight, Phi: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Main-term functional at ``u = 1``: ``∫W * ∫Phi^2``."""
    return integrate(W, spec) * integrate_square(Phi, spec)


def _iterated(func, boxes, spec, prefix=()):
    """Iterated adaptive quadrature of ``func(*outer_scalars, inner_array)`` over a box."""
    lo, hi = boxes[0]
    if len(boxes) == 1:
        return float(adaptive_quad(lambda t: func(*prefix, t), lo, hi, spec).value)

    def slice_integrals(ts):
        return np.array([_iterated(func, boxes[1:], spec, prefix + (float(t),)) for t in ts])

    return float(adaptive_quad(slice_integrals, lo, hi, spec).value)


def h1_tilde_11_direct(W: BumpWeight, Phi: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫∫ h(x, y, y) dx dy`` as a genuine two-dimensional quadrature."""
    return _iterated(lambda x, ys: W(x) * Phi.values(ys) * Phi.values(ys), [(W.a, W.b), (Phi.a, Phi.b)], spec)


def h1_tilde_11_literal(W: BumpWeight, Phi: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫W * (∫Phi)^2``, the full triple integral of ``W(x) Phi(y) Phi(z)``.

    Kept for comparison; the mean square does not converge to the main term
    built from this functional.
    """
    return integrate(W, spec) * integrate(Phi, spec) ** 2


def h1_tilde_11_literal_direct(W: BumpWeight, Phi: BumpWeight, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``∫∫∫ W(x) Phi(y) Phi(z)`` by three nested adaptive quadratures."""
    box = [(W.a, W.b), (Phi.a, Phi.b), (Phi.a, Phi.b)]
    return _iterated(lambda x, y, zs: W(x) * Phi(y) * Phi.values(zs), box, spec)
