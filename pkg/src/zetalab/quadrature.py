"""Adaptive composite Gauss-Legendre quadrature plus a Simpson cross-check.

The primary engine uses 7-point Gauss-Legendre panels.  Callers provide a
vectorised integrand f(x: ndarray) -> ndarray (real or complex) and may
provide an initial panel width, either a float or a callable width(t), so
oscillatory integrands start out resolved (the convention throughout the
package is at most ~1/10 of the local period per initial panel).  Panels
whose split-in-two estimate disagrees with the whole-panel value are
subdivided until the global tolerance is met or the panel budget is
exhausted (ConvergenceError, carrying the partial value).

The final reduction sums accepted panels in ascending position order with
math.fsum, so a given panel decomposition reduces bit-identically no matter
how the work was scheduled.

Simpson-with-doubling is provided as an independent cross-check scheme and
is never used as the primary route.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConvergenceError, ValidationError

_GL_NODES, _GL_WEIGHTS = leggauss(7)

_MAX_INITIAL_PANELS = 2_000_000


def build_edges(a: float, b: float, width) -> np.ndarray:
    """Panel edges from a to b with local width `width` (float or callable)."""
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ValidationError(f"bad interval [{a}, {b}]")
    if callable(width):
        edges = [a]
        t = a
        guard = 0
        while t < b:
            w = float(width(t))
            if not w > 0.0:
                raise ValidationError(f"panel width must be positive, got {w} at t={t}")
            t = min(b, t + w)
            edges.append(t)
            guard += 1
            if guard > _MAX_INITIAL_PANELS:
                raise ValidationError("initial panel count exceeds budget; widen panels")
        return np.asarray(edges)
    w = float(width)
    if not w > 0.0:
        raise ValidationError(f"panel width must be positive, got {w}")
    n = max(1, int(math.ceil((b - a) / w)))
    if n > _MAX_INITIAL_PANELS:
        raise ValidationError("initial panel count exceeds budget; widen panels")
    return np.linspace(a, b, n + 1)


def _panel_values(f: Callable, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """GL7 values of many panels at once; lo/hi are 1-d arrays of edges."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    # nodes laid out panel-major so f sees one flat array
    x = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    y = np.asarray(f(x))
    y = y.reshape(len(lo), len(_GL_NODES))
    return (y @ _GL_WEIGHTS) * half


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    initial_width=None,
    max_panels: int = 400_000,
):
    """Integral of f over [a, b] by adaptive composite GL7.

    Returns the value (float or complex, following the integrand).  The
    per-panel acceptance threshold is max(abs_tol, rel_tol * scale) scaled
    by panel length over total length, where scale is the running estimate
    of |integral| (floored by the L1 mass estimate times rel_tol to keep
    oscillatory near-cancellations from demanding impossible precision).
    """
    if a == b:
        return 0.0
    if a > b:
        raise ValidationError(f"bad interval [{a}, {b}]")
    if rel_tol <= 0.0 and abs_tol <= 0.0:
        raise ValidationError("one of rel_tol, abs_tol must be positive")

    edges = build_edges(a, b, initial_width if initial_width is not None else (b - a))
    lo0, hi0 = edges[:-1], edges[1:]
    vals0 = _panel_values(f, lo0, hi0)
    l1_mass = float(np.sum(np.abs(vals0)))
    total_est = complex(np.sum(vals0))

    # LIFO stack keeps the refinement order deterministic
    stack = list(zip(lo0.tolist(), hi0.tolist(), vals0.tolist()))
    stack.reverse()
    accepted: list[tuple[float, complex]] = []
    n_processed = 0
    length = b - a

    while stack:
        x0, x1, parent = stack.pop()
        n_processed += 1
        if n_processed > max_panels:
            accepted.append((x0, complex(parent)))
            accepted.extend((s0, complex(v)) for (s0, _s1, v) in stack)
            partial = _reduce(accepted)
            raise ConvergenceError(
                f"quadrature exhausted {max_panels} panels on [{a}, {b}]",
                partial=partial.real if partial.imag == 0.0 else partial,
            )
        xm = 0.5 * (x0 + x1)
        pair = _panel_values(f, np.array([x0, xm]), np.array([xm, x1]))
        refined = complex(pair[0] + pair[1])
        err = abs(refined - complex(parent))
        scale = max(abs(total_est), rel_tol * l1_mass)
        tol_here = max(abs_tol, rel_tol * scale) * max((x1 - x0) / length, 1e-12)
        if err <= tol_here or (x1 - x0) <= 1e-14 * max(abs(x0), 1.0):
            total_est += refined - complex(parent)
            accepted.append((x0, complex(pair[0])))
            accepted.append((xm, complex(pair[1])))
        else:
            total_est += refined - complex(parent)
            stack.append((xm, x1, complex(pair[1])))
            stack.append((x0, xm, complex(pair[0])))

    value = _reduce(accepted)
    if abs(value.imag) == 0.0:
        return value.real
    return value


def _reduce(accepted: Sequence[tuple[float, complex]]) -> complex:
    ordered = sorted(accepted, key=lambda p: p[0])
    re = math.fsum(v.real for _, v in ordered)
    im = math.fsum(v.imag for _, v in ordered)
    return complex(re, im)


def integrate_simpson(
    f: Callable,
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    n_start: int = 64,
    max_nodes: int = 8_000_000,
):
    """Composite Simpson with mesh doubling until successive values agree.

    Independent of the GL engine: different nodes, weights and refinement
    logic.  Used only as a cross-check oracle.  Agreement means
    |val - prev| <= max(rel_tol * |val|, abs_tol); the true error of the
    returned value is roughly a fifteenth of that last difference.
    """
    if a == b:
        return 0.0
    if a > b:
        raise ValidationError(f"bad interval [{a}, {b}]")
    if rel_tol <= 0.0 and abs_tol <= 0.0:
        raise ValidationError("one of rel_tol, abs_tol must be positive")
    n = max(4, int(n_start))
    if n % 2:
        n += 1
    prev = None
    while True:
        x = np.linspace(a, b, n + 1)
        y = np.asarray(f(x))
        h = (b - a) / n
        w = np.ones(n + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        val = complex(h / 3.0 * np.sum(w * y))
        if prev is not None:
            scale = max(abs(val), 1e-300)
            if abs(val - prev) <= max(rel_tol * scale, abs_tol):
                return val.real if val.imag == 0.0 else val
        prev = val
        n *= 2
        if n > max_nodes:
            raise ConvergenceError(
                f"Simpson mesh exceeded {max_nodes} nodes on [{a}, {b}]",
                partial=prev.real if prev.imag == 0.0 else prev,
            )


def fixed_gl_panels(f: Callable, edges: np.ndarray):
    """Non-adaptive composite GL7 over the given edges (vectorised, ordered fsum)."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValidationError("edges must be a strictly increasing 1-d array")
    vals = _panel_values(f, edges[:-1], edges[1:])
    re = math.fsum(np.real(vals).tolist())
    im = math.fsum(np.imag(vals).tolist())
    if im == 0.0:
        return re
    return complex(re, im)
