"""zetalab: desk-scale numerical experiments around critical-line mean squares.

The package provides an evaluator for |zeta(1/2+it)|^2 with two independent
routes (Riemann-Siegel and Euler-Maclaurin), smoothed short-interval sums,
a truncated divisor expansion with an explicit oscillating phase, Poisson /
stationary-phase machinery, exponential-sum bounds, and exact diagonal
classification for fourth-moment quadruples.  Every analytic identity that
the library implements is cross-checked numerically by the test suite.
"""

__version__ = "0.1.0"

from .errors import (
    ZetalabError,
    ValidationError,
    ConvergenceError,
    PrecisionError,
)

__all__ = [
    "ZetalabError",
    "ValidationError",
    "ConvergenceError",
    "PrecisionError",
    "__version__",
]
