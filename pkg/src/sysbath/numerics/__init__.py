"""Root finding, principal-value quadrature and tail-corrected series sums."""

from .quadrature import (
    PvIntegrand,
    PvResult,
    PvToleranceError,
    gl_nodes_weights,
    gl_panels,
    pv_cauchy_reference,
    pv_integral,
)
from .roots import (
    BoundaryRootError,
    ConvergenceError,
    RootCountError,
    SearchRegion,
    cauchy_derivative,
    newton_complex,
    roots_in_region,
    winding_number,
)
from .series import SeriesSum, series_sum_tail

__all__ = [
    "BoundaryRootError",
    "ConvergenceError",
    "PvIntegrand",
    "PvResult",
    "PvToleranceError",
    "RootCountError",
    "SearchRegion",
    "SeriesSum",
    "cauchy_derivative",
    "gl_nodes_weights",
    "gl_panels",
    "newton_complex",
    "pv_cauchy_reference",
    "pv_integral",
    "roots_in_region",
    "series_sum_tail",
    "winding_number",
]
