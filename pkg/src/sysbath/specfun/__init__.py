"""Cylinder functions of integer order: J, Y, H1, H2, derivatives and zeros.

The compiled kernel is used when available; set ``SYSBATH_PURE_PYTHON=1`` to
force the pure-Python fallback.  ``BACKEND`` reports the active choice.
"""

from .core import (
    BACKEND,
    MAX_IMAG,
    MAX_ORDER,
    BesselZero,
    CylSet,
    DomainError,
    bessel_j,
    bessel_j_zero,
    bessel_j_zeros,
    bessel_y,
    cyl_array,
    cyl_deriv,
    cyl_set,
    cyl_value_deriv,
    hankel,
    mcmahon_zero,
)

__all__ = [
    "BACKEND",
    "MAX_IMAG",
    "MAX_ORDER",
    "BesselZero",
    "CylSet",
    "DomainError",
    "bessel_j",
    "bessel_j_zero",
    "bessel_j_zeros",
    "bessel_y",
    "cyl_array",
    "cyl_deriv",
    "cyl_set",
    "cyl_value_deriv",
    "hankel",
    "mcmahon_zero",
]
