"""System-and-bath mode expansions for open optical resonators.

Models: :mod:`sysbath.slab`, :mod:`sysbath.mirror`, :mod:`sysbath.disk`.
Shared machinery lives in :mod:`sysbath.engine`; the numerical kernels in
:mod:`sysbath.specfun` and :mod:`sysbath.numerics`.
"""

from . import disk, engine, mirror, numerics, slab, specfun
from .specfun import BACKEND, DomainError

__version__ = "0.1.0"

__all__ = ["BACKEND", "DomainError", "disk", "engine", "mirror", "numerics", "slab", "specfun"]
