"""Small value types shared by the resonator models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .numerics import PvIntegrand, pv_integral
from .specfun import DomainError

__all__ = ["BetaKernel", "ChannelPart", "DomainError", "ScatterSolution", "sinc_overlap"]


@dataclass(frozen=True)
class ScatterSolution:
    """Exact scattering state at real wavenumber ``k``.

    ``field`` evaluates the state at a position (array-friendly).
    """

    k: float
    s: complex
    strength: complex
    field: Callable = field(repr=False, compare=False)


@dataclass(frozen=True)
class ChannelPart:
    """One term ``coeff(k') * w(k' x)`` of a channel mode, ``w`` in {sin, cos}."""

    weight: str
    coeff: Callable[[float], complex]


@dataclass(frozen=True)
class BetaKernel:
    """Channel coefficient ``beta(k, k') = delta_coeff delta(k'-k) + PV pv_part(k')/(k'^2-k^2)``.

    ``channel`` splits the channel mode ``nu(k', x)`` into sin/cos parts so
    the exterior integral can use oscillatory quadrature.
    """

    k: float
    delta_coeff: complex
    pv_part: Callable[[float], complex] = field(repr=False)
    channel: Sequence[ChannelPart] = field(repr=False, default=())

    def channel_mode(self, kp: float, x: float) -> complex:
        out = 0.0j
        for part in self.channel:
            w = math.sin(kp * x) if part.weight == "sin" else math.cos(kp * x)
            out += part.coeff(kp) * w
        return out

    def exterior_field(self, x: float, quad_tol: float = 1e-9) -> complex:
        """``int beta(k, k') nu(k', x) dk'``: delta term plus principal value."""
        if x <= 0.0:
            raise DomainError(f"exterior position must be > 0, got {x}")
        total = self.delta_coeff * self.channel_mode(self.k, x)
        tol = quad_tol / max(1, len(self.channel))
        for part in self.channel:
            pv = self.pv_part
            c = part.coeff
            g = PvIntegrand(lambda kp, pv=pv, c=c: pv(kp) * c(kp), self.k, 0.0, math.inf,
                            (part.weight, float(x)))
            total += pv_integral(g, tol)
        return total


def sinc_overlap(a: float, b, length: float):
    """``int_0^length sin(a u) sin(b u) du`` in a form that is smooth at ``a = b``."""
    b = np.asarray(b, dtype=float) if not isinstance(b, (float, int)) else float(b)
    d = a - b
    s = a + b
    # sin(d L)/d = L sinc(d L / pi) with numpy's normalised sinc
    return 0.5 * length * (np.sinc(d * length / math.pi) - np.sinc(s * length / math.pi))
