"""One-dimensional dielectric slab on a perfect mirror.

Geometry: ``eps(x) = n^2`` on ``-l < x < 0`` with a perfect mirror at
``x = -l``, vacuum for ``x > 0``.  Two ways of splitting space into cavity
and channel are provided:

* :attr:`BcVariant.NEUMANN`: cavity modes with zero slope at ``0-``,
  channel modes vanishing at ``0+``;
* :attr:`BcVariant.DIRICHLET`: the interchange.

Wavenumbers are physical; with the default ``l = 1`` they equal ``k l``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._types import BetaKernel, ChannelPart, DomainError, ScatterSolution, sinc_overlap

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_NU = math.sqrt(2.0 / math.pi)


class BcVariant(str, Enum):
    """Boundary conditions imposed on the cavity side of ``x = 0``."""

    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class SlabParams:
    """Refractive index ``n`` and slab length ``l``."""

    n: float
    l: float = 1.0

    def __post_init__(self):
        if not (self.n > 0 and self.l > 0):
            raise DomainError(f"need n > 0 and l > 0, got n={self.n}, l={self.l}")


def _bc(bc) -> BcVariant:
    return BcVariant(bc)


def _cs(p: SlabParams, k):
    a = p.n * k * p.l
    if isinstance(k, complex):
        return cmath.cos(a), cmath.sin(a)
    return math.cos(a), math.sin(a)


# ------------------------------------------------------------ exact solution

def s_matrix(p: SlabParams, k) -> complex:
    """``S = -(n cos(nkl) + i sin(nkl)) / (n cos(nkl) - i sin(nkl))``."""
    c, s = _cs(p, k)
    return -(p.n * c + 1j * s) / (p.n * c - 1j * s)


def mode_strength(p: SlabParams, k) -> complex:
    """Interior amplitude ``I = -2 i n / (n cos(nkl) - i sin(nkl))``."""
    c, s = _cs(p, k)
    return -2j * p.n / (p.n * c - 1j * s)


def s_pole_denominator(p: SlabParams, k) -> complex:
    """``n cos(nkl) - i sin(nkl)``, whose zeros are the poles of S."""
    c, s = _cs(p, k)
    return p.n * c - 1j * s


def exact_field(p: SlabParams, k: float, x):
    """Scattering state ``f(k, x)`` for ``x >= -l`` (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < -p.l):
        raise DomainError(f"position below the mirror at x = -{p.l}")
    strength = mode_strength(p, k)
    s = s_matrix(p, k)
    inside = strength / p.n * np.sin(p.n * k * (xa + p.l))
    outside = np.exp(-1j * k * xa) + s * np.exp(1j * k * xa)
    out = np.where(xa < 0.0, inside, outside) / _SQRT_2PI
    return complex(out) if out.ndim == 0 else out


def exact_field_dx(p: SlabParams, k: float, x, side: int = 0):
    """``df/dx``; ``side=-1`` or ``+1`` picks the one-sided value at ``x = 0``."""
    xa = np.asarray(x, dtype=float)
    strength = mode_strength(p, k)
    s = s_matrix(p, k)
    inside = strength * k * np.cos(p.n * k * (xa + p.l))
    outside = 1j * k * (-np.exp(-1j * k * xa) + s * np.exp(1j * k * xa))
    use_in = (xa < 0.0) | ((xa == 0.0) & (side < 0))
    out = np.where(use_in, inside, outside) / _SQRT_2PI
    return complex(out) if out.ndim == 0 else out


def scatter(p: SlabParams, k: float) -> ScatterSolution:
    return ScatterSolution(k, s_matrix(p, k), mode_strength(p, k),
                           lambda x: exact_field(p, k, x))


# ---------------------------------------------------------- cavity / channel

def _check_index(bc: BcVariant, lam: int) -> int:
    lo = 0 if bc is BcVariant.NEUMANN else 1
    if int(lam) != lam or lam < lo:
        raise DomainError(f"mode index for the {bc.value} variant starts at {lo}, got {lam}")
    return int(lam)


def first_index(bc) -> int:
    return 0 if _bc(bc) is BcVariant.NEUMANN else 1


def cavity_eigen_k(p: SlabParams, bc, lam: int) -> float:
    """``(2 lam + 1) pi / (2 n l)`` (Neumann) or ``lam pi / (n l)`` (Dirichlet)."""
    bc = _bc(bc)
    lam = _check_index(bc, lam)
    if bc is BcVariant.NEUMANN:
        return (2 * lam + 1) * math.pi / (2.0 * p.n * p.l)
    return lam * math.pi / (p.n * p.l)


def cavity_eigen_k_continuous(p: SlabParams, bc, lam: float) -> float:
    """Eigenwavenumber formula at a real index, for tail integrals."""
    if _bc(bc) is BcVariant.NEUMANN:
        return (2.0 * lam + 1.0) * math.pi / (2.0 * p.n * p.l)
    return lam * math.pi / (p.n * p.l)


def cavity_mode(p: SlabParams, bc, lam: int, x):
    """``sqrt(2/l) sin(n k_lam (x + l))`` on ``[-l, 0]``."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < -p.l) | (xa > 0.0)):
        raise DomainError("cavity modes live on [-l, 0]")
    kl = cavity_eigen_k(p, bc, lam)
    out = math.sqrt(2.0 / p.l) * np.sin(p.n * kl * (xa + p.l))
    return float(out) if out.ndim == 0 else out


def channel_mode(p: SlabParams, bc, k: float, x):
    """``sqrt(2/pi) sin(kx)`` (Neumann variant) or ``sqrt(2/pi) cos(kx)``."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0):
        raise DomainError("channel modes live on x >= 0")
    f = np.sin if _bc(bc) is BcVariant.NEUMANN else np.cos
    out = _NU * f(k * xa)
    return float(out) if out.ndim == 0 else out


def coupling_w(p: SlabParams, bc, lam: int, k: float) -> float:
    """System-bath coupling ``W_lam(k)``; real, and equal to ``V_lam(k)``."""
    bc = _bc(bc)
    kl = cavity_eigen_k(p, bc, lam)
    if bc is BcVariant.NEUMANN:
        return (-1) ** (lam + 1) / p.n * math.sqrt(k / (math.pi * kl * p.l))
    return (-1) ** lam * math.sqrt(kl / (math.pi * k * p.l))


coupling_v = coupling_w

NEAR_POLE = 1e-8


def alpha(p: SlabParams, bc, lam: int, k: float) -> complex:
    """Cavity expansion coefficient ``alpha_lam(k) = <mu_lam | n f(k)>``.

    Within ``|k - k_lam| l < 1e-8`` the pole-free overlap form is used.
    """
    bc = _bc(bc)
    kl = cavity_eigen_k(p, bc, lam)
    strength = mode_strength(p, k)
    if abs(k - kl) * p.l < NEAR_POLE:
        return strength / math.sqrt(math.pi * p.l) * sinc_overlap(p.n * kl, p.n * k, p.l)
    c, s = _cs(p, k)
    den = p.n * math.sqrt(math.pi * p.l) * (k * k - kl * kl)
    if bc is BcVariant.NEUMANN:
        return (-1) ** (lam + 1) * strength * k * c / den
    return (-1) ** lam * strength * kl * s / den


def alpha_sq_tail(p: SlabParams, bc, k: float):
    """Continuous extension ``lam -> |alpha_lam(k)|^2`` for tail integrals."""
    bc = _bc(bc)
    strength = mode_strength(p, k)
    c, s = _cs(p, k)
    pref = abs(strength) ** 2 / (p.n**2 * math.pi * p.l)

    def f(lam: float) -> float:
        kl = cavity_eigen_k_continuous(p, bc, lam)
        num = (k * c) ** 2 if bc is BcVariant.NEUMANN else (kl * s) ** 2
        return pref * num / (k * k - kl * kl) ** 2

    return f


def beta_kernel(p: SlabParams, bc, k: float) -> BetaKernel:
    """Channel coefficient kernel for the chosen variant."""
    bc = _bc(bc)
    s = s_matrix(p, k)
    if bc is BcVariant.NEUMANN:
        return BetaKernel(
            k,
            -0.5j * (1.0 - s),
            lambda kp: 2.0 * kp * (1.0 + s) / (2.0 * math.pi),
            (ChannelPart("sin", lambda kp: _NU),),
        )
    return BetaKernel(
        k,
        0.5 * (1.0 + s),
        lambda kp: 1j * 2.0 * k * (1.0 - s) / (2.0 * math.pi),
        (ChannelPart("cos", lambda kp: _NU),),
    )


# ---------------------------------------------------------------- resonances

def resonance_condition(p: SlabParams, kc) -> complex:
    """``tan(n kc l) + i n`` written as ``(sin + i n cos)/cos``."""
    kc = complex(kc)
    c, s = _cs(p, kc)
    return (s + 1j * p.n * c) / c


def secular_function(p: SlabParams, kc) -> complex:
    """Entire form ``sin(n kc l) + i n cos(n kc l)`` of the resonance condition."""
    c, s = _cs(p, complex(kc))
    return s + 1j * p.n * c


def analytic_resonances(p: SlabParams, j: int) -> complex:
    """Closed-form resonance ``k_j``; ``j >= 0`` for ``n > 1``, ``j >= 1`` for ``n < 1``."""
    if p.n == 1.0:
        raise DomainError("an index-matched slab has no resonances")
    r = (p.n - 1.0) / (p.n + 1.0)
    lo = 0 if p.n > 1.0 else 1
    if int(j) != j or j < lo:
        raise DomainError(f"resonance index starts at {lo} for n = {p.n}")
    re = (2 * j + 1) * math.pi / 2.0 if p.n > 1.0 else j * math.pi
    return complex(re, 0.5 * math.log(abs(r))) / (p.n * p.l)


def siegert_residual(p: SlabParams, kc, bc=BcVariant.NEUMANN) -> complex:
    """Outgoing-wave condition at ``0-`` for ``xi = sin(n kc (x + l))``.

    The Neumann-variant operator gives ``xi' - i kc xi``; the Dirichlet
    variant gives ``xi - xi' / (i kc)``, which is rescaled by ``-i kc`` so
    both return the same number.
    """
    kc = complex(kc)
    c, s = _cs(p, kc)
    xi = s
    dxi = p.n * kc * c
    if _bc(bc) is BcVariant.NEUMANN:
        return dxi - 1j * kc * xi
    return -1j * kc * (xi - dxi / (1j * kc))


# ------------------------------------------------------------------ gain/LDOS

def ldos_cavity(p: SlabParams, bc, k: float) -> float:
    """Integrated ``eps |f|^2`` over the slab; identical for both variants."""
    _bc(bc)
    a = 2.0 * p.n * k * p.l
    return p.l * abs(mode_strength(p, k)) ** 2 / (4.0 * math.pi) * (1.0 - math.sin(a) / a)


def ldos_free(p: SlabParams, k: float) -> float:
    """Free-space value ``(l/pi)(1 - sin(2kl)/(2kl))`` of the same integral."""
    a = 2.0 * k * p.l
    return p.l / math.pi * (1.0 - math.sin(a) / a)


def gain_closed(p: SlabParams, k: float) -> float:
    """Cavity gain factor ``ldos_cavity / ldos_free`` in closed form."""
    c, s = _cs(p, k)
    a = 2.0 * p.n * k * p.l
    b = 2.0 * k * p.l
    return p.n**2 * (1.0 - math.sin(a) / a) / ((p.n**2 * c * c + s * s) * (1.0 - math.sin(b) / b))


def dielectric(p: SlabParams, x):
    xa = np.asarray(x, dtype=float)
    return np.where(xa < 0.0, p.n**2, 1.0)


def channel_green(p: SlabParams, bc, k: float, x: float, xp: float) -> complex:
    """Retarded Green function of the isolated channel at ``x, x' > 0``.

    The Neumann variant's channel has Dirichlet conditions at ``0+``:
    ``-(i/2k)(e^{ik|x-x'|} - e^{ik(x+x')})``; the Dirichlet variant's channel
    is Neumann and takes the plus sign.
    """
    if x < 0.0 or xp < 0.0:
        raise DomainError("channel Green function needs x, x' >= 0")
    sign = -1.0 if _bc(bc) is BcVariant.NEUMANN else 1.0
    return -0.5j / k * (cmath.exp(1j * k * abs(x - xp)) + sign * cmath.exp(1j * k * (x + xp)))
