"""One-dimensional cavity between a perfect mirror and a thin semitransparent mirror.

The cavity is ``-l < x < 0`` (vacuum inside), the perfect mirror sits at
``x = -l`` and an infinitely thin dielectric mirror of transparency length
``eta = n_m^2 d`` at ``x = 0``.  The mirror is assigned to the channel side,
so cavity modes obey Dirichlet conditions at both ends.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._types import BetaKernel, ChannelPart, DomainError, ScatterSolution, sinc_overlap

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class MirrorParams:
    """Transparency length ``eta >= 0`` and cavity length ``l``."""

    eta: float
    l: float = 1.0

    def __post_init__(self):
        if not (self.eta >= 0 and self.l > 0):
            raise DomainError(f"need eta >= 0 and l > 0, got eta={self.eta}, l={self.l}")


def _cs(p: MirrorParams, k):
    a = k * p.l
    if isinstance(k, complex):
        return cmath.cos(a), cmath.sin(a)
    return math.cos(a), math.sin(a)


def mirror_rt(p: MirrorParams, k: float) -> tuple[complex, complex]:
    """Reflection and transmission amplitudes of the thin mirror."""
    d = 2.0 - 1j * k * p.eta
    return 1j * k * p.eta / d, 2.0 / d


def s_matrix(p: MirrorParams, k) -> complex:
    """``(i - eta k + cot kl) / (i + eta k - cot kl)``, cleared of the cot pole."""
    c, s = _cs(p, k)
    ek = p.eta * k
    return ((1j - ek) * s + c) / ((1j + ek) * s - c)


def s_pole_denominator(p: MirrorParams, k) -> complex:
    """``(i + eta k) sin(kl) - cos(kl)``."""
    c, s = _cs(p, k)
    return (1j + p.eta * k) * s - c


def mode_strength(p: MirrorParams, k) -> complex:
    """``I = 2i / ((i + eta k) sin(kl) - cos(kl))``."""
    return 2j / s_pole_denominator(p, k)


def exact_field(p: MirrorParams, k: float, x):
    xa = np.asarray(x, dtype=float)
    if np.any(xa < -p.l):
        raise DomainError(f"position below the mirror at x = -{p.l}")
    strength = mode_strength(p, k)
    s = s_matrix(p, k)
    inside = strength * np.sin(k * (xa + p.l))
    outside = np.exp(-1j * k * xa) + s * np.exp(1j * k * xa)
    out = np.where(xa < 0.0, inside, outside) / _SQRT_2PI
    return complex(out) if out.ndim == 0 else out


def exact_field_dx(p: MirrorParams, k: float, x, side: int = 0):
    """``df/dx``; at ``x = 0`` choose the side with ``side = -1`` or ``+1``."""
    xa = np.asarray(x, dtype=float)
    strength = mode_strength(p, k)
    s = s_matrix(p, k)
    inside = strength * k * np.cos(k * (xa + p.l))
    outside = 1j * k * (-np.exp(-1j * k * xa) + s * np.exp(1j * k * xa))
    use_in = (xa < 0.0) | ((xa == 0.0) & (side < 0))
    out = np.where(use_in, inside, outside) / _SQRT_2PI
    return complex(out) if out.ndim == 0 else out


def scatter(p: MirrorParams, k: float) -> ScatterSolution:
    return ScatterSolution(k, s_matrix(p, k), mode_strength(p, k),
                           lambda x: exact_field(p, k, x))


# ---------------------------------------------------------- cavity / channel

def _check_index(lam) -> int:
    if int(lam) != lam or lam < 1:
        raise DomainError(f"cavity mode index starts at 1, got {lam}")
    return int(lam)


def cavity_eigen_k(p: MirrorParams, lam: int) -> float:
    return _check_index(lam) * math.pi / p.l


def cavity_mode(p: MirrorParams, lam: int, x):
    """``sqrt(2/l) sin(k_lam (x + l))`` on ``[-l, 0]``."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < -p.l) | (xa > 0.0)):
        raise DomainError("cavity modes live on [-l, 0]")
    out = math.sqrt(2.0 / p.l) * np.sin(cavity_eigen_k(p, lam) * (xa + p.l))
    return float(out) if out.ndim == 0 else out


def channel_s(p: MirrorParams, k) -> complex:
    """Channel reflection ``S_c = (i - eta k) / (i + eta k)``."""
    return (1j - p.eta * k) / (1j + p.eta * k)


def channel_mode(p: MirrorParams, k: float, x):
    """``(exp(-ikx) + S_c exp(ikx)) / sqrt(2 pi)`` for ``x >= 0``."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0):
        raise DomainError("channel modes live on x >= 0")
    out = (np.exp(-1j * k * xa) + channel_s(p, k) * np.exp(1j * k * xa)) / _SQRT_2PI
    return complex(out) if out.ndim == 0 else out


def coupling_w(p: MirrorParams, lam: int, k: float) -> complex:
    """``W = V = (-1)^lam / (1 - i eta k) * sqrt(k_lam / (pi k l))``."""
    kl = cavity_eigen_k(p, lam)
    return (-1) ** lam / (1.0 - 1j * p.eta * k) * math.sqrt(kl / (math.pi * k * p.l))


coupling_v = coupling_w

NEAR_POLE = 1e-8


def alpha(p: MirrorParams, lam: int, k: float) -> complex:
    """``(-1)^lam I k_lam sin(kl) / (sqrt(pi l) (k^2 - k_lam^2))``."""
    kl = cavity_eigen_k(p, lam)
    strength = mode_strength(p, k)
    if abs(k - kl) * p.l < NEAR_POLE:
        return strength / math.sqrt(math.pi * p.l) * sinc_overlap(kl, k, p.l)
    s = math.sin(k * p.l)
    return (-1) ** lam * strength * kl * s / (math.sqrt(math.pi * p.l) * (k * k - kl * kl))


def alpha_sq_tail(p: MirrorParams, k: float):
    """Continuous extension ``lam -> |alpha_lam(k)|^2``."""
    pref = abs(mode_strength(p, k)) ** 2 * math.sin(k * p.l) ** 2 / (math.pi * p.l)

    def f(lam: float) -> float:
        kl = lam * math.pi / p.l
        return pref * kl * kl / (k * k - kl * kl) ** 2

    return f


def beta_kernel(p: MirrorParams, k: float) -> BetaKernel:
    """Channel coefficients ``beta(k, k') = <nu(k') | f(k)>`` on ``x > 0``.

    ``(1/2pi) [pi (1 + Sc* S) delta(k'-k) + i (1 - Sc* S) / (k'-k)
    + i (S - Sc*) / (k'+k)]`` with ``Sc* = conj(S_c(k'))``; the two PV terms
    are merged over the common denominator ``k'^2 - k^2``.
    """
    s = s_matrix(p, k)
    sck = channel_s(p, k).conjugate()

    def pv_part(kp: float) -> complex:
        scc = channel_s(p, kp).conjugate()
        return 1j * ((1.0 - scc * s) * (kp + k) + (s - scc) * (kp - k)) / (2.0 * math.pi)

    # nu = [(1 + Sc) cos(k'x) + i (Sc - 1) sin(k'x)] / sqrt(2 pi)
    parts = (
        ChannelPart("cos", lambda kp: (1.0 + channel_s(p, kp)) / _SQRT_2PI),
        ChannelPart("sin", lambda kp: 1j * (channel_s(p, kp) - 1.0) / _SQRT_2PI),
    )
    return BetaKernel(k, 0.5 * (1.0 + sck * s), pv_part, parts)


# ---------------------------------------------------------------- resonances

def resonance_condition(p: MirrorParams, kc) -> complex:
    """Cleared pole condition ``(i + eta kc) sin(kc l) - cos(kc l)``."""
    return s_pole_denominator(p, complex(kc))


secular_function = resonance_condition


def siegert_like_residual(p: MirrorParams, kc) -> complex:
    """``xi(0-) - xi'(0-) / (kc (i + eta kc))`` for ``xi = sin(kc (x + l))``."""
    kc = complex(kc)
    c, s = _cs(p, kc)
    return s - kc * c / (kc * (1j + p.eta * kc))


# ------------------------------------------------------------------ gain/LDOS

def ldos_cavity(p: MirrorParams, k: float) -> float:
    a = 2.0 * k * p.l
    return p.l * abs(mode_strength(p, k)) ** 2 / (4.0 * math.pi) * (1.0 - math.sin(a) / a)


def ldos_free(p: MirrorParams, k: float) -> float:
    a = 2.0 * k * p.l
    return p.l / math.pi * (1.0 - math.sin(a) / a)


def gain_closed(p: MirrorParams, k: float) -> float:
    """``1 / (1 - eta k sin(2kl) + (eta k)^2 sin^2(kl))``, equal to ``|I|^2/4``."""
    ek = p.eta * k
    s = math.sin(k * p.l)
    return 1.0 / (1.0 - ek * math.sin(2.0 * k * p.l) + ek * ek * s * s)


def channel_green(p: MirrorParams, k: float, x: float, xp: float) -> complex:
    """Retarded channel Green function ``-(i/2k)(e^{ik|x-x'|} + S_c e^{ik(x+x')})``."""
    if x <= 0.0 or xp <= 0.0:
        raise DomainError("channel Green function needs x, x' > 0")
    return -0.5j / k * (cmath.exp(1j * k * abs(x - xp)) + channel_s(p, k) * cmath.exp(1j * k * (x + xp)))
