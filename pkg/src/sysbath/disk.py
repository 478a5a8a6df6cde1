"""Two-dimensional dielectric disk, TM polarization.

``eps(r) = n^2`` for ``r < R`` and 1 outside.  Everything is resolved in
angular momentum ``m``; the cavity carries Dirichlet modes on ``r = R-``,
the channels Neumann modes on ``r = R+``.

Two printed closed forms are corrected here against brute-force oracles
(see the project notes): the expansion coefficient carries an overall
minus sign and no ``1/n``, and the integrated LDOS is ``n^4`` larger than
printed, i.e. ``n^2 kR^2 |I|^2 (J^2 - J_{m+1} J_{m-1}) / 8`` per ``m``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from ._types import DomainError, ScatterSolution
from .numerics import series_sum_tail
from .specfun import MAX_ORDER, bessel_j, bessel_j_zeros, cyl_array, cyl_set, mcmahon_zero

_SQRT_PI = math.sqrt(math.pi)
NEAR_POLE = 1e-8
M_TRUNC_REL = 1e-12


class TruncationWarning(RuntimeWarning):
    """The angular-momentum sum stopped before its tail criterion was met."""


@dataclass(frozen=True)
class DiskParams:
    """Refractive index ``n`` and radius ``R``."""

    n: float
    R: float = 1.0

    def __post_init__(self):
        if not (self.n > 0 and self.R > 0):
            raise DomainError(f"need n > 0 and R > 0, got n={self.n}, R={self.R}")


@dataclass(frozen=True)
class AngularChannel:
    m: int
    threshold: float

    def is_open(self, k: float) -> bool:
        return k > self.threshold


def angular_channel(p: DiskParams, m: int) -> AngularChannel:
    """Channel ``m`` with threshold ``|m| / (n R)``."""
    return AngularChannel(int(m), abs(int(m)) / (p.n * p.R))


def _order(m) -> int:
    if int(m) != m or abs(m) > MAX_ORDER:
        raise DomainError(f"angular momentum must be an integer with |m| <= {MAX_ORDER}, got {m}")
    return int(m)


def _parts(p: DiskParams, m: int, k):
    """``J, J'`` at ``nkR`` and the Hankel set at ``kR``."""
    m = _order(m)
    x = p.n * k * p.R
    if not complex(x).real > 0:
        raise DomainError(f"need Re k > 0, got {k}")
    jn = cyl_set(m, x)
    h = cyl_set(m, k * p.R)
    return jn.j, jn.dj, h


# ------------------------------------------------------------ exact solution

def s_pole_denominator(p: DiskParams, m: int, k) -> complex:
    """``D = J_m(nkR) H1'_m(kR) - n J'_m(nkR) H1_m(kR)``."""
    j, dj, h = _parts(p, m, k)
    return j * h.dh1 - p.n * dj * h.h1


def s_matrix(p: DiskParams, m: int, k) -> complex:
    """``S_mk = -(J H2' - n J' H2) / (J H1' - n J' H1)``."""
    j, dj, h = _parts(p, m, k)
    return -(j * h.dh2 - p.n * dj * h.h2) / (j * h.dh1 - p.n * dj * h.h1)


def mode_strength(p: DiskParams, m: int, k) -> complex:
    """``I_mk = 4i / (pi kR D)``, from the Wronskian of the Hankel pair."""
    j, dj, h = _parts(p, m, k)
    return 4j / (math.pi * k * p.R * (j * h.dh1 - p.n * dj * h.h1))


def _radial(p: DiskParams, m: int, k: float, r, deriv: bool, side: int = 0):
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0):
        raise DomainError("radius must be >= 0")
    s = s_matrix(p, m, k)
    strength = mode_strength(p, m, k)
    inner = (ra < p.R) | ((ra == p.R) & (side < 0))
    out = np.zeros(ra.shape, dtype=complex)
    if np.any(inner):
        jv, jd = cyl_array("j", m, p.n * k * ra[inner])
        out[inner] = strength * (p.n * k * jd if deriv else jv)
    if np.any(~inner):
        z = k * ra[~inner]
        h1, d1 = cyl_array("h1", m, z)
        h2, d2 = cyl_array("h2", m, z)
        out[~inner] = k * (d2 + s * d1) if deriv else h2 + s * h1
    return out * math.sqrt(k / (8.0 * math.pi))


def _angular(m: int, phi, sign: int):
    return np.exp(sign * 1j * m * np.asarray(phi, dtype=float))


def exact_radial(p: DiskParams, m: int, k: float, r):
    """Radial factor of the scattering state (the field at ``phi = 0``)."""
    out = _radial(p, _order(m), k, r, False)
    return complex(out) if out.ndim == 0 else out


def exact_field(p: DiskParams, m: int, k: float, r, phi=0.0):
    """``sqrt(k/8pi) e^{-im phi}`` times ``I J_m(nkr)`` inside, ``H2 + S H1`` outside."""
    m = _order(m)
    out = _radial(p, m, k, r, False) * _angular(m, phi, -1)
    return complex(out) if np.ndim(out) == 0 else out


def exact_field_dr(p: DiskParams, m: int, k: float, r, phi=0.0, side: int = 0):
    """Radial derivative; ``side = -1`` evaluates the interior limit at ``r = R``."""
    m = _order(m)
    out = _radial(p, m, k, r, True, side) * _angular(m, phi, -1)
    return complex(out) if np.ndim(out) == 0 else out


def scatter(p: DiskParams, m: int, k: float) -> ScatterSolution:
    return ScatterSolution(k, s_matrix(p, m, k), mode_strength(p, m, k),
                           lambda r: exact_radial(p, m, k, r))


def dielectric(p: DiskParams, r):
    return np.where(np.asarray(r, dtype=float) < p.R, p.n**2, 1.0)


# ------------------------------------------------------------- cavity modes

@lru_cache(maxsize=256)
def _zeros(m: int, count: int) -> np.ndarray:
    z = bessel_j_zeros(m, count)
    z.setflags(write=False)
    return z


def bessel_zeros(m: int, count: int) -> np.ndarray:
    """First ``count`` zeros of ``J_m`` (cached, read-only)."""
    # round the cache key up so growing requests reuse one table
    size = max(64, 1 << (int(count) - 1).bit_length())
    return _zeros(abs(_order(m)), min(size, 10_000))[:count]


def _check_index(lam) -> int:
    if int(lam) != lam or lam < 1:
        raise DomainError(f"radial index starts at 1, got {lam}")
    return int(lam)


def cavity_eigen_k(p: DiskParams, m: int, lam: int) -> float:
    """``k_{m lam} = x_{m lam} / (n R)``."""
    lam = _check_index(lam)
    return float(bessel_zeros(m, lam)[lam - 1]) / (p.n * p.R)


@dataclass(frozen=True)
class DiskCavityMode:
    """``mu(r, phi) = e^{im phi} J_m(n k r) / (sqrt(pi) R J_{m+1}(x))``."""

    m: int
    lam: int
    k: float
    n: float
    R: float
    norm: float = field(repr=False)

    def radial(self, r):
        ra = np.asarray(r, dtype=float)
        if np.any((ra < 0) | (ra > self.R)):
            raise DomainError("disk cavity modes live on 0 <= r <= R")
        val, _ = cyl_array("j", self.m, self.n * self.k * ra)
        out = val.real * self.norm
        return float(out) if out.ndim == 0 else out

    def __call__(self, r, phi=0.0):
        out = self.radial(r) * _angular(self.m, phi, 1)
        return complex(out) if np.ndim(out) == 0 else out


def cavity_mode(p: DiskParams, m: int, lam: int) -> DiskCavityMode:
    m = _order(m)
    lam = _check_index(lam)
    x = float(bessel_zeros(m, lam)[lam - 1])
    norm = 1.0 / (_SQRT_PI * p.R * bessel_j(m + 1, x).real)
    return DiskCavityMode(m, lam, x / (p.n * p.R), p.n, p.R, norm)


# ----------------------------------------------------------------- channels

def channel_s(p: DiskParams, m: int, k) -> complex:
    """Channel reflection ``S_m = -H2'_m(kR) / H1'_m(kR)``."""
    h = cyl_set(_order(m), k * p.R)
    return -h.dh2 / h.dh1


def channel_pair(p: DiskParams, m: int, k, r):
    """``H2_m(kr) + S_m(k) H1_m(kr)`` for real ``k > 0``; ``k`` or ``r`` may be arrays.

    Uses the Wronskian form ``2i (J(kr) Y'(kR) - Y(kr) J'(kR)) / H1'(kR)``,
    free of the cancellation between two large Hankel terms at small ``kr``.
    """
    m = _order(m)
    ka = np.asarray(k, dtype=float)
    jr, _ = cyl_array("j", m, ka * r)
    yr, _ = cyl_array("y", m, ka * r)
    _, jd = cyl_array("j", m, ka * p.R)
    _, yd = cyl_array("y", m, ka * p.R)
    out = 2j * (jr.real * yd.real - yr.real * jd.real) / (jd + 1j * yd)
    return complex(out) if out.ndim == 0 else out


def channel_radial(p: DiskParams, m: int, k: float, r, deriv: bool = False):
    """``sqrt(k/8pi) (H2_m(kr) + S_m H1_m(kr))`` or its ``r`` derivative."""
    m = _order(m)
    ra = np.asarray(r, dtype=float)
    if np.any(ra < p.R):
        raise DomainError("channel modes live on r >= R")
    if deriv:
        sm = channel_s(p, m, k)
        _, d1 = cyl_array("h1", m, k * ra)
        _, d2 = cyl_array("h2", m, k * ra)
        out = k * (d2 + sm * d1)
    else:
        out = channel_pair(p, m, k, ra)
    out = np.asarray(out) * math.sqrt(k / (8.0 * math.pi))
    return complex(out) if out.ndim == 0 else out


def channel_mode(p: DiskParams, m: int, k: float, r, phi=0.0):
    m = _order(m)
    out = np.asarray(channel_radial(p, m, k, r)) * _angular(m, phi, 1)
    return complex(out) if np.ndim(out) == 0 else out


def _coupling_amp(p: DiskParams, m: int, lam: int, k: float) -> complex:
    kl = cavity_eigen_k(p, m, lam)
    h = cyl_set(m, k * p.R)
    return -1j * math.sqrt(2.0 * kl) / (math.pi * k * p.R * h.dh1)


def coupling_w(p: DiskParams, m: int, lam: int, mp: int, k: float) -> complex:
    """Resonant amplitude; zero unless ``m' = m``."""
    m = _order(m)
    if int(mp) != m:
        return 0j
    return _coupling_amp(p, m, lam, k)


def coupling_v(p: DiskParams, m: int, lam: int, mp: int, k: float) -> complex:
    """Antiresonant amplitude; zero unless ``m' = -m``."""
    m = _order(m)
    if int(mp) != -m:
        return 0j
    return _coupling_amp(p, m, lam, k)


# ------------------------------------------------------------- coefficients

def _lommel(m: int, a: float, b: float, R: float) -> float:
    """``int_0^R J_m(a r) J_m(b r) r dr``, with the confluent form at ``a = b``."""
    ja = cyl_set(m, a * R) if a > 0 else None
    jb = cyl_set(m, b * R)
    if a == b:
        x = a * R
        return 0.5 * R * R * (jb.dj.real ** 2 + (1.0 - (m / x) ** 2) * jb.j.real ** 2)
    num = b * ja.j.real * jb.dj.real - a * jb.j.real * ja.dj.real
    return R * num / (a * a - b * b)


def alpha(p: DiskParams, m: int, lam: int, k: float) -> complex:
    """Cavity coefficient ``alpha = -sqrt(k/2) k_lam I J_m(nkR) / (k^2 - k_lam^2)``.

    Equal to the overlap ``int n^2 mu^* f / n`` over the disk (radial parts).
    Within ``|k - k_lam| R < 1e-8`` the Lommel overlap is used instead.
    """
    m = _order(m)
    kl = cavity_eigen_k(p, m, lam)
    strength = mode_strength(p, m, k)
    if abs(k - kl) * p.R < NEAR_POLE:
        mode = cavity_mode(p, m, lam)
        ov = _lommel(m, p.n * kl, p.n * k, p.R)
        return 2.0 * math.pi * p.n * math.sqrt(k / (8.0 * math.pi)) * strength * mode.norm * ov
    j = bessel_j(m, p.n * k * p.R)
    return -math.sqrt(0.5 * k) * kl * strength * j / (k * k - kl * kl)


def alpha_sq_tail(p: DiskParams, m: int, k: float) -> Callable[[float], float]:
    """Continuous ``lam -> |alpha|^2`` through McMahon zeros, for tail integrals."""
    m = _order(m)
    strength = mode_strength(p, m, k)
    j = bessel_j(m, p.n * k * p.R).real
    pref = 0.5 * k * abs(strength) ** 2 * j * j

    def f(lam: float) -> float:
        kl = mcmahon_zero(abs(m), lam) / (p.n * p.R)
        return pref * kl * kl / (k * k - kl * kl) ** 2

    return f


# --------------------------------------------------------------- resonances

def resonance_condition(p: DiskParams, m: int, kc) -> complex:
    """``J_m(nkR) H1'_m(kR) - n J'_m(nkR) H1_m(kR)`` at complex ``kc``."""
    return s_pole_denominator(p, m, complex(kc))


def boundary_relation_residual(p: DiskParams, m: int, kc) -> complex:
    """``xi(R-) - H1/(k H1') xi'(R-)`` for ``xi = J_m(n kc r)``."""
    kc = complex(kc)
    j, dj, h = _parts(p, m, kc)
    return j - h.h1 / (kc * h.dh1) * (p.n * kc * dj)


# ---------------------------------------------------------------- LDOS/gain

def _ldos_term(p: DiskParams, m: int, k: float) -> float:
    x = p.n * k * p.R
    lo, mid, hi = (bessel_j(m + d, x).real for d in (-1, 0, 1))
    strength = mode_strength(p, m, k)
    return p.n**2 * k * p.R**2 * abs(strength) ** 2 * (mid * mid - hi * lo) / 8.0


def _m_sum(p: DiskParams, k: float, m_max, term) -> float:
    """``sum_{|m| <= m_max} term(m)`` in ascending ``|m|``; adaptive when ``m_max`` is None."""
    total = term(0)
    x = p.n * k * p.R
    limit = MAX_ORDER - 1 if m_max is None else int(m_max)
    if limit > MAX_ORDER - 1:
        raise DomainError(f"m_max must be <= {MAX_ORDER - 1}")
    last = abs(total)
    for m in range(1, limit + 1):
        t = term(m) + term(-m)
        total += t
        last = abs(t)
        if m_max is None and m > x and last < M_TRUNC_REL * abs(total):
            return total
    if not (last < M_TRUNC_REL * abs(total)):
        warnings.warn(f"angular sum not converged at m_max={limit} (last term {last:.3e})",
                      TruncationWarning, stacklevel=3)
    return total


def ldos_disk(p: DiskParams, k: float, m_max=None) -> float:
    """Integrated ``eps |f|^2`` over the disk, summed over angular momentum."""
    return float(_m_sum(p, k, m_max, lambda m: _ldos_term(p, m, k)))


def ldos_free(p: DiskParams, k: float) -> float:
    """Free-space value ``k R^2 / 2`` of the same integral."""
    return 0.5 * k * p.R**2


def gain_per_m(p: DiskParams, m: int, k: float) -> float:
    """Channel-``m`` contribution ``4 n^2 (J^2 - J_{m+1} J_{m-1}) / ((pi kR)^2 |D|^2)``."""
    m = _order(m)
    x = p.n * k * p.R
    lo, mid, hi = (bessel_j(m + d, x).real for d in (-1, 0, 1))
    d = s_pole_denominator(p, m, k)
    return 4.0 * p.n**2 * (mid * mid - hi * lo) / ((math.pi * k * p.R) ** 2 * abs(d) ** 2)


def gain_total(p: DiskParams, k: float, m_max=None) -> float:
    """``ldos_disk / (k R^2 / 2)``."""
    return ldos_disk(p, k, m_max) / ldos_free(p, k)


def gain_total_per_m(p: DiskParams, k: float, m_max=None) -> float:
    """Same quantity assembled from :func:`gain_per_m`."""
    return float(_m_sum(p, k, m_max, lambda m: gain_per_m(p, m, k)))


def radial_sum_identity(p: DiskParams, m: int, k: float, lam_max: int = 500):
    """Both sides of ``sum_lam k_lam^2 / (k^2 - k_lam^2)^2 = n^2 R^2 (J^2 - J_{m+1}J_{m-1}) / (4 J^2)``.

    The left side sums the first ``lam_max`` zeros exactly and adds a
    midpoint Euler-Maclaurin tail over McMahon zeros at real index.
    Returns ``(lhs, rhs, tail_error)``.
    """
    m = _order(m)
    if lam_max < 100:
        raise DomainError("lam_max must be >= 100")
    zs = bessel_zeros(m, lam_max) / (p.n * p.R)
    k2 = k * k
    terms = zs**2 / (k2 - zs**2) ** 2

    def tail_term(lam: float) -> float:
        kl = mcmahon_zero(abs(m), lam) / (p.n * p.R)
        return kl * kl / (k2 - kl * kl) ** 2

    t = series_sum_tail(lambda lam: terms[lam - 1], 2, lam_max, 1, tail_term=tail_term)
    x = p.n * k * p.R
    lo, mid, hi = (bessel_j(m + d, x).real for d in (-1, 0, 1))
    rhs = (p.n * p.R) ** 2 * (mid * mid - hi * lo) / (4.0 * mid * mid)
    return t.value, rhs, t.error


# ------------------------------------------------------------------ Green

def channel_green(p: DiskParams, m: int, k: float, r: float, rp: float) -> complex:
    """Angular component ``m`` of the Neumann-disk channel Green function.

    ``-(i/8) H1(k r>) [H2(k r<) H1'(kR) - H2'(kR) H1(k r<)] / H1'(kR)``, the
    coefficient of ``e^{i m (phi - phi')}``.
    """
    m = _order(m)
    if r < p.R or rp < p.R:
        raise DomainError("channel Green function needs r, r' >= R")
    big, small = max(r, rp), min(r, rp)
    hb = cyl_set(m, k * big)
    hs = cyl_set(m, k * small)
    hr = cyl_set(m, k * p.R)
    return -0.125j * hb.h1 * (hs.h2 * hr.dh1 - hr.dh2 * hs.h1) / hr.dh1


__all__ = [
    "AngularChannel", "DiskCavityMode", "DiskParams", "TruncationWarning", "alpha",
    "alpha_sq_tail", "angular_channel", "bessel_zeros", "boundary_relation_residual",
    "cavity_eigen_k", "cavity_mode", "channel_green", "channel_mode", "channel_pair", "channel_radial",
    "channel_s", "coupling_v", "coupling_w", "dielectric", "exact_field", "exact_field_dr",
    "exact_radial", "gain_per_m", "gain_total", "gain_total_per_m", "ldos_disk", "ldos_free",
    "mode_strength", "radial_sum_identity", "resonance_condition", "s_matrix",
    "s_pole_denominator", "scatter",
]
