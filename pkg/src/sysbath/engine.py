"""Model-agnostic machinery on top of the three resonator modules.

Each resonator is wrapped in an adapter exposing one contract (cavity
modes, expansion coefficients, secular function, closed-form LDOS, ...);
reconstruction, resonance search, coefficient sums, Hamiltonian tables and
the brute-force oracles are written once against that contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special

from . import disk, mirror, slab
from ._types import BetaKernel, DomainError
from .numerics import (
    ConvergenceError,
    PvIntegrand,
    SearchRegion,
    gl_nodes_weights,
    newton_complex,
    pv_integral,
    roots_in_region,
    series_sum_tail,
)
from .specfun import cyl_array

BOUNDARY_LAYER = 0.02


# ------------------------------------------------------------------ adapters

class Resonator:
    """Common contract.  Positions are ``x`` in 1D and ``r`` for the disk."""

    name = "resonator"
    channel = None
    first_index = 1
    tail_order = 2
    interior = (0.0, 1.0)
    boundary = 0.0
    radial = False
    index = 1.0

    def eigen_k(self, lam: int) -> float: raise NotImplementedError
    def eigen_ks(self, count: int) -> np.ndarray:
        return np.array([self.eigen_k(self.first_index + j) for j in range(count)])
    def mode(self, lam: int, x): raise NotImplementedError
    def alpha(self, lam: int, k: float) -> complex: raise NotImplementedError
    def alpha_sq_tail(self, k: float): raise NotImplementedError
    def exact_interior(self, k: float, x): raise NotImplementedError
    def s_matrix(self, k): raise NotImplementedError
    def s_pole_denominator(self, k): raise NotImplementedError
    def resonance_condition(self, kc): raise NotImplementedError
    def secular(self, kc): return self.s_pole_denominator(complex(kc))
    def ldos_closed(self, k: float) -> float: raise NotImplementedError
    def ldos_free(self, k: float) -> float: raise NotImplementedError
    def coupling_w(self, lam: int, k: float): raise NotImplementedError
    def coupling_v(self, lam: int, k: float): raise NotImplementedError

    def dielectric(self) -> float:
        return self.index**2

    @property
    def extent(self) -> float:
        return self.interior[1] - self.interior[0]

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class SlabModel(Resonator):
    params: slab.SlabParams
    bc: slab.BcVariant = slab.BcVariant.NEUMANN

    name = "slab"

    def __post_init__(self):
        object.__setattr__(self, "bc", slab.BcVariant(self.bc))

    @property
    def first_index(self):
        return slab.first_index(self.bc)

    @property
    def tail_order(self):
        return 4 if self.bc is slab.BcVariant.NEUMANN else 2

    @property
    def interior(self):
        return (-self.params.l, 0.0)

    @property
    def index(self):
        return self.params.n

    @property
    def channel(self):
        return self.bc.value

    def eigen_k(self, lam):
        return slab.cavity_eigen_k(self.params, self.bc, lam)

    def eigen_ks(self, count):
        j = np.arange(self.first_index, self.first_index + count)
        base = (2 * j + 1) / 2.0 if self.bc is slab.BcVariant.NEUMANN else j.astype(float)
        return base * math.pi / (self.params.n * self.params.l)

    def mode(self, lam, x):
        return slab.cavity_mode(self.params, self.bc, lam, x)

    def alpha(self, lam, k):
        return slab.alpha(self.params, self.bc, lam, k)

    def alpha_sq_tail(self, k):
        return slab.alpha_sq_tail(self.params, self.bc, k)

    def exact_interior(self, k, x):
        return slab.exact_field(self.params, k, x)

    def exact_exterior(self, k, x):
        return slab.exact_field(self.params, k, x)

    def beta_kernel(self, k) -> BetaKernel:
        return slab.beta_kernel(self.params, self.bc, k)

    def s_matrix(self, k):
        return slab.s_matrix(self.params, k)

    def s_pole_denominator(self, k):
        return slab.s_pole_denominator(self.params, k)

    def resonance_condition(self, kc):
        return slab.resonance_condition(self.params, kc)

    def secular(self, kc):
        return slab.secular_function(self.params, kc)

    def ldos_closed(self, k):
        return slab.ldos_cavity(self.params, self.bc, k)

    def ldos_free(self, k):
        return slab.ldos_free(self.params, k)

    def gain_closed(self, k):
        return slab.gain_closed(self.params, k)

    def coupling_w(self, lam, k):
        return slab.coupling_w(self.params, self.bc, lam, k)

    coupling_v = coupling_w

    def sigma_pieces(self, k):
        """``A(s) - t B(s)`` with ``A = cos(n s l)``: closed slab at ``t = 0``."""
        n, l = self.params.n, self.params.l
        return (lambda s: s * np.cos(n * s * l),
                lambda s: 1j / n * k * np.sin(n * s * l))

    def describe(self):
        return {"model": "slab", "n": self.params.n, "l": self.params.l, "bc": self.bc.value}


@dataclass(frozen=True)
class MirrorModel(Resonator):
    params: mirror.MirrorParams

    name = "mirror"
    channel = "mirror"
    tail_order = 2

    @property
    def interior(self):
        return (-self.params.l, 0.0)

    def eigen_k(self, lam):
        return mirror.cavity_eigen_k(self.params, lam)

    def eigen_ks(self, count):
        return np.arange(1, count + 1) * math.pi / self.params.l

    def mode(self, lam, x):
        return mirror.cavity_mode(self.params, lam, x)

    def alpha(self, lam, k):
        return mirror.alpha(self.params, lam, k)

    def alpha_sq_tail(self, k):
        return mirror.alpha_sq_tail(self.params, k)

    def exact_interior(self, k, x):
        return mirror.exact_field(self.params, k, x)

    def exact_exterior(self, k, x):
        return mirror.exact_field(self.params, k, x)

    def beta_kernel(self, k) -> BetaKernel:
        return mirror.beta_kernel(self.params, k)

    def s_matrix(self, k):
        return mirror.s_matrix(self.params, k)

    def s_pole_denominator(self, k):
        return mirror.s_pole_denominator(self.params, k)

    def resonance_condition(self, kc):
        return mirror.resonance_condition(self.params, kc)

    def ldos_closed(self, k):
        return mirror.ldos_cavity(self.params, k)

    def ldos_free(self, k):
        return mirror.ldos_free(self.params, k)

    def gain_closed(self, k):
        return mirror.gain_closed(self.params, k)

    def coupling_w(self, lam, k):
        return mirror.coupling_w(self.params, lam, k)

    coupling_v = coupling_w

    def sigma_pieces(self, k):
        """``s cos(s l) - t k (i + eta k) sin(s l)``: closed cavity ``sin(s l) = 0`` at ``t = 0``."""
        l, eta = self.params.l, self.params.eta
        return (lambda s: k * (1j + eta * k) * np.sin(s * l),
                lambda s: s * np.cos(s * l))

    def describe(self):
        return {"model": "mirror", "eta": self.params.eta, "l": self.params.l}


@dataclass(frozen=True)
class DiskModel(Resonator):
    """One angular-momentum channel ``m`` of the disk."""

    params: disk.DiskParams
    m: int = 0

    name = "disk"
    tail_order = 2
    radial = True

    @property
    def channel(self):
        return self.m

    @property
    def interior(self):
        return (0.0, self.params.R)

    @property
    def boundary(self):
        return self.params.R

    @property
    def index(self):
        return self.params.n

    def eigen_k(self, lam):
        return disk.cavity_eigen_k(self.params, self.m, lam)

    def eigen_ks(self, count):
        return disk.bessel_zeros(self.m, count) / (self.params.n * self.params.R)

    def mode(self, lam, r):
        return disk.cavity_mode(self.params, self.m, lam).radial(r)

    def alpha(self, lam, k):
        return disk.alpha(self.params, self.m, lam, k)

    def alpha_sq_tail(self, k):
        return disk.alpha_sq_tail(self.params, self.m, k)

    def exact_interior(self, k, r):
        return disk.exact_radial(self.params, self.m, k, r)

    def s_matrix(self, k):
        return disk.s_matrix(self.params, self.m, k)

    def s_pole_denominator(self, k):
        return disk.s_pole_denominator(self.params, self.m, k)

    def resonance_condition(self, kc):
        return disk.resonance_condition(self.params, self.m, kc)

    def ldos_closed(self, k):
        return disk.ldos_disk(self.params, k)

    def ldos_free(self, k):
        return disk.ldos_free(self.params, k)

    def gain_closed(self, k):
        return disk.gain_total(self.params, k)

    def coupling_w(self, lam, k, mp=None):
        return disk.coupling_w(self.params, self.m, lam, self.m if mp is None else mp, k)

    def coupling_v(self, lam, k, mp=None):
        return disk.coupling_v(self.params, self.m, lam, -self.m if mp is None else mp, k)

    def describe(self):
        return {"model": "disk", "n": self.params.n, "R": self.params.R, "m": self.m}


# -------------------------------------------------------------- reconstruction

@dataclass(frozen=True)
class ModeWindow:
    """The ``count`` cavity modes whose eigen-wavenumbers lie nearest ``center_k``."""

    center_k: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("a mode window needs at least one mode")

    def select(self, model: Resonator) -> list[int]:
        size = max(2 * self.count, 16)
        while True:
            ks = model.eigen_ks(size)
            above = np.count_nonzero(ks > self.center_k)
            if above >= self.count or size >= 10_000:
                break
            size = min(2 * size, 10_000)
        # stable sort on distance then k: ties resolve toward the smaller k
        order = np.lexsort((ks, np.abs(ks - self.center_k)))[: self.count]
        return sorted(int(model.first_index + j) for j in order)


@dataclass(frozen=True)
class FieldSamples:
    grid: np.ndarray
    values: np.ndarray
    region: str
    boundary: float
    extent: float
    radial: bool = False

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 1 or g.size < 2 or np.any(np.diff(g) <= 0):
            raise DomainError("sample grid must be strictly increasing")
        if np.any(g == self.boundary):
            raise DomainError("sample grid must exclude the separating surface")
        if np.shape(self.values) != g.shape:
            raise DomainError("values and grid differ in shape")


def interior_grid(model: Resonator, points: int) -> np.ndarray:
    """Uniform interior grid that stops short of the separating surface."""
    lo, hi = model.interior
    return np.linspace(lo, hi, points + 1)[:-1]


def reconstruct_interior(model: Resonator, k: float, window: ModeWindow, grid) -> FieldSamples:
    """``sum alpha_lam(k) mu_lam / n`` over the window."""
    g = np.asarray(grid, dtype=float)
    lo, hi = model.interior
    if np.any((g < lo) | (g >= hi)):
        raise DomainError("interior grid must lie inside the cavity")
    acc = np.zeros(g.shape, dtype=complex)
    for lam in window.select(model):
        acc += model.alpha(lam, k) * np.asarray(model.mode(lam, g))
    return FieldSamples(g, acc / model.index, "interior", model.boundary, model.extent, model.radial)


def exact_interior(model: Resonator, k: float, grid) -> FieldSamples:
    g = np.asarray(grid, dtype=float)
    return FieldSamples(g, np.asarray(model.exact_interior(k, g), dtype=complex), "interior",
                        model.boundary, model.extent, model.radial)


def reconstruct_exterior(model: Resonator, k: float, quad_tol: float, grid) -> FieldSamples:
    """``int beta(k,k') nu(k',x) dk'`` on an exterior grid (1D models)."""
    if model.radial:
        raise DomainError("exterior reconstruction is available for the 1D models only")
    g = np.asarray(grid, dtype=float)
    if np.any(g <= 0.0):
        raise DomainError("exterior grid must lie in x > 0")
    kern = model.beta_kernel(k)
    vals = np.array([kern.exterior_field(float(x), quad_tol) for x in g])
    return FieldSamples(g, vals, "exterior", model.boundary, float(g[-1] - g[0]), False)


def l2_error(a: FieldSamples, b: FieldSamples, exclusion: float = BOUNDARY_LAYER) -> float:
    """``||b - a|| / ||a||`` over the grid minus the layer next to the surface.

    The layer is ``exclusion * extent`` wide; radial grids carry the ``r``
    measure.
    """
    if a.grid.shape != b.grid.shape or np.any(a.grid != b.grid):
        raise DomainError("l2_error needs identical grids")
    keep = np.abs(a.grid - a.boundary) >= exclusion * a.extent
    w = np.abs(a.grid[keep]) if a.radial else np.ones(np.count_nonzero(keep))
    num = np.sum(w * np.abs(b.values[keep] - a.values[keep]) ** 2)
    den = np.sum(w * np.abs(a.values[keep]) ** 2)
    if den == 0.0:
        raise DomainError("reference field vanishes on the comparison grid")
    return float(math.sqrt(num / den))


# ----------------------------------------------------------------- resonances

@dataclass(frozen=True)
class Resonance:
    kc: complex
    secular_residual: float
    s_pole_residual: float
    channel: object = None

    def as_dict(self) -> dict:
        return {"re_k": self.kc.real, "im_k": self.kc.imag,
                "secular_residual": self.secular_residual,
                "s_pole_residual": self.s_pole_residual, "channel": self.channel}


def find_resonances(model: Resonator, region: SearchRegion, tol: float = 1e-12) -> list[Resonance]:
    """Every zero of the model's secular function inside a lower-half-plane region.

    The count is audited against the region's winding number (a mismatch
    raises :class:`~sysbath.numerics.RootCountError`).
    """
    if region.im_max > 0.0:
        raise DomainError("resonance search regions must lie in Im k <= 0")
    roots = roots_in_region(model.secular, region, tol=tol)
    out = []
    for z in roots:
        if z.imag >= 0.0:
            continue
        out.append(Resonance(z, abs(model.resonance_condition(z)),
                             abs(model.s_pole_denominator(z)), model.channel))
    return out


class BranchJumpError(ArithmeticError):
    """Continuation of a secular-equation branch lost track of it."""


def sigma_eigenvalue(model: Resonator, j: int, k, steps: int = 32) -> complex:
    """Eigenvalue ``sigma_j(k)`` of the effective operator at fixed ``k``.

    Solves ``A(sigma) - t B(sigma) = 0`` for ``t: 0 -> 1``, starting at
    ``t = 0`` on the closed-cavity ladder entry ``k_j`` (Neumann ladder for
    the slab, ``j pi / l`` for the mirror).  Works for complex ``k``.
    """
    if not hasattr(model, "sigma_pieces"):
        raise DomainError("sigma_eigenvalue is defined for the 1D models only")
    a_fn, b_fn = model.sigma_pieces(k)
    sigma = complex(model.eigen_k(j))
    spacing = abs(model.eigen_k(model.first_index + 1) - model.eigen_k(model.first_index))
    # residual scale probed off the ladder point, so huge couplings stay relative
    probe = sigma + 0.5 * spacing
    scale = abs(a_fn(probe)) + abs(b_fn(probe)) or 1.0
    t, dt = 0.0, 1.0 / steps
    while t < 1.0:
        dt = min(dt, 1.0 - t)
        tn = t + dt
        try:
            new = newton_complex(lambda s: complex(a_fn(s) - tn * b_fn(s)) / scale, sigma,
                                 tol=1e-13 * max(1.0, abs(sigma)))
        except ConvergenceError:
            new = None
        if new is None or abs(new - sigma) > 0.25 * spacing:
            dt *= 0.5
            if dt < 2.0**-24:
                raise BranchJumpError(f"branch {j} jumped near t = {t:.6f}")
            continue
        sigma, t = new, tn
        dt = min(2.0 * dt, 1.0 / steps)
    return sigma


def fixed_point_resonance(model: Resonator, j: int, k0: complex) -> complex:
    """Solve ``k = sigma_j(k)`` in the complex plane, seeded at ``k0``."""
    return newton_complex(lambda k: k - sigma_eigenvalue(model, j, k), complex(k0), tol=1e-11)


# --------------------------------------------------------------- gain / LDOS

def alpha_sq_sum(model: Resonator, k: float, lam_max: int = 200):
    """``sum_lam |alpha_lam(k)|^2`` with an algebraic tail (one channel)."""
    first = model.first_index
    terms = [abs(model.alpha(lam, k)) ** 2 for lam in range(first, lam_max + 1)]
    return series_sum_tail(lambda lam: terms[lam - first], model.tail_order, lam_max, first,
                           tail_term=model.alpha_sq_tail(k))


def gain_via_alpha(model: Resonator, k: float, lam_max: int = 200) -> float:
    """Integrated LDOS from expansion coefficients over its free-space value.

    For the disk the radial sum per ``m`` is
    ``(k/2)|I|^2 J_m(nkR)^2 sum_lam k_lam^2 / (k^2 - k_lam^2)^2``, with the
    zero sum done by :func:`sysbath.disk.radial_sum_identity` (``lam_max``
    zeros plus tail) and ``m`` summed adaptively.
    """
    if isinstance(model, DiskModel):
        p = model.params
        lam_max = max(lam_max, 100)

        def term(m):
            lhs, _, _ = disk.radial_sum_identity(p, m, k, lam_max)
            j = disk.bessel_j(m, p.n * k * p.R).real
            return 0.5 * k * abs(disk.mode_strength(p, m, k)) ** 2 * j * j * lhs

        return float(disk._m_sum(p, k, None, term)) / disk.ldos_free(p, k)
    return alpha_sq_sum(model, k, lam_max).value / model.ldos_free(k)


# ------------------------------------------------------------ Hamiltonian tables

@dataclass(frozen=True)
class HamiltonianTables:
    """Cavity frequencies and coupling tables on a frequency grid (``c = 1``).

    1D: ``W``/``V`` have shape ``(modes, len(omega))``.  Disk: shape
    ``(modes, channels, len(omega))`` with rows labelled by ``mode_labels``
    ``(m, lam)`` and columns by ``channels``.
    """

    omega_lambda: np.ndarray
    omega: np.ndarray
    W: np.ndarray
    V: np.ndarray
    thresholds: np.ndarray
    mode_labels: tuple = ()
    channels: tuple = ()


def hamiltonian_tables(model: Resonator, omega, modes: int = 10, m_values: Sequence[int] = ()) -> HamiltonianTables:
    om = np.asarray(omega, dtype=float)
    if np.any(om <= 0):
        raise DomainError("frequency grid must be positive")
    if isinstance(model, DiskModel):
        p = model.params
        ms = tuple(int(m) for m in (m_values or (model.m, -model.m)))
        chans = tuple(sorted(set(ms) | {-m for m in ms}))
        labels = tuple((m, lam) for m in ms for lam in range(1, modes + 1))
        w = np.zeros((len(labels), len(chans), om.size), dtype=complex)
        v = np.zeros_like(w)
        for i, (m, lam) in enumerate(labels):
            for c, mp in enumerate(chans):
                w[i, c] = [disk.coupling_w(p, m, lam, mp, k) for k in om]
                v[i, c] = [disk.coupling_v(p, m, lam, mp, k) for k in om]
        wl = np.array([disk.cavity_eigen_k(p, m, lam) for m, lam in labels])
        thr = np.array([abs(mp) / (p.n * p.R) for mp in chans])
        return HamiltonianTables(wl, om, w, v, thr, labels, chans)
    lams = list(range(model.first_index, model.first_index + modes))
    w = np.array([[complex(model.coupling_w(lam, k)) for k in om] for lam in lams])
    v = np.array([[complex(model.coupling_v(lam, k)) for k in om] for lam in lams])
    if not np.array_equal(w, v):
        raise AssertionError("W and V must coincide for the 1D models")
    return HamiltonianTables(np.array([model.eigen_k(lam) for lam in lams]), om, w, v,
                             np.zeros(1), tuple(lams), (model.channel,))


# -------------------------------------------------------------------- oracles

def _panels(span_phase: float) -> int:
    return int(max(8, math.ceil(span_phase / 2.0) + 8))


def oracle_alpha(model: Resonator, lam: int, k: float, order: int = 24) -> complex:
    """Brute-force overlap ``int eps u_lam f`` over the cavity by Gauss-Legendre panels."""
    lo, hi = model.interior
    n = model.index
    phase = (n * k + n * model.eigen_k(lam)) * (hi - lo)
    x, w = gl_nodes_weights(lo, hi, _panels(phase), order)
    mu = np.asarray(model.mode(lam, x))
    f = np.asarray(model.exact_interior(k, x))
    meas = 2.0 * math.pi * x if model.radial else 1.0
    return complex(np.sum(w * meas * n * mu * f))


def overlap_matrix(model: Resonator, lams: Sequence[int], order: int = 24) -> np.ndarray:
    """Gram matrix of the cavity modes by Gauss-Legendre panels."""
    lo, hi = model.interior
    kmax = max(model.eigen_k(lam) for lam in lams)
    x, w = gl_nodes_weights(lo, hi, _panels(2 * model.index * kmax * (hi - lo)), order)
    modes = np.array([np.asarray(model.mode(lam, x), dtype=float) for lam in lams])
    meas = 2.0 * math.pi * x if model.radial else np.ones_like(x)
    return (modes * (w * meas)) @ modes.T


# ------------------------------------------------------- Green functions

def _channel_product_parts(kind: str, x: float, xp: float, sc: Optional[Callable] = None):
    """``nu(k',x) nu(k',x')^*`` split into ``coeff(k') * trig(freq k')`` terms."""
    d, s = abs(x - xp), x + xp
    inv_pi = 1.0 / math.pi
    if kind == "dirichlet":
        return [("cos", d, lambda kp: inv_pi), ("cos", s, lambda kp: -inv_pi)]
    if kind == "neumann":
        return [("cos", d, lambda kp: inv_pi), ("cos", s, lambda kp: inv_pi)]
    if kind == "mirror":
        return [("cos", d, lambda kp: inv_pi),
                ("cos", s, lambda kp: inv_pi * sc(kp).real),
                ("sin", s, lambda kp: -inv_pi * sc(kp).imag)]
    raise DomainError(f"unknown channel type {kind!r}")


def greens_numeric_1d(kind: str, k: float, x: float, xp: float, quad_tol: float = 1e-9,
                      eta: float = 0.0) -> complex:
    """``int_0^inf nu(k',x) nu*(k',x') / (k^2 - k'^2 + i0) dk'`` as PV plus half residue.

    ``kind`` names the channel's own boundary condition at ``0+``:
    ``"dirichlet"`` (sine modes), ``"neumann"`` (cosine modes) or
    ``"mirror"`` (thin mirror of transparency ``eta``).
    """
    if x < 0 or xp < 0:
        raise DomainError("channel positions must be >= 0")
    mp = mirror.MirrorParams(eta)
    parts = _channel_product_parts(kind, x, xp, lambda kp: mirror.channel_s(mp, kp))
    pv = 0.0j
    on_shell = 0.0j
    for trig, freq, coeff in parts:
        weight = (trig, freq) if freq > 0 else None
        if trig == "sin" and freq == 0:
            continue
        pv += pv_integral(PvIntegrand(coeff, k, 0.0, math.inf, weight), quad_tol / len(parts))
        on_shell += coeff(k) * (math.cos(freq * k) if trig == "cos" else math.sin(freq * k))
    # 1/(k^2 - k'^2 + i0) = -PV 1/(k'^2 - k^2) - i pi delta(k'^2 - k^2)
    return -pv - 0.5j * math.pi / k * on_shell


def greens_closed_1d(kind: str, k: float, x: float, xp: float, eta: float = 0.0) -> complex:
    if kind == "dirichlet":
        return slab.channel_green(slab.SlabParams(1.0), slab.BcVariant.NEUMANN, k, x, xp)
    if kind == "neumann":
        return slab.channel_green(slab.SlabParams(1.0), slab.BcVariant.DIRICHLET, k, x, xp)
    if kind == "mirror":
        return mirror.channel_green(mirror.MirrorParams(eta), k, x, xp)
    raise DomainError(f"unknown channel type {kind!r}")


def _disk_radial_pair(p: disk.DiskParams, m: int, kp: np.ndarray, r: float):
    """``H2(k'r) + S_m(k') H1(k'r)`` on an array of ``k'``.

    Written as ``2i (J(k'r) Y'(k'R) - Y(k'r) J'(k'R)) / H1'(k'R)`` so that
    small ``k'`` suffers no cancellation between the two Hankel terms.
    """
    return disk.channel_pair(p, m, kp, r)


def greens_numeric_disk(p: disk.DiskParams, m: int, k: float, r: float, rp: float,
                        k_max: float = 400.0, order: int = 24) -> complex:
    """Angular component ``m`` of the disk channel Green function by ``k'`` quadrature.

    ``int_0^inf (k'/8pi) R(k',r) R*(k',r') / (k^2 - k'^2 + i0) dk'`` with
    ``R = H2 + S_m H1``: Gauss-Legendre panels up to ``k_max`` (the pole
    handled by symmetric subtraction), the half residue on shell, and the
    leading large-``k'`` asymptotics ``-cos(k'a) cos(k'b) / (pi^2 sqrt(r r') k'^2)``
    integrated in closed form beyond ``k_max``.
    """
    if r < p.R or rp < p.R:
        raise DomainError("disk channel positions must be >= R")

    def big_f(kp):
        kp = np.asarray(kp, dtype=float)
        prod = _disk_radial_pair(p, m, kp, r) * np.conj(_disk_radial_pair(p, m, kp, rp))
        return kp / (8.0 * math.pi) * prod / (k + kp)

    a = min(0.5 * k, 1.0)
    fk = complex(big_f(np.array([k]))[0])
    span = (r + rp) + 2.0 * p.R
    total = 0.0j
    # integrand (k'/8pi) R R* / (k^2 - k'^2) = big_f / (k - k')
    x, w = gl_nodes_weights(k - a, k + a, 4, order)
    total += np.sum(w * (big_f(x) - fk) / (k - x))
    x, w = gl_nodes_weights(0.0, k - a, _panels(span * k), order)
    total += np.sum(w * big_f(x) / (k - x))
    x, w = gl_nodes_weights(k + a, k_max, _panels(span * (k_max - k)), order)
    total += np.sum(w * big_f(x) / (k - x))
    # asymptotic tail: cos(k'a')cos(k'b') = [cos(k'(a'-b')) + cos(k'(a'+b'))]/2
    aa, bb = r - p.R, rp - p.R
    tail = 0.0
    for c in (abs(aa - bb), aa + bb):
        if c == 0.0:
            tail += 1.0 / k_max
        else:
            si, _ = special.sici(c * k_max)
            tail += math.cos(c * k_max) / k_max - c * (0.5 * math.pi - si)
    total += -0.5 * tail / (math.pi**2 * math.sqrt(r * rp))
    return complex(total - 1j * math.pi * fk)


# ---------------------------------------------------------------- validation

DEFAULT_CONFIG = {
    "models": ("slab", "mirror", "disk"),
    "only": None,
    "tolerance_scale": 1.0,
}


@dataclass
class _Report:
    scale: float
    checks: dict = field(default_factory=dict)

    def add(self, name: str, measured: float, tol: float, less: bool = True):
        t = tol * self.scale
        ok = math.isfinite(measured) and (measured < t if less else measured > t)
        if not math.isfinite(measured):
            measured = None
        self.checks[name] = {"status": "pass" if ok else "fail", "measured": measured if measured is None else float(measured),
                             "relation": "<" if less else ">", "tolerance": float(t)}

    def add_error(self, name: str, exc: Exception):
        self.checks[name] = {"status": "fail", "measured": None, "relation": "<",
                             "tolerance": None, "error": f"{type(exc).__name__}: {exc}"}


FIG_SLAB = slab.SlabParams(1.5)
FIG_MIRROR = mirror.MirrorParams(0.0453)
FIG_DISK = disk.DiskParams(3.3)


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _checks_specfun(rep: _Report):
    from .specfun import bessel_j, cyl_value_deriv, hankel
    worst = 0.0
    for m in range(0, 41, 5):
        for x in np.linspace(0.1, 100.0, 23):
            j, dj = cyl_value_deriv("j", m, x)
            y, dy = cyl_value_deriv("y", m, x)
            scale = max(1.0, abs(j * dy), abs(dj * y))
            worst = max(worst, abs(j * dy - dj * y - 2.0 / (math.pi * x)) / scale)
    rep.add("specfun.wronskian_jy", worst, 1e-10)
    rec = 0.0
    for kind in ("j", "y", "h1", "h2"):
        for m in (1, 7, 20):
            for z in (0.7, 5.3 - 0.4j, 18.0 + 1.5j, 60.0 - 2.0j):
                if kind == "y" and complex(z).imag != 0:
                    continue
                f = (lambda mm: bessel_j(mm, z)) if kind == "j" else (
                    (lambda mm: complex(hankel(1, mm, z) - bessel_j(mm, z)) / 1j) if kind == "y"
                    else (lambda mm, h=int(kind[1]): hankel(h, mm, z)))
                a, b, c = f(m - 1), f(m), f(m + 1)
                rec = max(rec, abs(a + c - 2 * m / z * b) / max(abs(a), abs(b), abs(c)))
    rep.add("specfun.recurrence", rec, 1e-9)


def _checks_unitarity(rep: _Report, models):
    ks = np.linspace(0.05, 40.0, 10_000)
    if "slab" in models:
        rep.add("unitarity.slab", max(abs(abs(slab.s_matrix(FIG_SLAB, k)) - 1) for k in ks), 1e-12)
    if "mirror" in models:
        rep.add("unitarity.mirror", max(abs(abs(mirror.s_matrix(FIG_MIRROR, k)) - 1) for k in ks), 1e-12)
    if "disk" in models:
        worst = 0.0
        kd = np.linspace(0.5, 12.0, 250)
        for m in range(-40, 41, 2):
            for k in kd:
                worst = max(worst, abs(abs(disk.s_matrix(FIG_DISK, m, k)) - 1),
                            abs(abs(disk.channel_s(FIG_DISK, m, k)) - 1))
        rep.add("unitarity.disk", worst, 1e-12)


def _checks_orthonormality(rep: _Report, models):
    if "slab" in models:
        for bc in slab.BcVariant:
            mdl = SlabModel(FIG_SLAB, bc)
            lams = range(mdl.first_index, mdl.first_index + 12)
            g = overlap_matrix(mdl, list(lams))
            rep.add(f"orthonormality.slab.{bc.value}", float(np.max(np.abs(g - np.eye(len(g))))), 1e-10)
    if "mirror" in models:
        g = overlap_matrix(MirrorModel(FIG_MIRROR), list(range(1, 13)))
        rep.add("orthonormality.mirror", float(np.max(np.abs(g - np.eye(len(g))))), 1e-10)
    if "disk" in models:
        worst = 0.0
        for m in (0, 5, 13):
            g = overlap_matrix(DiskModel(FIG_DISK, m), list(range(1, 9)))
            worst = max(worst, float(np.max(np.abs(g - np.eye(len(g))))))
        rep.add("orthonormality.disk", worst, 1e-9)


def _checks_alpha(rep: _Report, models):
    if "slab" in models:
        for bc in slab.BcVariant:
            mdl = SlabModel(FIG_SLAB, bc)
            worst = 0.0
            for k in (15.3, 18.0, 20.7):
                for lam in ModeWindow(k, 6).select(mdl):
                    worst = max(worst, abs(oracle_alpha(mdl, lam, k) - mdl.alpha(lam, k)))
            rep.add(f"alpha_oracle.slab.{bc.value}", worst, 1e-8)
    if "mirror" in models:
        mdl = MirrorModel(FIG_MIRROR)
        worst = 0.0
        for k in (27.5, 28.9, 30.1):
            for lam in ModeWindow(k, 6).select(mdl):
                worst = max(worst, abs(oracle_alpha(mdl, lam, k) - mdl.alpha(lam, k)))
        rep.add("alpha_oracle.mirror", worst, 1e-8)
    if "disk" in models:
        worst = 0.0
        for m, k in ((13, 10.5), (5, 9.0), (0, 3.1), (-7, 11.2)):
            mdl = DiskModel(FIG_DISK, m)
            for lam in range(1, 9):
                worst = max(worst, abs(oracle_alpha(mdl, lam, k) - mdl.alpha(lam, k)))
        rep.add("alpha_oracle.disk", worst, 1e-7)


def _checks_reconstruction(rep: _Report, models):
    if "slab" in models:
        errs = {}
        for bc in slab.BcVariant:
            mdl = SlabModel(FIG_SLAB, bc)
            grid = interior_grid(mdl, 2000)
            ref = exact_interior(mdl, 18.0, grid)
            errs[bc] = [l2_error(ref, reconstruct_interior(mdl, 18.0, ModeWindow(18.0, n), grid))
                        for n in (5, 11, 25, 51)]
            rep.add(f"reconstruction.slab.{bc.value}.monotone",
                    max(b - a for a, b in zip(errs[bc], errs[bc][1:])), 0.0)
        rep.add("reconstruction.slab.neumann.n11", errs[slab.BcVariant.NEUMANN][1], 5e-2)
        rep.add("reconstruction.slab.dirichlet_worse",
                errs[slab.BcVariant.DIRICHLET][1] - errs[slab.BcVariant.NEUMANN][1], 0.0, less=False)
        ext = SlabModel(FIG_SLAB, slab.BcVariant.NEUMANN)
        xs = np.array([0.25, 0.5, 1.3])
        got = reconstruct_exterior(ext, 18.0, 1e-9, xs)
        rep.add("reconstruction.slab.exterior",
                float(np.max(np.abs(got.values - slab.exact_field(FIG_SLAB, 18.0, xs)))), 1e-6)
    if "mirror" in models:
        mdl = MirrorModel(FIG_MIRROR)
        grid = interior_grid(mdl, 2000)
        ref = exact_interior(mdl, 28.9, grid)
        errs = [l2_error(ref, reconstruct_interior(mdl, 28.9, ModeWindow(28.9, n), grid))
                for n in (5, 11, 25, 51)]
        rep.add("reconstruction.mirror.monotone", max(b - a for a, b in zip(errs, errs[1:])), 0.0)
        xs = np.array([0.25, 0.5, 1.3])
        got = reconstruct_exterior(mdl, 28.9, 1e-9, xs)
        rep.add("reconstruction.mirror.exterior",
                float(np.max(np.abs(got.values - mirror.exact_field(FIG_MIRROR, 28.9, xs)))), 1e-6)
    if "disk" in models:
        mdl = DiskModel(FIG_DISK, 13)
        grid = interior_grid(mdl, 1000)
        ref = exact_interior(mdl, 10.5, grid)
        errs = [l2_error(ref, reconstruct_interior(mdl, 10.5, ModeWindow(10.5, n), grid))
                for n in (5, 11, 25, 51)]
        rep.add("reconstruction.disk.monotone", max(b - a for a, b in zip(errs, errs[1:])), 0.0)


def _checks_resonances(rep: _Report, models):
    if "slab" in models:
        mdl = SlabModel(FIG_SLAB)
        res = find_resonances(mdl, SearchRegion(0.01, 41.0, -1.0, -0.5))
        exact = [slab.analytic_resonances(FIG_SLAB, j) for j in range(len(res))]
        rep.add("resonances.slab.closed_form",
                max(abs(r.kc - e) for r, e in zip(res, exact)) if len(res) >= 20 else math.inf, 1e-10)
        rep.add("resonances.slab.s_pole", max(r.s_pole_residual for r in res), 1e-8)
        fp = fixed_point_resonance(mdl, 3, slab.analytic_resonances(FIG_SLAB, 3).real)
        rep.add("resonances.slab.fixed_point", abs(fp - slab.analytic_resonances(FIG_SLAB, 3)), 1e-9)
    if "mirror" in models:
        res = find_resonances(MirrorModel(FIG_MIRROR), SearchRegion(27.0, 31.0, -1.0, -1e-3))
        rep.add("resonances.mirror.s_pole",
                max(r.s_pole_residual for r in res) if res else math.inf, 1e-8)
    if "disk" in models:
        sharp = find_resonances(DiskModel(FIG_DISK, 13), SearchRegion(10.0, 11.0, -0.5, -1e-9))
        rep.add("resonances.disk.s_pole",
                max(r.s_pole_residual for r in sharp) if sharp else math.inf, 1e-8)
        rep.add("resonances.disk.boundary_relation",
                max(abs(disk.boundary_relation_residual(FIG_DISK, 13, r.kc)) for r in sharp)
                if sharp else math.inf, 1e-8)
        broad = find_resonances(DiskModel(FIG_DISK, 5), SearchRegion(9.0, 12.0, -1.0, -1e-9))
        if sharp and broad:
            s = min(sharp, key=lambda r: abs(r.kc.real - 10.5))
            b = min(broad, key=lambda r: abs(r.kc.real - s.kc.real))
            ratio = abs(b.kc.imag) / abs(s.kc.imag)
        else:
            ratio = 0.0
        rep.add("resonances.disk.width_ratio", ratio, 10.0, less=False)


def _checks_gain(rep: _Report, models):
    if "slab" in models:
        worst = 0.0
        for bc in slab.BcVariant:
            mdl = SlabModel(FIG_SLAB, bc)
            for k in np.linspace(15.0, 21.0, 13):
                worst = max(worst, _rel(gain_via_alpha(mdl, k), slab.gain_closed(FIG_SLAB, k)))
        rep.add("gain.slab", worst, 1e-6)
        one = slab.SlabParams(1.0)
        rep.add("gain.slab.null", max(abs(slab.gain_closed(one, k) - 1) for k in np.linspace(0.5, 30, 60)), 1e-12)
    if "mirror" in models:
        mdl = MirrorModel(FIG_MIRROR)
        worst = max(_rel(gain_via_alpha(mdl, k), mirror.gain_closed(FIG_MIRROR, k))
                    for k in np.linspace(27.0, 31.0, 9))
        rep.add("gain.mirror", worst, 1e-6)
        zero = mirror.MirrorParams(0.0)
        rep.add("gain.mirror.null", max(abs(mirror.gain_closed(zero, k) - 1) for k in np.linspace(0.5, 30, 60)), 1e-12)
        r, _ = mirror.mirror_rt(FIG_MIRROR, 28.9)
        rep.add("gain.mirror.reflectivity", abs(abs(r) ** 2 - 0.300), 2e-3)
    if "disk" in models:
        worst = max(_rel(gain_via_alpha(DiskModel(FIG_DISK, 0), k), disk.gain_total(FIG_DISK, k))
                    for k in (8.0, 10.5, 11.7))
        rep.add("gain.disk", worst, 1e-8)
        one = disk.DiskParams(1.0)
        null = 0.0
        for k in (0.7, 3.0, 9.5):
            null = max(null, abs(disk.gain_total(one, k) - 1))
            for m in (0, 4, 13):
                null = max(null, abs(disk.s_matrix(one, m, k) - 1), abs(disk.mode_strength(one, m, k) - 2))
        rep.add("gain.disk.null", null, 1e-10)


def _checks_bc_independence(rep: _Report):
    worst = 0.0
    neu, dir_ = SlabModel(FIG_SLAB, "neumann"), SlabModel(FIG_SLAB, "dirichlet")
    for k in np.linspace(15.0, 21.0, 13):
        a = alpha_sq_sum(neu, k).value
        b = alpha_sq_sum(dir_, k).value
        worst = max(worst, _rel(a, b))
    rep.add("bc_independence.slab_ldos", worst, 1e-8)


GREEN_SAMPLES_1D = ((3.0, 0.4, 0.9), (7.5, 1.1, 0.3), (12.0, 0.6, 0.6), (2.2, 2.5, 1.7), (18.0, 0.05, 0.8))
GREEN_SAMPLES_DISK = ((5.0, 1.2, 1.2), (3.3, 1.05, 1.6), (8.0, 1.4, 1.1), (2.0, 2.0, 1.3), (10.5, 1.1, 1.1))


def _checks_greens(rep: _Report, models):
    kinds = []
    if "slab" in models:
        kinds += [("dirichlet", 0.0), ("neumann", 0.0)]
    if "mirror" in models:
        kinds.append(("mirror", FIG_MIRROR.eta))
    for kind, eta in kinds:
        worst = max(abs(greens_numeric_1d(kind, k, x, xp, 1e-9, eta) - greens_closed_1d(kind, k, x, xp, eta))
                    for k, x, xp in GREEN_SAMPLES_1D)
        rep.add(f"greens.{kind}", worst, 1e-6)
    if "disk" in models:
        for m in (0, 5):
            worst = max(abs(greens_numeric_disk(FIG_DISK, m, k, r, rp) - disk.channel_green(FIG_DISK, m, k, r, rp))
                        for k, r, rp in GREEN_SAMPLES_DISK)
            rep.add(f"greens.disk.m{m}", worst, 1e-6)


IDENTITY_GRID = ((0, 3, 8, 13, 20), (5.0, 12.3, 21.7, 34.65, 47.9))


def _checks_identity(rep: _Report):
    worst = 0.0
    p = disk.DiskParams(3.3)
    for m in IDENTITY_GRID[0]:
        for x in IDENTITY_GRID[1]:
            lhs, rhs, _ = disk.radial_sum_identity(p, m, x / (p.n * p.R), 500)
            worst = max(worst, _rel(lhs, rhs))
    rep.add("identity.disk_radial_sum", worst, 1e-6)


GROUPS = ("specfun", "unitarity", "orthonormality", "alpha", "reconstruction",
          "resonances", "gain", "bc_independence", "greens", "identity")


def validate_all(config: Optional[dict] = None) -> dict:
    """Run the invariant suites and return a JSON-compatible report.

    ``config`` keys: ``models`` (subset of slab/mirror/disk), ``only``
    (subset of :data:`GROUPS`) and ``tolerance_scale`` (multiplies every
    tolerance; 0 forces failures).
    """
    cfg = dict(DEFAULT_CONFIG)
    cfg.update(config or {})
    models = tuple(m for m in ("slab", "mirror", "disk") if m in cfg["models"])
    only = cfg["only"]
    groups = [g for g in GROUPS if only is None or g in only]
    rep = _Report(float(cfg["tolerance_scale"]))
    runners = {
        "specfun": lambda: _checks_specfun(rep),
        "unitarity": lambda: _checks_unitarity(rep, models),
        "orthonormality": lambda: _checks_orthonormality(rep, models),
        "alpha": lambda: _checks_alpha(rep, models),
        "reconstruction": lambda: _checks_reconstruction(rep, models),
        "resonances": lambda: _checks_resonances(rep, models),
        "gain": lambda: _checks_gain(rep, models),
        "bc_independence": lambda: _checks_bc_independence(rep) if "slab" in models else None,
        "greens": lambda: _checks_greens(rep, models),
        "identity": lambda: _checks_identity(rep) if "disk" in models else None,
    }
    for g in groups:
        try:
            runners[g]()
        except Exception as exc:  # a crashing suite is a failed check, not a crash
            rep.add_error(f"{g}.error", exc)
    passed = all(c["status"] == "pass" for c in rep.checks.values())
    return {
        "config": {"models": list(models), "only": list(groups), "tolerance_scale": rep.scale},
        "status": "pass" if passed else "fail",
        "checks": rep.checks,
    }

