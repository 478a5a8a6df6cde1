"""Principal-value quadrature on a half line and fixed Gauss-Legendre panels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate


class PvToleranceError(ArithmeticError):
    """Requested accuracy not reached; ``achieved`` holds the error estimate."""

    def __init__(self, message: str, achieved: float, value: complex):
        super().__init__(f"{message} (estimate {achieved:.3e})")
        self.achieved = achieved
        self.value = value


@dataclass(frozen=True)
class PvIntegrand:
    """``PV integral of regular_factor(k') * w(k') / (k'^2 - k^2)`` over [lower, upper].

    Parameters
    ----------
    regular_factor : callable
        ``k' -> complex``, smooth through the pole.
    pole : float
        Location ``k`` of the simple pole, strictly inside ``(lower, upper)``.
    lower, upper : float
        Integration range; ``upper`` may be ``inf``.
    weight : tuple, optional
        ``("sin", x)`` or ``("cos", x)`` multiplies the integrand by
        ``sin(x k')`` or ``cos(x k')``; the infinite tail is then done by an
        oscillatory Fourier-integral rule, which only needs ``regular_factor``
        to decay like ``1/k'`` rather than ``1/k'^2``.
    """

    regular_factor: Callable[[float], complex]
    pole: float
    lower: float = 0.0
    upper: float = math.inf
    weight: Optional[tuple[str, float]] = None

    def __post_init__(self):
        if not self.lower < self.pole < self.upper:
            raise ValueError(f"pole {self.pole} not inside ({self.lower}, {self.upper})")
        if self.weight is not None and self.weight[0] not in ("sin", "cos"):
            raise ValueError(f"weight must be ('sin'|'cos', x), got {self.weight!r}")

    def w(self, kp: float) -> float:
        if self.weight is None:
            return 1.0
        kind, x = self.weight
        return math.sin(x * kp) if kind == "sin" else math.cos(x * kp)


@dataclass(frozen=True)
class PvResult:
    value: complex
    error: float


def _quad_complex(fun, a, b, epsabs, **kw) -> tuple[complex, float]:
    """scipy quad applied separately to the real and imaginary parts."""
    kw.setdefault("limit", 400)
    re, ere = integrate.quad(lambda t: fun(t).real, a, b, epsabs=epsabs, epsrel=0.0, **kw)
    im, eim = integrate.quad(lambda t: fun(t).imag, a, b, epsabs=epsabs, epsrel=0.0, **kw)
    return complex(re, im), ere + eim


def pv_integral(g: PvIntegrand, quad_tol: float = 1e-9, full_output: bool = False):
    """Principal value of ``g`` by singularity subtraction.

    Near the pole the integrand is ``F(k')/(k' - k)`` with
    ``F = regular_factor * w / (k' + k)``.  On the symmetric interval
    ``[k - a, k + a]`` the PV of ``1/(k' - k)`` vanishes, leaving the smooth
    difference quotient ``(F(k') - F(k)) / (k' - k)``; the rest of the range
    is regular and handed to adaptive quadrature.

    Returns the complex value, or a :class:`PvResult` with ``full_output``.

    Raises
    ------
    PvToleranceError
        If the summed error estimate exceeds ``quad_tol``.
    """
    k = float(g.pole)
    f = g.regular_factor
    a = min(k - g.lower, g.upper - k, max(1.0, 0.5 * k))
    # quadpack rejects a zero target; a tiny one just exhausts the refinement
    piece_tol = max(quad_tol / 8.0, 1e-300)

    def full(t):
        return complex(f(t)) * g.w(t) / (t * t - k * k)

    def big_f(t):
        return complex(f(t)) * g.w(t) / (t + k)

    fk = big_f(k)

    def diff_quot(t):
        d = t - k
        if d == 0.0:
            d = 1e-300
        return (big_f(t) - fk) / d

    pieces = []
    pieces.append(_quad_complex(diff_quot, k - a, k + a, piece_tol))
    if k - a > g.lower:
        pieces.append(_quad_complex(full, g.lower, k - a, piece_tol))
    right = k + a
    if right < g.upper:
        if math.isinf(g.upper) and g.weight is not None:
            kind, x = g.weight

            def bare(t):
                return complex(f(t)) / (t * t - k * k)

            re, ere = integrate.quad(lambda t: bare(t).real, right, math.inf,
                                     weight=kind, wvar=x, epsabs=piece_tol, limlst=200)
            im, eim = integrate.quad(lambda t: bare(t).imag, right, math.inf,
                                     weight=kind, wvar=x, epsabs=piece_tol, limlst=200)
            pieces.append((complex(re, im), ere + eim))
        else:
            pieces.append(_quad_complex(full, right, g.upper, piece_tol))
    value = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    if not err <= quad_tol:
        raise PvToleranceError("principal-value quadrature missed its tolerance", err, value)
    return PvResult(value, err) if full_output else value


def pv_cauchy_reference(g: PvIntegrand, quad_tol: float = 1e-9) -> complex:
    """Independent PV route on a finite range using QUADPACK's Cauchy weight.

    Only for finite ``upper``; used to cross-check :func:`pv_integral`.
    """
    if math.isinf(g.upper):
        raise ValueError("the Cauchy-weight reference needs a finite upper limit")
    k = float(g.pole)

    def h(t):
        return complex(g.regular_factor(t)) * g.w(t) / (t + k)

    re, _ = integrate.quad(lambda t: h(t).real, g.lower, g.upper, weight="cauchy",
                           wvar=k, epsabs=quad_tol, limit=400)
    im, _ = integrate.quad(lambda t: h(t).imag, g.lower, g.upper, weight="cauchy",
                           wvar=k, epsabs=quad_tol, limit=400)
    return complex(re, im)


@lru_cache(maxsize=32)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gl_panels(f_vec: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              panels: int, order: int = 20) -> complex:
    """Composite Gauss-Legendre rule with ``panels`` equal panels on [a, b].

    ``f_vec`` receives a 1-D array of nodes and returns values of the same
    length; summation order is fixed, so results are bit-reproducible.
    """
    x, w = _gl_nodes(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    vals = np.asarray(f_vec(nodes))
    return complex(np.sum(vals * weights))


def gl_nodes_weights(a: float, b: float, panels: int, order: int = 20):
    """Nodes and weights of :func:`gl_panels` for callers that batch their own work."""
    x, w = _gl_nodes(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    return ((mid[:, None] + half[:, None] * x[None, :]).ravel(),
            (half[:, None] * w[None, :]).ravel())
