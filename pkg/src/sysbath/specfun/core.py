"""Integer-order cylinder functions J, Y, H1, H2, derivatives and zeros of J."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import ai_zeros

if os.environ.get("SYSBATH_PURE_PYTHON") == "1":
    from . import _pykernels as _kern
else:
    try:
        from . import _ckernels as _kern
    except ImportError:  # compiled extension not built
        from . import _pykernels as _kern

BACKEND = "cython" if _kern.__name__.endswith("_ckernels") else "python"

MAX_ORDER = 60
MAX_ABS_Z = 200.0
ASYM_ABS_Z = 1.0e5
MAX_IMAG = 10.0
MAX_ZERO_INDEX = 10_000

_KINDS = ("j", "y", "h1", "h2")


class DomainError(ValueError):
    """Argument outside the validated (order, argument) region."""


@dataclass(frozen=True)
class BesselZero:
    """The ``lam``-th positive zero ``x`` of ``J_m``."""

    m: int
    lam: int
    x: float


def _check(m: int, z: complex, need_y: bool) -> None:
    if int(m) != m:
        raise DomainError(f"order must be an integer, got {m!r}")
    am = abs(int(m))
    if am > MAX_ORDER:
        raise DomainError(f"|m| = {am} exceeds {MAX_ORDER}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    if abs(z.imag) > MAX_IMAG:
        raise DomainError(f"|Im z| = {abs(z.imag):g} exceeds {MAX_IMAG:g}")
    az = abs(z)
    # orders up to am+1 are generated, the asymptotic path needs 2*(am+1) <= |z|
    if az > MAX_ABS_Z and not (az <= ASYM_ABS_Z and 2 * (am + 1) <= az):
        raise DomainError(f"|z| = {az:g} outside the validated region")
    if need_y and not z.real > 0.0:
        raise DomainError(f"Y and H need Re z > 0, got {z!r}")


_SLOT = {"j": 0, "y": 1, "h1": 2, "h2": 3}


def _reflect(c, m: int):
    # C_{-k} = (-1)^k C_k; the neighbours of -am are -(am+1) and -(am-1)
    am = abs(m)
    s = -1.0 if am % 2 else 1.0
    return [-s * c[2], s * c[1], -s * c[0]]


def _eval(kind: str, m: int, z) -> tuple[complex, complex, complex]:
    """``C_{m-1}, C_m, C_{m+1}`` of the requested kind at ``z``."""
    if kind not in _SLOT:
        raise DomainError(f"unknown function kind {kind!r}; expected one of {_KINDS}")
    z = complex(z)
    need_y = kind != "j"
    m = int(m) if int(m) == m else m
    _check(m, z, need_y)
    am = abs(m)
    v = _kern.jy_orders(z, am + 1, need_y)[_SLOT[kind]]
    c = [(-v[1] if i < 0 else v[i]) for i in (am - 1, am, am + 1)]
    if m < 0:
        c = _reflect(c, m)
    return tuple(c)


def bessel_j(m: int, z) -> complex:
    """Bessel function of the first kind ``J_m(z)``.

    Parameters
    ----------
    m : int
        Integer order, ``|m| <= 60``.
    z : complex
        Argument with ``|Im z| <= 10`` and ``|z| <= 200`` (larger ``|z|`` is
        accepted where the Hankel asymptotic path applies).

    Returns
    -------
    complex
    """
    return _eval("j", m, z)[1]


def bessel_y(m: int, x) -> float:
    """Bessel function of the second kind ``Y_m(x)`` for real ``x > 0``."""
    xc = complex(x)
    if xc.imag != 0.0 or not xc.real > 0.0:
        raise DomainError(f"bessel_y needs a positive real argument, got {x!r}")
    return _eval("y", m, xc)[1].real


def hankel(kind: int, m: int, z) -> complex:
    """Hankel function ``H^(kind)_m(z)``, ``kind`` in {1, 2}, ``Re z > 0``.

    Equal to ``J_m + i Y_m`` (kind 1) or ``J_m - i Y_m`` (kind 2); the kernel
    produces both kinds without forming that cancelling sum, so the recessive
    kind keeps full relative accuracy off the real axis.
    """
    if kind not in (1, 2):
        raise DomainError(f"Hankel kind must be 1 or 2, got {kind!r}")
    return _eval("h1" if kind == 1 else "h2", m, z)[1]


def cyl_deriv(f: str, m: int, z) -> complex:
    """Argument derivative ``C'_m(z) = (C_{m-1}(z) - C_{m+1}(z)) / 2``.

    ``f`` is one of ``"j"``, ``"y"``, ``"h1"``, ``"h2"``.
    """
    if f not in _KINDS:
        raise DomainError(f"unknown function kind {f!r}; expected one of {_KINDS}")
    lo, _, hi = _eval(f, m, z)
    return 0.5 * (lo - hi)


def cyl_value_deriv(f: str, m: int, z) -> tuple[complex, complex]:
    """``(C_m(z), C'_m(z))`` from a single kernel sweep."""
    if f not in _KINDS:
        raise DomainError(f"unknown function kind {f!r}; expected one of {_KINDS}")
    lo, mid, hi = _eval(f, m, z)
    return mid, 0.5 * (lo - hi)


def cyl_array(f: str, m: int, z) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``(C_m(z), C'_m(z))`` over an array of arguments.

    Domain checks are applied to the extreme points of ``z`` only, so callers
    pass grids that are contiguous in the validated region.
    """
    if f not in _KINDS:
        raise DomainError(f"unknown function kind {f!r}; expected one of {_KINDS}")
    za = np.asarray(z, dtype=np.complex128)
    if za.size == 0:
        return za.copy(), za.copy()
    need_y = f != "j"
    flat = za.ravel()
    for probe in (flat[np.argmax(np.abs(flat))], flat[np.argmin(flat.real)],
                  flat[np.argmax(np.abs(flat.imag))]):
        _check(int(m), complex(probe), need_y)
    am = abs(int(m))
    c = _kern.jy_batch(am, flat, need_y)[_SLOT[f]]
    if m < 0:
        c = np.stack(_reflect(c, int(m)))
    val = c[1].reshape(za.shape)
    der = (0.5 * (c[0] - c[2])).reshape(za.shape)
    return val, der


class CylSet(NamedTuple):
    """All four kinds and their derivatives at one (m, z)."""

    j: complex
    dj: complex
    y: complex
    dy: complex
    h1: complex
    dh1: complex
    h2: complex
    dh2: complex


def cyl_set(m: int, z) -> CylSet:
    """Every kind with its derivative from a single kernel sweep (``Re z > 0``)."""
    z = complex(z)
    _check(m, z, True)
    am = abs(int(m))
    res = _kern.jy_orders(z, am + 1, True)
    out = []
    for v in res:
        c = [(-v[1] if i < 0 else v[i]) for i in (am - 1, am, am + 1)]
        if m < 0:
            c = _reflect(c, int(m))
        out.extend((c[1], 0.5 * (c[0] - c[2])))
    return CylSet(*out)


# ---------------------------------------------------------------- zeros

def _mcmahon(m: int, lam: int) -> float:
    mu = 4.0 * m * m
    b = (lam + 0.5 * m - 0.25) * math.pi
    e = 8.0 * b
    return (
        b
        - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e**3)
        - 32.0 * (mu - 1.0) * (83.0 * mu**2 - 982.0 * mu + 3779.0) / (15.0 * e**5)
    )


def _uniform_seed(m: int, lam: int) -> float:
    # Olver's uniform expansion, leading term: x = m * z(zeta), zeta = m^(-2/3) a_lam
    a = float(ai_zeros(lam)[0][-1])
    target = (2.0 / 3.0) * (-a / m ** (2.0 / 3.0)) ** 1.5

    def g(zz):
        return math.sqrt(zz * zz - 1.0) - math.acos(1.0 / zz) - target

    hi = 2.0
    while g(hi) < 0.0:
        hi *= 2.0
    return m * brentq(g, 1.0, hi, xtol=1e-14)


def _newton_zero(m: int, x: float) -> float:
    for _ in range(50):
        lo, mid, hi = _eval("j", m, x)
        d = 0.5 * (lo - hi).real
        step = mid.real / d
        x -= step
        if abs(step) <= 4e-16 * x:
            break
    return x


def bessel_j_zero(m: int, lam: int) -> BesselZero:
    """The ``lam``-th positive zero of ``J_m`` (``lam >= 1``, counted from 1).

    Seeds come from McMahon's expansion when ``lam`` is large compared with
    ``m`` and from the uniform Airy-type expansion otherwise; Newton polishes.
    """
    if int(lam) != lam or lam < 1 or lam > MAX_ZERO_INDEX:
        raise DomainError(f"zero index must lie in [1, {MAX_ZERO_INDEX}], got {lam!r}")
    if int(m) != m or abs(m) > MAX_ORDER:
        raise DomainError(f"order must be an integer with |m| <= {MAX_ORDER}")
    am = abs(int(m))
    lam = int(lam)
    seed = _mcmahon(am, lam) if (am <= 2 or lam >= am) else _uniform_seed(am, lam)
    x = _newton_zero(am, seed)
    # consecutive zeros are more than pi apart, so a converged root within
    # pi/2 of an accurate seed is the intended one
    if not abs(x - seed) < 0.5 * math.pi:
        raise ArithmeticError(f"zero ({am}, {lam}) drifted from seed {seed} to {x}")
    return BesselZero(int(m), lam, x)


def bessel_j_zeros(m: int, count: int) -> np.ndarray:
    """First ``count`` positive zeros of ``J_m`` as a float array.

    Same seeds as :func:`bessel_j_zero`, with Newton run on the whole array.
    """
    if count < 1 or count > MAX_ZERO_INDEX:
        raise DomainError(f"count must lie in [1, {MAX_ZERO_INDEX}], got {count}")
    am = abs(int(m))
    lam = np.arange(1, count + 1)
    seeds = np.array([
        _mcmahon(am, j) if (am <= 2 or j >= am) else _uniform_seed(am, int(j)) for j in lam
    ])
    x = seeds.copy()
    for _ in range(50):
        val, der = cyl_array("j", am, x)
        step = val.real / der.real
        x = x - step
        if np.all(np.abs(step) <= 4e-16 * x):
            break
    if not np.all(np.abs(x - seeds) < 0.5 * math.pi):
        raise ArithmeticError(f"a zero of J_{am} drifted away from its seed")
    # spacing tends to pi (from below only for m = 0, where it exceeds 3.1)
    if count > 1 and not np.all(np.diff(x) > 3.1):
        raise ArithmeticError(f"zeros of J_{am} are not increasing with spacing > 3.1")
    return x


def mcmahon_zero(m: int, lam: float) -> float:
    """McMahon asymptotic zero position, usable for non-integer ``lam``."""
    return _mcmahon(abs(int(m)), lam)
