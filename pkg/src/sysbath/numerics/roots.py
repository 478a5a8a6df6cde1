"""Complex Newton iteration and exhaustive root search by the argument principle."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

ComplexFn = Callable[[complex], complex]

MAX_NEWTON_STEPS = 60
_EPS = 2.220446049250313e-16


class ConvergenceError(ArithmeticError):
    """Newton iteration failed; carries the last iterate and its residual."""

    def __init__(self, message: str, last: complex, residual: float):
        super().__init__(f"{message} (last iterate {last!r}, |f| = {residual:.3e})")
        self.last = last
        self.residual = residual


class RootCountError(ArithmeticError):
    """Winding-number bookkeeping could not be closed inside a sub-rectangle."""

    def __init__(self, message: str, region: "SearchRegion"):
        super().__init__(f"{message}: {region}")
        self.region = region


class BoundaryRootError(ArithmeticError):
    """The function vanishes (numerically) on a contour edge."""


@dataclass(frozen=True)
class SearchRegion:
    """Closed rectangle ``[re_min, re_max] x [im_min, im_max]`` in the plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"degenerate search region {self}")

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def diameter(self) -> float:
        return math.hypot(self.re_max - self.re_min, self.im_max - self.im_min)

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min - margin <= z.real <= self.re_max + margin
            and self.im_min - margin <= z.imag <= self.im_max + margin
        )

    def corners(self) -> tuple[complex, complex, complex, complex]:
        """Counter-clockwise from the lower-left corner."""
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )


def cauchy_derivative(f: ComplexFn, z: complex, radius: float, points: int = 16) -> complex:
    """Derivative of an analytic ``f`` from samples on a small circle.

    This is the complex-step idea carried over to analytic functions: the
    trapezoid rule on ``|w - z| = radius`` has error ``O(radius**points)``
    and involves no difference of nearby values.
    """
    acc = 0.0j
    for j in range(points):
        w = cmath.exp(2j * math.pi * j / points)
        acc += f(z + radius * w) / w
    return acc / (points * radius)


def newton_complex(
    f: ComplexFn,
    seed: complex,
    df: Optional[ComplexFn] = None,
    tol: float = 1e-12,
    max_steps: int = MAX_NEWTON_STEPS,
    step_radius: Optional[float] = None,
) -> complex:
    """Newton iteration for an analytic function of one complex variable.

    Parameters
    ----------
    f, df : callable
        Function and (optional) derivative.  Without ``df`` the derivative is
        taken from :func:`cauchy_derivative`.
    seed : complex
        Starting point; must lie in the basin of the wanted root.
    tol : float
        Required ``|f(root)|``.
    max_steps : int
        At most 60.
    step_radius : float, optional
        Circle radius for the derivative; defaults to ``1e-3 * max(1, |z|)``.

    Returns
    -------
    complex
        The best iterate, with ``|f| <= tol``.

    Raises
    ------
    ConvergenceError
        If no iterate reaches ``tol`` within ``max_steps`` steps.
    """
    max_steps = min(int(max_steps), MAX_NEWTON_STEPS)
    z = complex(seed)
    fz = complex(f(z))
    best, best_res = z, abs(fz)
    for _ in range(max_steps):
        if fz == 0:
            return z
        if df is not None:
            d = complex(df(z))
        else:
            r = step_radius if step_radius is not None else 1e-3 * max(1.0, abs(z))
            d = cauchy_derivative(f, z, r)
        if d == 0 or not cmath.isfinite(d):
            break
        step = fz / d
        z = z - step
        fz = complex(f(z))
        if not cmath.isfinite(fz):
            break
        res = abs(fz)
        if res < best_res:
            best, best_res = z, res
        if abs(step) <= 8.0 * _EPS * max(1.0, abs(z)) and best_res <= tol:
            return best
    if best_res <= tol:
        return best
    raise ConvergenceError("Newton did not converge", best, best_res)


# ------------------------------------------------------------- argument principle

def _edge_phase(f: ComplexFn, a: complex, b: complex, fa: complex, fb: complex,
                depth: int, floor: float) -> float:
    """Accumulated arg change of f along [a, b].

    A step is accepted only when both halves turn by less than pi/4 and
    agree with the whole step, which guards against a turn of nearly 2 pi
    aliasing into a small one.
    """
    if depth > 40:
        raise BoundaryRootError(f"phase not resolved on [{a}, {b}]")
    m = 0.5 * (a + b)
    fm = complex(f(m))
    if abs(fm) <= floor or not cmath.isfinite(fm):
        raise BoundaryRootError(f"|f| = {abs(fm):.3e} at contour point {m}")
    d1 = cmath.phase(fm / fa)
    d2 = cmath.phase(fb / fm)
    if abs(d1) < 0.25 * math.pi and abs(d2) < 0.25 * math.pi:
        if abs(d1 + d2 - cmath.phase(fb / fa)) < 1e-9:
            return d1 + d2
    return (_edge_phase(f, a, m, fa, fm, depth + 1, floor)
            + _edge_phase(f, m, b, fm, fb, depth + 1, floor))


def winding_number(f: ComplexFn, region: SearchRegion, samples_per_edge: int = 16,
                   floor: float = 1e-300) -> int:
    """Number of zeros (minus poles) of ``f`` inside ``region``.

    The contour is walked counter-clockwise; each edge starts from
    ``samples_per_edge`` points and is bisected until the phase increment
    per step is below pi/4.
    """
    cs = region.corners()
    total = 0.0
    for e in range(4):
        a, b = cs[e], cs[(e + 1) % 4]
        pts = [a + (b - a) * (i / samples_per_edge) for i in range(samples_per_edge + 1)]
        vals = [complex(f(p)) for p in pts]
        for p, v in zip(pts, vals):
            if abs(v) <= floor or not cmath.isfinite(v):
                raise BoundaryRootError(f"|f| = {abs(v):.3e} at contour point {p}")
        for i in range(samples_per_edge):
            total += _edge_phase(f, pts[i], pts[i + 1], vals[i], vals[i + 1], 0, floor)
    w = total / (2.0 * math.pi)
    n = round(w)
    if abs(w - n) > 1e-3:
        raise BoundaryRootError(f"non-integer winding number {w:.6f} on {region}")
    return int(n)


_SPLITS = (0.5, 0.5713, 0.4469, 0.6379, 0.3721)


def _children(r: SearchRegion, frac: float) -> list[SearchRegion]:
    xm = r.re_min + frac * (r.re_max - r.re_min)
    ym = r.im_min + frac * (r.im_max - r.im_min)
    return [
        SearchRegion(r.re_min, xm, r.im_min, ym),
        SearchRegion(r.re_min, xm, ym, r.im_max),
        SearchRegion(xm, r.re_max, r.im_min, ym),
        SearchRegion(xm, r.re_max, ym, r.im_max),
    ]


def roots_in_region(
    f: ComplexFn,
    region: SearchRegion,
    max_roots: int = 64,
    df: Optional[ComplexFn] = None,
    tol: float = 1e-10,
    max_depth: int = 14,
    dedupe: float = 1e-8,
) -> list[complex]:
    """All zeros of an analytic ``f`` inside ``region``.

    The rectangle is split as a quadtree until each cell winds at most once;
    single-root cells are polished by Newton from the cell centre.  The
    number of returned roots always equals the winding number of the whole
    region.

    Raises
    ------
    RootCountError
        If the count cannot be reconciled within ``max_depth`` splits, or the
        region holds more than ``max_roots`` zeros.
    BoundaryRootError
        If ``f`` vanishes on the outer contour; move the region slightly.
    """
    total = winding_number(f, region)
    if total < 0:
        raise RootCountError(f"negative winding number {total} (poles inside?)", region)
    if total > max_roots:
        raise RootCountError(f"{total} roots exceed max_roots={max_roots}", region)
    found: list[complex] = []
    _resolve(f, df, region, total, tol, max_depth, found)
    roots = sorted(found, key=lambda z: (z.real, z.imag))
    unique: list[complex] = []
    for z in roots:
        if all(abs(z - u) > dedupe for u in unique):
            unique.append(z)
    if len(unique) != total:
        raise RootCountError(
            f"found {len(unique)} distinct roots but the winding number is {total}", region
        )
    return unique


def _resolve(f, df, cell: SearchRegion, count: int, tol: float, depth: int,
             out: list[complex]) -> None:
    if count == 0:
        return
    if count == 1:
        z = _polish_single(f, df, cell, tol)
        if z is not None:
            out.append(z)
            return
    if depth <= 0:
        raise RootCountError(f"unresolved cell holding {count} root(s)", cell)
    for frac in _SPLITS:
        kids = _children(cell, frac)
        try:
            counts = [winding_number(f, k) for k in kids]
        except BoundaryRootError:
            continue
        if sum(counts) == count and min(counts) >= 0:
            for k, c in zip(kids, counts):
                _resolve(f, df, k, c, tol, depth - 1, out)
            return
    raise RootCountError("could not split cell without losing roots", cell)


def _polish_single(f, df, cell: SearchRegion, tol: float) -> Optional[complex]:
    margin = 1e-9 * max(1.0, abs(cell.center))
    for seed in (cell.center, _log_moment(f, cell)):
        if seed is None:
            continue
        try:
            z = newton_complex(f, seed, df=df, tol=tol,
                               step_radius=min(1e-3 * max(1.0, abs(seed)), 0.05 * cell.diameter))
        except ConvergenceError:
            continue
        if cell.contains(z, margin):
            return z
    return None


def _log_moment(f, cell: SearchRegion, n: int = 64) -> Optional[complex]:
    """Root estimate (1/2 pi i) * contour sum of z * d log f for a one-root cell."""
    cs = cell.corners()
    pts = []
    for e in range(4):
        a, b = cs[e], cs[(e + 1) % 4]
        pts.extend(a + (b - a) * (i / n) for i in range(n))
    pts.append(pts[0])
    vals = [complex(f(p)) for p in pts]
    acc = 0.0j
    for i in range(len(pts) - 1):
        if vals[i] == 0:
            return None
        dlog = cmath.log(vals[i + 1] / vals[i])
        acc += 0.5 * (pts[i] + pts[i + 1]) * dlog
    return acc / (2j * math.pi)
