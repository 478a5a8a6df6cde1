"""Partial sums with an Euler-Maclaurin tail for algebraically decaying terms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy import integrate


@dataclass(frozen=True)
class SeriesSum:
    """Series value with its pieces and an error estimate."""

    value: float
    error: float
    partial: float
    tail: float


def series_sum_tail(
    term: Callable[[int], float],
    tail_order: float,
    lam_max: int,
    lam_min: int = 0,
    tail_term: Optional[Callable[[float], float]] = None,
) -> SeriesSum:
    """Sum ``term(lam)`` for ``lam >= lam_min`` with ``term ~ c / lam**p``.

    Terms up to ``lam_max`` are added exactly.  The remainder uses the
    midpoint Euler-Maclaurin formula

        sum_{lam > N} f(lam) = int_{N+1/2}^inf f + f'(N+1/2)/24 - 7 f'''(N+1/2)/5760 + ...

    where ``f`` is ``tail_term`` (a smooth continuation of ``term``, defaults
    to ``term`` itself).  The reported error is the first neglected term,
    with ``|f'''|`` the larger of a finite-difference value and the
    power-law model ``f ~ c x**-p``.

    Parameters
    ----------
    term : callable
        Integer index to term value.
    tail_order : float
        Decay exponent ``p >= 2`` of the terms.
    lam_max, lam_min : int
        Last index summed exactly and the first index of the series.
    tail_term : callable, optional
        Continuous extension used for the tail; needed when ``term`` is only
        defined on integers (e.g. built from tabulated zeros).
    """
    if tail_order < 2:
        raise ValueError(f"tail_order must be >= 2, got {tail_order}")
    if lam_max < lam_min:
        raise ValueError("lam_max must be >= lam_min")
    partial = math.fsum(float(term(j)) for j in range(lam_min, lam_max + 1))
    f = tail_term if tail_term is not None else term
    x0 = lam_max + 0.5
    integral, _ = integrate.quad(lambda t: float(f(t)), x0, math.inf,
                                 epsabs=0.0, epsrel=1e-13, limit=200)
    h = 0.25
    # five-point stencil: its error stays well below the neglected f''' term
    fprime = (
        -float(f(x0 + 2 * h)) + 8.0 * float(f(x0 + h))
        - 8.0 * float(f(x0 - h)) + float(f(x0 - 2 * h))
    ) / (12.0 * h)
    tail = integral + fprime / 24.0
    p = float(tail_order)
    f3 = p * (p + 1.0) * (p + 2.0) * abs(float(f(x0))) / x0**3
    h3 = max(0.5, 0.05 * x0)
    f3_num = (
        float(f(x0 + 2 * h3)) - 2.0 * float(f(x0 + h3))
        + 2.0 * float(f(x0 - h3)) - float(f(x0 - 2 * h3))
    ) / (2.0 * h3**3)
    f3 = max(f3, abs(f3_num))
    err = 7.0 * f3 / 5760.0
    return SeriesSum(partial + tail, err, partial, tail)
