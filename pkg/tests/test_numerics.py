import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sysbath import slab
from sysbath.numerics import (
    ConvergenceError,
    PvIntegrand,
    PvToleranceError,
    SearchRegion,
    cauchy_derivative,
    newton_complex,
    pv_cauchy_reference,
    pv_integral,
    roots_in_region,
    series_sum_tail,
    winding_number,
)

N15 = 1.5
R02 = math.log(0.2)


def closed_slab_root(j, n=N15):
    # k_j l = ((2j+1) pi/2 + (i/2) ln|r|)/n, r = (n-1)/(n+1)
    return ((2 * j + 1) * math.pi / 2 + 0.5j * math.log(abs((n - 1) / (n + 1)))) / n


def slab_condition(z, n=N15):
    return cmath.sin(n * z) + 1j * n * cmath.cos(n * z)


# ---- newton -------------------------------------------------------------

def test_newton_quadratic():
    r = newton_complex(lambda z: z * z + 1, 0.9j, df=lambda z: 2 * z)
    assert abs(r - 1j) < 1e-12


def test_newton_numeric_derivative():
    r = newton_complex(lambda z: z * z + 1, 0.9j)
    assert abs(r - 1j) < 1e-12


def test_newton_identity_one_step():
    seed = 2.0 - 0.7j
    r = newton_complex(lambda z: z - seed, seed)
    assert r == seed


def test_newton_slab_closed_form():
    r = newton_complex(slab_condition, math.pi / 3 - 0.5j)
    assert abs(r - closed_slab_root(0)) < 1e-12


def test_newton_failure_diagnostic():
    with pytest.raises(ConvergenceError) as e:
        newton_complex(lambda z: z * z + 1, 1.0, max_steps=3)
    assert e.value.residual > 0


def test_cauchy_derivative_exact_for_polynomial():
    d = cauchy_derivative(lambda z: z**3, 1.0 + 1.0j, 1e-2)
    assert abs(d - 3 * (1 + 1j) ** 2) < 1e-13


# ---- region search -------------------------------------------------------

def test_sine_roots():
    roots = sorted(roots_in_region(cmath.sin, SearchRegion(2.0, 8.0, -1.0, 1.0)), key=lambda z: z.real)
    assert len(roots) == 2
    assert abs(roots[0] - math.pi) < 1e-10
    assert abs(roots[1] - 2 * math.pi) < 1e-10


def test_slab_region():
    reg = SearchRegion(0.0, 10.0, -2.0, 0.0)
    roots = sorted(roots_in_region(slab_condition, reg), key=lambda z: z.real)
    assert winding_number(slab_condition, reg) == len(roots) == 5
    for j, r in enumerate(roots):
        assert abs(r - closed_slab_root(j)) < 1e-10
        # printed form: (2j+1) pi/3 + (i/3) ln 0.2
        assert abs(r - ((2 * j + 1) * math.pi / 3 + 1j / 3 * R02)) < 1e-10


def test_empty_region():
    reg = SearchRegion(1.0, 2.0, 1.0, 2.0)
    assert roots_in_region(lambda z: z * z + 1, SearchRegion(3.0, 4.0, -1.0, 1.0)) == []
    assert winding_number(cmath.exp, reg) == 0


def test_clustered_roots():
    pts = [1.0 + 0.5j, 1.0 + 0.5j + 1e-4, 3.0 - 0.2j]
    f = lambda z: (z - pts[0]) * (z - pts[1]) * (z - pts[2])
    roots = roots_in_region(f, SearchRegion(0.0, 4.0, -1.0, 1.0))
    assert len(roots) == 3
    for p in pts:
        assert min(abs(r - p) for r in roots) < 1e-8


def test_region_validation():
    with pytest.raises(ValueError):
        SearchRegion(1.0, 1.0, 0.0, 1.0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(0.1, 3.9), st.floats(-0.9, 0.9)), min_size=0, max_size=4))
def test_region_exhaustive_property(pts):
    zs = [complex(a, b) for a, b in pts]
    # keep roots apart and off the boundary so the count is well posed
    zs = [z for i, z in enumerate(zs) if all(abs(z - w) > 0.05 for w in zs[:i])]
    f = lambda z: np.prod([z - w for w in zs]) if zs else 1.0 + 0 * z
    reg = SearchRegion(0.0, 4.0, -1.0, 1.0)
    roots = roots_in_region(f, reg)
    assert len(roots) == winding_number(f, reg) == len(zs)
    for w in zs:
        assert min(abs(r - w) for r in roots) < 1e-8


# ---- principal value ----------------------------------------------------

def test_pv_log_closed_form():
    k, big = 3.0, 50.0
    got = pv_integral(PvIntegrand(lambda t: 2 * t, k, 0.0, big), 1e-10)
    assert abs(got - math.log(abs((big**2 - k**2) / k**2))) < 1e-9


def test_pv_matches_qawc_reference():
    g = PvIntegrand(lambda t: cmath.exp(1j * t) / (1 + t), 2.3, 0.0, 40.0)
    assert abs(pv_integral(g, 1e-10) - pv_cauchy_reference(g, 1e-10)) < 1e-8


def test_pv_zero_integrand():
    assert pv_integral(PvIntegrand(lambda t: 0.0, 1.0), 1e-10) == 0


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_pv_full_output_and_failure():
    g = PvIntegrand(lambda t: 1.0 / (1 + t * t), 2.0)
    res = pv_integral(g, 1e-9, full_output=True)
    assert res.error <= 1e-9
    # exact: PV int_0^inf dt / ((1+t^2)(t^2-4)) = -pi/10
    assert abs(res.value - (-math.pi / 10)) < 1e-9
    with pytest.raises(PvToleranceError):
        pv_integral(g, 0.0)


def test_pv_oscillatory_tail():
    # PV int_0^inf sin(x t) * 2t/(t^2-k^2) dt = pi cos(k x), x > 0
    k, x = 4.0, 0.7
    got = pv_integral(PvIntegrand(lambda t: 2 * t, k, weight=("sin", x)), 1e-9)
    assert abs(got - math.pi * math.cos(k * x)) < 1e-7


@settings(max_examples=20, deadline=None)
@given(k=st.floats(1.0, 10.0), c=st.floats(-2.0, 2.0))
def test_pv_odd_part_vanishes(k, c):
    # over [0, 2k] the odd part of (t - k) g around the pole integrates to zero
    g_odd = lambda t: c * (t + k)  # regular * 1/(t^2-k^2) = c/(t-k), odd about k
    val = pv_integral(PvIntegrand(g_odd, k, 0.0, 2 * k), 1e-10)
    assert abs(val) < 1e-9


def test_pv_pole_outside_rejected():
    with pytest.raises(ValueError):
        PvIntegrand(lambda t: 1.0, 5.0, 0.0, 4.0)


# ---- series -------------------------------------------------------------

def test_basel():
    s = series_sum_tail(lambda j: 1.0 / (j + 1) ** 2, 2, 10_000)
    assert abs(s.value - math.pi**2 / 6) < 1e-8
    assert abs(s.value - math.pi**2 / 6) <= max(s.error, 1e-15)


def test_slab_pole_sum_closed_form():
    n, kl = 1.5, 18.0
    term = lambda j: 1.0 / (kl**2 - ((2 * j + 1) * math.pi / (2 * n)) ** 2) ** 2
    s = series_sum_tail(term, 4, 2000)
    c = math.cos(n * kl)
    closed = n**2 / (4 * kl**2 * c * c) * (1 - math.sin(2 * n * kl) / (2 * n * kl))
    assert abs(s.value - closed) / closed < 1e-10
    # independent check of the closed form itself
    ref = mp.nsum(lambda j: 1 / (kl**2 - ((2 * j + 1) * mp.pi / (2 * n)) ** 2) ** 2, [0, mp.inf])
    assert abs(closed - float(ref)) / closed < 1e-12


def test_single_term():
    s = series_sum_tail(lambda j: 0.37 if j == 0 else 0.0, 2, 0, tail_term=lambda t: 0.0)
    assert s.value == 0.37


def test_error_estimate_non_increasing():
    f = lambda j: 1.0 / (j + 1.5) ** 3
    errs = [series_sum_tail(f, 3, n).error for n in (10, 50, 200, 1000, 5000)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_tail_order_validation():
    with pytest.raises(ValueError):
        series_sum_tail(lambda j: 1.0, 1, 10)
