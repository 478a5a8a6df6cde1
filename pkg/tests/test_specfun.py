import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sysbath import specfun as sf
from sysbath.specfun import DomainError

from .conftest import load_oracle_grid

GRID = load_oracle_grid()


def _public(kind, m, z):
    if kind == "j":
        return sf.bessel_j(m, z)
    if kind == "y":
        # bessel_y is the real-axis entry point; complex Y goes through the value/derivative pair
        return sf.bessel_y(m, z.real) if z.imag == 0 else sf.cyl_value_deriv("y", m, z)[0]
    if kind in ("h1", "h2"):
        return sf.hankel(int(kind[1]), m, z)
    return sf.cyl_deriv(kind[1:], m, z)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_oracle_grid_size():
    assert len({(m, z) for _, m, z, _ in GRID}) >= 150
    assert len(GRID) >= 200


def test_oracle_grid(backend):
    worst = max(_rel(complex(_public(kind, m, z)), v) for kind, m, z, v in GRID)
    assert worst <= 1e-11, backend


@pytest.mark.parametrize("m, z", [(0, 0), (1, 0)])
def test_j_at_origin(m, z):
    assert sf.bessel_j(m, z) == (1.0 if m == 0 else 0.0)


def test_j0_first_zero():
    assert abs(sf.bessel_j(0, 2.404825557695773)) <= 1e-12


def test_y0_at_first_zero():
    ref = complex(mp.bessely(0, mp.mpf("2.404825557695773")))
    assert _rel(sf.bessel_y(0, 2.404825557695773), ref) <= 1e-11


def test_y0_log_singularity():
    assert sf.bessel_y(0, 1e-6) < -8.0


def test_wronskian_jy_example():
    j, dj = sf.cyl_value_deriv("j", 3, 1.7)
    y, dy = sf.cyl_value_deriv("y", 3, 1.7)
    assert abs(j * dy - dj * y - 2 / (math.pi * 1.7)) < 1e-12


def test_hankel_conjugacy():
    assert sf.hankel(2, 2, 5.0) == pytest.approx(sf.hankel(1, 2, 5.0).conjugate(), rel=1e-15)


def test_hankel_wronskian_example():
    j, dj = sf.cyl_value_deriv("j", 13, 10.5)
    h, dh = sf.cyl_value_deriv("h1", 13, 10.5)
    assert abs(j * dh - dj * h - 2j / (math.pi * 10.5)) < 1e-12


def test_hankel_complex_oracle(backend):
    ref = complex(mp.hankel1(0, mp.mpc(10.5, -0.3)))
    assert _rel(sf.hankel(1, 0, 10.5 - 0.3j), ref) <= 1e-11


def test_hankel_derivative_oracle(backend):
    ref = complex(mp.diff(lambda t: mp.hankel1(13, t), mp.mpf(10.5)))
    assert _rel(sf.cyl_deriv("h1", 13, 10.5), ref) <= 1e-11


def test_deriv_at_origin():
    assert sf.cyl_deriv("j", 0, 0.0) == 0.0
    assert sf.cyl_deriv("j", 1, 0.0) == 0.5


@pytest.mark.parametrize("f", ["j", "y", "h1", "h2"])
@pytest.mark.parametrize("m, z", [(0, 3.7), (5, 12.4), (13, 10.5 - 0.2j), (40, 55.0)])
def test_deriv_matches_finite_difference(f, m, z):
    fn = (lambda mm, zz: _public(f, mm, complex(zz))) if f == "y" else (
        sf.bessel_j if f == "j" else (lambda mm, zz: sf.hankel(int(f[1]), mm, zz)))
    h = 1e-5
    fd = (fn(m, z + h) - fn(m, z - h)) / (2 * h)
    d = sf.cyl_deriv(f, m, z)
    assert abs(d - fd) <= 1e-8 * max(1.0, abs(d))


def test_h_is_j_plus_iy():
    for m in (0, 4, 17):
        for x in (0.3, 6.0, 33.0):
            j, y = sf.bessel_j(m, x), sf.bessel_y(m, x)
            assert _rel(sf.hankel(1, m, x), j + 1j * y) < 1e-14
            assert _rel(sf.hankel(2, m, x), j - 1j * y) < 1e-14


@pytest.mark.parametrize("m", [1, 2, 7, 30])
def test_reflection_exact(m):
    for z in (0.4, 9.0 - 1.0j, 70.0):
        assert sf.bessel_j(-m, z) == (-1) ** m * sf.bessel_j(m, z)
        assert sf.hankel(1, -m, z) == (-1) ** m * sf.hankel(1, m, z)


def test_wronskian_sweep(backend):
    worst = 0.0
    for m in range(0, 41, 4):
        for x in np.linspace(0.1, 100.0, 37):
            j, dj = sf.cyl_value_deriv("j", m, x)
            y, dy = sf.cyl_value_deriv("y", m, x)
            scale = max(1.0, abs(j * dy), abs(dj * y))
            worst = max(worst, abs(j * dy - dj * y - 2 / (math.pi * x)) / scale)
    assert worst < 1e-10


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 59), re=st.floats(0.5, 150.0), im=st.floats(-8.0, 8.0),
       kind=st.sampled_from(["j", "h1", "h2"]))
def test_recurrence_property(m, re, im, kind):
    z = complex(re, im)
    f = sf.bessel_j if kind == "j" else (lambda mm, zz: sf.hankel(int(kind[1]), mm, zz))
    a, b, c = f(m - 1, z), f(m, z), f(m + 1, z)
    assert abs(a + c - 2 * m / z * b) <= 1e-9 * max(abs(a), abs(b), abs(c))


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 59), x=st.floats(0.05, 190.0))
def test_recurrence_y_property(m, x):
    a, b, c = sf.bessel_y(m - 1, x), sf.bessel_y(m, x), sf.bessel_y(m + 1, x)
    assert abs(a + c - 2 * m / x * b) <= 1e-9 * max(abs(a), abs(b), abs(c))


@settings(max_examples=40, deadline=None)
@given(m=st.integers(0, 40), x=st.floats(0.5, 120.0))
def test_hankel_wronskian_property(m, x):
    j, dj = sf.cyl_value_deriv("j", m, x)
    h, dh = sf.cyl_value_deriv("h1", m, x)
    assert abs(j * dh - dj * h - 2j / (math.pi * x)) <= 1e-10 * max(1.0, abs(j * dh), abs(dj * h))


def test_cyl_set_matches_scalar_api():
    s = sf.cyl_set(-7, 9.3 - 0.4j)
    assert s.j == sf.bessel_j(-7, 9.3 - 0.4j)
    assert s.dh1 == pytest.approx(sf.cyl_deriv("h1", -7, 9.3 - 0.4j), rel=1e-14)
    assert s.h2 == pytest.approx(sf.hankel(2, -7, 9.3 - 0.4j), rel=1e-14)


def test_cyl_array_matches_scalar():
    xs = np.array([0.5, 3.0, 17.2])
    v, d = sf.cyl_array("j", 4, xs)
    for x, a, b in zip(xs, v, d):
        assert a == pytest.approx(sf.bessel_j(4, x), rel=1e-13)
        assert b == pytest.approx(sf.cyl_deriv("j", 4, x), rel=1e-12)


# ---- zeros --------------------------------------------------------------

def test_first_zero_j0():
    assert sf.bessel_j_zero(0, 1).x == pytest.approx(2.404825557695773, abs=1e-14)


@pytest.mark.parametrize("m, lam", [(13, 1), (0, 50), (5, 3), (40, 7), (60, 1), (2, 1000)])
def test_zero_oracle(m, lam):
    ref = float(mp.besseljzero(m, lam))
    assert sf.bessel_j_zero(m, lam).x == pytest.approx(ref, rel=1e-14)


def test_zero_residual_and_interlacing():
    assert sf.bessel_j_zero(5, 1).x < sf.bessel_j_zero(6, 1).x
    for m in (0, 9, 33):
        xs = sf.bessel_j_zeros(m, 300)
        assert np.all(np.diff(xs) > 0)
        for lam in (1, 2, 150, 300):
            x = xs[lam - 1]
            assert abs(sf.bessel_j(m, x)) <= 1e-12 * max(1.0, abs(sf.cyl_deriv("j", m, x)))


def test_zero_table_matches_single():
    xs = sf.bessel_j_zeros(13, 40)
    for lam in (1, 17, 40):
        assert xs[lam - 1] == pytest.approx(sf.bessel_j_zero(13, lam).x, rel=1e-15)


def test_large_zero_index():
    z = sf.bessel_j_zero(3, 10_000)
    assert z.x == pytest.approx(float(mp.besseljzero(3, 10_000)), rel=1e-14)


# ---- domain -------------------------------------------------------------

@pytest.mark.parametrize("call", [
    lambda: sf.bessel_j(61, 1.0),
    lambda: sf.bessel_j(0, 250.0 + 11j),
    lambda: sf.bessel_j(2.5, 1.0),
    lambda: sf.bessel_y(0, 0.0),
    lambda: sf.bessel_y(0, -1.0),
    lambda: sf.hankel(3, 0, 1.0),
    lambda: sf.hankel(1, 0, 1.0 + 10.5j),
    lambda: sf.cyl_deriv("k", 0, 1.0),
    lambda: sf.bessel_j_zero(0, 0),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_backends_agree_directly():
    from sysbath.specfun import _pykernels
    try:
        from sysbath.specfun import _ckernels
    except ImportError:
        pytest.skip("compiled kernel not built")
    for z in (0.3, 7.7 - 2.0j, 45.0 + 0.5j, 150.0):
        a = _pykernels.jy_orders(complex(z), 30, True)
        b = _ckernels.jy_orders(complex(z), 30, True)
        for u, v in zip(a, b):
            u, v = np.asarray(u), np.asarray(v)
            # same algorithm; near a zero of J the builds differ by rounding only
            assert np.all(np.abs(u - v) <= np.maximum(1e-12 * np.abs(v), 1e-14 * np.abs(v).max()))
