import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from sysbath import disk, engine
from sysbath.disk import DiskParams
from sysbath.numerics import SearchRegion, newton_complex
from sysbath.specfun import DomainError

from .test_slab import d_left, d_right

P = DiskParams(3.3)
ONE = DiskParams(1.0)


def mp_h1(m, z):
    return mp.hankel1(m, z)


def mp_dh(kind, m, z):
    f = mp.hankel1 if kind == 1 else mp.hankel2
    return (f(m - 1, z) - f(m + 1, z)) / 2


def mp_s(n, m, k):
    x = n * k
    j, dj = mp.besselj(m, x), (mp.besselj(m - 1, x) - mp.besselj(m + 1, x)) / 2
    num = j * mp_dh(2, m, k) - n * dj * mp.hankel2(m, k)
    den = j * mp_dh(1, m, k) - n * dj * mp.hankel1(m, k)
    return -num / den


# ---- exact solution ----------------------------------------------------

def test_null_disk():
    for m in (0, 3, 13, -7, 40):
        for k in (0.4, 5.0, 10.5, 30.0):
            assert abs(disk.s_matrix(ONE, m, k) - 1) < 1e-10
            assert abs(disk.mode_strength(ONE, m, k) - 2) < 1e-10


def test_s_matrix_oracle():
    ref = complex(mp_s(mp.mpf(3.3), 13, mp.mpf(10.5)))
    assert disk.s_matrix(P, 13, 10.5) == pytest.approx(ref, rel=1e-11)
    assert abs(abs(disk.s_matrix(P, 13, 10.5)) - 1) < 1e-12


def test_mode_strength_by_continuity():
    # I from matching the interior J_m(nkr) to H2 + S H1 at r = R
    n, m, k = mp.mpf(3.3), 13, mp.mpf(10.5)
    s = mp_s(n, m, k)
    ref = (mp.hankel2(m, k) + s * mp.hankel1(m, k)) / mp.besselj(m, n * k)
    assert disk.mode_strength(P, 13, 10.5) == pytest.approx(complex(ref), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(m=st.integers(-40, 40), k=st.floats(0.3, 12.0), n=st.floats(0.5, 4.0))
def test_unitarity_property(m, k, n):
    p = DiskParams(n)
    assert abs(abs(disk.s_matrix(p, m, k)) - 1) < 1e-12
    assert abs(abs(disk.channel_s(p, m, k)) - 1) < 1e-12


def test_unitarity_grid():
    ks = np.linspace(0.2, 12.0, 250)
    worst = 0.0
    for m in range(-40, 41):
        for k in ks:
            worst = max(worst, abs(abs(disk.s_matrix(P, m, k)) - 1))
    assert worst < 1e-12


def test_field_continuity():
    r = P.R
    for m, k in ((13, 10.5), (0, 2.1), (-5, 7.3)):
        a = disk.exact_field(P, m, k, np.nextafter(r, 0))
        b = disk.exact_field(P, m, k, r)
        assert abs(a - b) < 1e-10 * max(1, abs(a))
        da = disk.exact_field_dr(P, m, k, r, side=-1)
        db = disk.exact_field_dr(P, m, k, r, side=1)
        assert abs(da - db) < 1e-10 * max(1, abs(da))
    f = lambda rr: disk.exact_radial(P, 13, 10.5, rr)
    assert d_left(f, 1.0, 1e-4) == pytest.approx(disk.exact_field_dr(P, 13, 10.5, 1.0, side=-1), rel=1e-6)
    assert d_right(f, 1.0, 1e-4) == pytest.approx(disk.exact_field_dr(P, 13, 10.5, 1.0, side=1), rel=1e-6)


def test_exact_field_phase_convention():
    a = disk.exact_field(P, 4, 3.0, 0.5, 0.3)
    assert a == pytest.approx(disk.exact_radial(P, 4, 3.0, 0.5) * np.exp(-4j * 0.3))


def test_interior_oscillation_count():
    r = np.linspace(1e-3, 1 - 1e-9, 20_001)
    f = disk.exact_radial(P, 13, 10.5, r)
    # common phase: the interior is I times a real function
    g = (f / disk.mode_strength(P, 13, 10.5)).real
    crossings = int(np.sum(np.sign(g[1:]) != np.sign(g[:-1])))
    expected = sum(1 for x in mp_zeros(13, 20) if x < 3.3 * 10.5)
    assert crossings == expected


def mp_zeros(m, count):
    return [float(mp.besseljzero(m, j)) for j in range(1, count + 1)]


def test_domain_errors():
    with pytest.raises(DomainError):
        disk.exact_field(P, 0, 1.0, -0.1)
    with pytest.raises(DomainError):
        disk.channel_mode(P, 0, 1.0, 0.5)
    with pytest.raises(DomainError):
        disk.cavity_mode(P, 0, 0)
    with pytest.raises(DomainError):
        disk.s_matrix(P, 61, 1.0)
    with pytest.raises(DomainError):
        DiskParams(0.0)


def test_angular_channel():
    ch = disk.angular_channel(P, -13)
    assert ch.threshold == pytest.approx(13 / 3.3)
    assert ch.is_open(4.0) and not ch.is_open(3.9)


# ---- cavity modes ------------------------------------------------------

def test_first_eigen_k():
    assert disk.cavity_eigen_k(P, 0, 1) * 3.3 == pytest.approx(2.404825557695773, abs=1e-14)
    for m, lam in ((13, 1), (5, 4), (-2, 7)):
        assert disk.cavity_eigen_k(P, m, lam) * 3.3 == pytest.approx(float(mp.besseljzero(abs(m), lam)), rel=1e-14)


def test_cavity_mode_boundary():
    for m, lam in ((0, 1), (13, 3), (-4, 6)):
        mode = disk.cavity_mode(P, m, lam)
        assert abs(mode(1.0, 0.7)) < 1e-13


def test_cavity_orthonormality_2d():
    phis = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    idx = [(m, lam) for m in (0, 1, 3) for lam in (1, 2, 3)]
    modes = {i: disk.cavity_mode(P, *i) for i in idx}
    worst = 0.0
    for a in idx:
        for b in idx:
            # trapezoid in phi is exact for these trigonometric products
            ang = np.mean(np.exp(1j * (b[0] - a[0]) * phis)) * 2 * math.pi
            rad, _ = integrate.quad(lambda r: r * modes[a].radial(r) * modes[b].radial(r), 0, 1,
                                    limit=200, epsabs=1e-13)
            worst = max(worst, abs(ang * rad - (a == b)))
    assert worst < 1e-9


# ---- channels ----------------------------------------------------------

def test_channel_neumann_and_unimodular():
    for m in (0, 4, 13):
        for k in (0.8, 5.0, 11.0):
            assert abs(disk.channel_radial(P, m, k, 1.0, deriv=True)) < 1e-10
            assert abs(abs(disk.channel_s(P, m, k)) - 1) < 1e-14


def test_channel_value_oracle():
    k, r = mp.mpf(5), mp.mpf("1.5")
    s = -mp_dh(2, 0, k) / mp_dh(1, 0, k)
    ref = mp.sqrt(k / (8 * mp.pi)) * (mp.hankel2(0, k * r) + s * mp.hankel1(0, k * r))
    assert disk.channel_mode(P, 0, 5.0, 1.5) == pytest.approx(complex(ref), rel=1e-12)


def test_channel_pair_small_k():
    # the Wronskian form stays accurate where H2 + S H1 cancels
    for k in (0.05, 0.3):
        s = -mp_dh(2, 5, k) / mp_dh(1, 5, k)
        ref = mp.hankel2(5, k * 1.4) + s * mp.hankel1(5, k * 1.4)
        assert disk.channel_pair(P, 5, k, 1.4) == pytest.approx(complex(ref), rel=1e-11)


# ---- couplings ---------------------------------------------------------

def test_selection_rules():
    assert disk.coupling_w(P, 2, 1, 3, 4.0) == 0
    assert disk.coupling_v(P, 2, 1, -2, 4.0) != 0
    assert disk.coupling_v(P, 2, 1, 2, 4.0) == 0
    for m in (1, 6, 13):
        assert abs(disk.coupling_w(P, m, 2, m, 7.0)) == abs(disk.coupling_v(P, m, 2, -m, 7.0))
        for mp_ in range(-15, 16):
            if mp_ != m:
                assert disk.coupling_w(P, m, 2, mp_, 7.0) == 0
            if mp_ != -m:
                assert disk.coupling_v(P, m, 2, mp_, 7.0) == 0


def test_coupling_value():
    kl = mp.besseljzero(13, 1) / mp.mpf(3.3)
    k = mp.mpf(10.5)
    ref = -1j * mp.sqrt(2 * kl) / (mp.pi * k * mp_dh(1, 13, k))
    assert disk.coupling_w(P, 13, 1, 13, 10.5) == pytest.approx(complex(ref), rel=1e-11)


# ---- expansion coefficients --------------------------------------------

def overlap(p, m, lam, k):
    mode = disk.cavity_mode(p, m, lam)
    f = lambda r: 2 * math.pi * r * p.n * mode.radial(r) * disk.exact_radial(p, m, k, r)
    re, _ = integrate.quad(lambda r: f(r).real, 0, p.R, limit=400, epsabs=1e-13)
    im, _ = integrate.quad(lambda r: f(r).imag, 0, p.R, limit=400, epsabs=1e-13)
    return complex(re, im)


@pytest.mark.parametrize("m, k", [(13, 10.5), (0, 3.1), (5, 9.0), (-7, 11.2)])
def test_alpha_overlap(m, k):
    for lam in range(1, 9):
        assert abs(disk.alpha(P, m, lam, k) - overlap(P, m, lam, k)) < 1e-7


def test_alpha_near_pole():
    for dk in (0.0, 4e-9, 1e-6):
        k = disk.cavity_eigen_k(P, 13, 2) + dk
        assert abs(disk.alpha(P, 13, 2, k) - overlap(P, 13, 2, k)) < 1e-7


def test_alpha_null_regular():
    for m, lam in ((0, 1), (3, 2)):
        k = disk.cavity_eigen_k(ONE, m, lam)
        a = disk.alpha(ONE, m, lam, k)
        assert math.isfinite(abs(a))
        assert a == pytest.approx(overlap(ONE, m, lam, k), abs=1e-9)


def test_alpha_decay_envelope():
    k = 10.5
    jm = abs(complex(mp.besselj(13, 3.3 * 10.5)))
    scaled = [abs(disk.alpha(P, 13, lam, k)) * disk.cavity_eigen_k(P, 13, lam) / jm for lam in (100, 200, 400)]
    assert max(scaled) / min(scaled) < 1.05


# ---- resonances --------------------------------------------------------

def test_whispering_gallery_root():
    root = newton_complex(lambda z: disk.resonance_condition(P, 13, z), 10.5 - 0.01j)
    assert abs(root.real - 10.493) < 1e-3
    assert -0.02 < root.imag < 0
    assert abs(disk.boundary_relation_residual(P, 13, root)) < 1e-8


def test_null_no_roots():
    # J H1' - J' H1 = 2i/(pi z): modulus fixed, never zero
    for k in (0.5, 3.0 - 0.4j, 9.9 - 1.0j):
        d = disk.resonance_condition(ONE, 4, k)
        assert d == pytest.approx(2j / (math.pi * k), rel=1e-10)


def test_width_ordering():
    sharp = newton_complex(lambda z: disk.resonance_condition(P, 13, z), 10.5 - 0.01j)
    broad = newton_complex(lambda z: disk.resonance_condition(P, 5, z), 10.1 - 0.08j)
    assert abs(broad.imag) > 10 * abs(sharp.imag)


def test_sharp_gain_peaks_fig6_regime():
    for m in range(11, 18):
        res = engine.find_resonances(engine.DiskModel(P, m), SearchRegion(8.0, 12.0, -1.0, -1e-9))
        best = min(res, key=lambda r: abs(r.kc.imag))
        k = best.kc.real
        assert k < m < 3.3 * k
        assert disk.gain_per_m(P, m, k) > 20 * disk.gain_per_m(P, m, k + 0.05)
    for r in engine.find_resonances(engine.DiskModel(P, 5), SearchRegion(8.0, 12.0, -1.0, -1e-9)):
        assert abs(r.kc.imag) > 0.05


# ---- LDOS and gain -----------------------------------------------------

def test_null_gain():
    for k in (0.3, 2.0, 7.7, 12.0):
        assert abs(disk.gain_total(ONE, k) - 1) < 1e-10


def test_gain_sum_consistency():
    for k in (8.0, 10.493, 11.7):
        assert disk.gain_total(P, k) == pytest.approx(disk.gain_total_per_m(P, k), rel=1e-12)


def test_ldos_by_quadrature():
    k = 1.1
    total = 0.0
    for m in range(-20, 21):
        v, _ = integrate.quad(lambda r: 2 * math.pi * r * 3.3**2 * abs(disk.exact_radial(P, m, k, r)) ** 2,
                              0, 1, limit=200, epsabs=1e-15)
        total += v
    assert disk.ldos_disk(P, k) == pytest.approx(total, rel=1e-10)
    assert disk.ldos_free(P, k) == pytest.approx(k / 2)


def test_truncation_warning():
    with pytest.warns(disk.TruncationWarning):
        disk.ldos_disk(P, 10.5, m_max=3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        disk.ldos_disk(P, 10.5)


# ---- radial sum identity ----------------------------------------------

@pytest.mark.parametrize("m, x", [(0, 5.0), (13, 34.65), (3, 12.3), (20, 47.9)])
def test_identity(m, x):
    lhs, rhs, _ = disk.radial_sum_identity(P, m, x / 3.3, 500)
    assert abs(lhs - rhs) / abs(rhs) <= 1e-6


def test_identity_pole_matching():
    kl = disk.cavity_eigen_k(P, 3, 4)
    ratios = []
    for eps in (1e-3, 1e-5):
        k = kl * (1 + eps)
        lhs, rhs, _ = disk.radial_sum_identity(P, 3, k, 500)
        lead = 1 / (4 * (k - kl) ** 2)  # k_lam^2/(k^2-k_lam^2)^2 near the pole
        ratios.append((lhs / lead, rhs / lead))
    for a, b in ratios:
        assert a == pytest.approx(b, rel=1e-6)
    assert ratios[-1][0] == pytest.approx(1.0, rel=1e-3)


def test_identity_needs_enough_zeros():
    with pytest.raises(DomainError):
        disk.radial_sum_identity(P, 0, 1.0, 50)


# ---- channel Green function -------------------------------------------

def test_green_oracle():
    k, r = mp.mpf(5), mp.mpf("1.2")
    d1 = mp_dh(1, 0, k)
    ref = -1j / 8 * mp.hankel1(0, k * r) * (mp.hankel2(0, k * r) * d1 - mp_dh(2, 0, k) * mp.hankel1(0, k * r)) / d1
    assert disk.channel_green(P, 0, 5.0, 1.2, 1.2) == pytest.approx(complex(ref), rel=1e-12)


def test_green_properties():
    k, rp = 3.7, 1.6
    for m in (0, 2, 9):
        g = lambda r: disk.channel_green(P, m, k, r, rp)
        assert g(1.3) == pytest.approx(disk.channel_green(P, m, k, rp, 1.3), rel=1e-14)
        assert abs(d_right(g, 1.0, 1e-4)) < 1e-8 * max(1, abs(g(1.0)))
        # angular component of a unit source: slope jump 1/(2 pi r')
        jump = d_right(g, rp, 1e-5) - d_left(g, rp, 1e-5)
        assert jump == pytest.approx(1 / (2 * math.pi * rp), rel=1e-6)
        # radial Helmholtz equation away from the source
        r, h = 2.3, 1e-3
        lap = (g(r + h) - 2 * g(r) + g(r - h)) / h**2 + (g(r + h) - g(r - h)) / (2 * h * r)
        assert abs(lap + (k * k - m * m / r**2) * g(r)) < 1e-5
