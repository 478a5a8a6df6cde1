"""Pure-Python cylinder-function kernels.

This is the reference fallback for :mod:`sysbath.specfun._ckernels`; the two
modules implement the same algorithm line for line and must stay in sync.

Orders ``0..nmax`` are produced in one sweep:

* ``|z| >= ASYM_MIN`` and ``nmax <= |z|/2``: Hankel asymptotic expansion at
  orders 0 and 1, then upward recurrence of both Hankel kinds.
* otherwise: Miller backward recurrence for J normalised by the
  ``exp(+-iz)`` generating-function sum.  Y comes from upward recurrence of
  a Hankel function seeded at orders 0 and 1: the dominant kind from the
  Neumann series for Y_0, Y_1 when ``|Im z| <= IM_SPLIT``, else the recessive
  kind from a trapezoid sum of its Sommerfeld integral.  Seeding the
  recessive kind directly avoids the ``exp(2|Im z|)`` loss that the nearly
  parallel (J, Y) seeds suffer at high order.
"""

import cmath
import math

ASYM_MIN = 40.0
IM_SPLIT = 2.0
EULER_GAMMA = 0.57721566490153286061
_RESCALE = 1e250
_PHASE = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)  # exp(-i m pi/2), m mod 4
_EXP_MPI4 = cmath.exp(-0.25j * math.pi)


def miller_start(nmax, az):
    n = int(max(nmax, az) + 30.0 + 8.0 * az ** (1.0 / 3.0))
    return n + (n & 1)


def hankel_asym(m, z):
    """Return ``(H1_m(z), H2_m(z))`` from the large-argument expansion."""
    mu = 4.0 * m * m
    s1 = 1.0 + 0.0j
    s2 = 1.0 + 0.0j
    term = 1.0 + 0.0j
    ik = 1.0 + 0.0j
    prev = 1e300
    for k in range(1, 400):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        ik = ik * 1j
        at = abs(term)
        if at > prev and k > m:
            break
        s1 += ik * term
        s2 += ik.conjugate() * term
        if at < 1e-17:
            break
        prev = at
    pref = cmath.sqrt(2.0 / (math.pi * z))
    ph = _PHASE[m % 4] * _EXP_MPI4
    e1 = cmath.exp(1j * z) * ph
    e2 = cmath.exp(-1j * z) / ph
    return pref * e1 * s1, pref * e2 * s2


def recessive_hankel(nu, z):
    """H2_nu(z) for Im z < 0, H1_nu(z) for Im z > 0, by the trapezoid rule.

    The integrand ``exp(-+iz cosh t - nu t)`` is analytic in a strip of
    half-width ``atan(|Im z|/Re z)``; the step is chosen from that width.
    """
    x = z.real
    y = abs(z.imag)
    d = min(math.atan2(y, abs(x)), 0.6)
    h = 2.0 * math.pi * d / 60.0
    tmax = math.acosh(max(1.0, (45.0 + 4.0 * nu) / y)) + 0.5
    n = int(tmax / h) + 1
    sg = -1j if z.imag < 0.0 else 1j
    acc = 0.0j
    for j in range(-n, n + 1):
        t = j * h
        acc += cmath.exp(sg * z * math.cosh(t) - nu * t)
    acc *= h
    if z.imag < 0.0:
        return 1j / math.pi * cmath.exp(0.5j * nu * math.pi) * acc
    return -1j / math.pi * cmath.exp(-0.5j * nu * math.pi) * acc


def jy_orders(z, nmax, want_y):
    """J_k(z) for ``k = 0..nmax``, plus Y_k, H1_k, H2_k if ``want_y``.

    Returns ``(J, Y, H1, H2)`` lists (the last three None unless ``want_y``).
    ``z`` must be nonzero when ``want_y``; Y follows the principal branch.
    The Hankel kind carried by the recurrence is returned as computed and
    the other as ``2J - H``, so neither is formed by a cancelling J +- iY.
    """
    z = complex(z)
    az = abs(z)
    if az == 0.0:
        jv = [0.0j] * (nmax + 1)
        jv[0] = 1.0 + 0.0j
        return jv, None, None, None
    if az >= ASYM_MIN and 2 * nmax <= az:
        a1, a2 = hankel_asym(0, z)
        b1, b2 = hankel_asym(1, z)
        h1 = [a1, b1]
        h2 = [a2, b2]
        for k in range(1, nmax):
            f = 2.0 * k / z
            h1.append(f * h1[k] - h1[k - 1])
            h2.append(f * h2[k] - h2[k - 1])
        jv = [0.5 * (h1[k] + h2[k]) for k in range(nmax + 1)]
        if not want_y:
            return jv, None, None, None
        yv = [-0.5j * (h1[k] - h2[k]) for k in range(nmax + 1)]
        return jv, yv, h1[: nmax + 1], h2[: nmax + 1]

    n = miller_start(nmax, az)
    raw = [0.0j] * (n + 2)
    raw[n] = 1e-30 + 0.0j
    for k in range(n, 0, -1):
        v = (2.0 * k / z) * raw[k] - raw[k + 1]
        raw[k - 1] = v
        if abs(v) > _RESCALE:
            for i in range(k - 1, n + 1):
                raw[i] = raw[i] / _RESCALE
    # exp(i z) = J_0 + 2 sum i^k J_k; use the sign that makes the target large
    if z.imag <= 0.0:
        t = 1j
        target = cmath.exp(1j * z)
    else:
        t = -1j
        target = cmath.exp(-1j * z)
    acc = 0.0j
    tk = 1.0 + 0.0j
    for k in range(1, n + 1):
        tk = tk * t
        acc += tk * raw[k]
    scale = target / (raw[0] + 2.0 * acc)
    jall = [scale * raw[k] for k in range(n + 1)]
    jv = jall[: nmax + 1]
    if not want_y:
        return jv, None, None, None

    if abs(z.imag) > IM_SPLIT:
        hv = [recessive_hankel(0, z), recessive_hankel(1, z)]
        sg = -1j if z.imag < 0.0 else 1j
    else:
        lg = cmath.log(0.5 * z)
        s0 = 0.0j
        s1 = 0.0j
        sign = -1.0
        for k in range(1, n // 2):
            s0 += sign * jall[2 * k] / k
            s1 += sign * (2 * k + 1) * jall[2 * k + 1] / (k * (k + 1.0))
            sign = -sign
        y0 = (2.0 / math.pi) * ((lg + EULER_GAMMA) * jall[0] - 2.0 * s0)
        y1 = (2.0 / math.pi) * (
            -jall[0] / z + (lg + EULER_GAMMA - 1.0) * jall[1] - s1
        )
        sg = 1j if z.imag <= 0.0 else -1j
        hv = [jall[0] + sg * y0, jall[1] + sg * y1]
    # H = J + sg*Y for the kind carried in hv
    for k in range(1, nmax):
        hv.append((2.0 * k / z) * hv[k] - hv[k - 1])
    hv = hv[: nmax + 1]
    yv = [(hv[k] - jv[k]) / sg for k in range(nmax + 1)]
    other = [2.0 * jv[k] - hv[k] for k in range(nmax + 1)]
    if sg == 1j:
        return jv, yv, hv, other
    return jv, yv, other, hv


def jy_batch(m, z, want_y):
    """J, Y, H1, H2 at orders ``m-1, m, m+1`` for every point of ``z``.

    Returns four arrays of shape ``(3, size)``; the last three are None unless
    ``want_y``.  Order -1 is filled by reflection.
    """
    import numpy as np

    zs = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    outs = [np.empty((3, zs.size), dtype=np.complex128) for _ in range(4 if want_y else 1)]
    for p, zp in enumerate(zs.tolist()):
        wy = want_y and zp != 0
        res = jy_orders(zp, m + 1, wy)
        for o, v in zip(outs, res):
            if v is None:
                o[:, p] = -math.inf
                continue
            o[:, p] = (v[m - 1] if m >= 1 else -v[1], v[m], v[m + 1])
    if not want_y:
        return outs[0], None, None, None
    return tuple(outs)
