# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cylinder-function kernels.

Line-for-line port of :mod:`sysbath.specfun._pykernels`; see that module for
the algorithm description.  Both expose ``jy_orders`` and ``jy_batch``.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport atan2, acosh, fabs, cosh, M_PI, INFINITY

import numpy as np

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csqrt(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)

cdef double ASYM_MIN = 40.0
cdef double IM_SPLIT = 2.0
cdef double EULER_GAMMA = 0.57721566490153286061
cdef double RESCALE = 1e250
cdef double complex I1 = 1j


cdef inline double complex _phase(int m) noexcept nogil:
    cdef int r = m % 4
    if r == 0:
        return 1.0
    if r == 1:
        return -I1
    if r == 2:
        return -1.0
    return I1


cdef void _hankel_asym(int m, double complex z, double complex *h1,
                       double complex *h2) noexcept nogil:
    cdef double mu = 4.0 * m * m
    cdef double complex s1 = 1.0, s2 = 1.0, term = 1.0, ik = 1.0
    cdef double prev = 1e300, at
    cdef int k
    for k in range(1, 400):
        term = term * (mu - (2 * k - 1) * (2 * k - 1)) / (8.0 * k * z)
        ik = ik * I1
        at = cabs(term)
        if at > prev and k > m:
            break
        s1 = s1 + ik * term
        s2 = s2 + conj(ik) * term
        if at < 1e-17:
            break
        prev = at
    cdef double complex pref = csqrt(2.0 / (M_PI * z))
    cdef double complex ph = _phase(m) * cexp(-0.25 * I1 * M_PI)
    h1[0] = pref * cexp(I1 * z) * ph * s1
    h2[0] = pref * cexp(-I1 * z) / ph * s2


cdef double complex _recessive(int nu, double complex z) noexcept nogil:
    cdef double x = creal(z)
    cdef double y = fabs(cimag(z))
    cdef double d = atan2(y, fabs(x))
    if d > 0.6:
        d = 0.6
    cdef double h = 2.0 * M_PI * d / 60.0
    cdef double a = (45.0 + 4.0 * nu) / y
    if a < 1.0:
        a = 1.0
    cdef double tmax = acosh(a) + 0.5
    cdef int n = <int>(tmax / h) + 1
    cdef double complex sg = -I1 if cimag(z) < 0.0 else I1
    cdef double complex acc = 0.0
    cdef double t
    cdef int j
    for j in range(-n, n + 1):
        t = j * h
        acc = acc + cexp(sg * z * cosh(t) - nu * t)
    acc = acc * h
    if cimag(z) < 0.0:
        return I1 / M_PI * cexp(0.5 * I1 * nu * M_PI) * acc
    return -I1 / M_PI * cexp(-0.5 * I1 * nu * M_PI) * acc


cdef int _miller_start(int nmax, double az) noexcept nogil:
    cdef double top = nmax if nmax > az else az
    cdef int n = <int>(top + 30.0 + 8.0 * az ** (1.0 / 3.0))
    return n + (n & 1)


cdef int _jy(double complex z, int nmax, bint want_y, double complex *jv,
             double complex *yv, double complex *h1v,
             double complex *h2v) noexcept nogil:
    """Fill jv[0..nmax] (and yv, h1v, h2v); 0 on success, -1 on alloc failure."""
    cdef double az = cabs(z)
    cdef int k, i, n
    cdef double complex a1, a2, b1, b2, f, v, t, target, acc, tk, scale
    cdef double complex sg, lg, s0, s1, y0, y1, hp, hc, hn
    cdef double sign
    cdef double complex *raw
    if az == 0.0:
        for k in range(nmax + 1):
            jv[k] = 0.0
        jv[0] = 1.0
        return 0
    if az >= ASYM_MIN and 2 * nmax <= az:
        _hankel_asym(0, z, &a1, &a2)
        _hankel_asym(1, z, &b1, &b2)
        jv[0] = 0.5 * (a1 + a2)
        if want_y:
            yv[0] = -0.5 * I1 * (a1 - a2)
            h1v[0] = a1
            h2v[0] = a2
        if nmax >= 1:
            jv[1] = 0.5 * (b1 + b2)
            if want_y:
                yv[1] = -0.5 * I1 * (b1 - b2)
                h1v[1] = b1
                h2v[1] = b2
        for k in range(1, nmax):
            f = 2.0 * k / z
            v = f * b1 - a1
            a1 = b1
            b1 = v
            v = f * b2 - a2
            a2 = b2
            b2 = v
            jv[k + 1] = 0.5 * (b1 + b2)
            if want_y:
                yv[k + 1] = -0.5 * I1 * (b1 - b2)
                h1v[k + 1] = b1
                h2v[k + 1] = b2
        return 0

    n = _miller_start(nmax, az)
    raw = <double complex *>malloc((n + 2) * sizeof(double complex))
    if raw == NULL:
        return -1
    for k in range(n + 2):
        raw[k] = 0.0
    raw[n] = 1e-30
    for k in range(n, 0, -1):
        v = (2.0 * k / z) * raw[k] - raw[k + 1]
        raw[k - 1] = v
        if cabs(v) > RESCALE:
            for i in range(k - 1, n + 1):
                raw[i] = raw[i] / RESCALE
    if cimag(z) <= 0.0:
        t = I1
        target = cexp(I1 * z)
    else:
        t = -I1
        target = cexp(-I1 * z)
    acc = 0.0
    tk = 1.0
    for k in range(1, n + 1):
        tk = tk * t
        acc = acc + tk * raw[k]
    scale = target / (raw[0] + 2.0 * acc)
    for k in range(n + 1):
        raw[k] = scale * raw[k]
    for k in range(nmax + 1):
        jv[k] = raw[k]
    if not want_y:
        free(raw)
        return 0

    if fabs(cimag(z)) > IM_SPLIT:
        hp = _recessive(0, z)
        hc = _recessive(1, z)
        sg = -I1 if cimag(z) < 0.0 else I1
    else:
        lg = clog(0.5 * z)
        s0 = 0.0
        s1 = 0.0
        sign = -1.0
        for k in range(1, n // 2):
            s0 = s0 + sign * raw[2 * k] / k
            s1 = s1 + sign * (2 * k + 1) * raw[2 * k + 1] / (k * (k + 1.0))
            sign = -sign
        y0 = (2.0 / M_PI) * ((lg + EULER_GAMMA) * raw[0] - 2.0 * s0)
        y1 = (2.0 / M_PI) * (-raw[0] / z + (lg + EULER_GAMMA - 1.0) * raw[1] - s1)
        sg = I1 if cimag(z) <= 0.0 else -I1
        hp = raw[0] + sg * y0
        hc = raw[1] + sg * y1
    # the carried kind goes to hcar, 2J - H to the other
    cdef double complex *hcar = h1v if sg == I1 else h2v
    cdef double complex *hoth = h2v if sg == I1 else h1v
    hcar[0] = hp
    if nmax >= 1:
        hcar[1] = hc
    for k in range(1, nmax):
        hn = (2.0 * k / z) * hc - hp
        hp = hc
        hc = hn
        hcar[k + 1] = hc
    for k in range(nmax + 1):
        yv[k] = (hcar[k] - raw[k]) / sg
        hoth[k] = 2.0 * raw[k] - hcar[k]
    free(raw)
    return 0


cdef double complex *_alloc(int size):
    return <double complex *>malloc(size * sizeof(double complex))


def jy_orders(z, int nmax, bint want_y):
    """``(J, Y, H1, H2)`` lists for orders ``0..nmax``; see the Python twin."""
    cdef double complex zz = complex(z)
    cdef int size = nmax + 2
    cdef bint wy = want_y and cabs(zz) != 0.0
    cdef double complex *jv = _alloc(size)
    cdef double complex *yv = _alloc(size)
    cdef double complex *h1v = _alloc(size)
    cdef double complex *h2v = _alloc(size)
    cdef int rc = -1
    if jv != NULL and yv != NULL and h1v != NULL and h2v != NULL:
        rc = _jy(zz, nmax, wy, jv, yv, h1v, h2v)
    if rc != 0:
        free(jv); free(yv); free(h1v); free(h2v)
        raise MemoryError()
    jl = [jv[k] for k in range(nmax + 1)]
    if wy:
        out = (jl, [yv[k] for k in range(nmax + 1)],
               [h1v[k] for k in range(nmax + 1)], [h2v[k] for k in range(nmax + 1)])
    else:
        out = (jl, None, None, None)
    free(jv); free(yv); free(h1v); free(h2v)
    return out


def jy_batch(int m, z, bint want_y):
    """J, Y, H1, H2 at orders ``m-1, m, m+1`` for every point of an array.

    Returns four ``(3, size)`` arrays (the last three None unless
    ``want_y``); order -1 is filled by reflection.
    """
    cdef double complex[::1] zs = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    cdef Py_ssize_t npts = zs.shape[0], p
    cdef int nmax = m + 1, q, c
    cdef int nout = 4 if want_y else 1
    res = np.empty((4, 3, npts), dtype=np.complex128)
    cdef double complex[:, :, ::1] o = res
    cdef double complex *buf[4]
    cdef int size = nmax + 2
    cdef int rc = 0
    cdef bint wy
    for q in range(4):
        buf[q] = _alloc(size)
    if buf[0] == NULL or buf[1] == NULL or buf[2] == NULL or buf[3] == NULL:
        for q in range(4):
            free(buf[q])
        raise MemoryError()
    with nogil:
        for p in range(npts):
            wy = want_y and cabs(zs[p]) != 0.0
            rc = _jy(zs[p], nmax, wy, buf[0], buf[1], buf[2], buf[3])
            if rc != 0:
                break
            for q in range(nout):
                if q > 0 and not wy:
                    for c in range(3):
                        o[q, c, p] = -INFINITY
                    continue
                if m >= 1:
                    o[q, 0, p] = buf[q][m - 1]
                else:
                    o[q, 0, p] = -buf[q][1]
                o[q, 1, p] = buf[q][m]
                o[q, 2, p] = buf[q][m + 1]
    for q in range(4):
        free(buf[q])
    if rc != 0:
        raise MemoryError()
    if not want_y:
        return res[0], None, None, None
    return res[0], res[1], res[2], res[3]
