# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled pre-filter kernel.

Same contract as ``_prefilter_pure.filter_chunk`` but with all arithmetic
carried in signed 128-bit integers.  Callers must gate on
``prefilter.int128_headroom`` so that no intermediate product can overflow;
the dispatcher in ``prefilter`` does this automatically.
"""

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int128 _ipow(int128 base, long long e) noexcept:
    cdef int128 r = 1
    cdef long long k
    for k in range(e):
        r *= base
    return r


def filter_chunk(const long long[::1] weights, const long long[::1] signs,
                 Py_ssize_t m, Py_ssize_t n, Py_ssize_t count,
                 const long long[::1] points, unsigned char[::1] out):
    """Exact sample-point filter over a flat batch of candidate matrices."""
    cdef Py_ssize_t npts = points.shape[0] // 3
    cdef Py_ssize_t c, i, j, p, base, sbase
    cdef int128 z, xv, yv, zp, rn, rd, total_n, total_d, cval, ct
    cdef long long w
    cdef bint ok
    for c in range(count):
        base = c * m * n
        sbase = c * m
        ok = True
        for p in range(npts):
            z = points[3 * p]
            xv = points[3 * p + 1]
            yv = points[3 * p + 2]
            total_n = 0
            total_d = 1
            cval = 0
            for i in range(m):
                rn = signs[sbase + i]
                ct = rn
                rd = 1
                for j in range(n):
                    w = weights[base + i * n + j]
                    if w > 0:
                        zp = _ipow(z, w)
                        rn = rn * (xv * zp + yv)
                        ct = ct * xv
                    else:
                        zp = _ipow(z, -w)
                        rn = rn * (-(xv + yv * zp))
                        ct = ct * (-yv)
                    rd = rd * (zp - 1)
                total_n = total_n * rd + rn * total_d
                total_d = total_d * rd
                cval = cval + ct
            if total_n != cval * total_d:
                ok = False
                break
        out[c] = 1 if ok else 0
