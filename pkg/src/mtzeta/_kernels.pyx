# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-sum kernels.  Compensated (Kahan) accumulation, n outer and
m inner, so results do not depend on blocking."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, exp, cos, sin, pow
from cython.parallel cimport prange

cnp.import_array()


cdef inline void _kahan(double* acc, double* comp, double v) noexcept nogil:
    cdef double y = v - comp[0]
    cdef double t = acc[0] + y
    comp[0] = (t - acc[0]) - y
    acc[0] = t


cdef inline void _row(const double complex* av, Py_ssize_t M, double x, double sr, double si,
                      bint log_weight, Py_ssize_t j, double* outr, double* outi) noexcept nogil:
    cdef Py_ssize_t i
    cdef double y, ly, mag, ph, pr, pim, ir, ii
    cdef double innr = 0.0, inni = 0.0, icr = 0.0, ici = 0.0
    for i in range(M):
        y = (j + 1) + (i + 1) * x
        if si == 0.0 and not log_weight:
            pr = pow(y, -sr)
            pim = 0.0
        elif si == 0.0:
            ly = log(y)
            pr = exp(-sr * ly) * ly
            pim = 0.0
        else:
            ly = log(y)
            mag = exp(-sr * ly)
            ph = -si * ly
            pr = mag * cos(ph)
            pim = mag * sin(ph)
            if log_weight:
                pr = pr * ly
                pim = pim * ly
        ir = av[i].real
        ii = av[i].imag
        _kahan(&innr, &icr, ir * pr - ii * pim)
        _kahan(&inni, &ici, ir * pim + ii * pr)
    outr[j] = innr
    outi[j] = inni


def weighted_double_sum(a, b, double x, s, bint log_weight=False):
    """sum_{m=1}^{M} sum_{n=1}^{N} a[m-1] b[n-1] (n + m x)^{-s}, optionally
    times log(n + m x).

    Rows (fixed n) run in parallel; they are combined serially in order, so
    the result does not depend on the thread count.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef double sr = complex(s).real
    cdef double si = complex(s).imag
    cdef Py_ssize_t M = av.shape[0]
    cdef Py_ssize_t N = bv.shape[0]
    cdef Py_ssize_t j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rr = np.zeros(N)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ri = np.zeros(N)
    cdef double* prr = <double*> rr.data
    cdef double* pri = <double*> ri.data
    cdef const double complex* pa = <const double complex*> av.data
    cdef double accr = 0.0, acci = 0.0, cr = 0.0, ci = 0.0
    if M == 0 or N == 0:
        return 0j
    with nogil:
        for j in prange(N, schedule="static"):
            _row(pa, M, x, sr, si, log_weight, j, prr, pri)
        for j in range(N):
            _kahan(&accr, &cr, prr[j] * bv[j].real - pri[j] * bv[j].imag)
            _kahan(&acci, &ci, prr[j] * bv[j].imag + pri[j] * bv[j].real)
    return complex(accr, acci)


def point_sum(weights, y, s, bint log_weight=False):
    """sum_k weights[k] y[k]^{-s} for scattered positive y."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] yv = np.ascontiguousarray(y, dtype=np.float64).ravel()
    cdef double sr = complex(s).real
    cdef double si = complex(s).imag
    cdef Py_ssize_t k, K = w.shape[0]
    cdef double ly, mag, ph, pr, pim, tr, ti
    cdef double accr = 0.0, acci = 0.0, cr = 0.0, ci = 0.0
    with nogil:
        for k in range(K):
            ly = log(yv[k])
            mag = exp(-sr * ly)
            ph = -si * ly
            pr = mag * cos(ph)
            pim = mag * sin(ph)
            if log_weight:
                pr = pr * ly
                pim = pim * ly
            tr = w[k].real * pr - w[k].imag * pim
            ti = w[k].real * pim + w[k].imag * pr
            _kahan(&accr, &cr, tr)
            _kahan(&acci, &ci, ti)
    return complex(accr, acci)
