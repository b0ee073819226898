# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: phasor series, Hankel inversion sums, the von
Mangoldt self-convolution, and array Bessel evaluation.

Mirrors the API of ``mfun._purepy``; selection happens in ``mfun._backend``.
Bessel functions come from scipy's Cephes wrappers so both backends share
the same underlying approximation.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport cos, sin
from scipy.special.cython_special cimport j0 as cj0, j1 as cj1

cnp.import_array()

COMPILED = True


def j0_arr(x):
    """Bessel J0 evaluated elementwise on an array."""
    cdef cnp.ndarray[double, ndim=1] xv = np.ascontiguousarray(
        np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef cnp.ndarray[double, ndim=1] out = np.empty(xv.shape[0])
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in prange(n, nogil=True, schedule="static"):
        out[i] = cj0(xv[i])
    return out.reshape(np.shape(x))


def j1_arr(x):
    """Bessel J1 evaluated elementwise on an array."""
    cdef cnp.ndarray[double, ndim=1] xv = np.ascontiguousarray(
        np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef cnp.ndarray[double, ndim=1] out = np.empty(xv.shape[0])
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in prange(n, nogil=True, schedule="static"):
        out[i] = cj1(xv[i])
    return out.reshape(np.shape(x))


def f_series(alpha, c, gamma, beta):
    """sum_m c_m * exp(i*(alpha*gamma_m - beta_m)) for each alpha."""
    cdef cnp.ndarray[double, ndim=1] av = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] gv = np.ascontiguousarray(gamma, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] bv = np.ascontiguousarray(beta, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0], m = cv.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, k
    cdef double re, im, ph, a
    for i in prange(n, nogil=True, schedule="static"):
        re = 0.0
        im = 0.0
        a = av[i]
        for k in range(m):
            ph = a * gv[k] - bv[k]
            re = re + cv[k] * cos(ph)
            im = im + cv[k] * sin(ph)
        out[i] = re + 1j * im
    return out


def phasor_sum(theta, c):
    """sum_m c_m * exp(i*theta[:, m]) for a (n, N) angle matrix."""
    cdef cnp.ndarray[double, ndim=2] tv = np.ascontiguousarray(theta, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0], m = cv.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, k
    cdef double re, im
    for i in prange(n, nogil=True, schedule="static"):
        re = 0.0
        im = 0.0
        for k in range(m):
            re = re + cv[k] * cos(tv[i, k])
            im = im + cv[k] * sin(tv[i, k])
        out[i] = re + 1j * im
    return out


def char_prod(rho, c):
    """prod_m J0(c_m * rho) elementwise over the rho array."""
    cdef cnp.ndarray[double, ndim=1] rv = np.ascontiguousarray(
        np.atleast_1d(np.asarray(rho, dtype=np.float64)).ravel())
    cdef cnp.ndarray[double, ndim=1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t n = rv.shape[0], m = cv.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i, k
    cdef double p
    for i in prange(n, nogil=True, schedule="static"):
        p = 1.0
        for k in range(m):
            p = p * cj0(cv[k] * rv[i])
        out[i] = p
    return out.reshape(np.shape(rho))


def hankel_sum(r, rho, g):
    """sum_j g_j * J0(rho_j * r_i) for each r_i (g carries quadrature weights)."""
    cdef cnp.ndarray[double, ndim=1] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] pv = np.ascontiguousarray(rho, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t n = rv.shape[0], m = pv.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i, j
    cdef double acc, ri
    for i in prange(n, nogil=True, schedule="dynamic"):
        acc = 0.0
        ri = rv[i]
        for j in range(m):
            acc = acc + gv[j] * cj0(pv[j] * ri)
        out[i] = acc
    return out


def r2_convolve(pp, lam_pp, n_max):
    """Self-convolution of the von Mangoldt function on its support."""
    cdef cnp.ndarray[long long, ndim=1] ppv = np.ascontiguousarray(pp, dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] lv = np.ascontiguousarray(lam_pp, dtype=np.float64)
    cdef Py_ssize_t npp = ppv.shape[0]
    cdef long long nm = n_max
    cdef cnp.ndarray[double, ndim=1] r2 = np.zeros(nm + 1)
    cdef Py_ssize_t i, j
    cdef long long li
    cdef double wi
    with nogil:
        for i in range(npp):
            li = ppv[i]
            if li + ppv[0] > nm:
                break
            wi = lv[i]
            for j in range(npp):
                if li + ppv[j] > nm:
                    break
                r2[li + ppv[j]] += wi * lv[j]
    return r2
