# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot small-matrix kernels.

Same contracts as qudit_epi._kernels._fallback. Loops are written for the
d <= 6 regime where call overhead, not flop count, dominates; summation order
may differ from the numpy route in the last few ulps.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log, sqrt

cnp.import_array()


def pswap_closed(rho1, rho2, double tau):
    """Qudit addition rule on raw matrices; endpoints skip the commutator."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.ascontiguousarray(rho1, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] b = np.ascontiguousarray(rho2, dtype=np.complex128)
    cdef Py_ssize_t d = a.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((d, d), dtype=np.complex128)
    cdef double c = sqrt(tau * (1.0 - tau))
    cdef double omt = 1.0 - tau
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    if c == 0.0:
        for i in range(d):
            for j in range(d):
                out[i, j] = tau * a[i, j] + omt * b[i, j]
        return out
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = acc + a[i, k] * b[k, j] - b[i, k] * a[k, j]
            out[i, j] = tau * a[i, j] + omt * b[i, j] - 1j * c * acc
    return out


def condition_projective_all(rho4, basis):
    """Unnormalized conditional blocks <psi_j| rho |psi_j> for all columns j."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=4] r = np.ascontiguousarray(rho4, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.ascontiguousarray(basis, dtype=np.complex128)
    cdef Py_ssize_t dx = r.shape[0]
    cdef Py_ssize_t de = r.shape[1]
    cdef Py_ssize_t n = v.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] out = np.empty((n, dx, dx), dtype=np.complex128)
    cdef Py_ssize_t j, a, b, e, f
    cdef double complex acc, ve
    for j in range(n):
        for a in range(dx):
            for b in range(dx):
                acc = 0
                for e in range(de):
                    ve = v[e, j].conjugate()
                    for f in range(de):
                        acc = acc + ve * r[a, e, b, f] * v[f, j]
                out[j, a, b] = acc
    return out


def prefix_slack(dominating, dominated):
    """(min prefix-sum gap, total gap) between two descending-sorted vectors."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hi = np.ascontiguousarray(dominating, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lo = np.ascontiguousarray(dominated, dtype=np.float64)
    cdef Py_ssize_t d = hi.shape[0]
    cdef double acc_hi = 0.0, acc_lo = 0.0, gap, best = 0.0
    cdef Py_ssize_t k
    for k in range(d):
        acc_hi += hi[k]
        acc_lo += lo[k]
        gap = acc_hi - acc_lo
        if k == 0 or gap < best:
            best = gap
    return best, acc_hi - acc_lo


def entropy_nats(p):
    """Shannon entropy -sum p ln p in nats; requires p >= 0."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t d = v.shape[0]
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        if v[i] > 0.0:
            acc -= v[i] * log(v[i])
    return acc
