# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels: per-node vacuum-frame evaluation and line transport.

Same contract as ``_kernels_py``; the inner loop is three complex
exponentials plus small fixed-size linear algebra per node.
"""

import numpy as np

cimport numpy as cnp
from libc.complex cimport cexp, conj

cnp.import_array()

cdef double complex _EPS2 = cexp(1j * np.pi / 3.0) ** 2

# v_k = (1, eps^(-2k), eps^(2k)); projector_k = outer(v_k, conj(v_k)) / 3
cdef double complex[3][3] _V
cdef int _i, _k
for _k in range(3):
    _V[_k][0] = 1.0
    _V[_k][1] = _EPS2 ** (-_k)
    _V[_k][2] = _EPS2 ** _k


def frame_grid(x, y, w):
    """Vacuum frames E(z, zbar, w) for z = x + i y; returns (n, 3, 3)."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    if yv.shape[0] != n:
        raise ValueError("x and y must have matching lengths")
    out = np.empty((n, 3, 3), dtype=np.complex128)
    cdef double complex[:, :, ::1] ov = out
    cdef double complex ww = w
    cdef double complex z, zb, mu, r
    cdef Py_ssize_t i
    cdef int k, a, b
    for i in range(n):
        z = xv[i] + 1j * yv[i]
        zb = conj(z)
        for a in range(3):
            for b in range(3):
                ov[i, a, b] = 0.0
        for k in range(3):
            mu = _EPS2 ** k
            r = cexp(mu * ww * z + zb / (mu * ww)) / 3.0
            for a in range(3):
                for b in range(3):
                    ov[i, a, b] = ov[i, a, b] + r * _V[k][a] * conj(_V[k][b])
    return out


def transport_grid(x, y, w, row):
    """Row action (row @ E(z, zbar, w)) per node; returns (n, 3)."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef double complex[::1] rv = np.ascontiguousarray(row, dtype=np.complex128)
    cdef Py_ssize_t n = xv.shape[0]
    if yv.shape[0] != n:
        raise ValueError("x and y must have matching lengths")
    if rv.shape[0] != 3:
        raise ValueError("row must have length 3")
    out = np.empty((n, 3), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef double complex ww = w
    cdef double complex coeff[3]
    cdef double complex z, zb, mu, r
    cdef Py_ssize_t i
    cdef int k, b
    for k in range(3):
        coeff[k] = (rv[0] * _V[k][0] + rv[1] * _V[k][1] + rv[2] * _V[k][2]) / 3.0
    for i in range(n):
        z = xv[i] + 1j * yv[i]
        zb = conj(z)
        ov[i, 0] = 0.0
        ov[i, 1] = 0.0
        ov[i, 2] = 0.0
        for k in range(3):
            mu = _EPS2 ** k
            r = cexp(mu * ww * z + zb / (mu * ww)) * coeff[k]
            for b in range(3):
                ov[i, b] = ov[i, b] + r * conj(_V[k][b])
    return out
