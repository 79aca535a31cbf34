# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels; semantics match _fallback exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


cdef inline void _matvec_d(const double[:, ::1] m, const double* x,
                           double* out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += m[i, j] * x[j]
        out[i] = acc


def affine_rk4(const double[:, ::1] m, const double[::1] p, const double[::1] y0,
               double dt, Py_ssize_t n_steps, Py_ssize_t sample_every):
    cdef Py_ssize_t n = y0.shape[0]
    if n_steps % sample_every:
        raise ValueError("n_steps must be a multiple of sample_every")
    out_arr = np.empty((n_steps // sample_every + 1, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    work = np.empty((6, n), dtype=np.float64)
    cdef double[:, ::1] wv = work
    cdef double* y = &wv[0, 0]
    cdef double* k1 = &wv[1, 0]
    cdef double* k2 = &wv[2, 0]
    cdef double* k3 = &wv[3, 0]
    cdef double* k4 = &wv[4, 0]
    cdef double* tmp = &wv[5, 0]
    cdef Py_ssize_t i, step, idx = 1
    cdef double h = dt
    with nogil:
        for i in range(n):
            y[i] = y0[i]
            out[0, i] = y[i]
        for step in range(n_steps):
            _matvec_d(m, y, k1, n)
            for i in range(n):
                k1[i] += p[i]
                tmp[i] = y[i] + 0.5 * h * k1[i]
            _matvec_d(m, tmp, k2, n)
            for i in range(n):
                k2[i] += p[i]
                tmp[i] = y[i] + 0.5 * h * k2[i]
            _matvec_d(m, tmp, k3, n)
            for i in range(n):
                k3[i] += p[i]
                tmp[i] = y[i] + h * k3[i]
            _matvec_d(m, tmp, k4, n)
            for i in range(n):
                k4[i] += p[i]
                y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if (step + 1) % sample_every == 0:
                for i in range(n):
                    out[idx, i] = y[i]
                idx += 1
    return out_arr


cdef inline void _trig_rhs(const double complex[:, ::1] s0,
                           const double complex[:, ::1] s1,
                           const double complex[:, ::1] s2,
                           double c, double s,
                           const double complex* x, double complex* out,
                           Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double complex acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += (s0[i, j] + c * s1[i, j] + s * s2[i, j]) * x[j]
        out[i] = acc


def trig_rk4(const double complex[:, ::1] s0, const double complex[:, ::1] s1,
             const double complex[:, ::1] s2, double two_omega,
             const double complex[::1] y0, double t0, double dt,
             Py_ssize_t n_steps, Py_ssize_t sample_every):
    cdef Py_ssize_t n = y0.shape[0]
    if n_steps % sample_every:
        raise ValueError("n_steps must be a multiple of sample_every")
    out_arr = np.empty((n_steps // sample_every + 1, n), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    work = np.empty((6, n), dtype=np.complex128)
    cdef double complex[:, ::1] wv = work
    cdef double complex* y = &wv[0, 0]
    cdef double complex* k1 = &wv[1, 0]
    cdef double complex* k2 = &wv[2, 0]
    cdef double complex* k3 = &wv[3, 0]
    cdef double complex* k4 = &wv[4, 0]
    cdef double complex* tmp = &wv[5, 0]
    cdef Py_ssize_t i, step, idx = 1
    cdef double h = dt, t, thalf
    with nogil:
        for i in range(n):
            y[i] = y0[i]
            out[0, i] = y[i]
        for step in range(n_steps):
            t = t0 + step * h
            thalf = t + 0.5 * h
            _trig_rhs(s0, s1, s2, cos(two_omega * t), sin(two_omega * t),
                      y, k1, n)
            for i in range(n):
                tmp[i] = y[i] + 0.5 * h * k1[i]
            _trig_rhs(s0, s1, s2, cos(two_omega * thalf), sin(two_omega * thalf),
                      tmp, k2, n)
            for i in range(n):
                tmp[i] = y[i] + 0.5 * h * k2[i]
            _trig_rhs(s0, s1, s2, cos(two_omega * thalf), sin(two_omega * thalf),
                      tmp, k3, n)
            for i in range(n):
                tmp[i] = y[i] + h * k3[i]
            _trig_rhs(s0, s1, s2, cos(two_omega * (t + h)), sin(two_omega * (t + h)),
                      tmp, k4, n)
            for i in range(n):
                y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if (step + 1) % sample_every == 0:
                for i in range(n):
                    out[idx, i] = y[i]
                idx += 1
    return out_arr
