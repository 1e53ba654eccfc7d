# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Toda kernels; same contracts as the numpy versions in _pykernels."""

import numpy as np


cdef inline Py_ssize_t _up(Py_ssize_t i, Py_ssize_t n) nogil:
    return 0 if i + 1 == n else i + 1


cdef inline Py_ssize_t _down(Py_ssize_t i, Py_ssize_t n) nogil:
    return n - 1 if i == 0 else i - 1


cdef void _lap(const double[:, :, ::1] u, double[:, :, ::1] out, double scale) noexcept nogil:
    cdef Py_ssize_t d = u.shape[0], n0 = u.shape[1], n1 = u.shape[2]
    cdef Py_ssize_t j, x, y, xm, xp
    for j in range(d):
        for x in range(n0):
            xm = _down(x, n0)
            xp = _up(x, n0)
            for y in range(n1):
                out[j, x, y] = (u[j, xm, y] + u[j, xp, y] + u[j, x, _down(y, n1)] + u[j, x, _up(y, n1)]
                                - 4.0 * u[j, x, y]) * scale


def laplacian(const double[:, :, ::1] u, double inv_h2):
    out = np.empty((u.shape[0], u.shape[1], u.shape[2]))
    cdef double[:, :, ::1] o = out
    _lap(u, o, inv_h2)
    return out


def nonlinear_terms(const double[:, :, ::1] omega, const double[:, ::1] W, const double[::1] c):
    cdef Py_ssize_t d = omega.shape[0], n0 = omega.shape[1], n1 = omega.shape[2], m = W.shape[0]
    out = np.empty((m, n0, n1))
    cdef double[:, :, ::1] E = out
    cdef Py_ssize_t a, j, x, y
    cdef double acc
    with nogil:
        for a in range(m):
            for x in range(n0):
                for y in range(n1):
                    acc = 0.0
                    for j in range(d):
                        acc = acc + W[a, j] * omega[j, x, y]
                    E[a, x, y] = -2.0 * acc
    np.exp(out, out=out)  # numpy's vectorized exp beats a scalar libm loop
    with nogil:
        for a in range(m):
            for x in range(n0):
                for y in range(n1):
                    E[a, x, y] = c[a] * E[a, x, y]
    return out


def residual(const double[:, :, ::1] omega, const double[:, :, ::1] E, const double[:, ::1] P,
             double s, double inv_h2, source=None):
    cdef Py_ssize_t d = omega.shape[0], n0 = omega.shape[1], n1 = omega.shape[2], m = E.shape[0]
    out = np.empty((d, n0, n1))
    cdef double[:, :, ::1] R = out
    cdef const double[:, :, ::1] src
    cdef bint has_src = source is not None
    if has_src:
        src = np.ascontiguousarray(source, dtype=np.float64)
    cdef Py_ssize_t a, j, x, y
    cdef double acc
    _lap(omega, R, 0.5 * inv_h2)
    with nogil:
        for j in range(d):
            for x in range(n0):
                for y in range(n1):
                    acc = 0.0
                    for a in range(m):
                        acc = acc + P[a, j] * E[a, x, y]
                    R[j, x, y] = R[j, x, y] - s * acc
                    if has_src:
                        R[j, x, y] = R[j, x, y] - src[j, x, y]
    return out


def jacobian_apply(const double[:, :, ::1] delta, const double[:, :, ::1] E, const double[:, ::1] W,
                   const double[:, ::1] P, double s, double inv_h2):
    cdef Py_ssize_t d = delta.shape[0], n0 = delta.shape[1], n1 = delta.shape[2], m = E.shape[0]
    out = np.empty((d, n0, n1))
    cdef double[:, :, ::1] J = out
    cdef Py_ssize_t a, j, x, y
    cdef double acc, pair
    cdef double[64] weight  # per-root weights at one grid point; m <= 64
    if m > 64:
        raise ValueError("too many roots for the compiled kernel")
    _lap(delta, J, 0.5 * inv_h2)
    with nogil:
        for x in range(n0):
            for y in range(n1):
                for a in range(m):
                    pair = 0.0
                    for j in range(d):
                        pair = pair + W[a, j] * delta[j, x, y]
                    weight[a] = pair * E[a, x, y]
                for j in range(d):
                    acc = 0.0
                    for a in range(m):
                        acc = acc + P[a, j] * weight[a]
                    J[j, x, y] = J[j, x, y] + 2.0 * s * acc
    return out


def metric_jacobian_apply(const double[:, :, ::1] delta, const double[:, :, ::1] E, const double[:, ::1] W,
                          const double[:, ::1] P, double s, double inv_h2, const double[:, ::1] G):
    """-G J delta, the symmetric operator used by conjugate gradients."""
    cdef Py_ssize_t d = delta.shape[0], n0 = delta.shape[1], n1 = delta.shape[2]
    cdef double[:, :, ::1] J = jacobian_apply(delta, E, W, P, s, inv_h2)
    out = np.empty((d, n0, n1))
    cdef double[:, :, ::1] o = out
    cdef Py_ssize_t i, j, x, y
    cdef double acc
    with nogil:
        for x in range(n0):
            for y in range(n1):
                for i in range(d):
                    acc = 0.0
                    for j in range(d):
                        acc = acc + G[i, j] * J[j, x, y]
                    o[i, x, y] = -acc
    return out
