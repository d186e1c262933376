# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay numerically identical to ``_pykernels``."""
import numpy as np



def rational_taylor(num, den, Py_ssize_t T):
    cdef const double complex[::1] p = np.ascontiguousarray(num, dtype=np.complex128)
    cdef const double complex[::1] q = np.ascontiguousarray(den, dtype=np.complex128)
    out_arr = np.zeros(T + 1, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t n, j, jmax
    cdef Py_ssize_t lp = p.shape[0], lq = q.shape[0]
    cdef double complex acc, q0 = q[0]
    if q0 == 0:
        raise ZeroDivisionError("denominator vanishes at the origin")
    for n in range(T + 1):
        acc = p[n] if n < lp else 0
        jmax = n if n < lq - 1 else lq - 1
        for j in range(1, jmax + 1):
            acc = acc - q[j] * out[n - j]
        out[n] = acc / q0
    return out_arr


def horner_sum(w, double x, Py_ssize_t start):
    cdef const double[::1] c = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double acc = 0.0
    if start < 0:
        start = 0
    for i in range(c.shape[0] - 1, start - 1, -1):
        acc = acc * x + c[i]
    return acc


def horner_complex(coeffs, double complex z):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t i
    cdef double complex acc = 0
    for i in range(c.shape[0] - 1, -1, -1):
        acc = acc * z + c[i]
    return acc


def first_sign_change(values):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, n = v.shape[0]
    cdef Py_ssize_t first = -1, changes = 0
    cdef int last = 0, s
    for i in range(n):
        s = (v[i] > 0) - (v[i] < 0)
        if s == 0:
            if first < 0:
                first = i
            continue
        if last != 0 and s != last:
            changes += 1
            if first < 0:
                first = i - 1
        last = s
    return first, changes


def section_coeffs(exponents, coeffs, b, Py_ssize_t max_degree):
    cdef const long long[:, ::1] e = np.ascontiguousarray(exponents, dtype=np.int64)
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double complex[::1] bb = np.ascontiguousarray(b, dtype=np.complex128)
    out_arr = np.zeros(max_degree + 1, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t m, j, deg, t
    cdef double complex mono
    for m in range(e.shape[0]):
        mono = c[m]
        deg = 0
        for j in range(e.shape[1]):
            for t in range(e[m, j]):
                mono = mono * bb[j]
            deg += e[m, j]
        if deg <= max_degree:
            out[deg] = out[deg] + mono
    return out_arr
