"""Pure-Python reference versions of the compiled kernels in ``_ckernels.pyx``."""

import numpy as np


def rational_taylor(num, den, T):
    p = np.asarray(num, dtype=np.complex128)
    q = np.asarray(den, dtype=np.complex128)
    if q[0] == 0:
        raise ZeroDivisionError("denominator vanishes at the origin")
    out = [0j] * (T + 1)
    q0 = complex(q[0])
    qs = [complex(x) for x in q]
    for n in range(T + 1):
        acc = complex(p[n]) if n < len(p) else 0j
        for j in range(1, min(n, len(qs) - 1) + 1):
            acc -= qs[j] * out[n - j]
        out[n] = acc / q0
    return np.array(out, dtype=np.complex128)


def horner_sum(w, x, start):
    c = [float(v) for v in np.asarray(w, dtype=np.float64)]
    acc = 0.0
    for i in range(len(c) - 1, max(start, 0) - 1, -1):
        acc = acc * x + c[i]
    return acc


def horner_complex(coeffs, z):
    acc = 0j
    z = complex(z)
    for c in reversed(np.asarray(coeffs, dtype=np.complex128).tolist()):
        acc = acc * z + c
    return acc


def first_sign_change(values):
    first = -1
    changes = 0
    last = 0
    for i, x in enumerate(np.asarray(values, dtype=np.float64).tolist()):
        s = (x > 0) - (x < 0)
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


def section_coeffs(exponents, coeffs, b, max_degree):
    out = [0j] * (max_degree + 1)
    bb = [complex(x) for x in np.asarray(b, dtype=np.complex128)]
    for alpha, c in zip(np.asarray(exponents).tolist(), np.asarray(coeffs).tolist()):
        deg = sum(alpha)
        if deg > max_degree:
            continue
        mono = complex(c)
        for bj, aj in zip(bb, alpha):
            for _ in range(aj):
                mono *= bj
        out[deg] += mono
    return np.array(out, dtype=np.complex128)
