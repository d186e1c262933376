"""Backend selection for the inner loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise (or
when ``BOHRKIT_PURE_PYTHON=1``) the pure-Python versions are used. Both
backends implement the same five functions with the same semantics:

``rational_taylor(num, den, T)``
    First ``T + 1`` Taylor coefficients of ``num(z) / den(z)``; ``den[0] != 0``.
``horner_sum(w, x, start)``
    ``sum_j w[start + j] * x**j`` for real weights.
``horner_complex(coeffs, z)``
    Polynomial value ``sum_n coeffs[n] * z**n``.
``first_sign_change(values)``
    ``(index, changes)``: first cell ``i`` with a zero at ``values[i]`` or a
    sign change on ``[i, i + 1]`` (``-1`` if none), and the number of sign
    changes between nonzero samples.
``section_coeffs(exponents, coeffs, b, max_degree)``
    ``P_n(b) = sum_{|alpha| = n} A_alpha b**alpha`` for ``n <= max_degree``.
"""

import os

from . import _pykernels as pure

_FUNCS = ("rational_taylor", "horner_sum", "horner_complex", "first_sign_change", "section_coeffs")

compiled = None
if os.environ.get("BOHRKIT_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

rational_taylor = _impl.rational_taylor
horner_sum = _impl.horner_sum
horner_complex = _impl.horner_complex
first_sign_change = _impl.first_sign_change
section_coeffs = _impl.section_coeffs


def backends():
    """Return ``{name: module}`` for every available backend."""
    out = {"python": pure}
    if compiled is not None:
        out["cython"] = compiled
    return out
