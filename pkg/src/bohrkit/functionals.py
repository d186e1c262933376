"""Bohr-type functionals evaluated as certified ``value + tail`` intervals.

Each functional takes ``f`` either as a :class:`~bohrkit.series.BoundedFunction`
(Taylor coefficients are generated to order ``T`` and point values are exact)
or as a :class:`~bohrkit.series.PowerSeries` already known to be the truncation
of a unit-ball function (point values then carry a tail-bound error).

``value`` is always a partial sum of nonnegative terms, hence a lower bound
for the infinite functional; ``total_upper`` is a rigorous upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .schwarz import SchwarzMap, eval_schwarz, identity_map
from .series import (
    DEFAULT_TRUNCATION,
    EPS_FLOAT,
    BoundedFunction,
    PowerSeries,
    _check_disk,
    tail_bound,
    taylor,
)


class Mode(str, Enum):
    POINTWISE = "pointwise"
    ENVELOPE = "envelope"


TAGS = (
    "majorant",
    "zero_omitted",
    "rogosinski_sum",
    "bohr_rogosinski_i",
    "refined_j",
    "refined_l",
    "refined_a",
    "power_majorant",
    "partial_sum",
)


@dataclass(frozen=True)
class FunctionalKind:
    """Which functional to evaluate, with its own parameters ``p`` and ``N``."""

    tag: str
    p: float | None = None
    N: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown functional {self.tag!r}")
        if self.p is not None and not 0.0 < self.p <= 2.0:
            raise ValueError(f"p must lie in (0, 2], got {self.p}")
        if self.N is not None and self.N < 1:
            raise ValueError(f"N must be at least 1, got {self.N}")
        needs_p = self.tag in ("bohr_rogosinski_i", "refined_j", "refined_a", "power_majorant")
        needs_n = self.tag in ("rogosinski_sum", "bohr_rogosinski_i", "refined_j", "refined_a", "partial_sum")
        if needs_p and self.p is None:
            raise ValueError(f"{self.tag} needs p")
        if needs_n and self.N is None:
            raise ValueError(f"{self.tag} needs N")

    @property
    def needs_zero_constant(self) -> bool:
        return self.tag == "refined_l"

    def label(self) -> str:
        parts = [self.tag]
        if self.p is not None:
            parts.append(f"p={self.p:g}")
        if self.N is not None:
            parts.append(f"N={self.N}")
        return ",".join(parts)


@dataclass(frozen=True)
class FunctionalValue:
    value: float
    tail: float
    total_upper: float = field(init=False)

    def __post_init__(self):
        if self.tail < 0:
            raise ValueError("tail bound must be nonnegative")
        object.__setattr__(self, "total_upper", self.value + self.tail)

    def __add__(self, other: "FunctionalValue") -> "FunctionalValue":
        return FunctionalValue(self.value + other.value, self.tail + other.tail)


class _Coeffs:
    """Absolute Taylor coefficients plus a way to bound ``|f(w)|``."""

    def __init__(self, f, T: int):
        if isinstance(f, PowerSeries):
            self.series = f
            self.exact = None
            self.finite = f.complete
        elif isinstance(f, BoundedFunction):
            self.series = taylor(f, T)
            self.exact = f
            num, den = f.rational()
            # a polynomial of degree <= T is captured exactly by its coefficients
            self.finite = np.count_nonzero(den[1:]) == 0 and len(num) - 1 <= self.series.truncation_order
        else:
            raise TypeError(f"expected BoundedFunction or PowerSeries, got {type(f).__name__}")
        self.abs = np.abs(self.series.coeffs)
        self.sq = self.abs * self.abs
        self.T = self.series.truncation_order
        self.a0 = min(float(self.abs[0]), 1.0)
        self.weight = 0.0 if self.finite else max(0.0, 1.0 - self.a0 * self.a0)

    def modulus(self, w: complex) -> tuple[float, float]:
        """``(|f(w)|, err)`` with the true modulus at most ``|f(w)| + err``."""
        if self.exact is not None:
            return abs(self.exact(w)), 0.0
        val = abs(kernels.horner_complex(self.series.coeffs, complex(w)))
        return val, 0.0 if self.finite else tail_bound(self.a0, abs(w), self.T + 1)

    def linear(self, rho: float, start: int) -> FunctionalValue:
        """``sum_{n >= start} |a_n| rho**n`` for ``start >= 1``."""
        part = rho**start * kernels.horner_sum(self.abs, rho, start) if start <= self.T else 0.0
        tail = 0.0 if self.finite else tail_bound(self.a0, rho, max(start, self.T + 1))
        return FunctionalValue(part, tail)

    def squares(self, rho: float, start: int) -> FunctionalValue:
        """``sum_{n >= start} |a_n|**2 rho**(2n)`` for ``start >= 1``."""
        x = rho * rho
        part = x**start * kernels.horner_sum(self.sq, x, start) if start <= self.T else 0.0
        first = max(start, self.T + 1)
        tail = self.weight**2 * x**first / (1.0 - x)
        return FunctionalValue(part, tail)


def _with_coeffs(f, T):
    return f if isinstance(f, _Coeffs) else _Coeffs(f, T)


def _check_p(p: float) -> None:
    if not 0.0 < p <= 2.0:
        raise ValueError(f"p must lie in (0, 2], got {p}")


def _sgn(t: int) -> int:
    return 1 if t >= 1 else 0


def _rho(w: SchwarzMap, z: complex, mode: Mode) -> float:
    _check_disk(z)
    if Mode(mode) is Mode.ENVELOPE:
        return abs(z) ** w.order
    return abs(eval_schwarz(w, z))


def majorant(f, w: SchwarzMap, z: complex, T: int = DEFAULT_TRUNCATION,
             mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """``sum_{n >= 0} |a_n| |w(z)|**n``."""
    c = _with_coeffs(f, T)
    rho = _rho(w, z, mode)
    return FunctionalValue(float(c.abs[0]), 0.0) + c.linear(rho, 1)


def zero_omitted_sum(f, w: SchwarzMap, z: complex, T: int = DEFAULT_TRUNCATION,
                     mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """``sum_{n >= 1} |a_n| |w(z)|**n``."""
    c = _with_coeffs(f, T)
    return c.linear(_rho(w, z, mode), 1)


def _first_term(c: _Coeffs, w_m0: SchwarzMap, z: complex, p: float, mode: Mode) -> FunctionalValue:
    if Mode(mode) is Mode.ENVELOPE:
        s = abs(z) ** w_m0.order
        a = c.a0
        return FunctionalValue(((s + a) / (1.0 + a * s)) ** p, 0.0)
    val, err = c.modulus(eval_schwarz(w_m0, z))
    lo = val**p
    return FunctionalValue(lo, (val + err) ** p - lo)


def bohr_rogosinski_I(f, w_m0: SchwarzMap, w_k: SchwarzMap, z: complex, p: float, N: int,
                      T: int = DEFAULT_TRUNCATION, mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """``|f(w_m0(z))|**p + sum_{n >= N} |a_n| |w_k(z)|**n``.

    In envelope mode the first term is replaced by its Schwarz-Pick bound
    ``((r**m0 + a)/(1 + a r**m0))**p`` and ``|w_k(z)|`` by ``r**k``.
    """
    _check_p(p)
    if N < 1:
        raise ValueError("N must be at least 1")
    c = _with_coeffs(f, T)
    rho = _rho(w_k, z, mode)
    return _first_term(c, w_m0, z, p, mode) + c.linear(rho, N)


def _refinement(c: _Coeffs, rho: float, N: int) -> FunctionalValue:
    t = (N - 1) // 2
    total = c.linear(rho, N)
    if _sgn(t):
        factor = rho**N / (1.0 - rho)
        known = min(t, c.T)
        head = float(np.sum(c.sq[1 : known + 1]))
        # coefficients past the truncation only obey |a_n| <= 1 - |a_0|^2
        unknown = (t - known) * c.weight**2
        total = total + FunctionalValue(head * factor, unknown * factor)
    outer = 1.0 / (1.0 + c.a0) + rho / (1.0 - rho)
    sq = c.squares(rho, t + 1)
    return total + FunctionalValue(outer * sq.value, outer * sq.tail)


def refinement_groups(f, r: float, N: int, T: int = DEFAULT_TRUNCATION) -> FunctionalValue:
    """The three coefficient groups of the refined functional at radius ``r`` (no ``|f|**p`` term).

    Bounded above by ``(1 - |a_0|**2) r**N / (1 - r)`` for every unit-ball ``f``.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    return _refinement(_with_coeffs(f, T), r, N)


def refined_J(f, w_m0: SchwarzMap, w_k: SchwarzMap, z: complex, p: float, N: int,
              T: int = DEFAULT_TRUNCATION, mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """Bohr-Rogosinski sum refined by the squared-coefficient groups, ``t = (N - 1) // 2``."""
    _check_p(p)
    if N < 1:
        raise ValueError("N must be at least 1")
    c = _with_coeffs(f, T)
    rho = _rho(w_k, z, mode)
    return _first_term(c, w_m0, z, p, mode) + _refinement(c, rho, N)


def refined_L(f, w_k: SchwarzMap, z: complex, T: int = DEFAULT_TRUNCATION,
              mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """Refined Bohr sum for ``f(0) = 0``.

    ``sum_{n>=1} |a_n| rho**n + (1/(1+|a_1|) + rho/(1-rho)) sum_{n>=2} |a_n|**2 rho**(2n-1)``
    with ``rho = |w_k(z)|``.
    """
    c = _with_coeffs(f, max(T, 1))
    if c.abs[0] > 1e-12:
        raise ValueError("refined_L needs a function with zero constant term")
    rho = _rho(w_k, z, mode)
    # with no known a_1 the weight 1 - |a_1|^2 falls back to 1
    a1 = min(float(c.abs[1]), 1.0) if c.T >= 1 else 0.0
    b = 0.0 if c.finite else 1.0 - a1 * a1
    lin = rho * kernels.horner_sum(c.abs, rho, 1)
    lin_tail = b * rho ** (c.T + 1) / (1.0 - rho)
    x = rho * rho
    sq = rho**3 * kernels.horner_sum(c.sq, x, 2) if c.T >= 2 else 0.0
    sq_tail = b * b * rho ** (2 * c.T + 1) / (1.0 - x)
    outer = 1.0 / (1.0 + a1) + rho / (1.0 - rho)
    return FunctionalValue(lin + outer * sq, lin_tail + outer * sq_tail)


def refined_A(f, z: complex, p: float, N: int, T: int = DEFAULT_TRUNCATION) -> FunctionalValue:
    """One-variable refined Bohr-Rogosinski functional (identity Schwarz maps)."""
    ident = identity_map()
    return refined_J(f, ident, ident, z, p, N, T, Mode.POINTWISE)


def rogosinski_sum(f, z: complex, N: int, T: int = DEFAULT_TRUNCATION) -> FunctionalValue:
    """``|f(z)| + sum_{n >= N} |a_n| |z|**n``."""
    ident = identity_map()
    return bohr_rogosinski_I(f, ident, ident, z, 1.0, N, T, Mode.POINTWISE)


def power_majorant(f, z: complex, p: float, T: int = DEFAULT_TRUNCATION) -> FunctionalValue:
    """``|a_0|**p + sum_{n >= 1} |a_n| |z|**n``."""
    _check_p(p)
    _check_disk(z)
    c = _with_coeffs(f, T)
    return FunctionalValue(float(c.abs[0]) ** p, 0.0) + c.linear(abs(z), 1)


def partial_sum(f, z: complex, N: int, T: int = DEFAULT_TRUNCATION) -> FunctionalValue:
    """Modulus of the Taylor partial sum ``S_N(z) = sum_{n < N} a_n z**n`` (exact, no tail)."""
    _check_disk(z)
    c = _with_coeffs(f, max(T, N))
    return FunctionalValue(abs(kernels.horner_complex(c.series.coeffs[:N], complex(z))), 0.0)


def evaluate(kind: FunctionalKind, f, z: complex, *, w_k: SchwarzMap | None = None,
             w_m0: SchwarzMap | None = None, T: int = DEFAULT_TRUNCATION,
             mode: Mode = Mode.POINTWISE) -> FunctionalValue:
    """Dispatch on ``kind``; missing Schwarz maps default to the identity."""
    w_k = w_k if w_k is not None else identity_map()
    w_m0 = w_m0 if w_m0 is not None else identity_map()
    tag = kind.tag
    if tag == "majorant":
        return majorant(f, w_k, z, T, mode)
    if tag == "zero_omitted":
        return zero_omitted_sum(f, w_k, z, T, mode)
    if tag == "rogosinski_sum":
        return bohr_rogosinski_I(f, w_m0, w_k, z, 1.0, kind.N, T, mode)
    if tag == "bohr_rogosinski_i":
        return bohr_rogosinski_I(f, w_m0, w_k, z, kind.p, kind.N, T, mode)
    if tag == "refined_j":
        return refined_J(f, w_m0, w_k, z, kind.p, kind.N, T, mode)
    if tag == "refined_l":
        return refined_L(f, w_k, z, T, mode)
    if tag == "refined_a":
        return refined_A(f, z, kind.p, kind.N, T)
    if tag == "power_majorant":
        return power_majorant(f, z, kind.p, T)
    if tag == "partial_sum":
        return partial_sum(f, z, kind.N, T)
    raise AssertionError(tag)


def exceeds_one(v: FunctionalValue, eps: float = EPS_FLOAT) -> bool:
    return v.total_upper > 1.0 + eps


__all__ = [
    "Mode", "FunctionalKind", "FunctionalValue", "majorant", "zero_omitted_sum",
    "bohr_rogosinski_I", "refined_J", "refined_L", "refined_A", "rogosinski_sum",
    "power_majorant", "partial_sum", "refinement_groups", "evaluate", "exceeds_one",
]
