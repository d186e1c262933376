"""Truncated power series and certified members of the unit ball of H^infinity.

Every :class:`BoundedFunction` is a rational function ``num(z) / den(z)`` whose
sup-norm on the unit disk is at most one by construction, so Taylor
coefficients come from a single linear recurrence and point values can be
computed exactly (no truncation) from the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels

DEFAULT_TRUNCATION = 64
EPS_FLOAT = 1e-9


def _check_disk(z: complex) -> None:
    if not abs(z) < 1.0:
        raise ValueError(f"point {z!r} is not inside the open unit disk")


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients ``c_0 .. c_T`` of a truncated one-variable series.

    ``complete`` marks a polynomial: every coefficient past ``T`` is zero, so
    no truncation tail is needed.
    """

    coeffs: np.ndarray
    complete: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n]) if 0 <= n < self.coeffs.size else 0j

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        size = max(len(self), len(other))
        out = np.zeros(size, dtype=np.complex128)
        out[: len(self)] += self.coeffs
        out[: len(other)] += other.coeffs
        return PowerSeries(out, self.complete and other.complete)

    def abs_coeffs(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def __call__(self, z: complex) -> complex:
        return eval_series(self, z)


def eval_series(s: PowerSeries, z: complex) -> complex:
    """Horner evaluation of the truncated polynomial at a point of the open disk."""
    _check_disk(z)
    return complex(kernels.horner_complex(s.coeffs, complex(z)))


def tail_bound(a0_mod: float, r: float, N: int) -> float:
    """Upper bound for ``sum_{n >= N} |a_n| r**n`` over f in the unit ball with ``|a_0| = a0_mod``.

    Uses the Schwarz-Pick coefficient estimate ``|a_n| <= 1 - |a_0|**2``.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    if not -EPS_FLOAT <= a0_mod <= 1.0 + EPS_FLOAT:
        raise ValueError(f"|a_0| must lie in [0, 1], got {a0_mod}")
    if N < 1:
        raise ValueError("N must be at least 1")
    weight = max(0.0, 1.0 - a0_mod * a0_mod)
    return weight * r**N / (1.0 - r)


class BoundedFunction:
    """Base class: an analytic self-map of the closed unit disk given as ``num/den``."""

    def rational(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def __call__(self, z: complex) -> complex:
        _check_disk(z)
        num, den = self.rational()
        z = complex(z)
        return kernels.horner_complex(num, z) / kernels.horner_complex(den, z)

    def taylor(self, T: int = DEFAULT_TRUNCATION) -> PowerSeries:
        return taylor(self, T)


@dataclass(frozen=True)
class ExtremalFa(BoundedFunction):
    """The disk automorphism ``(a - z) / (1 - a z)``."""

    a: float

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"ExtremalFa needs a in [0, 1), got {self.a}")

    def rational(self):
        return (np.array([self.a, -1.0], dtype=np.complex128),
                np.array([1.0, -self.a], dtype=np.complex128))


@dataclass(frozen=True)
class ExtremalFaStar(BoundedFunction):
    """``z (a - z) / (1 - a z)``, the zero-constant-term extremal."""

    a: float

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"ExtremalFaStar needs a in [0, 1), got {self.a}")

    def rational(self):
        return (np.array([0.0, self.a, -1.0], dtype=np.complex128),
                np.array([1.0, -self.a], dtype=np.complex128))


@dataclass(frozen=True)
class Monomial(BoundedFunction):
    """``coeff * z**degree`` with ``|coeff| <= 1``."""

    degree: int
    coeff: complex = 1.0

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if abs(self.coeff) > 1.0 + 1e-15:
            raise ValueError("Monomial coefficient must satisfy |c| <= 1")

    def rational(self):
        num = np.zeros(self.degree + 1, dtype=np.complex128)
        num[self.degree] = self.coeff
        return num, np.array([1.0], dtype=np.complex128)


@dataclass(frozen=True)
class FiniteBlaschke(BoundedFunction):
    """``rotation * prod_j (z - z_j) / (1 - conj(z_j) z)``."""

    zeros: tuple = ()
    rotation: complex = 1.0

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        if any(not abs(z) < 1.0 for z in zs):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise ValueError("rotation must be unimodular")
        object.__setattr__(self, "zeros", zs)

    def rational(self):
        num = np.array([complex(self.rotation)], dtype=np.complex128)
        den = np.array([1.0], dtype=np.complex128)
        for z0 in self.zeros:
            num = np.convolve(num, [-z0, 1.0])
            den = np.convolve(den, [1.0, -z0.conjugate()])
        return num, den


@dataclass(frozen=True)
class SchurSequence(BoundedFunction):
    """Function with Schur parameters ``params`` (each ``|gamma| <= 1``).

    The last parameter is taken as the constant tail; a unimodular parameter
    terminates the sequence (the remaining ones are ignored).
    """

    params: tuple = field(default=(0.0,))

    def __post_init__(self):
        ps = tuple(complex(g) for g in self.params)
        if not ps:
            raise ValueError("need at least one Schur parameter")
        if any(abs(g) > 1.0 + 1e-15 for g in ps):
            raise ValueError("Schur parameters must lie in the closed unit disk")
        for i, g in enumerate(ps):
            if abs(g) >= 1.0:
                ps = ps[: i + 1]
                break
        object.__setattr__(self, "params", ps)

    def rational(self):
        # f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1}), built from the tail up
        num = np.array([self.params[-1]], dtype=np.complex128)
        den = np.array([1.0], dtype=np.complex128)
        for g in reversed(self.params[:-1]):
            zn = np.concatenate([[0.0], num])
            dp = np.concatenate([den, [0.0]])
            num, den = g * dp + zn, dp + g.conjugate() * zn
        return num, den


def taylor(f: BoundedFunction, T: int = DEFAULT_TRUNCATION) -> PowerSeries:
    """First ``T + 1`` Taylor coefficients of ``f`` at the origin."""
    if T < 0:
        raise ValueError("truncation order must be nonnegative")
    num, den = f.rational()
    return PowerSeries(kernels.rational_taylor(num, den, int(T)))


def random_unit_disk(rng: np.random.Generator, size: int | None = None):
    """Uniform samples from the closed unit disk (area measure)."""
    rad = np.sqrt(rng.random(size))
    ang = rng.uniform(0.0, 2.0 * math.pi, size)
    return rad * np.exp(1j * ang)


def random_schur(rng: np.random.Generator, length: int, zero_constant: bool = False) -> SchurSequence:
    """Random member of the unit ball: ``length`` Schur parameters uniform in the disk."""
    params = random_unit_disk(rng, length)
    if zero_constant:
        params[0] = 0.0
    return SchurSequence(tuple(complex(g) for g in params))


def parse_function(spec: str) -> BoundedFunction:
    """Parse a short text form such as ``fa:0.9``, ``fastar:0.5``, ``mono:2``, ``schur:0.3,0.7``."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "fa":
        return ExtremalFa(float(arg))
    if name in ("fastar", "fa*"):
        return ExtremalFaStar(float(arg))
    if name == "mono":
        deg, _, c = arg.partition(",")
        return Monomial(int(deg), complex(c) if c else 1.0)
    if name == "schur":
        return SchurSequence(tuple(complex(x) for x in arg.split(",")))
    if name == "blaschke":
        return FiniteBlaschke(tuple(complex(x) for x in arg.split(",") if x))
    raise ValueError(f"unknown function spec {spec!r}")


def describe(f: BoundedFunction) -> dict:
    """JSON-friendly description of a bounded function."""
    def enc(x):
        x = complex(x)
        return [x.real, x.imag]

    if isinstance(f, ExtremalFa):
        return {"kind": "extremal_fa", "a": f.a}
    if isinstance(f, ExtremalFaStar):
        return {"kind": "extremal_fa_star", "a": f.a}
    if isinstance(f, Monomial):
        return {"kind": "monomial", "degree": f.degree, "coeff": enc(f.coeff)}
    if isinstance(f, FiniteBlaschke):
        return {"kind": "blaschke", "zeros": [enc(z) for z in f.zeros], "rotation": enc(f.rotation)}
    if isinstance(f, SchurSequence):
        return {"kind": "schur", "params": [enc(g) for g in f.params]}
    raise TypeError(type(f))


__all__ = [
    "PowerSeries", "BoundedFunction", "ExtremalFa", "ExtremalFaStar", "Monomial",
    "FiniteBlaschke", "SchurSequence", "taylor", "eval_series", "tail_bound",
    "random_unit_disk", "random_schur", "parse_function", "describe",
    "DEFAULT_TRUNCATION", "EPS_FLOAT",
]
