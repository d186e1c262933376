"""Homogeneous expansions in a few variables and their one-variable line sections.

On a complete circular domain every holomorphic ``f`` restricts to the
complex line ``{b h : |h| < 1}`` as ``f(b h) = sum_n P_n(b) h**n``. The
several-variable inequalities are therefore checked line by line with the
one-variable functionals. Functions are certified to map the domain into the
unit disk by construction (:func:`compose_line`), never by numerical sup
estimation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import functionals as fn
from . import kernels
from .functionals import Mode
from .radii import ClosedForm, YEquation, solve_radius
from .schwarz import monomial_schwarz
from .series import EPS_FLOAT, BoundedFunction, PowerSeries, taylor
from .verify import VerificationReport, _Partial, chunk_ranges, merge, run_parallel

MAX_DIMS = 3
MAX_DEGREE = 32


@dataclass(frozen=True)
class HomogeneousExpansion:
    """``f(z) = sum_alpha A_alpha z**alpha`` grouped by total degree ``|alpha| <= max_degree``.

    ``complete`` says the terms are the whole function (a polynomial); otherwise
    they are a truncation and line sections carry a tail bound.
    """

    dims: int
    terms: Mapping
    max_degree: int
    complete: bool = False

    def __post_init__(self):
        if self.dims < 1:
            raise ValueError("dims must be at least 1")
        clean = {}
        for alpha, coeff in dict(self.terms).items():
            alpha = tuple(int(x) for x in alpha)
            if len(alpha) != self.dims or min(alpha) < 0:
                raise ValueError(f"bad multi-index {alpha} for {self.dims} variables")
            if sum(alpha) > self.max_degree:
                raise ValueError(f"multi-index {alpha} exceeds max_degree {self.max_degree}")
            clean[alpha] = clean.get(alpha, 0j) + complex(coeff)
        object.__setattr__(self, "terms", clean)
        if clean:
            exps = np.array(list(clean.keys()), dtype=np.int64).reshape(len(clean), self.dims)
            coeffs = np.array(list(clean.values()), dtype=np.complex128)
        else:
            exps = np.zeros((0, self.dims), dtype=np.int64)
            coeffs = np.zeros(0, dtype=np.complex128)
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "_coeffs", coeffs)

    @property
    def constant(self) -> complex:
        return self.terms.get((0,) * self.dims, 0j)

    def homogeneous_part(self, n: int) -> dict:
        return {a: c for a, c in self.terms.items() if sum(a) == n}

    def __add__(self, other: "HomogeneousExpansion") -> "HomogeneousExpansion":
        if other.dims != self.dims:
            raise ValueError("dimension mismatch")
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0j) + c
        return HomogeneousExpansion(self.dims, terms, max(self.max_degree, other.max_degree),
                                    self.complete and other.complete)

    def __call__(self, z: Sequence[complex]) -> complex:
        z = np.asarray(z, dtype=np.complex128)
        return complex(np.sum(self._coeffs * np.prod(z[None, :] ** self._exps, axis=1)))

    @classmethod
    def constant_function(cls, c: complex, dims: int, max_degree: int = 0) -> "HomogeneousExpansion":
        return cls(dims, {(0,) * dims: c}, max_degree, complete=True)


# ---------------------------------------------------------------- domains

class Domain:
    """Complete circular domain ``{z : max_j |<c_j, z>| < 1}`` given by defining functionals ``c_j``."""

    def __init__(self, functionals: Sequence[Sequence[complex]], name: str = "intersection"):
        self.functionals = np.atleast_2d(np.asarray(functionals, dtype=np.complex128))
        self.dims = self.functionals.shape[1]
        self.name = name

    def gauge(self, z: Sequence[complex]) -> float:
        """Minkowski functional: ``z`` lies in the domain iff ``gauge(z) < 1``."""
        return float(np.max(np.abs(self.functionals @ np.asarray(z, dtype=np.complex128))))

    def bound_on_linear(self, b: Sequence[complex]) -> float:
        """``sup |sum_j b_j z_j|`` over the domain, or ``inf`` if unbounded."""
        b = np.asarray(b, dtype=np.complex128)
        if self.name == "polydisk":
            return float(np.sum(np.abs(b)))
        # b must be a multiple of a single defining functional for the bound to be finite here
        for c in self.functionals:
            j = int(np.argmax(np.abs(c)))
            lam = b[j] / c[j] if c[j] != 0 else 0
            if np.allclose(b, lam * c, atol=1e-14):
                return float(abs(lam))
        return math.inf

    def random_direction(self, rng: np.random.Generator) -> "LineDirection":
        raw = rng.random(self.dims) ** 0.5 * np.exp(1j * rng.uniform(0, 2 * math.pi, self.dims))
        if not np.any(raw):
            raw[0] = 1.0
        return LineDirection.normalized(raw, self)

    def describe(self) -> dict:
        return {"name": self.name, "dims": self.dims}


def polydisk(n: int) -> Domain:
    return Domain(np.eye(n), "polydisk")


def halfspace(b: Sequence[complex]) -> Domain:
    """``R_b = {z : |b_1 z_1 + ... + b_n z_n| < 1}``."""
    return Domain([b], "halfspace")


@dataclass(frozen=True)
class LineDirection:
    """Direction ``b`` with ``b h`` in the domain for ``|h| < 1`` and on its boundary for ``|h| = 1``."""

    b: tuple

    @classmethod
    def normalized(cls, raw: Sequence[complex], domain: Domain) -> "LineDirection":
        g = domain.gauge(raw)
        if g == 0:
            raise ValueError("direction has zero gauge; the line is not bounded in the domain")
        return cls(tuple(complex(x) / g for x in raw))

    @property
    def dims(self) -> int:
        return len(self.b)

    def check(self, domain: Domain) -> None:
        if abs(domain.gauge(self.b) - 1.0) > EPS_FLOAT:
            raise ValueError("line direction is not normalized for this domain")


def _as_vector(b) -> np.ndarray:
    return np.asarray(b.b if isinstance(b, LineDirection) else b, dtype=np.complex128)


def section(e: HomogeneousExpansion, b) -> PowerSeries:
    """One-variable series ``sum_n P_n(b) h**n``."""
    vec = _as_vector(b)
    if vec.size != e.dims:
        raise ValueError(f"direction has {vec.size} components, expansion has {e.dims} variables")
    return PowerSeries(kernels.section_coeffs(e._exps, e._coeffs, vec, e.max_degree), e.complete)


def _compositions(m: int, n: int):
    """All n-tuples of nonnegative integers summing to m."""
    for bars in itertools.combinations(range(m + n - 1), n - 1):
        prev = -1
        parts = []
        for bar in bars + (m + n - 1,):
            parts.append(bar - prev - 1)
            prev = bar
        yield tuple(parts)


def compose_line(f: BoundedFunction, b, k: int = 1, max_degree: int = MAX_DEGREE,
                 domain: Domain | None = None) -> HomogeneousExpansion:
    """Expansion of ``f(b_1 z_1**k + ... + b_n z_n**k)`` up to total degree ``max_degree``.

    ``b`` is checked so that ``|b_1 z_1 + ... + b_n z_n| <= 1`` on ``domain``
    (default: the polydisk), which certifies ``|f| <= 1`` there.
    """
    vec = _as_vector(b)
    n = vec.size
    if k < 1:
        raise ValueError("k must be at least 1")
    domain = polydisk(n) if domain is None else domain
    if k > 1 and domain.name != "polydisk":
        # z -> z**k coordinate-wise only preserves the polydisk
        raise ValueError("compose_line with k > 1 is certified on the polydisk only")
    if domain.bound_on_linear(vec) > 1.0 + EPS_FLOAT:
        raise ValueError("linear form exceeds modulus one on the domain; composition not certified")
    top = max_degree // k
    c = taylor(f, top).coeffs
    terms = {}
    for m in range(top + 1):
        if c[m] == 0:
            continue
        for alpha in _compositions(m, n):
            mult = math.factorial(m)
            mono = complex(c[m])
            for bj, aj in zip(vec, alpha):
                mult //= math.factorial(aj)
                mono *= bj**aj
            if mono != 0:
                terms[tuple(k * a for a in alpha)] = mono * mult
    num, den = f.rational()
    polynomial = np.count_nonzero(den[1:]) == 0 and (len(num) - 1) * k <= max_degree
    return HomogeneousExpansion(n, terms, max_degree, complete=bool(polynomial))


# ---------------------------------------------------------------- theorems

THEOREMS = ("2.1", "2.2", "2.3", "2.4", "2.5")


@dataclass(frozen=True)
class TheoremSpec:
    name: str
    p: float | None = None
    N: int | None = None
    m0: int | None = None

    def __post_init__(self):
        name = self.name.upper().replace("T", "").replace("_", ".")
        if name not in THEOREMS:
            raise ValueError(f"unknown theorem {self.name!r}; expected one of {THEOREMS}")
        object.__setattr__(self, "name", name)
        if name in ("2.3", "2.4") and (self.p is None or self.N is None or self.m0 is None):
            raise ValueError(f"theorem {name} needs p, N and m0")

    @property
    def zero_constant(self) -> bool:
        return self.name in ("2.2", "2.5")

    def radius_problem(self, k: int):
        if self.name == "2.1":
            return ClosedForm("bohr_third", k)
        if self.name == "2.2":
            return ClosedForm("bombieri", k)
        if self.name == "2.5":
            return ClosedForm("three_fifths", k)
        return YEquation(self.p, k, self.N, self.m0)

    def label(self) -> str:
        extra = "" if self.p is None else f",p={self.p:g},N={self.N},m0={self.m0}"
        return f"T{self.name}{extra}"


def line_functional(series: PowerSeries, theorem: TheoremSpec, k: int, h: complex) -> fn.FunctionalValue:
    """The one-variable functional behind ``theorem`` on a line section at the point ``h``."""
    w_k = monomial_schwarz(k)
    name = theorem.name
    if name == "2.1":
        return fn.majorant(series, w_k, h)
    if name == "2.2":
        return fn.zero_omitted_sum(series, w_k, h)
    if name == "2.5":
        return fn.refined_L(series, w_k, h)
    w_m0 = monomial_schwarz(theorem.m0)
    if name == "2.3":
        return fn.bohr_rogosinski_I(series, w_m0, w_k, h, theorem.p, theorem.N, mode=Mode.POINTWISE)
    return fn.refined_J(series, w_m0, w_k, h, theorem.p, theorem.N, mode=Mode.POINTWISE)


def sample_line(domain: Domain, seed: int, index: int, h_radius: float):
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    d = domain.random_direction(rng)
    h = complex(h_radius * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
    return d, h


class _LineTask:
    def __init__(self, e, theorem, k, seed, h_radius, domain):
        self.e, self.theorem, self.k = e, theorem, k
        self.seed, self.h_radius, self.domain = seed, h_radius, domain

    def __call__(self, lo: int, hi: int) -> _Partial:
        part = _Partial()
        for i in range(lo, hi):
            d, h = sample_line(self.domain, self.seed, i, self.h_radius)
            v = line_functional(section(self.e, d), self.theorem, self.k, h)

            def descriptor(i=i, d=d, h=h, v=v):
                return {
                    "index": i,
                    "direction": [[x.real, x.imag] for x in d.b],
                    "h": [h.real, h.imag],
                    "value": v.value,
                    "total_upper": v.total_upper,
                }

            part.add(i, v, descriptor)
        return part


def verify_theorem(e: HomogeneousExpansion, theorem: TheoremSpec, k: int = 1, lines: int = 1000,
                   seed: int = 0, *, margin: float = 1e-3, radius: float | None = None,
                   domain: Domain | None = None, workers: int = 1) -> VerificationReport:
    """Apply the theorem's one-variable functional on ``lines`` random line sections.

    Lines are ``{d h}`` with ``d`` normalized to the domain boundary and
    ``|h| = radius - margin`` (``radius`` defaults to the theorem's sharp
    homothety factor). The Schwarz map on each line is ``h -> h**k``.
    """
    if isinstance(theorem, str):
        theorem = TheoremSpec(theorem)
    if theorem.zero_constant and abs(e.constant) > 1e-12:
        raise ValueError(f"theorem {theorem.name} requires a zero constant term")
    if e.dims > MAX_DIMS:
        raise ValueError(f"at most {MAX_DIMS} variables are supported")
    domain = polydisk(e.dims) if domain is None else domain
    sharp = solve_radius(theorem.radius_problem(k)).root
    base = sharp if radius is None else radius
    h_radius = base - margin
    if not 0.0 < h_radius < 1.0:
        raise ValueError(f"line radius {h_radius} outside (0, 1)")
    task = _LineTask(e, theorem, k, seed, h_radius, domain)
    merged = merge(run_parallel(task, chunk_ranges(lines, workers), workers))
    best = merged.best[1]
    return VerificationReport(
        trials_run=merged.trials,
        max_value=best["total_upper"],
        argmax_descriptor=best,
        violations=merged.violations,
        seed=seed,
        violation_count=merged.count,
        radius=sharp,
        sample_radius=h_radius,
        label=f"{theorem.label()},k={k},n={e.dims},{domain.name}",
    )


def random_certified(rng: np.random.Generator, dims: int, k: int = 1, zero_constant: bool = False,
                     max_degree: int = MAX_DEGREE, schur_length: int | None = None) -> HomogeneousExpansion:
    """A random ``f(g(z**k))`` with ``f`` from random Schur parameters and ``sum |b_j| <= 1``."""
    from .series import random_schur

    length = int(rng.integers(1, 9)) if schur_length is None else schur_length
    f = random_schur(rng, length, zero_constant=zero_constant)
    raw = rng.random(dims) * np.exp(1j * rng.uniform(0, 2 * math.pi, dims))
    scale = rng.uniform(0.5, 1.0) / np.sum(np.abs(raw))
    return compose_line(f, raw * scale, k, max_degree)


@dataclass(frozen=True)
class ExtremalCheck:
    theorem: str
    k: int
    dims: int
    a: float
    radius: float
    probe_h: float
    value: float
    exceeded: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def extremal_check(theorem: TheoremSpec, k: int = 1, dims: int = 2, a: float = 0.99,
                   probe_offset: float = 0.01) -> ExtremalCheck:
    """Evaluate the line functional of ``f(z) = f_a(z_1)`` along ``b = e_1`` at ``h = radius + probe_offset``.

    The zero-constant theorems use ``f*_a`` instead of ``f_a``.
    """
    from .series import ExtremalFa, ExtremalFaStar

    if isinstance(theorem, str):
        theorem = TheoremSpec(theorem)
    f = ExtremalFaStar(a) if theorem.zero_constant else ExtremalFa(a)
    b = np.zeros(dims, dtype=np.complex128)
    b[0] = 1.0
    e = compose_line(f, b, 1)
    radius = solve_radius(theorem.radius_problem(k)).root
    h = radius + probe_offset
    if not 0.0 < h < 1.0:
        raise ValueError(f"probe radius {h} outside (0, 1)")
    v = line_functional(section(e, LineDirection(tuple(b))), theorem, k, h)
    return ExtremalCheck(theorem.label(), k, dims, a, radius, h, v.value, v.value > 1.0 + EPS_FLOAT)
