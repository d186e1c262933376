"""Radius equations on (0, 1): grid-scan + bisection root finding, reference root table and Y-curve data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import kernels

DEFAULT_TOL = 1e-10
DEFAULT_CELLS = 4096
MIN_P = 1e-6


class NoRootFound(ValueError):
    """No sign change of the radius equation was seen on the scan grid."""


def _int_param(name, value, low=1):
    if int(value) != value or value < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {value}")
    return int(value)


@dataclass(frozen=True)
class YEquation:
    """``2 r^(kN) (1 + r^m0) - p (1 - r^m0)(1 - r^k)``."""

    p: float
    k: int
    N: int
    m0: int

    def __post_init__(self):
        if not MIN_P <= self.p <= 2.0:
            raise ValueError(f"p must lie in [{MIN_P:g}, 2], got {self.p}")
        for name in ("k", "N", "m0"):
            object.__setattr__(self, name, _int_param(name, getattr(self, name)))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        s = r**self.m0
        rk = r**self.k
        return 2.0 * r ** (self.k * self.N) * (1.0 + s) - self.p * (1.0 - s) * (1.0 - rk)

    def label(self) -> str:
        return f"k={self.k},m0={self.m0},N={self.N},p={self.p:g}"


@dataclass(frozen=True)
class RNEquation:
    """``2 (1 + r) r^N - (1 - r)^2``."""

    N: int

    def __post_init__(self):
        object.__setattr__(self, "N", _int_param("N", self.N))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return 2.0 * (1.0 + r) * r**self.N - (1.0 - r) ** 2

    def label(self) -> str:
        return f"R_N,N={self.N}"


@dataclass(frozen=True)
class RNPrimeEquation:
    """``(1 + r) r^N - (1 - r)^2``."""

    N: int

    def __post_init__(self):
        object.__setattr__(self, "N", _int_param("N", self.N))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return (1.0 + r) * r**self.N - (1.0 - r) ** 2

    def label(self) -> str:
        return f"R'_N,N={self.N}"


@dataclass(frozen=True)
class RapEquation:
    """``[1 - (2 - a^2) r](1 + a r)^p - (1 - r)(r + a)^p`` with ``a = |f(0)|``."""

    a: float
    p: float

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"a must lie in [0, 1), got {self.a}")
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        a, p = self.a, self.p
        return (1.0 - (2.0 - a * a) * r) * (1.0 + a * r) ** p - (1.0 - r) * (r + a) ** p

    def label(self) -> str:
        return f"r_ap,a={self.a:g},p={self.p:g}"


CLOSED_FORMS = ("bohr_third", "bombieri", "three_fifths", "rogosinski", "power_p")


@dataclass(frozen=True)
class ClosedForm:
    """Radii known in closed form.

    ``bohr_third``: ``3^(-1/k)``; ``bombieri``: ``2^(-1/(2k))``;
    ``three_fifths``: ``(3/5)^(1/k)``; ``rogosinski``: ``1/2``;
    ``power_p``: ``p / (p + 2)``.
    """

    which: str
    k: int = 1
    p: float | None = None

    def __post_init__(self):
        which = self.which.replace("-", "_").lower()
        if which not in CLOSED_FORMS:
            raise ValueError(f"unknown closed-form radius {self.which!r}")
        object.__setattr__(self, "which", which)
        object.__setattr__(self, "k", _int_param("k", self.k))
        if which == "power_p" and (self.p is None or not 0.0 < self.p <= 2.0):
            raise ValueError("power_p needs p in (0, 2]")

    def value(self) -> float:
        k = self.k
        if self.which == "bohr_third":
            return 3.0 ** (-1.0 / k)
        if self.which == "bombieri":
            return 2.0 ** (-1.0 / (2 * k))
        if self.which == "three_fifths":
            return 0.6 ** (1.0 / k)
        if self.which == "rogosinski":
            return 0.5
        return self.p / (self.p + 2.0)

    def label(self) -> str:
        return f"{self.which},k={self.k}" + (f",p={self.p:g}" if self.p is not None else "")


RadiusProblem = Union[YEquation, RNEquation, RNPrimeEquation, RapEquation, ClosedForm]


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    bracket_width: float
    unique_on_grid: bool


def eval_equation(prob: RadiusProblem, r):
    """Left-hand side of the radius equation at ``r`` (scalar or array) in ``[0, 1)``."""
    if isinstance(prob, ClosedForm):
        raise TypeError("closed-form radii have no equation to evaluate")
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError("r must lie in [0, 1)")
    out = prob(arr)
    return float(out) if np.ndim(out) == 0 else out


def scan_grid(cells: int = DEFAULT_CELLS) -> np.ndarray:
    """Uniform scan points ``i / cells`` plus a last point just below 1."""
    return np.append(np.arange(cells) / cells, 1.0 - 2.0**-40)


def solve_radius(prob: RadiusProblem, tol: float = DEFAULT_TOL, cells: int = DEFAULT_CELLS) -> RootResult:
    """Smallest root in (0, 1): first sign change on a uniform grid, refined by bisection."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    if isinstance(prob, ClosedForm):
        return RootResult(prob.value(), 0.0, 0.0, True)
    grid = scan_grid(cells)
    vals = prob(grid)
    idx, changes = kernels.first_sign_change(vals)
    if idx < 0:
        raise NoRootFound(f"no sign change of {prob.label()} on (0, 1)")
    if vals[idx] == 0.0:
        root = float(grid[idx])
        if root == 0.0:
            raise NoRootFound(f"{prob.label()} vanishes at r = 0")
        return RootResult(root, 0.0, 0.0, changes <= 1)
    lo, hi = float(grid[idx]), float(grid[idx + 1])
    f_lo = float(vals[idx])
    for _ in range(400):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = float(prob(mid))
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return RootResult(root, float(prob(root)), hi - lo, changes == 1)


class Table1Row(NamedTuple):
    k: int
    m0: int
    N: int
    p: float
    root: float


# (k, m0, N, p) as printed in the source table
TABLE1_PARAMS = (
    (2, 2, 2, 0.12),
    (2, 4, 1, 0.6),
    (3, 3, 2, 0.1),
    (3, 4, 1, 1.2),
    (3, 5, 2, 1.6),
    (7, 3, 1, 2.0),
    (4, 5, 7, 0.19),
    (5, 7, 10, 1.7),
)
TABLE1_REPORTED = (0.428676, 0.463452, 0.54271, 0.661436, 0.781955, 0.811851, 0.861239, 0.940732)


def table1_problems() -> list[YEquation]:
    return [YEquation(p=p, k=k, N=N, m0=m0) for k, m0, N, p in TABLE1_PARAMS]


def table1(tol: float = DEFAULT_TOL) -> list[Table1Row]:
    """Roots of the Y-equation for the eight parameter sets of the reference root table."""
    rows = []
    for prob in table1_problems():
        res = solve_radius(prob, tol)
        rows.append(Table1Row(prob.k, prob.m0, prob.N, prob.p, res.root))
    return rows


class CurvePoint(NamedTuple):
    label: str
    r: float
    y: float


def figure1_data(probs=None, grid: int = 201) -> list[CurvePoint]:
    """Equation values on ``grid`` uniform points ``i / grid`` of [0, 1), one curve per problem."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    probs = table1_problems() if probs is None else list(probs)
    rs = np.arange(grid) / grid
    out = []
    for prob in probs:
        ys = eval_equation(prob, rs)
        out.extend(CurvePoint(prob.label(), float(r), float(y)) for r, y in zip(rs, ys))
    return out


def crossing_cells(points: list[CurvePoint]) -> dict[str, tuple[float, float]]:
    """For each curve label, the ``(r_lo, r_hi)`` cell of its first sign change."""
    by_label: dict[str, list[CurvePoint]] = {}
    for pt in points:
        by_label.setdefault(pt.label, []).append(pt)
    out = {}
    for label, pts in by_label.items():
        ys = np.array([p.y for p in pts])
        idx, _ = kernels.first_sign_change(ys)
        if idx >= 0:
            hi = pts[idx + 1].r if idx + 1 < len(pts) else 1.0
            out[label] = (pts[idx].r, hi)
    return out


def radius_of(prob: RadiusProblem, tol: float = DEFAULT_TOL) -> float:
    return solve_radius(prob, tol).root

