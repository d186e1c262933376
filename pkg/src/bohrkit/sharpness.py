"""Sharpness witnesses from the extremal families, and the auxiliary functions of the proofs.

A witness is an extremal configuration whose functional value exceeds one at
a radius slightly above the claimed sharp radius. The configurations are:

* ``f_a(z) = (a - z)/(1 - a z)`` with ``w_k(z) = z**k`` and ``w_m0(z) = -z**m0``,
  evaluated at ``z = r`` (majorant, Bohr-Rogosinski and refined sums);
* ``f*_a(z) = z f_a(z)`` with ``w_k(z) = z**k`` (zero-constant functionals);
* ``f_a`` at ``z = -r`` for the identity-map functionals.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import functionals as fn
from .functionals import FunctionalKind, Mode
from .radii import ClosedForm, RadiusProblem, RapEquation, RNEquation, RNPrimeEquation, YEquation, solve_radius
from .schwarz import monomial_schwarz, negated_monomial
from .series import EPS_FLOAT, ExtremalFa, ExtremalFaStar

WITNESS_TRUNCATION = 128


class NoWitness(RuntimeError):
    """No grid value of the extremal parameter pushes the functional above one."""


# ---------------------------------------------------------------- auxiliaries

def aux_M(a: float, r: float, k: int) -> float:
    return -(1.0 - a * r**k) + (1.0 + a) * r**k


def aux_Phi(p: float, m0: int, k: int, N: int, a: float, r: float) -> float:
    s = r**m0
    rk = r**k
    return 1.0 - ((s + a) / (1.0 + a * s)) ** p - (1.0 - a * a) * r ** (k * N) / (1.0 - rk)


def aux_Phi_prime(p: float, m0: int, k: int, N: int, a: float, r: float) -> float:
    """Derivative of :func:`aux_Phi` in ``a``."""
    s = r**m0
    return (2.0 * a * r ** (k * N) / (1.0 - r**k)
            - p * (1.0 - s * s) * (s + a) ** (p - 1.0) / (1.0 + a * s) ** (p + 1.0))


def aux_Psi(p: float, m0: int, a: float, r: float) -> float:
    s = r**m0
    return (1.0 + s) ** 2 * (s + a) ** (p - 1.0) / (1.0 + s * a) ** (p + 1.0)


def aux_H(p: float, m0: int, a: float, r: float) -> float:
    s = r**m0
    return (1.0 - a) * (s * (1.0 - a + p * (1.0 + a)) + a * (p + 1.0) + p - 1.0)


def aux_Q(N: int, p: float, k: int, m0: int, a: float, r: float) -> float:
    """``Q`` with ``I(f_a) = 1 + (1 - a) Q / ((1 - a r^k)(1 + a r^m0)^p)``; needs ``a < 1``."""
    s = r**m0
    rk = r**k
    u = (s + a) / (1.0 + a * s)
    return (1.0 - a * rk) * (1.0 + a * s) ** p * (
        (1.0 + a) / (1.0 - a * rk) * a ** (N - 1) * r ** (k * N) - (1.0 - u**p) / (1.0 - a)
    )


def aux_Q_limit(N: int, p: float, k: int, m0: int, r: float) -> float:
    """``lim_{a -> 1-} Q = (1 + r^m0)^(p-1) Y(r)``."""
    s = r**m0
    return (1.0 + s) ** (p - 1.0) * (2.0 * r ** (k * N) * (1.0 + s) - p * (1.0 - s) * (1.0 - r**k))


def aux_G(N: int, k: int, p: float, m0: int, a: float, r: float) -> float:
    """``G`` with ``J(f_a) = 1 + (1 - a) G / ((1 - a r^k)(1 + a r^m0)^p)``; needs ``a < 1``.

    The middle group carries the factor ``r^(kN) / (1 - r^k)`` so that the
    identity with the directly summed functional is exact.
    """
    t = (N - 1) // 2
    sgn = 1.0 if t >= 1 else 0.0
    s = r**m0
    rk = r**k
    pref = (1.0 - a * rk) * (1.0 + a * s) ** p
    middle = (1.0 + a) * (1.0 - a ** (2 * t)) * sgn * r ** (k * N) / (1.0 - rk)
    last = (1.0 - a * a) * a ** (2 * t) * rk ** (2 * (t + 1)) / ((1.0 - a * rk) * (1.0 - rk))
    return aux_Q(N, p, k, m0, a, r) + pref * (middle + last)


def aux_G_limit(N: int, k: int, p: float, m0: int, r: float) -> float:
    s = r**m0
    rk = r**k
    return (1.0 - rk) * (1.0 + s) ** p * (2.0 * r ** (k * N) / (1.0 - rk) - p * (1.0 - s) / (1.0 + s))


def aux_F(a: float, r: float, k: int) -> float:
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    rk = r**k
    return -1.0 + a * rk + (1.0 - a * a) * rk * rk / (1.0 - rk)


def aux_F_argmax(r: float, k: int) -> float:
    rk = r**k
    return (1.0 - rk) / (2.0 * rk)


def aux_F_max(r: float, k: int) -> float:
    rk = r**k
    return (1.0 + rk) * (5.0 * rk - 3.0) / (4.0 * (1.0 - rk))


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class SharpnessReport:
    functional: str
    problem: str
    radius: float
    probe_r: float
    witness_a: float
    functional_value: float
    exceeded: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _shape(params: RadiusProblem) -> dict:
    """``k, m0, p, N`` implied by a radius problem (``None`` where it says nothing)."""
    if isinstance(params, YEquation):
        return {"k": params.k, "m0": params.m0, "p": params.p, "N": params.N}
    if isinstance(params, RNEquation):
        return {"k": 1, "m0": 1, "p": 1.0, "N": params.N}
    if isinstance(params, RNPrimeEquation):
        return {"k": 1, "m0": 1, "p": 2.0, "N": params.N}
    if isinstance(params, ClosedForm):
        return {"k": params.k, "m0": 1, "p": params.p, "N": None}
    if isinstance(params, RapEquation):
        raise ValueError("the r_{a,p} radius fixes |f(0)| and has no a -> 1 witness")
    raise TypeError(type(params))


def default_problem(kind: FunctionalKind, k: int = 1, m0: int = 1) -> RadiusProblem:
    """The radius problem whose root is the sharp radius of ``kind``."""
    tag = kind.tag
    if tag == "majorant":
        return ClosedForm("bohr_third", k)
    if tag == "zero_omitted":
        return ClosedForm("bombieri", k)
    if tag == "refined_l":
        return ClosedForm("three_fifths", k)
    if tag == "power_majorant":
        return ClosedForm("power_p", 1, kind.p)
    if tag == "partial_sum":
        return ClosedForm("rogosinski", 1)
    if tag == "rogosinski_sum":
        return RNEquation(kind.N)
    if tag == "refined_a":
        return YEquation(kind.p, 1, kind.N, 1)
    return YEquation(kind.p, k, kind.N, m0)


def _extremal_evaluator(kind: FunctionalKind, shape: dict, T: int):
    k, m0 = shape["k"], shape["m0"]
    w_k = monomial_schwarz(k)
    w_m0 = negated_monomial(m0)
    tag = kind.tag

    if tag in ("zero_omitted", "refined_l"):
        return lambda a, r: fn.evaluate(kind, ExtremalFaStar(a), r, w_k=w_k, T=T)
    if tag in ("refined_a", "partial_sum"):
        return lambda a, r: fn.evaluate(kind, ExtremalFa(a), -r, T=T)
    if tag == "power_majorant":
        return lambda a, r: fn.evaluate(kind, ExtremalFa(a), r, T=T)
    return lambda a, r: fn.evaluate(kind, ExtremalFa(a), r, w_k=w_k, w_m0=w_m0, T=T, mode=Mode.POINTWISE)


def _check_compatible(kind: FunctionalKind, shape: dict) -> None:
    for name in ("p", "N"):
        mine, theirs = getattr(kind, name), shape[name]
        if mine is not None and theirs is not None and abs(mine - theirs) > 1e-12:
            raise ValueError(f"functional {name}={mine} does not match radius problem {name}={theirs}")


def a_grid(step: float) -> np.ndarray:
    """Descending grid ``1 - step, 1 - 2 step, ...`` over (0, 1)."""
    n = int(np.floor((1.0 - 1e-12) / step))
    return 1.0 - step * np.arange(1, n + 1)


def witness_search(kind: FunctionalKind, params: RadiusProblem | None = None, probe_offset: float = 0.01,
                   a_grid_step: float = 1e-4, *, k: int = 1, m0: int = 1, T: int = WITNESS_TRUNCATION,
                   raise_on_miss: bool = True, eps: float = EPS_FLOAT) -> SharpnessReport:
    """Scan the extremal parameter downward from ``1 - a_grid_step`` at ``r = radius + probe_offset``.

    Returns the first grid value whose functional partial sum (a lower
    bound) exceeds ``1 + eps``. A negative ``probe_offset`` probes below the
    radius, where no witness should exist.
    """
    if not 0.0 < a_grid_step <= 0.01:
        raise ValueError("a_grid_step must lie in (0, 0.01]")
    params = default_problem(kind, k, m0) if params is None else params
    shape = _shape(params)
    _check_compatible(kind, shape)
    radius = solve_radius(params).root
    probe_r = radius + probe_offset
    if not 0.0 < probe_r < 1.0:
        raise ValueError(f"probe radius {probe_r} outside (0, 1)")
    evaluate = _extremal_evaluator(kind, shape, T)
    best_a, best_v = float("nan"), -np.inf
    for a in a_grid(a_grid_step):
        v = evaluate(float(a), probe_r).value
        if v > best_v:
            best_a, best_v = float(a), v
        if v > 1.0 + eps:
            return SharpnessReport(kind.label(), params.label(), radius, probe_r, float(a), v, True)
    if raise_on_miss:
        raise NoWitness(
            f"{kind.label()} at r={probe_r:.6g}: best extremal value {best_v:.12g} at a={best_a:.6g}")
    return SharpnessReport(kind.label(), params.label(), radius, probe_r, best_a, best_v, False)
