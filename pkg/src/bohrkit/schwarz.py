"""Schwarz functions of order k: ``w(z) = z**k * g(z)`` with g in the unit ball."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import BoundedFunction, Monomial, _check_disk, describe, random_schur


@dataclass(frozen=True)
class SchwarzMap:
    """A member of the Schwarz class of order ``order``, stored factored as ``z**order * inner(z)``."""

    order: int
    inner: BoundedFunction

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("Schwarz order must be at least 1")

    def __call__(self, z: complex) -> complex:
        return eval_schwarz(self, z)

    def describe(self) -> dict:
        return {"order": self.order, "inner": describe(self.inner)}


def eval_schwarz(w: SchwarzMap, z: complex) -> complex:
    _check_disk(z)
    z = complex(z)
    if z == 0:
        return 0j
    return z**w.order * complex(w.inner(z))


def monomial_schwarz(k: int) -> SchwarzMap:
    """The map ``z -> z**k``."""
    return SchwarzMap(k, Monomial(0, 1.0))


def identity_map() -> SchwarzMap:
    return monomial_schwarz(1)


def negated_monomial(m0: int) -> SchwarzMap:
    """The map ``z -> -z**m0``; at ``z = r`` it takes the value ``-r**m0``."""
    return SchwarzMap(m0, Monomial(0, -1.0))


def random_schwarz(k: int, inner_degree: int, seed) -> SchwarzMap:
    """Deterministic random Schwarz map; ``inner`` has ``inner_degree + 1`` Schur parameters.

    ``seed`` may be an int or a :class:`numpy.random.SeedSequence`.
    """
    if inner_degree < 0:
        raise ValueError("inner_degree must be nonnegative")
    rng = np.random.default_rng(seed)
    return SchwarzMap(k, random_schur(rng, inner_degree + 1))
