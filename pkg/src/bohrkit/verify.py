"""Seeded Monte-Carlo checks that a functional stays at most one below its sharp radius.

Trial ``i`` draws everything from ``SeedSequence([seed, i])``, so serial and
parallel runs (any chunking) produce identical reports.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import functionals as fn
from .functionals import FunctionalKind, Mode
from .schwarz import SchwarzMap, monomial_schwarz
from .series import (
    DEFAULT_TRUNCATION,
    EPS_FLOAT,
    ExtremalFa,
    ExtremalFaStar,
    describe,
    random_schur,
)

MAX_RECORDED_VIOLATIONS = 50


@dataclass(frozen=True)
class VerificationConfig:
    functional: FunctionalKind
    k: int = 1
    m0: int = 1
    trials: int = 10_000
    seed: int = 0
    margin: float = 1e-3
    truncation: int = DEFAULT_TRUNCATION
    extremal_fraction: float = 0.2
    max_schur_length: int = 12
    max_inner_degree: int = 4
    monomial_schwarz: bool = False
    z_radius: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.margin < 0:
            raise ValueError("margin must be nonnegative")
        if self.k < 1 or self.m0 < 1:
            raise ValueError("k and m0 must be at least 1")
        if not 0.0 <= self.extremal_fraction <= 1.0:
            raise ValueError("extremal_fraction must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass
class VerificationReport:
    trials_run: int
    max_value: float
    argmax_descriptor: dict
    violations: list
    seed: int
    violation_count: int = 0
    radius: float = float("nan")
    sample_radius: float = float("nan")
    label: str = ""

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class _Partial:
    """Per-chunk summary: running max and the first violations."""

    best: tuple | None = None
    violations: list = field(default_factory=list)
    count: int = 0
    trials: int = 0

    def add(self, index: int, value: fn.FunctionalValue, describe_fn) -> None:
        self.trials += 1
        key = (value.total_upper, -index)
        if self.best is None or key > self.best[0]:
            self.best = (key, describe_fn())
        if value.total_upper > 1.0 + EPS_FLOAT:
            self.count += 1
            if len(self.violations) < MAX_RECORDED_VIOLATIONS:
                self.violations.append(describe_fn())


def merge(parts: list[_Partial]) -> _Partial:
    out = _Partial()
    for part in parts:
        out.trials += part.trials
        out.count += part.count
        if part.best is not None and (out.best is None or part.best[0] > out.best[0]):
            out.best = part.best
        out.violations.extend(part.violations)
    out.violations.sort(key=lambda d: d["index"])
    del out.violations[MAX_RECORDED_VIOLATIONS:]
    return out


def chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    size = math.ceil(n / max(workers, 1))
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


def run_parallel(task, ranges, workers: int) -> list:
    if workers <= 1 or len(ranges) <= 1:
        return [task(lo, hi) for lo, hi in ranges]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, *zip(*ranges)))


def _random_schwarz(rng: np.random.Generator, order: int, max_inner: int) -> SchwarzMap:
    length = int(rng.integers(1, max_inner + 2))
    return SchwarzMap(order, random_schur(rng, length))


def _enc(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def sample_trial(cfg: VerificationConfig, index: int, z_radius: float):
    """The ``(f, w_k, w_m0, z)`` triple of trial ``index``."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, index]))
    zero_const = cfg.functional.needs_zero_constant
    if rng.random() < cfg.extremal_fraction:
        a = float(rng.random())
        f = ExtremalFaStar(a) if zero_const else ExtremalFa(a)
    else:
        length = int(rng.integers(1, cfg.max_schur_length + 1))
        f = random_schur(rng, length, zero_constant=zero_const)
    if cfg.monomial_schwarz:
        w_k, w_m0 = monomial_schwarz(cfg.k), monomial_schwarz(cfg.m0)
    else:
        w_k = _random_schwarz(rng, cfg.k, cfg.max_inner_degree)
        w_m0 = _random_schwarz(rng, cfg.m0, cfg.max_inner_degree)
    z = complex(z_radius * math.sqrt(rng.random()) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
    return f, w_k, w_m0, z


def _run_chunk(cfg: VerificationConfig, z_radius: float, lo: int, hi: int) -> _Partial:
    part = _Partial()
    for i in range(lo, hi):
        f, w_k, w_m0, z = sample_trial(cfg, i, z_radius)
        v = fn.evaluate(cfg.functional, f, z, w_k=w_k, w_m0=w_m0, T=cfg.truncation, mode=Mode.POINTWISE)

        def descriptor(i=i, f=f, w_k=w_k, w_m0=w_m0, z=z, v=v):
            return {
                "index": i,
                "f": describe(f),
                "w_k": w_k.describe(),
                "w_m0": w_m0.describe(),
                "z": _enc(z),
                "value": v.value,
                "total_upper": v.total_upper,
            }

        part.add(i, v, descriptor)
    return part


class _ChunkTask:
    def __init__(self, cfg, z_radius):
        self.cfg, self.z_radius = cfg, z_radius

    def __call__(self, lo, hi):
        return _run_chunk(self.cfg, self.z_radius, lo, hi)


def config_radius(cfg: VerificationConfig) -> float:
    from .radii import solve_radius
    from .sharpness import default_problem

    return solve_radius(default_problem(cfg.functional, cfg.k, cfg.m0)).root


def run_trials(cfg: VerificationConfig, workers: int = 1) -> VerificationReport:
    """Evaluate ``cfg.trials`` random configurations with ``|z| <= radius - margin``.

    A violation is a trial whose certified upper bound exceeds ``1 + 1e-9``.
    """
    radius = config_radius(cfg)
    z_radius = cfg.z_radius if cfg.z_radius is not None else radius - cfg.margin
    if not 0.0 < z_radius < 1.0:
        raise ValueError(f"sampling radius {z_radius} outside (0, 1)")
    ranges = chunk_ranges(cfg.trials, workers)
    merged = merge(run_parallel(_ChunkTask(cfg, z_radius), ranges, workers))
    best = merged.best[1]
    return VerificationReport(
        trials_run=merged.trials,
        max_value=best["total_upper"],
        argmax_descriptor=best,
        violations=merged.violations,
        seed=cfg.seed,
        violation_count=merged.count,
        radius=radius,
        sample_radius=z_radius,
        label=f"{cfg.functional.label()},k={cfg.k},m0={cfg.m0}",
    )
