"""Sampling configuration, residual tallies and check reports."""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import gmpy2
import numpy as np

from .core import REL_TOL, Element, Mode, PseudofieldInstance, residual, undefined

RATIONAL_GRID = 64


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 42
    samples: int = 1000
    # radius of boxes around units for statements about a neighbourhood of e
    near_radius: float = 0.25
    # radius for globally quantified identities
    far_radius: float = 2.0
    tolerance: float = REL_TOL
    mode: Mode = Mode.FLOAT

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.near_radius <= 0 or self.far_radius <= 0:
            raise ValueError("box radius must be positive")

    def rng(self, check_id: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(check_id.encode())])


@dataclass
class CheckEntry:
    check_id: str
    paper_ref: str
    samples_attempted: int = 0
    samples_defined: int = 0
    failures: int = 0
    max_residual: float = 0.0

    def passed(self, mode: Mode, tol: float) -> bool:
        if self.failures:
            return False
        return mode is Mode.RATIONAL or self.max_residual <= tol


@dataclass
class CheckReport:
    instance: str
    n: int
    mode: Mode
    seed: int
    samples: int
    tolerance: float
    checks: List[CheckEntry] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed(self.mode, self.tolerance) for c in self.checks)

    def entry(self, check_id: str) -> CheckEntry:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.checks.extend(other.checks)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        return self

    def to_dict(self) -> dict:
        def num(v):
            if self.mode is Mode.RATIONAL:
                return "0" if v == 0 else str(v)
            return v

        return {
            "instance": self.instance,
            "n": self.n,
            "mode": self.mode.value,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": num(self.tolerance),
            "checks": [
                {
                    "check_id": c.check_id,
                    "paper_ref": c.paper_ref,
                    "samples_attempted": c.samples_attempted,
                    "samples_defined": c.samples_defined,
                    "failures": c.failures,
                    "max_residual": num(c.max_residual),
                }
                for c in self.checks
            ],
            "pass": self.passed,
        }


def new_report(inst: PseudofieldInstance, cfg: SampleConfig) -> CheckReport:
    return CheckReport(inst.name, inst.n, inst.mode, cfg.seed, cfg.samples, cfg.tolerance)


def flatten(value) -> tuple:
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return tuple(c for part in value for c in flatten(part))
    return tuple(value)


class Tally:
    """Accumulates one check entry; undefined samples are counted, never failed."""

    def __init__(self, check_id: str, ref: str, mode: Mode, tol: float):
        self.entry = CheckEntry(check_id, ref)
        self.mode = mode
        self.tol = tol

    def skip(self):
        self.entry.samples_attempted += 1

    def fail(self, amount: float = math.inf):
        self.entry.samples_attempted += 1
        self.entry.samples_defined += 1
        self.entry.failures += 1
        self.entry.max_residual = max(self.entry.max_residual, amount)

    def compare(self, lhs, rhs) -> Optional[bool]:
        e = self.entry
        e.samples_attempted += 1
        if undefined(lhs) or undefined(rhs):
            return None
        e.samples_defined += 1
        if lhs == rhs:
            return True
        a, b = flatten(lhs), flatten(rhs)
        if self.mode is Mode.RATIONAL:
            if a == b:
                return True
            e.failures += 1
            e.max_residual = max(e.max_residual, residual(a, b))
            return False
        r = residual(a, b)
        e.max_residual = max(e.max_residual, r)
        if r > self.tol:
            e.failures += 1
            return False
        return True

    def predicate(self, ok: Optional[bool], amount: float = math.inf):
        """Record a boolean outcome; ``None`` means undefined."""
        if ok is None:
            self.skip()
        elif ok:
            self.entry.samples_attempted += 1
            self.entry.samples_defined += 1
        else:
            self.fail(amount)


# -- sampling ------------------------------------------------------------------


def _coordinates(rng: np.random.Generator, shape, centers, radius: float, mode: Mode):
    """Array-like of shape ``shape`` (count, k, dim): centers[i][j] plus a box offset."""
    count, k, dim = shape
    if mode is Mode.RATIONAL:
        ks = rng.integers(0, 2 * RATIONAL_GRID + 1, size=shape)
        step = gmpy2.mpq(radius) / RATIONAL_GRID
        grid = [step * m for m in range(-RATIONAL_GRID, RATIONAL_GRID + 1)]
        entries = []
        for i in range(k):
            # shifted grid per coordinate, indexed column by column
            cols = [[c + grid[m] for m in ks[:, i, j].tolist()] for j, c in enumerate(centers[i])]
            entries.append(list(zip(*cols)))
        return list(zip(*entries))
    offs = rng.uniform(-radius, radius, size=shape) + np.array(centers, dtype=float)
    return [tuple(tuple(row) for row in block) for block in offs.tolist()]


def sample_elements(inst: PseudofieldInstance, rng: np.random.Generator, count: int,
                    center: Element, radius: float) -> List[Element]:
    return [b[0] for b in _coordinates(rng, (count, 1, inst.dim), [center], radius, inst.mode)]


def sample_tuples(inst: PseudofieldInstance, rng: np.random.Generator, count: int,
                  centers: Sequence[Element], radius: float) -> List[tuple]:
    return _coordinates(rng, (count, len(centers), inst.dim), centers, radius, inst.mode)
