"""Truncated uniform structures.

A filtration is a finite descending chain E_0 >= E_1 >= ... >= E_k of
reflexive symmetric relations with the half-step law
E_{i+1} o E_{i+1} <= E_i between consecutive levels.  The chain is read as
the first k+1 elements of an infinite entourage basis: the finest level
carries no half-step obligation of its own (a genuine finite basis would
force it to be an equivalence relation, excluding metric models).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .relalg import CarrierMismatch, Relation

TRUNCATION_NOTE = (
    "truncation=half-step-chain "
    "(levels are the first k+1 elements of an infinite basis; "
    "the half-step law binds consecutive levels only)"
)


@dataclass(frozen=True)
class FiltrationReport:
    valid: bool
    hausdorff_at_resolution: bool
    violations: tuple[str, ...]
    truncation: str = TRUNCATION_NOTE


class FiltrationOrder(enum.Enum):
    REFINES = "refines"
    REFINED_BY = "refinedBy"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class UniformFiltration:
    """Descending entourage chain on a shared carrier."""

    levels: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("a filtration needs at least one level")
        size = self.levels[0].size
        for i, level in enumerate(self.levels):
            if level.size != size:
                raise CarrierMismatch(f"level {i} carrier differs from level 0")

    @property
    def size(self) -> int:
        return self.levels[0].size

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def finest(self) -> Relation:
        return self.levels[-1]

    def validate(self) -> FiltrationReport:
        violations = []
        for i, level in enumerate(self.levels):
            if not level.is_reflexive():
                violations.append(f"level {i} is not reflexive")
            if not level.is_symmetric():
                violations.append(f"level {i} is not symmetric")
        for i in range(len(self.levels) - 1):
            if not self.levels[i + 1] <= self.levels[i]:
                violations.append(f"level {i + 1} is not contained in level {i}")
            if not self.levels[i + 1].compose(self.levels[i + 1]) <= self.levels[i]:
                violations.append(f"half-step fails at index {i}")
        return FiltrationReport(
            valid=not violations,
            hausdorff_at_resolution=self.finest() == Relation.diagonal(self.size),
            violations=tuple(violations),
        )

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        """Intersection of E_i[A] over all levels (= finest image, by nesting)."""
        images = [level.image(subset) for level in self.levels]
        acc = images[0]
        for img in images[1:]:
            acc &= img
        return acc

    def is_non_archimedean(self) -> bool:
        return all(level.is_idempotent() for level in self.levels)

    def refines(self, other: "UniformFiltration") -> FiltrationOrder:
        if self.size != other.size:
            raise CarrierMismatch("filtrations on different carriers")
        fwd = all(
            any(mine <= theirs for mine in self.levels) for theirs in other.levels
        )
        bwd = all(
            any(theirs <= mine for theirs in other.levels) for mine in self.levels
        )
        if fwd and bwd:
            return FiltrationOrder.EQUIVALENT
        if fwd:
            return FiltrationOrder.REFINES
        if bwd:
            return FiltrationOrder.REFINED_BY
        return FiltrationOrder.INCOMPARABLE


def validate_pseudometric(dist: Sequence[Sequence[Fraction]]) -> None:
    n = len(dist)
    if any(len(row) != n for row in dist):
        raise ValueError("distance matrix is not square")
    for x in range(n):
        if dist[x][x] != 0:
            raise ValueError(f"nonzero diagonal at {x}")
        for y in range(n):
            if dist[x][y] < 0:
                raise ValueError(f"negative distance at ({x}, {y})")
            if dist[x][y] != dist[y][x]:
                raise ValueError(f"asymmetric distance at ({x}, {y})")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if dist[x][y] > dist[x][z] + dist[z][y]:
                    raise ValueError(
                        f"triangle inequality fails at ({x}, {z}, {y})"
                    )


def from_metric(
    dist: Sequence[Sequence[Fraction]], scales: Sequence[Fraction]
) -> UniformFiltration:
    """Levels E_i = {(x, y) : d(x, y) < scales[i]} (strict inequality).

    Scales must be positive, strictly decreasing, and halve at each step,
    which makes the half-step law a consequence of the triangle inequality.
    """
    dist = tuple(tuple(Fraction(v) for v in row) for row in dist)
    validate_pseudometric(dist)
    scales = tuple(Fraction(s) for s in scales)
    if not scales:
        raise ValueError("need at least one scale")
    for s in scales:
        if s <= 0:
            raise ValueError("scales must be positive")
    for a, b in zip(scales, scales[1:]):
        if b > a / 2:
            raise ValueError(f"scale ratio violated: {b} > {a}/2")
    n = len(dist)
    levels = tuple(
        Relation.from_pairs(
            n, ((x, y) for x in range(n) for y in range(n) if dist[x][y] < s)
        )
        for s in scales
    )
    return UniformFiltration(levels)
