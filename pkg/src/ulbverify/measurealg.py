"""Finite measure-algebra model: the powerset algebra of a small ground
set, pseudometrics mu(A symdiff B), family suprema, separation versus
Hausdorffness, the zero-gap route to non-Archimedean structures, limits of
eventually periodic Cauchy sequences, and atom recovery.

The carrier for uniform-structure purposes is the set of algebra
elements (bitmasks over the ground set), not the ground set itself, so
the generic filtration and map-space machinery applies unchanged.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .relalg import Relation
from .unif import UniformFiltration


@dataclass(frozen=True)
class Measure:
    """Nonnegative rational weights per ground point; mu(A) sums over A."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("empty ground set")
        for w in self.weights:
            if w < 0:
                raise ValueError("weights must be nonnegative")

    @classmethod
    def from_values(cls, values: Sequence) -> "Measure":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def dirac(cls, ground_size: int, point: int) -> "Measure":
        return cls(
            tuple(Fraction(1 if i == point else 0) for i in range(ground_size))
        )

    @classmethod
    def counting(cls, ground_size: int) -> "Measure":
        return cls((Fraction(1),) * ground_size)

    @classmethod
    def zero(cls, ground_size: int) -> "Measure":
        return cls((Fraction(0),) * ground_size)

    @property
    def ground_size(self) -> int:
        return len(self.weights)

    def of(self, element: int) -> Fraction:
        """Measure of an algebra element given as a bitmask."""
        total = Fraction(0)
        i = 0
        while element:
            if element & 1:
                total += self.weights[i]
            element >>= 1
            i += 1
        return total


def sym_diff_distance(mu: Measure, a: int, b: int) -> Fraction:
    return mu.of(a ^ b)


@dataclass(frozen=True)
class MeasureFamily:
    measures: tuple[Measure, ...]

    def __post_init__(self) -> None:
        if not self.measures:
            raise ValueError("empty measure family")
        n = self.measures[0].ground_size
        if any(m.ground_size != n for m in self.measures):
            raise ValueError("measures on different ground sets")

    @property
    def ground_size(self) -> int:
        return self.measures[0].ground_size

    @property
    def element_count(self) -> int:
        return 1 << self.ground_size

    def max_distance(self, a: int, b: int) -> Fraction:
        return max(sym_diff_distance(m, a, b) for m in self.measures)


def build_measure_filtration(
    family: MeasureFamily, thresholds: Sequence
) -> UniformFiltration:
    """Levels E_i = {(A, B) : mu(A symdiff B) < thresholds[i] for all mu}.

    Thresholds must be positive, strictly decreasing and halve at each
    step; the half-step law then follows from the triangle inequality of
    every symmetric-difference pseudometric in the family.
    """
    eps = tuple(Fraction(t) for t in thresholds)
    if not eps:
        raise ValueError("need at least one threshold")
    for t in eps:
        if t <= 0:
            raise ValueError("thresholds must be positive")
    for a, b in zip(eps, eps[1:]):
        if b > a / 2:
            raise ValueError(f"threshold law violated: {b} > {a}/2")
    n = family.element_count
    levels = []
    for t in eps:
        pairs = [
            (a, b)
            for a in range(n)
            for b in range(n)
            if family.max_distance(a, b) < t
        ]
        levels.append(Relation.from_pairs(n, pairs))
    return UniformFiltration(tuple(levels))


@dataclass(frozen=True)
class SeparationReport:
    separates: bool
    non_separated_pair: tuple[int, int] | None
    gap: Fraction | None               # least positive sup-distance, if any
    hausdorff_equivalence: bool        # separates <=> finest level is diagonal


def separation_check(family: MeasureFamily) -> SeparationReport:
    n = family.element_count
    positive = []
    witness = None
    for a in range(n):
        for b in range(a + 1, n):
            d = family.max_distance(a, b)
            if d > 0:
                positive.append(d)
            elif witness is None:
                witness = (a, b)
    separates = witness is None
    gap = min(positive) if positive else None
    threshold = gap if gap is not None else Fraction(1)
    filt = build_measure_filtration(family, (threshold,))
    is_diagonal = filt.finest() == Relation.diagonal(n)
    return SeparationReport(
        separates=separates,
        non_separated_pair=witness,
        gap=gap,
        hausdorff_equivalence=(separates == is_diagonal),
    )


@dataclass(frozen=True)
class ZeroGapReport:
    gap: Fraction
    non_archimedean: bool
    levels_idempotent: tuple[bool, ...]


def zero_one_non_arch(family: MeasureFamily) -> ZeroGapReport:
    """With thresholds at or below the least positive measure value, every
    level collapses to "all distances vanish", a transitive condition, so
    the filtration is non-Archimedean.  Exact rational data always has such
    a gap; an all-zero family gets the conventional gap 1."""
    n = family.element_count
    values = [
        m.of(a) for m in family.measures for a in range(n) if m.of(a) > 0
    ]
    gap = min(values) if values else Fraction(1)
    filt = build_measure_filtration(family, (gap, gap / 2))
    flags = tuple(level.is_idempotent() for level in filt.levels)
    return ZeroGapReport(
        gap=gap, non_archimedean=all(flags), levels_idempotent=flags
    )


@dataclass(frozen=True)
class LimitReport:
    cauchy: bool
    limit: int | None
    divergence_witness: str
    distances_vanish: bool


def cauchy_limit(
    prefix: Sequence[int], cycle: Sequence[int], family: MeasureFamily
) -> LimitReport:
    """Limit of an eventually periodic sequence, by the tail formula
    (intersection over n of the union of terms from n on).

    The sequence is Cauchy iff every pair of cycle elements is at distance
    zero under every measure; the tail formula then evaluates to the union
    of the cycle elements, and every distance to it vanishes inside the
    cycle.  Non-Cauchy input gets a divergence report and no limit claim.
    """
    cyc = [int(c) for c in cycle]
    if not cyc:
        raise ValueError("cycle must be nonempty")
    for mi, m in enumerate(family.measures):
        for i, a in enumerate(cyc):
            for b in cyc[i + 1 :]:
                d = sym_diff_distance(m, a, b)
                if d != 0:
                    return LimitReport(
                        cauchy=False,
                        limit=None,
                        divergence_witness=(
                            f"measure {mi} keeps cycle elements {a} and {b} "
                            f"at distance {d}"
                        ),
                        distances_vanish=False,
                    )
    limit = 0
    for c in cyc:
        limit |= c
    vanish = all(
        sym_diff_distance(m, c, limit) == 0 for m in family.measures for c in cyc
    )
    return LimitReport(
        cauchy=True, limit=limit, divergence_witness="", distances_vanish=vanish
    )


@dataclass(frozen=True)
class AtomRecoveryReport:
    ground_size: int
    automorphism_count: int
    expected_count: int
    all_induced_by_ground_bijections: bool

    @property
    def passed(self) -> bool:
        return (
            self.automorphism_count == self.expected_count
            and self.all_induced_by_ground_bijections
        )


def atom_recovery(ground_size: int) -> AtomRecoveryReport:
    """Enumerate the inclusion-order automorphisms of the powerset algebra
    and verify each is induced by a unique ground-set bijection, so the
    count is the factorial of the ground size.  Enumeration is factorial in
    the algebra size, hence the small-ground restriction."""
    if not 1 <= ground_size <= 3:
        raise ValueError("atom recovery enumerates orders up to ground size 3")
    n = 1 << ground_size
    elements = list(range(n))
    autos = []
    for perm in itertools.permutations(elements):
        ok = True
        for a in elements:
            for b in elements:
                if ((a & b) == a) != ((perm[a] & perm[b]) == perm[a]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            autos.append(perm)
    induced = True
    for perm in autos:
        ground_map = {}
        for i in range(ground_size):
            image = perm[1 << i]
            if image.bit_count() != 1:
                induced = False
                break
            ground_map[i] = image.bit_length() - 1
        else:
            for a in elements:
                expected = 0
                for i in range(ground_size):
                    if (a >> i) & 1:
                        expected |= 1 << ground_map[i]
                if perm[a] != expected:
                    induced = False
                    break
        if not induced:
            break
    return AtomRecoveryReport(
        ground_size=ground_size,
        automorphism_count=len(autos),
        expected_count=math.factorial(ground_size),
        all_induced_by_ground_bijections=induced,
    )
