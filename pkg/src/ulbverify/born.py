"""Bornologies given by finite bases, and the induced coarse structure.

A basis declares a set bounded iff it sits inside some basis set.  The
coarse structure generated by a bornology consists of the subsets of
relations of the shape (diagonal union finitely many squares of bounded
sets); on a finite carrier with the connected-union axiom this membership
is decided pairwise: every off-diagonal pair must span a bounded doubleton.
That shortcut is unsound without the connected-union axiom, so bornology
validity is a hard precondition for the coarse operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .relalg import CarrierMismatch, Relation, all_relations


@dataclass(frozen=True)
class BornologyReport:
    valid: bool
    connected: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class RoundTripReport:
    passed: bool
    subsets_checked: int
    mismatches: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class CoarseAxiomsReport:
    diagonal_member: bool              # (C1)
    closed_under_inverse: bool         # (C2)
    closed_under_subsets: bool         # (C3)
    closed_under_union: bool           # (C4)
    closed_under_composition: bool     # (C5)
    coarsely_connected: bool
    connectivity_equivalence: bool     # coarsely connected <=> bornology connected
    exhaustive: bool
    checked: int
    witnesses: tuple[str, ...]

    @property
    def all_axioms(self) -> bool:
        return (
            self.diagonal_member
            and self.closed_under_inverse
            and self.closed_under_subsets
            and self.closed_under_union
            and self.closed_under_composition
        )


@dataclass(frozen=True)
class BornologyBasis:
    """Finite cofinal family of bounded sets on {0, ..., size-1}."""

    size: int
    basis_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("carrier size must be >= 1")
        if not self.basis_sets:
            raise ValueError("a bornology basis must be nonempty")
        for s in self.basis_sets:
            for x in s:
                if not 0 <= x < self.size:
                    raise ValueError(f"basis element {x} outside carrier")

    @classmethod
    def trivial(cls, size: int) -> "BornologyBasis":
        return cls(size, (frozenset(range(size)),))

    def is_bounded(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        for x in s:
            if not 0 <= x < self.size:
                raise ValueError(f"index {x} outside carrier")
        return any(s <= b for b in self.basis_sets)

    def validate(self) -> BornologyReport:
        violations = []
        covered = frozenset().union(*self.basis_sets)
        for x in range(self.size):
            if x not in covered:
                violations.append(f"singleton {{{x}}} is not bounded")
        for i, a in enumerate(self.basis_sets):
            for b in self.basis_sets[i:]:
                if a & b and not self.is_bounded(a | b):
                    violations.append(
                        f"union of overlapping basis sets {sorted(a)} and "
                        f"{sorted(b)} is unbounded"
                    )
        connected = not violations and all(
            self.is_bounded(a | b)
            for i, a in enumerate(self.basis_sets)
            for b in self.basis_sets[i:]
        )
        return BornologyReport(
            valid=not violations, connected=connected, violations=tuple(violations)
        )


@dataclass(frozen=True)
class CoarseStructure:
    """Membership predicate of the coarse structure generated by a basis."""

    basis: BornologyBasis

    def contains(self, rel: Relation) -> bool:
        if rel.size != self.basis.size:
            raise CarrierMismatch("relation and bornology on different carriers")
        for x, y in rel.pairs():
            if x != y and not self.basis.is_bounded((x, y)):
                return False
        return True

    def is_bounded(self, subset: Iterable[int]) -> bool:
        """Boundedness as seen by the coarse structure: S x S is a member."""
        return self.contains(Relation.square(self.basis.size, subset))


def coarse_membership(basis: BornologyBasis, rel: Relation) -> bool:
    return CoarseStructure(basis).contains(rel)


def _require_valid(basis: BornologyBasis) -> BornologyReport:
    report = basis.validate()
    if not report.valid:
        raise ValueError(
            "bornology axioms fail: " + "; ".join(report.violations)
        )
    return report


def bounded_round_trip(basis: BornologyBasis) -> RoundTripReport:
    """Exhaust all subsets: coarse-bounded agrees with basis-bounded."""
    _require_valid(basis)
    coarse = CoarseStructure(basis)
    mismatches = []
    n = basis.size
    for code in range(1 << n):
        subset = frozenset(x for x in range(n) if (code >> x) & 1)
        if coarse.is_bounded(subset) != basis.is_bounded(subset):
            mismatches.append(subset)
    return RoundTripReport(
        passed=not mismatches,
        subsets_checked=1 << n,
        mismatches=tuple(mismatches),
    )


def coarse_axioms_suite(
    basis: BornologyBasis,
    rng: random.Random | None = None,
    samples: int = 200,
) -> CoarseAxiomsReport:
    """Check the five coarse axioms for the generated membership predicate.

    Exhaustive over all relations for carriers of size <= 3, randomized
    pairs otherwise.  Also checks that coarse connectivity (every doubleton
    bounded) matches bornology connectivity.
    """
    born_report = _require_valid(basis)
    coarse = CoarseStructure(basis)
    n = basis.size
    witnesses: list[str] = []

    exhaustive = n <= 3
    if exhaustive:
        members = [r for r in all_relations(n) if coarse.contains(r)]
        universe = list(all_relations(n))
    else:
        rng = rng or random.Random(0)
        universe = []
        for _ in range(samples):
            rows = tuple(rng.getrandbits(n) for _ in range(n))
            universe.append(Relation(n, rows))
        members = [r for r in universe if coarse.contains(r)]

    c1 = coarse.contains(Relation.diagonal(n))
    if not c1:
        witnesses.append("diagonal rejected")

    c2 = c3 = c4 = c5 = True
    for r in members:
        if not coarse.contains(r.inverse()):
            c2 = False
            witnesses.append(f"inverse escapes: {r.to_rows()}")
    for r in members:
        for s in universe if exhaustive else members:
            if s <= r and not coarse.contains(s):
                c3 = False
                witnesses.append(f"subset escapes: {s.to_rows()} <= {r.to_rows()}")
    for r in members:
        for s in members:
            if not coarse.contains(r | s):
                c4 = False
                witnesses.append(f"union escapes: {r.to_rows()} | {s.to_rows()}")
            if not coarse.contains(r.compose(s)):
                c5 = False
                witnesses.append(f"composition escapes: {r.to_rows()} o {s.to_rows()}")
    checked = len(members) * max(len(universe), 1)

    coarsely_connected = all(
        basis.is_bounded((x, y)) for x in range(n) for y in range(x + 1, n)
    ) if n > 1 else True
    equivalence = coarsely_connected == born_report.connected
    if not equivalence:
        witnesses.append(
            f"connectivity mismatch: coarse={coarsely_connected} "
            f"bornology={born_report.connected}"
        )

    return CoarseAxiomsReport(
        diagonal_member=c1,
        closed_under_inverse=c2,
        closed_under_subsets=c3,
        closed_under_union=c4,
        closed_under_composition=c5,
        coarsely_connected=coarsely_connected,
        connectivity_equivalence=equivalence,
        exhaustive=exhaustive,
        checked=checked,
        witnesses=tuple(witnesses[:10]),
    )


def random_valid_basis(rng: random.Random, size: int, max_sets: int = 4) -> BornologyBasis:
    """Random bornology basis repaired to satisfy the axioms.

    Missing singletons are added, then overlapping pairs with unbounded
    union are closed off by adding the union; both repairs preserve the
    axioms already established, and the loop terminates on a finite carrier.
    """
    sets: set[frozenset[int]] = set()
    for _ in range(rng.randint(1, max_sets)):
        members = frozenset(x for x in range(size) if rng.random() < 0.5)
        if members:
            sets.add(members)
    covered = frozenset().union(*sets) if sets else frozenset()
    for x in range(size):
        if x not in covered:
            sets.add(frozenset((x,)))
    changed = True
    while changed:
        changed = False
        listed = sorted(sets, key=lambda s: (len(s), sorted(s)))
        for i, a in enumerate(listed):
            for b in listed[i + 1 :]:
                u = a | b
                if a & b and not any(u <= c for c in sets):
                    sets.add(u)
                    changed = True
        # rescan after mutation
    basis = BornologyBasis(
        size, tuple(sorted(sets, key=lambda s: (len(s), sorted(s))))
    )
    assert basis.validate().valid
    return basis
