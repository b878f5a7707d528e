"""Uniformly locally bounded spaces and their morphism predicates.

A space couples a filtration with a bornology and records the least level
whose entourage maps every basis set into a bounded set (the certified
bounded uniform entourage).  Morphism checks carry a three-way verdict:
pass, fail, and "resolution exhausted" for statements the finite
truncation cannot decide.  An absence of a continuity modulus counts as a
genuine violation only when the finest level is idempotent (the chain may
then legitimately stabilize there); otherwise every completion refines
strictly below the finest level and the verdict stays open.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .born import BornologyBasis
from .relalg import Relation
from .unif import UniformFiltration


@dataclass(frozen=True)
class CarrierMap:
    """Total map on the carrier, with an inverse table when bijective."""

    table: tuple[int, ...]
    inverse: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise ValueError("empty map table")
        for x, y in enumerate(self.table):
            if not 0 <= y < n:
                raise ValueError(f"table value {y} at {x} outside carrier")
        if self.inverse is not None:
            if len(self.inverse) != n:
                raise ValueError("inverse table has wrong length")
            for x in range(n):
                if self.inverse[self.table[x]] != x or self.table[self.inverse[x]] != x:
                    raise ValueError("inverse table does not invert the map")

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "CarrierMap":
        """Build a map, attaching the inverse table when the map is bijective."""
        t = tuple(table)
        n = len(t)
        if sorted(t) == list(range(n)):
            inv = [0] * n
            for x, y in enumerate(t):
                inv[y] = x
            return cls(t, tuple(inv))
        return cls(t)

    @classmethod
    def identity(cls, size: int) -> "CarrierMap":
        t = tuple(range(size))
        return cls(t, t)

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def bijective(self) -> bool:
        return self.inverse is not None

    def __call__(self, x: int) -> int:
        return self.table[x]

    def apply_set(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.table[x] for x in subset)

    def compose(self, other: "CarrierMap") -> "CarrierMap":
        """self after other: x -> self(other(x))."""
        if self.size != other.size:
            raise ValueError("maps on different carriers")
        t = tuple(self.table[other.table[x]] for x in range(self.size))
        if self.bijective and other.bijective:
            inv = tuple(other.inverse[self.inverse[x]] for x in range(self.size))
            return CarrierMap(t, inv)
        return CarrierMap.from_table(t)

    def inverted(self) -> "CarrierMap":
        if self.inverse is None:
            raise ValueError("map is not bijective")
        return CarrierMap(self.inverse, self.table)

    def push_relation(self, rel: Relation) -> Relation:
        """Diagonal action: {(f(x), f(y)) : (x, y) in rel}."""
        return Relation.from_pairs(
            rel.size, ((self.table[x], self.table[y]) for x, y in rel.pairs())
        )


class AbsenceKind(enum.Enum):
    VIOLATED_AT_FINEST = "violated-at-finest-level"
    RESOLUTION_EXHAUSTED = "resolution-exhausted"


@dataclass(frozen=True)
class ModulusReport:
    """Least input level per target level, with classified absences."""

    served: tuple[tuple[int, int], ...]          # (target i, least j)
    absences: tuple[tuple[int, AbsenceKind], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.served)

    @property
    def total(self) -> bool:
        return not self.absences

    @property
    def genuinely_violated(self) -> bool:
        return any(kind is AbsenceKind.VIOLATED_AT_FINEST for _, kind in self.absences)


@dataclass(frozen=True)
class MorphismReport:
    modest: bool
    uniformly_continuous_on_bounded: bool
    resolution_exhausted: bool
    unbounded_images: tuple[frozenset[int], ...]
    violation_witnesses: tuple[str, ...]

    @property
    def is_morphism(self) -> bool:
        return self.modest and self.uniformly_continuous_on_bounded


@dataclass(frozen=True)
class StructuralReport:
    closures_bounded: bool
    closure_witnesses: tuple[frozenset[int], ...]
    component_count: int
    chain_connected: bool            # star of the certified entourage is full
    implication_holds: bool          # chain-connected => bornology connected
    e0_component_count: int


@dataclass(frozen=True)
class UlbSpace:
    filtration: UniformFiltration
    bornology: BornologyBasis
    certified_index: int | None

    def __post_init__(self) -> None:
        if self.filtration.size != self.bornology.size:
            raise ValueError("filtration and bornology on different carriers")

    @classmethod
    def build(cls, filtration: UniformFiltration, bornology: BornologyBasis) -> "UlbSpace":
        """Validate both structures and certify a bounded uniform entourage."""
        freport = filtration.validate()
        if not freport.valid:
            raise ValueError("invalid filtration: " + "; ".join(freport.violations))
        breport = bornology.validate()
        if not breport.valid:
            raise ValueError("invalid bornology: " + "; ".join(breport.violations))
        return cls(filtration, bornology, bounded_entourage_index(filtration, bornology))

    @property
    def size(self) -> int:
        return self.filtration.size

    @property
    def certified(self) -> bool:
        return self.certified_index is not None


def bounded_entourage_index(
    filtration: UniformFiltration, bornology: BornologyBasis
) -> int | None:
    """Least level whose entourage keeps every basis set bounded."""
    for i, level in enumerate(filtration.levels):
        if all(bornology.is_bounded(level.image(b)) for b in bornology.basis_sets):
            return i
    return None


def uniform_continuity_modulus(
    space: UlbSpace, f: CarrierMap, subset: Iterable[int]
) -> ModulusReport:
    """For each target level i, the least j with (f x f)(E_j on the subset)
    inside E_i.  Typically called with a bounded set."""
    pts = sorted(frozenset(subset))
    for x in pts:
        if not 0 <= x < space.size:
            raise ValueError(f"index {x} outside carrier")
    levels = space.filtration.levels
    finest_idempotent = levels[-1].is_idempotent()
    served = []
    absences = []
    for i, target in enumerate(levels):
        found = None
        for j in range(len(levels)):
            ok = True
            for x in pts:
                row = levels[j].rows[x]
                for y in pts:
                    if (row >> y) & 1 and not target.contains_pair(f(x), f(y)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found = j
                break
        if found is None:
            kind = (
                AbsenceKind.VIOLATED_AT_FINEST
                if finest_idempotent
                else AbsenceKind.RESOLUTION_EXHAUSTED
            )
            absences.append((i, kind))
        else:
            served.append((i, found))
    return ModulusReport(served=tuple(served), absences=tuple(absences))


def is_morphism(space: UlbSpace, f: CarrierMap) -> MorphismReport:
    """Modest (bounded images) + uniformly continuous on every basis set."""
    unbounded = []
    for b in space.bornology.basis_sets:
        img = f.apply_set(b)
        if not space.bornology.is_bounded(img):
            unbounded.append(img)
    violated = []
    exhausted = False
    for b in space.bornology.basis_sets:
        report = uniform_continuity_modulus(space, f, b)
        for i, kind in report.absences:
            if kind is AbsenceKind.VIOLATED_AT_FINEST:
                violated.append(f"basis set {sorted(b)} target level {i}")
            else:
                exhausted = True
    return MorphismReport(
        modest=not unbounded,
        uniformly_continuous_on_bounded=not violated,
        resolution_exhausted=exhausted,
        unbounded_images=tuple(unbounded),
        violation_witnesses=tuple(violated),
    )


def is_ulb_automorphism(space: UlbSpace, f: CarrierMap) -> bool:
    if not f.bijective:
        raise ValueError("automorphism check needs a bijective map with inverse")
    fwd = is_morphism(space, f)
    bwd = is_morphism(space, f.inverted())
    return fwd.is_morphism and bwd.is_morphism


def structural_checks(space: UlbSpace) -> StructuralReport:
    """Intertwining checks on a certified space: closures of bounded sets are
    bounded, and chain-connectedness via the certified entourage forces a
    connected bornology.  Components of the coarsest level are reported too."""
    if not space.certified:
        raise ValueError("structural checks need a certified space")
    witnesses = []
    for b in space.bornology.basis_sets:
        cl = space.filtration.closure(b)
        if not space.bornology.is_bounded(cl):
            witnesses.append(cl)

    def components(rel: Relation) -> int:
        star = rel.star()
        seen: set[int] = set()
        count = 0
        for x in range(rel.size):
            if x not in seen:
                count += 1
                seen.update(star.image((x,)))
        return count

    cert_level = space.filtration.levels[space.certified_index]
    star = cert_level.star()
    chain_connected = star == Relation.full(space.size)
    implication = (not chain_connected) or space.bornology.validate().connected
    return StructuralReport(
        closures_bounded=not witnesses,
        closure_witnesses=tuple(witnesses),
        component_count=components(cert_level),
        chain_connected=chain_connected,
        implication_holds=implication,
        e0_component_count=components(space.filtration.levels[0]),
    )
