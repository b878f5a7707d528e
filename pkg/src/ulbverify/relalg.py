"""Exact boolean relation algebra on small finite carriers.

Relations are immutable values; every operation returns a fresh relation.
Rows are stored as int bitmasks (row x = bitmask of {y : (x, y) in R}), so
composition, closure and subset tests are word-parallel bit operations.
Carriers here never exceed a few dozen points, so dense rows beat pair sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class CarrierMismatch(ValueError):
    """Operands live on carriers of different sizes."""


@dataclass(frozen=True)
class RelationProfile:
    reflexive: bool
    symmetric: bool
    idempotent: bool
    contains_diagonal: bool


@dataclass(frozen=True)
class Relation:
    """Binary relation on the carrier {0, ..., size-1}."""

    size: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"carrier size must be >= 1, got {self.size}")
        if len(self.rows) != self.size:
            raise ValueError(
                f"expected {self.size} rows, got {len(self.rows)}"
            )
        mask = (1 << self.size) - 1
        for x, row in enumerate(self.rows):
            if row & ~mask:
                raise ValueError(f"row {x} has bits outside the carrier")

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, size: int) -> "Relation":
        return cls(size, (0,) * size)

    @classmethod
    def diagonal(cls, size: int) -> "Relation":
        return cls(size, tuple(1 << x for x in range(size)))

    @classmethod
    def full(cls, size: int) -> "Relation":
        mask = (1 << size) - 1
        return cls(size, (mask,) * size)

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * size
        for x, y in pairs:
            if not (0 <= x < size and 0 <= y < size):
                raise ValueError(f"pair ({x}, {y}) outside carrier of size {size}")
            rows[x] |= 1 << y
        return cls(size, tuple(rows))

    @classmethod
    def from_rows(cls, row_strings: Sequence[str]) -> "Relation":
        """Parse the literal syntax: one '0'/'1' string per row."""
        size = len(row_strings)
        rows = []
        for x, s in enumerate(row_strings):
            if len(s) != size or set(s) - {"0", "1"}:
                raise ValueError(f"row {x} is not a {size}-character 0/1 string: {s!r}")
            rows.append(sum(1 << y for y, c in enumerate(s) if c == "1"))
        return cls(size, tuple(rows))

    @classmethod
    def square(cls, size: int, subset: Iterable[int]) -> "Relation":
        """The relation S x S for a subset S of the carrier."""
        bits = 0
        for x in subset:
            if not 0 <= x < size:
                raise ValueError(f"index {x} outside carrier of size {size}")
            bits |= 1 << x
        return cls(size, tuple(bits if (bits >> x) & 1 else 0 for x in range(size)))

    # -- views -------------------------------------------------------------

    def pairs(self) -> Iterator[tuple[int, int]]:
        for x, row in enumerate(self.rows):
            y = 0
            while row:
                if row & 1:
                    yield (x, y)
                row >>= 1
                y += 1

    def to_rows(self) -> list[str]:
        return [
            "".join("1" if (row >> y) & 1 else "0" for y in range(self.size))
            for row in self.rows
        ]

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def contains_pair(self, x: int, y: int) -> bool:
        return bool((self.rows[x] >> y) & 1)

    # -- lattice operations --------------------------------------------------

    def _same_carrier(self, other: "Relation") -> None:
        if self.size != other.size:
            raise CarrierMismatch(
                f"carrier sizes differ: {self.size} vs {other.size}"
            )

    def __or__(self, other: "Relation") -> "Relation":
        self._same_carrier(other)
        return Relation(self.size, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "Relation") -> "Relation":
        self._same_carrier(other)
        return Relation(self.size, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "Relation") -> bool:
        self._same_carrier(other)
        return all(a | b == b for a, b in zip(self.rows, other.rows))

    # -- the five core operations -------------------------------------------

    def compose(self, other: "Relation") -> "Relation":
        """{(x, y) : exists z with (x, z) in self and (z, y) in other}."""
        self._same_carrier(other)
        rows = []
        for row in self.rows:
            acc = 0
            z = 0
            r = row
            while r:
                if r & 1:
                    acc |= other.rows[z]
                r >>= 1
                z += 1
            rows.append(acc)
        return Relation(self.size, tuple(rows))

    def inverse(self) -> "Relation":
        rows = [0] * self.size
        for x, row in enumerate(self.rows):
            y = 0
            while row:
                if row & 1:
                    rows[y] |= 1 << x
                row >>= 1
                y += 1
        return Relation(self.size, tuple(rows))

    def image(self, subset: Iterable[int]) -> frozenset[int]:
        """Union of rows over the subset."""
        acc = 0
        for x in subset:
            if not 0 <= x < self.size:
                raise ValueError(f"index {x} outside carrier of size {self.size}")
            acc |= self.rows[x]
        return frozenset(y for y in range(self.size) if (acc >> y) & 1)

    def star(self) -> "Relation":
        """Least fixpoint of S -> S | S.compose(self); the union of all
        n-fold compositions. Requires a reflexive input."""
        if not self.is_reflexive():
            raise ValueError("star is only defined for reflexive relations")
        cur = self
        while True:
            nxt = cur | cur.compose(self)
            if nxt == cur:
                return cur
            cur = nxt

    # -- structure tests ------------------------------------------------------

    def is_reflexive(self) -> bool:
        return all((row >> x) & 1 for x, row in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return self == self.inverse()

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def classify(self) -> RelationProfile:
        return RelationProfile(
            reflexive=self.is_reflexive(),
            symmetric=self.is_symmetric(),
            idempotent=self.is_idempotent(),
            contains_diagonal=Relation.diagonal(self.size) <= self,
        )


def all_relations(size: int) -> Iterator[Relation]:
    """Every relation on a carrier of the given size (2^(size^2) of them)."""
    cells = size * size
    mask = (1 << size) - 1
    for code in range(1 << cells):
        rows = tuple((code >> (size * x)) & mask for x in range(size))
        yield Relation(size, rows)
