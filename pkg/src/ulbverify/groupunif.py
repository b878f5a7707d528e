"""The four natural uniformities on finite group models.

Finite groups carry their identity filtration as explicit data: the
identities verified here (left/right agreement on automorphisms, the
coarse-SIN comparison of the upper and lower ball bases, conjugation
landing in lower balls) are uniformity-level algebra, valid for any
symmetric identity-containing chain.  Genuinely non-SIN phenomena live in
the infinite models, not here.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .born import BornologyBasis
from .mapspace import MapSet, big_e, compare_neighborhood_bases
from .relalg import Relation
from .ulb import CarrierMap, UlbSpace
from .unif import UniformFiltration


class UnifKind(enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class GroupModel:
    """Finite group as a Cayley table; table[x][y] = x * y."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise ValueError("empty Cayley table")
        for row in self.table:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise ValueError("Cayley table is not square over the carrier")

    @classmethod
    def build(cls, table: Sequence[Sequence[int]]) -> "GroupModel":
        g = cls(tuple(tuple(row) for row in table))
        g.validate()
        return g

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.op(e, x) == x and self.op(x, e) == x for x in range(self.order)):
                return e
        raise ValueError("no identity element")

    @property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        inv = [None] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.op(x, y) == e and self.op(y, x) == e:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        return tuple(inv)

    def validate(self) -> None:
        n = self.order
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.op(self.op(x, y), z) != self.op(x, self.op(y, z)):
                        raise ValueError(f"associativity fails at ({x}, {y}, {z})")
        _ = self.identity
        _ = self.inverse

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def set_inverse(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.inv(x) for x in subset)

    def set_product(self, a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
        return frozenset(self.op(x, y) for x in a for y in b)

    def conjugation(self, x: int) -> CarrierMap:
        """The inner automorphism y -> x y x^-1 as a carrier map."""
        xi = self.inv(x)
        return CarrierMap.from_table(
            [self.op(self.op(x, y), xi) for y in range(self.order)]
        )


# -- standard finite groups (deterministic element orderings) ------------------


def cyclic_group(n: int) -> GroupModel:
    return GroupModel.build([[(x + y) % n for y in range(n)] for x in range(n)])


def _perm_group(perms: list[tuple[int, ...]]) -> GroupModel:
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms
    ]
    return GroupModel.build(table)


def symmetric_3() -> GroupModel:
    """S3 as permutations of {0,1,2} in lexicographic order (identity first)."""
    perms = sorted(itertools.permutations(range(3)))
    return _perm_group([tuple(p) for p in perms])


def dihedral_4() -> GroupModel:
    """D4 with elements e, r, r^2, r^3, s, sr, sr^2, sr^3 (r = rotation,
    s = reflection), realized as permutations of the square's corners."""
    r = (1, 2, 3, 0)
    s = (1, 0, 3, 2)

    def mul(p, q):
        return tuple(p[q[i]] for i in range(4))

    e = (0, 1, 2, 3)
    rots = [e, r, mul(r, r), mul(r, mul(r, r))]
    elements = rots + [mul(s, p) for p in rots]
    return _perm_group(elements)


def quaternion_8() -> GroupModel:
    """Q8 with elements ordered 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    index = {n: i for i, n in enumerate(names)}

    def mul(a: str, b: str) -> str:
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        rules = {
            ("1", "1"): (1, "1"),
            ("1", "i"): (1, "i"), ("i", "1"): (1, "i"),
            ("1", "j"): (1, "j"), ("j", "1"): (1, "j"),
            ("1", "k"): (1, "k"), ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
        }
        s2, prod = rules[(a, b)]
        sign *= s2
        return prod if sign == 1 else "-" + prod

    table = [[index[mul(a, b)] for b in names] for a in names]
    return GroupModel.build(table)


def automorphisms(group: GroupModel) -> list[CarrierMap]:
    """All automorphisms, by brute-force enumeration of bijections fixing
    the identity and preserving the multiplication."""
    n = group.order
    e = group.identity
    others = [x for x in range(n) if x != e]
    found = []
    for images in itertools.permutations(others):
        table = [0] * n
        table[e] = e
        for x, y in zip(others, images):
            table[x] = y
        ok = True
        for x in range(n):
            for y in range(n):
                if table[group.op(x, y)] != group.op(table[x], table[y]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(CarrierMap.from_table(table))
    return found


def inner_automorphisms(group: GroupModel) -> list[CarrierMap]:
    """Inner automorphisms, deduplicated, in first-conjugator order."""
    seen = {}
    for x in range(group.order):
        m = group.conjugation(x)
        if m.table not in seen:
            seen[m.table] = m
    return list(seen.values())


# -- identity filtrations --------------------------------------------------------


@dataclass(frozen=True)
class IdentityFiltration:
    """Descending chain of symmetric identity neighborhoods with
    V_{i+1} V_{i+1} <= V_i."""

    subsets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if not self.subsets:
            raise ValueError("empty identity filtration")

    @classmethod
    def build(cls, group: GroupModel, subsets: Sequence[Iterable[int]]) -> "IdentityFiltration":
        chain = tuple(frozenset(s) for s in subsets)
        filt = cls(chain)
        filt.validate(group)
        return filt

    @property
    def depth(self) -> int:
        return len(self.subsets) - 1

    def validate(self, group: GroupModel) -> None:
        e = group.identity
        for i, v in enumerate(self.subsets):
            if e not in v:
                raise ValueError(f"level {i} misses the identity")
            if group.set_inverse(v) != v:
                raise ValueError(f"level {i} is not symmetric")
        for i in range(len(self.subsets) - 1):
            if not self.subsets[i + 1] <= self.subsets[i]:
                raise ValueError(f"level {i + 1} not contained in level {i}")
            sq = group.set_product(self.subsets[i + 1], self.subsets[i + 1])
            if not sq <= self.subsets[i]:
                raise ValueError(f"square law fails at index {i}")


def group_entourage(group: GroupModel, v: Iterable[int], kind: UnifKind) -> Relation:
    """Entourage of the chosen uniformity for an identity neighborhood."""
    vs = frozenset(v)
    e = group.identity
    if e not in vs:
        raise ValueError("neighborhood misses the identity")
    if group.set_inverse(vs) != vs:
        raise ValueError("neighborhood is not symmetric")
    n = group.order
    if kind is UnifKind.LEFT:
        pairs = ((x, y) for x in range(n) for y in range(n)
                 if group.op(group.inv(x), y) in vs)
    elif kind is UnifKind.RIGHT:
        pairs = ((x, y) for x in range(n) for y in range(n)
                 if group.op(x, group.inv(y)) in vs)
    elif kind is UnifKind.UPPER:
        return group_entourage(group, vs, UnifKind.LEFT) & group_entourage(
            group, vs, UnifKind.RIGHT
        )
    else:
        vyv = {y: group.set_product(group.set_product(vs, (y,)), vs) for y in range(n)}
        pairs = ((x, y) for x in range(n) for y in range(n) if x in vyv[y])
    return Relation.from_pairs(n, pairs)


def entourage_chain(
    group: GroupModel, filt: IdentityFiltration, kind: UnifKind
) -> UniformFiltration:
    chain = UniformFiltration(
        tuple(group_entourage(group, v, kind) for v in filt.subsets)
    )
    report = chain.validate()
    assert report.valid, report.violations
    return chain


# -- the agreement and comparison checks -------------------------------------------


@dataclass(frozen=True)
class LruAgreeReport:
    holds: bool
    cases: int
    witnesses: tuple[str, ...]


def lru_agree_check(
    group: GroupModel,
    auts: Sequence[CarrierMap],
    filt: IdentityFiltration,
    born_sets: Sequence[Iterable[int]],
) -> LruAgreeReport:
    """Left and right uniform-convergence conditions agree on automorphisms:
    for symmetric B, (all x in B: f(x)^-1 g(x) in V) iff
    (all x in B^-1: f(x) g(x)^-1 in V)."""
    sets = [frozenset(b) for b in born_sets]
    for b in sets:
        if group.set_inverse(b) != b:
            raise ValueError(f"basis set {sorted(b)} is not symmetric")
    witnesses = []
    cases = 0
    for f in auts:
        for g in auts:
            for b in sets:
                b_inv = group.set_inverse(b)
                for v in filt.subsets:
                    left = all(
                        group.op(group.inv(f(x)), g(x)) in v for x in b
                    )
                    right = all(
                        group.op(f(x), group.inv(g(x))) in v for x in b_inv
                    )
                    cases += 1
                    if left != right:
                        witnesses.append(
                            f"f={f.table} g={g.table} B={sorted(b)} V={sorted(v)}"
                        )
    return LruAgreeReport(
        holds=not witnesses, cases=cases, witnesses=tuple(witnesses[:10])
    )


def coarsely_sin_level(
    group: GroupModel,
    filt: IdentityFiltration,
    neighborhood: Iterable[int],
    bounded: Iterable[int],
) -> int | None:
    """Least filtration level conjugated into the neighborhood by every
    element of the bounded set; None when the chain runs out."""
    u = frozenset(neighborhood)
    if group.identity not in u:
        raise ValueError("neighborhood misses the identity")
    b = frozenset(bounded)
    for i, v in enumerate(filt.subsets):
        if all(
            group.op(group.op(x, w), group.inv(x)) in u for x in b for w in v
        ):
            return i
    return None


@dataclass(frozen=True)
class UpperLowerReport:
    verdict: str
    coarsely_sin_everywhere: bool
    proof_inclusions_hold: bool
    finest_balls_matched: bool
    equivalence_asserted: bool
    equivalence_holds: bool
    witnesses: tuple[str, ...]


def upper_lower_compare(
    group: GroupModel,
    auts: Sequence[CarrierMap],
    filt: IdentityFiltration,
    born_sets: Sequence[Iterable[int]],
) -> UpperLowerReport:
    """Compare the upper and lower biconvergence ball bases over the
    automorphism list.

    Each bounded set is symmetrized and given the identity (the balls over
    the enlarged set are smaller, so containment statements only tighten).
    When the coarse-SIN search succeeds at every level below the finest,
    the textbook inclusion (lower ball at the found level sits inside the
    upper ball one half-step up) is replayed and asserted; the full
    "equivalent" verdict is additionally asserted when the finest upper
    balls are also directly matched, which the truncation cannot otherwise
    decide.
    """
    e = group.identity
    sets = []
    for b in born_sets:
        fb = frozenset(b) | group.set_inverse(b) | {e}
        if fb not in sets:
            sets.append(fb)

    upper_space = UlbSpace.build(
        entourage_chain(group, filt, UnifKind.UPPER),
        BornologyBasis.trivial(group.order),
    )
    lower_space = UlbSpace.build(
        entourage_chain(group, filt, UnifKind.LOWER),
        BornologyBasis.trivial(group.order),
    )
    maps = tuple(auts)
    upper_ms = MapSet(upper_space, maps)
    lower_ms = MapSet(lower_space, maps)
    if not upper_ms.all_bijective:
        raise ValueError("automorphism list contains non-bijective tables")

    levels = range(len(filt.subsets))
    upper_balls = [big_e(upper_ms, b, i, bi=True) for b in sets for i in levels]
    lower_balls = [big_e(lower_ms, b, i, bi=True) for b in sets for i in levels]
    comparison = compare_neighborhood_bases(upper_ms, lower_balls, upper_balls)

    witnesses = []
    k = filt.depth
    csin_all = True
    inclusions = True
    ident = upper_ms.identity_index()
    for b in sets:
        for i in range(k):
            j = coarsely_sin_level(group, filt, filt.subsets[i + 1], b)
            if j is None:
                csin_all = False
                witnesses.append(f"coarse-SIN search fails at B={sorted(b)} i={i + 1}")
                continue
            lower_ball = big_e(lower_ms, b, j, bi=True).ball(ident)
            upper_ball = big_e(upper_ms, b, i, bi=True).ball(ident)
            if not lower_ball <= upper_ball:
                inclusions = False
                witnesses.append(
                    f"proof inclusion fails at B={sorted(b)} i={i} j={j}"
                )

    finest_matched = all(
        any(
            lb.ball(ident) <= big_e(upper_ms, b, k, bi=True).ball(ident)
            for lb in lower_balls
        )
        for b in sets
    )
    asserted = csin_all and finest_matched
    holds = (not asserted) or comparison.verdict == "equivalent"
    if not holds:
        witnesses.append(f"expected equivalence, got {comparison.verdict}")
    return UpperLowerReport(
        verdict=comparison.verdict,
        coarsely_sin_everywhere=csin_all,
        proof_inclusions_hold=inclusions,
        finest_balls_matched=finest_matched,
        equivalence_asserted=asserted,
        equivalence_holds=holds,
        witnesses=tuple(witnesses[:10]),
    )


@dataclass(frozen=True)
class ConjugationReport:
    holds: bool
    cases: int
    witnesses: tuple[str, ...]


def conjugation_continuity_check(
    group: GroupModel,
    auts: Sequence[CarrierMap],
    filt: IdentityFiltration,
    born_sets: Sequence[Iterable[int]],
) -> ConjugationReport:
    """Inner automorphisms by neighborhood elements lie in the lower balls:
    for v in V, conjugation by v moves each x of a bounded set inside VxV."""
    aut_tables = {a.table for a in auts}
    for x in range(group.order):
        if group.conjugation(x).table not in aut_tables:
            raise ValueError(f"inner automorphism of element {x} missing from list")
    witnesses = []
    cases = 0
    for v_level in filt.subsets:
        vxv = {
            x: group.set_product(group.set_product(v_level, (x,)), v_level)
            for x in range(group.order)
        }
        for b in born_sets:
            for v in v_level:
                gamma = group.conjugation(v)
                for x in frozenset(b):
                    cases += 1
                    if gamma(x) not in vxv[x]:
                        witnesses.append(
                            f"conjugation by {v} moves {x} outside VxV "
                            f"for V={sorted(v_level)}"
                        )
    return ConjugationReport(
        holds=not witnesses, cases=cases, witnesses=tuple(witnesses[:10])
    )


def bounded_in_exhaustion(
    group: GroupModel,
    elements: Iterable[int],
    exhaustion: Sequence[Iterable[int]],
) -> int | None:
    """Least 1-based index of the exhaustion prefix containing the set;
    None when the supplied prefix never does ("prefix exhausted")."""
    chain = [frozenset(v) for v in exhaustion]
    if not chain:
        raise ValueError("empty exhaustion prefix")
    for i in range(len(chain) - 1):
        if not chain[i] <= chain[i + 1]:
            raise ValueError(f"exhaustion not increasing at index {i}")
        if not group.set_product(chain[i], chain[i]) <= chain[i + 1]:
            raise ValueError(f"exhaustion law V_n V_n <= V_n+1 fails at index {i}")
    target = frozenset(elements)
    for i, v in enumerate(chain):
        if target <= v:
            return i + 1
    return None
