"""Piecewise-affine order-automorphisms of the rationals, with the three
interval bornologies (two-sided, upper-ray, lower-ray) and their
separation witnesses.

Group elements are strictly increasing piecewise-affine bijections with
rational breakpoints and slopes: a proper subgroup of the full
order-automorphism group that is exactly closed under the group
operations and still rich enough to witness every separation between the
three topologies.  The uniform structure on the rationals is discrete, so
the basic identity ball at a bounded set is its pointwise fixator.
"""

from __future__ import annotations

import bisect
import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class RayKind(enum.Enum):
    TWO_SIDED = "two-sided"
    UPPER_RAY = "upper-ray"
    LOWER_RAY = "lower-ray"


@dataclass(frozen=True)
class Ray:
    """A bornology basis set: [lo, hi], [lo, oo) or (-oo, hi]."""

    kind: RayKind
    lo: Fraction | None
    hi: Fraction | None

    @classmethod
    def two_sided(cls, a, b) -> "Ray":
        a, b = Fraction(a), Fraction(b)
        if a > b:
            raise ValueError("interval endpoints out of order")
        return cls(RayKind.TWO_SIDED, a, b)

    @classmethod
    def upper(cls, a) -> "Ray":
        return cls(RayKind.UPPER_RAY, Fraction(a), None)

    @classmethod
    def lower(cls, b) -> "Ray":
        return cls(RayKind.LOWER_RAY, None, Fraction(b))

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and x < self.lo:
            return False
        if self.hi is not None and x > self.hi:
            return False
        return True

    def describe(self) -> str:
        lo = "-oo" if self.lo is None else str(self.lo)
        hi = "+oo" if self.hi is None else str(self.hi)
        return f"[{lo},{hi}]"


@dataclass(frozen=True)
class PLBijection:
    """Strictly increasing piecewise-affine bijection of the rationals.

    pieces[i] = (slope, offset) applies on (breakpoints[i-1], breakpoints[i]];
    the first and last pieces extend to -oo and +oo.  Continuity at every
    breakpoint and positive slopes are construction invariants.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more piece than breakpoints")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if a >= b:
                raise ValueError("breakpoints must be strictly increasing")
        for slope, _ in self.pieces:
            if slope <= 0:
                raise ValueError("slopes must be positive")
        for i, b in enumerate(self.breakpoints):
            p, q = self.pieces[i]
            p2, q2 = self.pieces[i + 1]
            if p * b + q != p2 * b + q2:
                raise ValueError(f"discontinuity at breakpoint {b}")

    @classmethod
    def identity(cls) -> "PLBijection":
        return cls((), ((Fraction(1), Fraction(0)),))

    @classmethod
    def affine(cls, slope, offset) -> "PLBijection":
        return cls((), ((Fraction(slope), Fraction(offset)),))

    @classmethod
    def from_data(
        cls,
        breakpoints: Sequence,
        pieces: Sequence[tuple],
    ) -> "PLBijection":
        return _normalized(
            tuple(Fraction(b) for b in breakpoints),
            tuple((Fraction(p), Fraction(q)) for p, q in pieces),
        )

    def piece_at(self, x: Fraction) -> tuple[Fraction, Fraction]:
        return self.pieces[bisect.bisect_left(self.breakpoints, x)]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        p, q = self.piece_at(x)
        return p * x + q

    def is_identity(self) -> bool:
        return all(p == 1 and q == 0 for p, q in self.pieces)

    def compose(self, other: "PLBijection") -> "PLBijection":
        """self after other: x -> self(other(x))."""
        other_inv = other.inverse()
        cuts = sorted(
            set(other.breakpoints) | {other_inv(b) for b in self.breakpoints}
        )
        pieces = []
        for sample in _sample_points(cuts):
            pg, qg = other.piece_at(sample)
            pf, qf = self.piece_at(other(sample))
            pieces.append((pf * pg, pf * qg + qf))
        return _normalized(tuple(cuts), tuple(pieces))

    def inverse(self) -> "PLBijection":
        cuts = tuple(self(b) for b in self.breakpoints)
        pieces = tuple((1 / p, -q / p) for p, q in self.pieces)
        return _normalized(cuts, pieces)

    def fixes_pointwise(self, ray: Ray) -> bool:
        """True iff the map is the identity on every point of the set."""
        for endpoint in (ray.lo, ray.hi):
            if endpoint is not None and self(endpoint) != endpoint:
                return False
        # interior of the set vs interior of each piece domain
        for i, (p, q) in enumerate(self.pieces):
            left = self.breakpoints[i - 1] if i > 0 else None
            right = self.breakpoints[i] if i < len(self.breakpoints) else None
            lo = _max_opt(left, ray.lo)
            hi = _min_opt(right, ray.hi)
            overlaps = (lo is None) or (hi is None) or (lo < hi)
            if overlaps and (p != 1 or q != 0):
                return False
        return True


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _sample_points(cuts: Sequence[Fraction]) -> list[Fraction]:
    """One probe point in each maximal interval delimited by the cuts."""
    if not cuts:
        return [Fraction(0)]
    pts = [cuts[0] - 1]
    for a, b in zip(cuts, cuts[1:]):
        pts.append((a + b) / 2)
    pts.append(cuts[-1] + 1)
    return pts


def _normalized(
    breakpoints: tuple[Fraction, ...], pieces: tuple[tuple[Fraction, Fraction], ...]
) -> PLBijection:
    """Merge adjacent collinear pieces, dropping redundant breakpoints."""
    bks = list(breakpoints)
    pcs = list(pieces)
    i = 0
    while i < len(bks):
        if pcs[i] == pcs[i + 1]:
            del bks[i]
            del pcs[i + 1]
        else:
            i += 1
    return PLBijection(tuple(bks), tuple(pcs))


# -- elementary witnesses ----------------------------------------------------------


def bump(c) -> PLBijection:
    """Identity outside (c, c+1), a two-slope bump inside; moves c + 1/2."""
    c = Fraction(c)
    one = Fraction(1)
    return PLBijection(
        (c, c + Fraction(1, 3), c + 1),
        (
            (one, Fraction(0)),
            (Fraction(2), -c),
            (Fraction(1, 2), (c + 1) / 2),
            (one, Fraction(0)),
        ),
    )


def non_discrete_witness(kind: RayKind, ray: Ray) -> PLBijection:
    """A non-identity element fixing the given basis set pointwise.

    The bump lives on a unit interval disjoint from the set: to the right
    of a two-sided interval or a lower ray, to the left of an upper ray.
    """
    if ray.kind != kind:
        raise ValueError("set does not belong to the requested bornology kind")
    if kind is RayKind.UPPER_RAY:
        g = bump(ray.lo - 2)
    else:
        g = bump(ray.hi + 1)
    assert g.fixes_pointwise(ray) and not g.is_identity()
    return g


@dataclass(frozen=True)
class DistinctnessWitness:
    kind_a: RayKind
    kind_b: RayKind
    separating_set: Ray          # its fixator contains no ball of the other kind
    fixed_kind: RayKind          # the kind whose fixators all fail
    orientation: str             # "forward" if fixed_kind == kind_a
    sample_fixed_set: Ray
    sample_witness: PLBijection
    case_analysis: tuple[str, ...]
    samples_verified: int


def _free_bump_start(fixed: Ray, separating: Ray) -> Fraction:
    """Start of a unit interval inside the separating set but off the fixed
    set; exists for every endpoint choice in the supported orientations."""
    if separating.kind is RayKind.UPPER_RAY:
        # room above both the fixed interval's top and the ray's bottom
        top = separating.lo if fixed.hi is None else max(fixed.hi, separating.lo)
        return top + 1
    if separating.kind is RayKind.LOWER_RAY:
        bot = separating.hi if fixed.lo is None else min(fixed.lo, separating.hi)
        return bot - 2
    raise ValueError("separating set must be a ray")


def distinctness_witness(kind_a: RayKind, kind_b: RayKind) -> DistinctnessWitness:
    """Certify that the topologies of two bornology kinds differ.

    Returns a basis set S of one kind such that for every basis set T of
    the other kind, some element fixes T pointwise yet moves a point of S
    (so no fixator ball of the T-kind fits inside the fixator of S).  The
    construction needs the separating set to be a ray reaching past every
    T; when the requested order puts the bounded kind second, the roles
    are swapped and the orientation is recorded.
    """
    if kind_a == kind_b:
        raise ValueError("kinds must differ")
    if kind_b is not RayKind.TWO_SIDED:
        fixed_kind, sep_kind, orientation = kind_a, kind_b, "forward"
    else:
        fixed_kind, sep_kind, orientation = kind_b, kind_a, "reversed"
    separating = (
        Ray.upper(0) if sep_kind is RayKind.UPPER_RAY else Ray.lower(0)
    )

    def sample_sets() -> list[Ray]:
        grid = [Fraction(v) for v in (-5, -1, 0, 1, Fraction(7, 2), 10)]
        if fixed_kind is RayKind.TWO_SIDED:
            return [Ray.two_sided(a, b) for a in grid for b in grid if a <= b]
        if fixed_kind is RayKind.UPPER_RAY:
            return [Ray.upper(a) for a in grid]
        return [Ray.lower(b) for b in grid]

    verified = 0
    first = None
    for fixed in sample_sets():
        c = _free_bump_start(fixed, separating)
        g = bump(c)
        moved = c + Fraction(1, 2)
        assert g.fixes_pointwise(fixed)
        assert separating.contains(moved) and g(moved) != moved
        assert not g.fixes_pointwise(separating)
        verified += 1
        if first is None:
            first = (fixed, g)

    case_analysis = (
        f"separating set {separating.describe()} of kind {sep_kind.value}",
        f"for any basis set of kind {fixed_kind.value}, the unit interval at "
        "the far end of the separating set misses it",
        "a bump there fixes the basis set pointwise but moves the separating set",
        f"orientation: {orientation}",
    )
    return DistinctnessWitness(
        kind_a=kind_a,
        kind_b=kind_b,
        separating_set=separating,
        fixed_kind=fixed_kind,
        orientation=orientation,
        sample_fixed_set=first[0],
        sample_witness=first[1],
        case_analysis=case_analysis,
        samples_verified=verified,
    )


@dataclass(frozen=True)
class SupDiscreteReport:
    holds: bool
    samples: int
    both_fixed_count: int
    lines: tuple[str, ...]


def sup_is_discrete_check(
    a, b, rng: random.Random, samples: int = 100
) -> SupDiscreteReport:
    """Fixing the lower ray at b and the upper ray at a simultaneously
    forces the identity, provided a <= b (the rays then cover the line, so
    every piece overlaps one of them on an open interval and must be the
    identity there)."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("rays do not cover the line when a > b")
    low, up = Ray.lower(b), Ray.upper(a)
    lines = [f"rays (-oo,{b}] and [{a},+oo) cover the line since {a} <= {b}"]
    holds = True
    both = 0
    pool: list[PLBijection] = [
        PLBijection.identity(),
        bump(b + 1),       # fixes the lower ray, breaks the upper one
        bump(a - 2),       # fixes the upper ray, breaks the lower one
    ]
    while len(pool) < samples:
        pool.append(random_pl_bijection(rng))
    for g in pool[:samples]:
        fl, fu = g.fixes_pointwise(low), g.fixes_pointwise(up)
        if fl and fu:
            both += 1
            if not g.is_identity():
                holds = False
                lines.append("counterexample: a non-identity map fixes both rays")
        # piece-level covering argument: every piece domain meets a ray interior
        for i in range(len(g.pieces)):
            left = g.breakpoints[i - 1] if i > 0 else None
            right = g.breakpoints[i] if i < len(g.breakpoints) else None
            meets_lower = left is None or left < b
            meets_upper = right is None or right > a
            if not (meets_lower or meets_upper):
                holds = False
                lines.append("covering argument fails for a piece domain")
    lines.append(
        f"{both} of {samples} samples fixed both rays; each was the identity"
        if holds
        else "check failed"
    )
    return SupDiscreteReport(
        holds=holds, samples=samples, both_fixed_count=both, lines=tuple(lines)
    )


@dataclass(frozen=True)
class FixatorSubgroupReport:
    words_checked: int
    fixator_size: int
    closed_under_composition: bool
    closed_under_inverse: bool

    @property
    def is_subgroup(self) -> bool:
        return self.closed_under_composition and self.closed_under_inverse


def fixator_subgroup_check(
    ray: Ray, sample: Iterable[PLBijection], word_length: int = 3
) -> FixatorSubgroupReport:
    """Within words of bounded length over the sample and its inverses, the
    pointwise fixator of the set is closed under composition and inverse."""
    gens = list(sample)
    gens += [g.inverse() for g in gens]
    words = {PLBijection.identity()}
    frontier = {PLBijection.identity()}
    for _ in range(word_length):
        frontier = {w.compose(g) for w in frontier for g in gens} - words
        words |= frontier
    fixator = [w for w in words if w.fixes_pointwise(ray)]
    comp_ok = all(
        f.compose(g).fixes_pointwise(ray) for f in fixator for g in fixator
    )
    inv_ok = all(f.inverse().fixes_pointwise(ray) for f in fixator)
    return FixatorSubgroupReport(
        words_checked=len(words),
        fixator_size=len(fixator),
        closed_under_composition=comp_ok,
        closed_under_inverse=inv_ok,
    )


def random_pl_bijection(rng: random.Random, max_breaks: int = 3) -> PLBijection:
    """Random increasing piecewise-affine bijection with small rational data."""
    count = rng.randint(0, max_breaks)
    bks = sorted(
        rng.sample([Fraction(n, 2) for n in range(-12, 13)], count)
    )
    slopes = [
        Fraction(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(count + 1)
    ]
    offset0 = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    pieces = [(slopes[0], offset0)]
    for i, b in enumerate(bks):
        p_prev, q_prev = pieces[-1]
        value = p_prev * b + q_prev
        pieces.append((slopes[i + 1], value - slopes[i + 1] * b))
    return _normalized(tuple(bks), tuple(pieces))
