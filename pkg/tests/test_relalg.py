import pytest
from hypothesis import given, strategies as st

from ulbverify.relalg import CarrierMismatch, Relation, all_relations


# -- brute-force oracles over pair sets ----------------------------------------


def pairset(rel):
    return set(rel.pairs())


def brute_compose(size, r_pairs, s_pairs):
    return {
        (x, y)
        for x in range(size)
        for y in range(size)
        if any((x, z) in r_pairs and (z, y) in s_pairs for z in range(size))
    }


def brute_star(size, pairs):
    cur = set(pairs)
    while True:
        nxt = cur | brute_compose(size, cur, pairs)
        if nxt == cur:
            return cur
        cur = nxt


def relations(max_size=6):
    return st.integers(1, max_size).flatmap(
        lambda n: st.builds(
            Relation,
            st.just(n),
            st.tuples(*[st.integers(0, (1 << n) - 1) for _ in range(n)]),
        )
    )


def relation_pairs(max_size=6):
    return st.integers(1, max_size).flatmap(
        lambda n: st.tuples(
            *[
                st.builds(
                    Relation,
                    st.just(n),
                    st.tuples(*[st.integers(0, (1 << n) - 1) for _ in range(n)]),
                )
                for _ in range(2)
            ]
        )
    )


class TestCompose:
    def test_identity_of_composition(self):
        r = Relation.from_pairs(3, [(0, 2), (1, 1)])
        d = Relation.diagonal(3)
        assert d.compose(r) == r
        assert r.compose(d) == r

    def test_single_step_chain(self):
        # oracle: quantify the three points of the definition by hand
        r = Relation.from_pairs(3, [(0, 1)])
        s = Relation.from_pairs(3, [(1, 2)])
        assert pairset(r.compose(s)) == brute_compose(3, {(0, 1)}, {(1, 2)}) == {(0, 2)}

    def test_equivalence_relation_is_idempotent(self):
        e = Relation.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
        assert e.compose(e) == e

    @given(relation_pairs(4))
    def test_matches_brute_force(self, pair):
        r, s = pair
        assert pairset(r.compose(s)) == brute_compose(r.size, pairset(r), pairset(s))

    def test_carrier_mismatch(self):
        with pytest.raises(CarrierMismatch):
            Relation.diagonal(2).compose(Relation.diagonal(3))


class TestInverse:
    def test_single_pair(self):
        assert pairset(Relation.from_pairs(2, [(0, 1)]).inverse()) == {(1, 0)}

    def test_symmetric_fixed(self):
        r = Relation.from_pairs(3, [(0, 1), (1, 0), (2, 2)])
        assert r.inverse() == r

    @given(relation_pairs(4))
    def test_anti_distribution(self, pair):
        r, s = pair
        assert r.compose(s).inverse() == s.inverse().compose(r.inverse())


class TestImage:
    def test_diagonal_image(self):
        assert Relation.diagonal(4).image({1, 3}) == frozenset({1, 3})

    def test_empty_set(self):
        assert Relation.full(3).image(set()) == frozenset()

    def test_enumerated(self):
        r = Relation.from_pairs(3, [(0, 1), (1, 2)])
        assert r.image({0, 1}) == frozenset({1, 2})

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Relation.full(3).image({5})

    @given(relation_pairs(4), st.integers(0, 15))
    def test_image_composes(self, pair, code):
        r, s = pair
        subset = {x for x in range(r.size) if (code >> x) & 1}
        assert r.compose(s).image(subset) == s.image(r.image(subset))


class TestStar:
    def test_full(self):
        assert Relation.full(3).star() == Relation.full(3)

    def test_diagonal(self):
        assert Relation.diagonal(3).star() == Relation.diagonal(3)

    def test_block(self):
        r = Relation.diagonal(3) | Relation.from_pairs(3, [(0, 1), (1, 0)])
        expected = Relation.from_pairs(
            3, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]
        )
        assert r.star() == expected

    def test_rejects_non_reflexive(self):
        with pytest.raises(ValueError):
            Relation.from_pairs(2, [(0, 1)]).star()

    @given(relations(4))
    def test_star_properties(self, r):
        r = r | Relation.diagonal(r.size)
        s = r.star()
        assert s.is_reflexive()
        assert r <= s
        assert s.compose(s) == s
        assert pairset(s) == brute_star(r.size, pairset(r))


class TestClassify:
    def test_diagonal_all_true(self):
        p = Relation.diagonal(3).classify()
        assert p.reflexive and p.symmetric and p.idempotent and p.contains_diagonal

    def test_single_pair_not_reflexive(self):
        assert not Relation.from_pairs(2, [(0, 1)]).classify().reflexive

    def test_partition_idempotent(self):
        # compose-and-compare oracle for the two-block partition
        r = Relation.from_pairs(3, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)])
        assert pairset(r.compose(r)) == pairset(r)
        assert r.classify().idempotent


class TestLaws:
    def test_associativity_exhaustive_two_points(self):
        rels = list(all_relations(2))
        assert len(rels) == 16
        for r in rels:
            for s in rels:
                rs = r.compose(s)
                for t in rels:
                    assert rs.compose(t) == r.compose(s.compose(t))

    @given(relation_pairs(6))
    def test_monotone(self, pair):
        r, s = pair
        r_small = r & s
        assert r_small.compose(s) <= (r | s).compose(s)

    def test_literal_roundtrip(self):
        rows = ["010", "001", "000"]
        r = Relation.from_rows(rows)
        assert r.to_rows() == rows
        assert pairset(r) == {(0, 1), (1, 2)}
