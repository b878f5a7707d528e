"""Named verification suites over a loaded model bundle.

Each suite yields Records deterministically: exhaustive parts ignore the
seed, randomized parts draw from a seeded generator and the budget caps
the instance count.
"""

from __future__ import annotations

import random
from typing import Callable

from . import groupunif, mapspace, measurealg, ulb
from .born import bounded_round_trip, coarse_axioms_suite, random_valid_basis
from .relalg import Relation
from .reports import Record, Verdict
from .spacefile import ModelBundle


class UnknownSuite(ValueError):
    pass


def _random_relation(rng: random.Random, size: int) -> Relation:
    return Relation(size, tuple(rng.getrandbits(size) for _ in range(size)))


def _passfail(suite: str, instance: str, ok: bool, witness: str) -> Record:
    if ok:
        return Record(suite, instance, Verdict.PASS)
    return Record(suite, instance, Verdict.FAIL, witness=witness or "unspecified")


# -- individual suites -----------------------------------------------------------


def suite_relalg_laws(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    rng = random.Random(seed)
    n = bundle.carrier
    records = []
    for idx in range(budget):
        r = _random_relation(rng, n)
        s = _random_relation(rng, n)
        t = _random_relation(rng, n)
        ok = (
            r.compose(s).compose(t) == r.compose(s.compose(t))
            and r.compose(s).inverse() == s.inverse().compose(r.inverse())
            and Relation.diagonal(n).compose(r) == r
            and r.compose(Relation.diagonal(n)) == r
        )
        records.append(
            _passfail(
                "relalg-laws",
                f"triple-{idx}",
                ok,
                f"laws fail on rows {r.to_rows()}|{s.to_rows()}|{t.to_rows()}",
            )
        )
    return records


def suite_filtration_laws(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    filt = bundle.space.filtration
    report = filt.validate()
    records = [
        _passfail(
            "filtration-laws",
            "axioms",
            report.valid,
            ";".join(report.violations),
        )
    ]
    rng = random.Random(seed)
    n = filt.size
    for idx in range(min(budget, 50)):
        subset = frozenset(x for x in range(n) if rng.random() < 0.5)
        cl = filt.closure(subset)
        ok = subset <= cl and filt.closure(cl) == cl
        records.append(
            _passfail(
                "filtration-laws",
                f"closure-{idx}",
                ok,
                f"closure misbehaves on {sorted(subset)}",
            )
        )
    return records


def suite_dictionary_roundtrip(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    rng = random.Random(seed)
    n = min(bundle.carrier, 5)
    records = []
    for idx in range(budget):
        basis = random_valid_basis(rng, rng.randint(2, n) if n > 2 else n)
        rt = bounded_round_trip(basis)
        records.append(
            _passfail(
                "dictionary-roundtrip",
                f"basis-{idx}",
                rt.passed,
                f"mismatch on subsets {[sorted(s) for s in rt.mismatches]}",
            )
        )
    return records


def suite_coarse_axioms(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    basis = bundle.space.bornology
    report = coarse_axioms_suite(basis, random.Random(seed), samples=min(budget, 200))
    records = [
        _passfail("coarse-axioms", "axioms", report.all_axioms, ";".join(report.witnesses)),
        _passfail(
            "coarse-axioms",
            "connectivity-equivalence",
            report.connectivity_equivalence,
            ";".join(report.witnesses),
        ),
    ]
    return records


def _require_mapset(bundle: ModelBundle) -> mapspace.MapSet:
    if bundle.maps is None:
        raise UnknownSuite("this suite needs a maps section in the space file")
    return bundle.maps


def suite_lemma(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    ms = _require_mapset(bundle)
    report = mapspace.lemma_suite(ms)
    return [
        _passfail("lemma-suite", name, flag, ";".join(report.witnesses))
        for name, flag in (
            ("composition-inclusion", report.composition_inclusion),
            ("idempotent-lift", report.idempotent_lift),
            ("conjugation-inclusion", report.conjugation_inclusion),
            ("hausdorff-separation", report.hausdorff_separation),
        )
    ]


def suite_composition_continuity(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    ms = _require_mapset(bundle)
    space = bundle.space
    if not space.certified:
        raise UnknownSuite("composition-continuity needs a certified space")
    k = space.filtration.depth
    records = []
    count = 0
    for gi, g in enumerate(ms.maps):
        for hi, h in enumerate(ms.maps):
            for b in space.bornology.basis_sets:
                for i in range(k + 1):
                    if count >= budget:
                        return records
                    count += 1
                    instance = f"g{gi}-h{hi}-B{''.join(map(str, sorted(b)))}-i{i}"
                    witness = mapspace.composition_continuity_witness(ms, g, h, b, i)
                    if witness is None:
                        records.append(
                            Record(
                                "composition-continuity",
                                instance,
                                Verdict.RESOLUTION_EXHAUSTED,
                                witness=f"no level below depth {k} serves target {i}",
                            )
                        )
                    else:
                        records.append(
                            Record(
                                "composition-continuity",
                                instance,
                                Verdict.PASS,
                                extras=(
                                    ("level", str(witness.level)),
                                    (
                                        "fattened",
                                        "".join(map(str, sorted(witness.fattened_set))),
                                    ),
                                    ("pairs", str(witness.pairs_checked)),
                                ),
                            )
                        )
    return records


def suite_ulb_structure(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    space = bundle.space
    records = []
    if not space.certified:
        records.append(
            Record(
                "ulb-structure",
                "certification",
                Verdict.RESOLUTION_EXHAUSTED,
                witness="no level keeps every basis set bounded",
            )
        )
        return records
    records.append(
        Record(
            "ulb-structure",
            "certification",
            Verdict.PASS,
            extras=(("certified-index", str(space.certified_index)),),
        )
    )
    report = ulb.structural_checks(space)
    records.append(
        _passfail(
            "ulb-structure",
            "closures-bounded",
            report.closures_bounded,
            f"unbounded closures {[sorted(s) for s in report.closure_witnesses]}",
        )
    )
    records.append(
        _passfail(
            "ulb-structure",
            "connectivity-implication",
            report.implication_holds,
            "chain-connected space with disconnected bornology",
        )
    )
    if bundle.maps is not None:
        for idx, f in enumerate(bundle.maps.maps):
            rep = ulb.is_morphism(space, f)
            verdict = (
                Verdict.PASS
                if rep.is_morphism
                else (
                    Verdict.RESOLUTION_EXHAUSTED
                    if rep.resolution_exhausted and rep.modest
                    else Verdict.FAIL
                )
            )
            records.append(
                Record(
                    "ulb-structure",
                    f"morphism-{idx}",
                    verdict,
                    witness=(
                        ""
                        if verdict is Verdict.PASS
                        else ";".join(rep.violation_witnesses) or "not modest"
                    ),
                    extras=(("modest", str(rep.modest).lower()),),
                )
            )
    return records


def _require_group(bundle: ModelBundle):
    if bundle.group is None:
        raise UnknownSuite("this suite needs a group section in the space file")
    return bundle.group


def suite_lru_agree(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    g = _require_group(bundle)
    report = groupunif.lru_agree_check(
        g.model, g.automorphisms, g.filtration, g.born_sets
    )
    return [
        _passfail(
            "lru-agree",
            f"cases-{report.cases}",
            report.holds,
            ";".join(report.witnesses),
        )
    ]


def suite_conjugation_continuity(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    g = _require_group(bundle)
    report = groupunif.conjugation_continuity_check(
        g.model, g.automorphisms, g.filtration, g.born_sets
    )
    return [
        _passfail(
            "conjugation-continuity",
            f"cases-{report.cases}",
            report.holds,
            ";".join(report.witnesses),
        )
    ]


def suite_upper_lower(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    g = _require_group(bundle)
    report = groupunif.upper_lower_compare(
        g.model, g.automorphisms, g.filtration, g.born_sets
    )
    records = [
        Record(
            "upper-lower",
            "ball-comparison",
            Verdict.PASS,
            extras=(("comparison", report.verdict),),
        ),
        _passfail(
            "upper-lower",
            "proof-inclusions",
            report.proof_inclusions_hold,
            ";".join(report.witnesses),
        ),
    ]
    if report.equivalence_asserted:
        records.append(
            _passfail(
                "upper-lower",
                "coarse-sin-equivalence",
                report.equivalence_holds,
                ";".join(report.witnesses),
            )
        )
    else:
        records.append(
            Record(
                "upper-lower",
                "coarse-sin-equivalence",
                Verdict.RESOLUTION_EXHAUSTED,
                witness="finest-level balls not matched at this truncation",
            )
        )
    return records


def suite_measures(bundle: ModelBundle, seed: int, budget: int) -> list[Record]:
    if bundle.measures is None:
        raise UnknownSuite("this suite needs a measures section in the space file")
    fam = bundle.measures
    records = []
    sep = measurealg.separation_check(fam)
    records.append(
        _passfail(
            "measure-suite",
            "separation-hausdorff",
            sep.hausdorff_equivalence,
            f"separates={sep.separates} but diagonal test disagrees",
        )
    )
    za = measurealg.zero_one_non_arch(fam)
    records.append(
        _passfail(
            "measure-suite",
            "gap-non-archimedean",
            za.non_archimedean,
            f"gap {za.gap} level not idempotent",
        )
    )
    rng = random.Random(seed)
    n = fam.ground_size
    null_mask = 0
    for i in range(n):
        if all(m.weights[i] == 0 for m in fam.measures):
            null_mask |= 1 << i
    for idx in range(min(budget, 20)):
        base = rng.randrange(1 << n)
        cycle = [base]
        for _ in range(rng.randint(1, 3)):
            cycle.append(base ^ (rng.randrange(1 << n) & null_mask))
        rep = measurealg.cauchy_limit((), tuple(cycle), fam)
        records.append(
            _passfail(
                "measure-suite",
                f"cauchy-limit-{idx}",
                rep.cauchy and rep.distances_vanish,
                rep.divergence_witness or "distances do not vanish",
            )
        )
    return records


SUITES: dict[str, Callable[[ModelBundle, int, int], list[Record]]] = {
    "relalg-laws": suite_relalg_laws,
    "filtration-laws": suite_filtration_laws,
    "dictionary-roundtrip": suite_dictionary_roundtrip,
    "coarse-axioms": suite_coarse_axioms,
    "lemma-suite": suite_lemma,
    "composition-continuity": suite_composition_continuity,
    "ulb-structure": suite_ulb_structure,
    "lru-agree": suite_lru_agree,
    "conjugation-continuity": suite_conjugation_continuity,
    "upper-lower": suite_upper_lower,
    "measure-suite": suite_measures,
}


def run_suite(
    bundle: ModelBundle, name: str, seed: int = 0, budget: int = 200
) -> list[Record]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(
            f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}"
        ) from None
    return fn(bundle, seed, budget)
