"""Command-line driver.

Commands: validate a space file, run a named suite over it, compare the
upper/lower ball bases of a group bundle, or run one of the three model
demos.  Exit codes: 0 all pass, 1 any fail, 2 usage or parse error,
3 only resolution-exhausted outcomes.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import groupunif, measurealg, qorder, symz
from .qorder import Ray, RayKind
from .reports import Record, Verdict, exit_code, render_stream
from .spacefile import SpaceFileError, load_space
from .suites import SUITES, UnknownSuite, run_suite
from .unif import TRUNCATION_NOTE

USAGE_ERROR = 2


def _emit(records: list[Record], fmt: str) -> int:
    stream = render_stream(records)
    sys.stdout.write(stream)
    code = exit_code(records)
    if fmt == "text":
        totals = {}
        for r in records:
            totals[r.verdict.value] = totals.get(r.verdict.value, 0) + 1
        summary = " ".join(f"{k}={v}" for k, v in sorted(totals.items()))
        sys.stdout.write(f"# summary: {summary} exit={code}\n")
    return code


def cmd_validate(args) -> int:
    try:
        bundle = load_space(args.file)
    except SpaceFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    extras = [
        ("carrier", str(bundle.carrier)),
        ("sections", ",".join(bundle.sections)),
        (
            "certified-index",
            str(bundle.space.certified_index)
            if bundle.space.certified
            else "none",
        ),
        ("note", TRUNCATION_NOTE),
    ]
    record = Record("validate", bundle.path, Verdict.PASS, extras=tuple(extras))
    return _emit([record], args.format)


def cmd_check(args) -> int:
    try:
        bundle = load_space(args.file)
    except SpaceFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        records = run_suite(bundle, args.suite, seed=args.seed, budget=args.budget)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return _emit(records, args.format)


def cmd_compare(args) -> int:
    try:
        bundle = load_space(args.file)
    except SpaceFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    names = [b.strip() for b in args.bases.split(",")]
    if sorted(names) != ["lower", "upper"] or bundle.group is None:
        print(
            "error: compare currently supports --bases upper,lower on group bundles",
            file=sys.stderr,
        )
        return USAGE_ERROR
    g = bundle.group
    report = groupunif.upper_lower_compare(
        g.model, g.automorphisms, g.filtration, g.born_sets
    )
    record = Record(
        "compare",
        "upper-vs-lower",
        Verdict.PASS if report.equivalence_holds else Verdict.FAIL,
        witness="" if report.equivalence_holds else ";".join(report.witnesses),
        extras=(
            ("comparison", report.verdict),
            ("coarsely-sin", str(report.coarsely_sin_everywhere).lower()),
            ("proof-inclusions", str(report.proof_inclusions_hold).lower()),
        ),
    )
    return _emit([record], args.format)


# -- demos ------------------------------------------------------------------------


def demo_qorder() -> list[str]:
    lines = ["order-automorphisms of the rationals: three interval bornologies"]
    sample_sets = {
        RayKind.TWO_SIDED: Ray.two_sided(0, 1),
        RayKind.UPPER_RAY: Ray.upper(0),
        RayKind.LOWER_RAY: Ray.lower(0),
    }
    for kind, ray in sample_sets.items():
        g = qorder.non_discrete_witness(kind, ray)
        moved = next(
            b + Fraction(1, 2) for b in g.breakpoints if g(b + Fraction(1, 2)) != b + Fraction(1, 2)
        )
        lines.append(
            f"non-discrete [{kind.value}]: a bump fixing {ray.describe()} "
            f"pointwise moves {moved} to {g(moved)}"
        )
    kinds = [RayKind.TWO_SIDED, RayKind.UPPER_RAY, RayKind.LOWER_RAY]
    for a in kinds:
        for b in kinds:
            if a == b:
                continue
            w = qorder.distinctness_witness(a, b)
            lines.append(
                f"distinct [{a.value} vs {b.value}]: fixators of every "
                f"{w.fixed_kind.value} set miss the fixator of "
                f"{w.separating_set.describe()} ({w.samples_verified} endpoint "
                f"samples, orientation {w.orientation})"
            )
    rng = random.Random(11)
    sup = qorder.sup_is_discrete_check(-1, 1, rng, samples=100)
    lines.append(
        "supremum of the two ray topologies is discrete: "
        + ("verified" if sup.holds else "FAILED")
        + f" on {sup.samples} samples ({sup.both_fixed_count} fixed both rays)"
    )
    return lines


def demo_sigma() -> list[str]:
    lines = ["measure-algebra model on a 3-point ground set"]
    n = 3
    diracs = measurealg.MeasureFamily(
        tuple(measurealg.Measure.dirac(n, i) for i in range(n))
    )
    counting = measurealg.MeasureFamily((measurealg.Measure.counting(n),))
    zero = measurealg.MeasureFamily((measurealg.Measure.zero(n),))
    for name, fam in (("diracs", diracs), ("counting", counting), ("zero", zero)):
        sep = measurealg.separation_check(fam)
        za = measurealg.zero_one_non_arch(fam)
        lines.append(
            f"{name}: separates={sep.separates} "
            f"hausdorff-equivalence={sep.hausdorff_equivalence} "
            f"gap={za.gap} non-archimedean={za.non_archimedean}"
        )
    rep = measurealg.cauchy_limit((), (0b001, 0b011), diracs)
    lines.append(
        f"cycle {{0}},{{0,1}} under diracs: cauchy={rep.cauchy} "
        f"(positive distance detected: {rep.divergence_witness or 'none'})"
    )
    dirac0 = measurealg.MeasureFamily((measurealg.Measure.dirac(n, 0),))
    rep = measurealg.cauchy_limit((), (0b001, 0b011), dirac0)
    lines.append(
        f"cycle {{0}},{{0,1}} under the single dirac at 0: cauchy={rep.cauchy} "
        f"limit-bitmask={rep.limit:b} distances-vanish={rep.distances_vanish}"
    )
    rep = measurealg.cauchy_limit((), (0b001, 0b010), counting)
    lines.append(
        f"cycle {{0}},{{1}} under counting: cauchy={rep.cauchy} "
        f"({rep.divergence_witness})"
    )
    for k in (1, 2, 3):
        ar = measurealg.atom_recovery(k)
        lines.append(
            f"atom recovery n={k}: {ar.automorphism_count} order-automorphisms "
            f"(expected {ar.expected_count}), ground-induced={ar.all_induced_by_ground_bijections}"
        )
    return lines


def demo_symz(samples: int = 1000, seed: int = 7) -> list[str]:
    lines = ["affine-at-infinity permutations of the integers"]
    rng = random.Random(seed)
    detected = 0
    identity_cases = 0
    agree = 0
    keyset = (-2, 0, 5)
    for _ in range(samples):
        x = symz.random_affine_perm(rng, max_window=5)
        cert = symz.upper_discreteness_certificate(x, 5)
        if x.is_identity():
            identity_cases += 1
            assert cert.forced_identity
        else:
            assert not cert.forced_identity
            detected += 1
        low = symz.lower_pointwise_certificate(x, keyset)
        if low.matches_pointwise:
            agree += 1
    lines.append(
        f"upper topology: {detected} non-identity samples all detected, "
        f"{identity_cases} identity samples forced (of {samples})"
    )
    lines.append(
        f"lower topology: ball membership matched pointwise fixing of "
        f"{keyset} on {agree}/{samples} samples"
    )
    rho = symz.AffinePerm.shift(1)
    cert = symz.upper_discreteness_certificate(rho, 5)
    lines.append(
        f"the unit shift is detected by probe {cert.detected_by!r} "
        f"after {cert.tests_run} tests"
    )
    return lines


DEMOS = {
    "qorder-separations": demo_qorder,
    "sigma-suite": demo_sigma,
    "symz-examples": demo_symz,
}


def cmd_demo(args) -> int:
    fn = DEMOS[args.name]
    for line in fn():
        print(line)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ulbverify",
        description=(
            "Verify uniform-structure, bornology and automorphism-topology "
            "identities on finite models"
        ),
    )
    parser.add_argument(
        "--format", choices=("text", "records"), default="text",
        help="records = bare key=value lines; text adds a summary comment",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="load and validate a space file")
    p_validate.add_argument("file")
    p_validate.set_defaults(func=cmd_validate)

    p_check = sub.add_parser("check", help="run a verification suite")
    p_check.add_argument("file")
    p_check.add_argument("--suite", required=True, choices=sorted(SUITES))
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--budget", type=int, default=200)
    p_check.set_defaults(func=cmd_check)

    p_compare = sub.add_parser("compare", help="compare neighborhood bases")
    p_compare.add_argument("file")
    p_compare.add_argument("--bases", required=True, help="e.g. upper,lower")
    p_compare.set_defaults(func=cmd_compare)

    p_demo = sub.add_parser("demo", help="run a built-in model demo")
    p_demo.add_argument("name", choices=sorted(DEMOS))
    p_demo.set_defaults(func=cmd_demo)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
