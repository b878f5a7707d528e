"""Space files: JSON descriptions of finite model bundles.

Sections: carrier (required), filtration or metric (one required),
bornology (required), and optional maps, group and measures sections.
Unknown sections are rejected.  All rationals are written as "p/q" or
integer strings.  Loading validates every structure and certifies the
bounded entourage; the first violation is reported with its section.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import groupunif, unif
from .born import BornologyBasis
from .groupunif import GroupModel, IdentityFiltration
from .mapspace import MapSet
from .measurealg import Measure, MeasureFamily
from .relalg import Relation
from .ulb import CarrierMap, UlbSpace

KNOWN_SECTIONS = {
    "carrier",
    "filtration",
    "metric",
    "bornology",
    "maps",
    "group",
    "measures",
}


class SpaceFileError(ValueError):
    pass


@dataclass(frozen=True)
class GroupBundle:
    model: GroupModel
    filtration: IdentityFiltration
    automorphisms: tuple[CarrierMap, ...]
    born_sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ModelBundle:
    path: str
    carrier: int
    space: UlbSpace
    maps: MapSet | None
    group: GroupBundle | None
    measures: MeasureFamily | None
    connected_expected: bool | None

    @property
    def sections(self) -> tuple[str, ...]:
        out = ["carrier", "filtration", "bornology"]
        if self.maps is not None:
            out.append("maps")
        if self.group is not None:
            out.append("group")
        if self.measures is not None:
            out.append("measures")
        return tuple(out)


def _fraction(value, where: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpaceFileError(f"{where}: bad rational {value!r}: {exc}") from None


def load_space(path: str | Path) -> ModelBundle:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise SpaceFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpaceFileError(
            f"{path}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise SpaceFileError(f"{path}: top level must be an object")
    unknown = set(raw) - KNOWN_SECTIONS
    if unknown:
        raise SpaceFileError(f"{path}: unknown sections {sorted(unknown)}")

    if "carrier" not in raw:
        raise SpaceFileError(f"{path}: missing carrier section")
    carrier = raw["carrier"]
    if not isinstance(carrier, int) or carrier < 1:
        raise SpaceFileError(f"{path}: carrier must be a positive integer")

    if ("filtration" in raw) == ("metric" in raw):
        raise SpaceFileError(
            f"{path}: exactly one of the filtration and metric sections is required"
        )
    try:
        if "filtration" in raw:
            levels = tuple(
                Relation.from_rows(rows) for rows in raw["filtration"]
            )
            filtration = unif.UniformFiltration(levels)
            if filtration.size != carrier:
                raise ValueError("level size differs from the carrier")
            report = filtration.validate()
            if not report.valid:
                raise ValueError(report.violations[0])
        else:
            block = raw["metric"]
            dist = [
                [_fraction(v, "metric.dist") for v in row] for row in block["dist"]
            ]
            if len(dist) != carrier:
                raise ValueError("distance matrix size differs from the carrier")
            scales = [_fraction(s, "metric.scales") for s in block["scales"]]
            filtration = unif.from_metric(dist, scales)
    except (ValueError, KeyError, TypeError) as exc:
        raise SpaceFileError(f"{path}: filtration section: {exc}") from None

    if "bornology" not in raw:
        raise SpaceFileError(f"{path}: missing bornology section")
    try:
        block = raw["bornology"]
        basis = BornologyBasis(
            carrier, tuple(frozenset(s) for s in block["basis"])
        )
        breport = basis.validate()
        if not breport.valid:
            raise ValueError(breport.violations[0])
        connected_expected = block.get("connected_expected")
        if connected_expected is not None and breport.connected != connected_expected:
            raise ValueError(
                f"connected={breport.connected} but the file expects "
                f"{connected_expected}"
            )
    except (ValueError, KeyError, TypeError) as exc:
        raise SpaceFileError(f"{path}: bornology section: {exc}") from None

    space = UlbSpace.build(filtration, basis)

    mapset = None
    if "maps" in raw:
        try:
            maps = tuple(CarrierMap.from_table(t) for t in raw["maps"])
            mapset = MapSet(space, maps)
        except (ValueError, TypeError) as exc:
            raise SpaceFileError(f"{path}: maps section: {exc}") from None

    group = None
    if "group" in raw:
        try:
            block = raw["group"]
            model = GroupModel.build(block["table"])
            if model.order != carrier:
                raise ValueError("group order differs from the carrier")
            gfilt = IdentityFiltration.build(model, block["filtration"])
            auts_spec = block.get("automorphisms", "all")
            if auts_spec == "all":
                auts = tuple(groupunif.automorphisms(model))
            elif auts_spec == "inner":
                auts = tuple(groupunif.inner_automorphisms(model))
            else:
                auts = tuple(CarrierMap.from_table(t) for t in auts_spec)
                for a in auts:
                    if not a.bijective:
                        raise ValueError("automorphism table is not bijective")
                    for x in range(model.order):
                        for y in range(model.order):
                            if a(model.op(x, y)) != model.op(a(x), a(y)):
                                raise ValueError(
                                    "automorphism table is not multiplicative"
                                )
            born_sets = tuple(
                frozenset(s) for s in block.get("bounded_sets", [list(range(carrier))])
            )
            group = GroupBundle(model, gfilt, auts, born_sets)
        except (ValueError, KeyError, TypeError) as exc:
            raise SpaceFileError(f"{path}: group section: {exc}") from None

    measures = None
    if "measures" in raw:
        try:
            measures = MeasureFamily(
                tuple(
                    Measure(tuple(_fraction(w, "measures") for w in row))
                    for row in raw["measures"]
                )
            )
        except (ValueError, TypeError) as exc:
            raise SpaceFileError(f"{path}: measures section: {exc}") from None

    return ModelBundle(
        path=str(path),
        carrier=carrier,
        space=space,
        maps=mapset,
        group=group,
        measures=measures,
        connected_expected=(
            raw["bornology"].get("connected_expected") if "bornology" in raw else None
        ),
    )
