"""Line-oriented key=value suite records.

One record per checked instance, one verdict vocabulary across all
suites, with "resolution-exhausted" as a first-class outcome distinct
from pass and fail.  Records render deterministically so equal runs give
byte-identical streams.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    RESOLUTION_EXHAUSTED = "resolution-exhausted"
    PRECONDITION_UNMET = "precondition-unmet"


@dataclass(frozen=True)
class Record:
    suite: str
    instance: str
    verdict: Verdict
    witness: str = ""
    extras: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.verdict in (Verdict.FAIL, Verdict.RESOLUTION_EXHAUSTED):
            if not self.witness:
                raise ValueError(
                    f"{self.verdict.value} records must carry a witness"
                )

    def render(self) -> str:
        parts = [
            f"suite={_clean(self.suite)}",
            f"instance={_clean(self.instance)}",
            f"verdict={self.verdict.value}",
        ]
        if self.witness:
            parts.append(f"witness={_clean(self.witness)}")
        for key, value in self.extras:
            parts.append(f"{_clean(key)}={_clean(value)}")
        return " ".join(parts)


def _clean(text: str) -> str:
    return str(text).replace(" ", "_").replace("\n", ";")


def render_stream(records: list[Record]) -> str:
    return "".join(r.render() + "\n" for r in records)


def exit_code(records: list[Record]) -> int:
    """0 all pass, 1 any fail, 3 only resolution-exhausted blemishes."""
    verdicts = {r.verdict for r in records}
    if Verdict.FAIL in verdicts or Verdict.PRECONDITION_UNMET in verdicts:
        return 1
    if Verdict.RESOLUTION_EXHAUSTED in verdicts:
        return 3
    return 0
