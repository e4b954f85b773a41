"""Verification reports and their tab-separated text form.

Layout::

    report<TAB>title
    check_id<TAB>epsilon<TAB>point<TAB>status<TAB>diff
    <one line per record>
    summary<TAB>total=N<TAB>failed=F<TAB>status=pass|fail
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import format_poly

__all__ = ["Record", "VerificationReport", "format_point"]

_HEADER = "check_id\tepsilon\tpoint\tstatus\tdiff"


def format_point(point: Iterable[tuple[str, object]]) -> str:
    return ",".join(f"{k}={v}" for k, v in point) or "-"


def _parse_point(text: str) -> tuple[tuple[str, str], ...]:
    if text == "-":
        return ()
    out = []
    for part in text.split(","):
        k, _, v = part.partition("=")
        out.append((k, v))
    return tuple(out)


@dataclass(frozen=True)
class Record:
    check_id: str
    epsilon: Optional[int]
    point: tuple[tuple[str, object], ...]
    passed: bool
    diff: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_line(self) -> str:
        eps = "-" if self.epsilon is None else str(self.epsilon)
        return "\t".join([self.check_id, eps, format_point(self.point), self.status, self.diff])


@dataclass
class VerificationReport:
    title: str
    records: list[Record] = field(default_factory=list)

    def add(self, check_id: str, epsilon, point, diff=None, *, passed: Optional[bool] = None) -> Record:
        """Append a record.  ``diff`` is a polynomial (pass iff zero) or a message string."""
        if passed is None:
            passed = diff is None or (not isinstance(diff, str) and diff.is_zero())
        if passed:
            text = ""
        elif diff is None:
            text = ""
        elif isinstance(diff, str):
            text = diff
        else:
            text = format_poly(diff)
        rec = Record(check_id, None if epsilon is None else int(epsilon), tuple(point), passed, text)
        self.records.append(rec)
        return rec

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]

    def __len__(self):
        return len(self.records)

    def summary(self) -> str:
        return f"{self.title}: {len(self.records)} checks, {len(self.failures)} failed"

    def to_text(self) -> str:
        lines = [f"report\t{self.title}", _HEADER]
        lines += [r.to_line() for r in self.records]
        lines.append(
            f"summary\ttotal={len(self.records)}\tfailed={len(self.failures)}\tstatus={'pass' if self.passed else 'fail'}"
        )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VerificationReport":
        lines = text.splitlines()
        if len(lines) < 3 or not lines[0].startswith("report\t") or lines[1] != _HEADER:
            raise ValueError("not a verification report")
        rep = cls(lines[0].split("\t", 1)[1])
        for ln in lines[2:]:
            if ln.startswith("summary\t"):
                break
            check_id, eps, point, status, diff = ln.split("\t")
            rep.records.append(
                Record(check_id, None if eps == "-" else int(eps), _parse_point(point), status == "pass", diff)
            )
        return rep
