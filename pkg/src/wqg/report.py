"""Check reports: one item per axiom, with first-failure witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import FieldSpec


@dataclass(frozen=True)
class Witness:
    """Basis indices instantiating a failed law, plus the nonzero discrepancy.

    The discrepancy is a sparse vector: pairs of (basis multi-index, scalar
    string), sorted by index.
    """

    indices: tuple[int, ...]
    discrepancy: tuple[tuple[tuple[int, ...], str], ...]

    def __str__(self):
        terms = ", ".join(f"{'x'.join(map(str, k))}: {v}" for k, v in self.discrepancy)
        return f"at {self.indices}: ({terms})"


@dataclass(frozen=True)
class CheckItem:
    axiom: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()

    @property
    def witness(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class CheckReport:
    items: tuple[CheckItem, ...]

    @property
    def overall(self) -> bool:
        return all(it.passed for it in self.items)

    def item(self, axiom: str) -> CheckItem:
        for it in self.items:
            if it.axiom == axiom:
                return it
        raise KeyError(axiom)

    def failed(self) -> tuple[CheckItem, ...]:
        return tuple(it for it in self.items if not it.passed)

    def merged(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        extra = tuple(
            CheckItem(prefix + it.axiom, it.passed, it.witnesses) for it in other.items
        )
        return CheckReport(self.items + extra)

    def summary(self) -> str:
        lines = []
        for it in self.items:
            status = "pass" if it.passed else "FAIL"
            line = f"{status}  {it.axiom}"
            if not it.passed and it.witness is not None:
                line += f"  [{it.witness}]"
            lines.append(line)
        lines.append(("pass" if self.overall else "FAIL") + "  (overall)")
        return "\n".join(lines)


class ReportBuilder:
    """Collects per-axiom failure witnesses, lexicographically first by default."""

    def __init__(self, field: FieldSpec, all_witnesses: bool = False):
        self.field = field
        self.all_witnesses = all_witnesses
        self.items: list[CheckItem] = []

    def _witness(self, indices, diff) -> Witness:
        entries = []
        for k in sorted(diff):
            v = diff[k]
            if v:
                key = k if isinstance(k, tuple) else (k,)
                entries.append((key, self.field.format(v)))
        return Witness(tuple(indices), tuple(entries))

    def check(self, axiom: str, failures) -> bool:
        """Consume an iterator of (indices, sparse-diff) failure instances."""
        collected = []
        for indices, diff in failures:
            collected.append(self._witness(indices, diff))
            if not self.all_witnesses:
                break
        passed = not collected
        self.items.append(CheckItem(axiom, passed, tuple(collected)))
        return passed

    def add(self, axiom: str, passed: bool, witnesses: tuple[Witness, ...] = ()):
        self.items.append(CheckItem(axiom, passed, witnesses))

    def extend(self, report: CheckReport, prefix: str = ""):
        for it in report.items:
            self.items.append(CheckItem(prefix + it.axiom, it.passed, it.witnesses))

    def build(self) -> CheckReport:
        return CheckReport(tuple(self.items))
