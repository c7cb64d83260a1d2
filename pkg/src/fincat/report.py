"""Findings and reports produced by validators and parsers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceSpan:
    """A 1-based position in an input file."""

    file: str
    line: int
    column: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Finding:
    """One violation, with the kind of check that failed and its witness."""

    kind: str
    message: str
    witness: tuple[str, ...] | None = None
    span: SourceSpan | None = None

    def render(self) -> str:
        parts = []
        if self.span is not None:
            parts.append(f"{self.span}: ")
        parts.append(f"{self.kind}: {self.message}")
        if self.witness:
            parts.append(" witness (" + ", ".join(self.witness) + ")")
        return "".join(parts)


@dataclass
class Report:
    """Ordered list of findings; empty means the checked value passed.

    Finding order is deterministic: checks run in a fixed sequence and each
    scans in source/table order, so two runs produce identical reports.
    """

    subject: str
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, kind: str, message: str, witness: tuple[str, ...] | None = None,
            span: SourceSpan | None = None) -> None:
        self.findings.append(Finding(kind, message, witness, span))

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: pass"
        return f"{self.subject}: {len(self.findings)} violation(s)"

    def render(self) -> str:
        lines = [self.summary()]
        lines.extend("  " + f.render() for f in self.findings)
        return "\n".join(lines)
