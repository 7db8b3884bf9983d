"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class FormatError(ValueError):
    """A table has the wrong shape or references an index out of range.

    Raised before any axiom is checked; distinct from an axiom violation,
    which is reported rather than raised.
    """


class EquivarianceError(ValueError):
    """A functor or map that must commute with the group action does not."""

    def __init__(self, message: str, where: tuple = ()):
        super().__init__(message)
        self.where = where


class SizeLimitError(ValueError):
    """An input exceeds a configured enumeration cap."""


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple
    detail: str = ""

    def __str__(self) -> str:
        loc = ", ".join(str(w) for w in self.where)
        text = f"{self.rule} at ({loc})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class ValidationReport:
    """Every axiom violation found while checking a value.

    An empty report means the value is valid.
    """

    subject: str = ""
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, where: tuple, detail: str = "") -> None:
        self.violations.append(Violation(rule, tuple(where), detail))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            rule = f"{prefix}{v.rule}" if prefix else v.rule
            self.violations.append(Violation(rule, v.where, v.detail))

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def raise_if_invalid(self) -> None:
        if self.violations:
            shown = "; ".join(str(v) for v in self.violations[:5])
            more = len(self.violations) - 5
            if more > 0:
                shown += f"; ... {more} more"
            raise AxiomError(f"{self.subject or 'value'} is invalid: {shown}", self)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject or 'value'}: valid"
        lines = [f"{self.subject or 'value'}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


class AxiomError(ValueError):
    def __init__(self, message: str, report: ValidationReport):
        super().__init__(message)
        self.report = report
