"""Check reports, violation records, and enumeration budgets.

Every checker in the library returns an :class:`AxiomReport`.  A report is
``pass`` only when the checker ran to completion and found nothing; running
out of budget yields the distinct status ``budget-exceeded`` rather than a
silent partial pass, and checks that were skipped for lack of input data
yield ``inconclusive`` together with a recorded assumption string.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
BUDGET_EXCEEDED = "budget-exceeded"

DEFAULT_MAX_TUPLES = 5_000_000


class BudgetExceeded(Exception):
    """Raised internally when an enumeration cap is hit."""


@dataclass
class Budget:
    """Cap on the number of law instances a checker may enumerate."""

    max_tuples: int = DEFAULT_MAX_TUPLES
    used: int = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.max_tuples:
            raise BudgetExceeded(f"enumeration budget of {self.max_tuples} tuples exceeded")


@dataclass(frozen=True)
class Violation:
    """One failed law instance: the law name, the witness tuple, both sides."""

    axiom: str
    witness: tuple
    lhs: object = None
    rhs: object = None

    def describe(self, namer=None) -> str:
        name = namer if namer is not None else (lambda ref: str(ref))
        wit = ", ".join(name(w) for w in self.witness)
        if self.lhs is None and self.rhs is None:
            return f"{self.axiom} at ({wit})"
        return f"{self.axiom} at ({wit}): lhs={name(self.lhs)} rhs={name(self.rhs)}"


@dataclass
class AxiomReport:
    subject: str
    status: str = PASS
    violations: list[Violation] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def finish(self) -> "AxiomReport":
        if self.violations and self.status == PASS:
            self.status = FAIL
        return self

    def absorb(self, other: "AxiomReport", prefix: str = "") -> None:
        for v in other.violations:
            axiom = f"{prefix}{v.axiom}" if prefix else v.axiom
            self.violations.append(Violation(axiom, v.witness, v.lhs, v.rhs))
        self.assumptions.extend(a for a in other.assumptions if a not in self.assumptions)
        self.checked += other.checked
        if other.status == BUDGET_EXCEEDED:
            self.status = BUDGET_EXCEEDED
        elif other.status == INCONCLUSIVE and self.status == PASS:
            self.status = INCONCLUSIVE
        self.finish()

    def to_dict(self, namer=None) -> dict:
        name = namer if namer is not None else (lambda ref: str(ref))
        return {
            "subject": self.subject,
            "status": self.status,
            "passed": self.passed,
            "checked": self.checked,
            "assumptions": list(self.assumptions),
            "violations": [
                {
                    "axiom": v.axiom,
                    "witness": [name(w) for w in v.witness],
                    "lhs": None if v.lhs is None else name(v.lhs),
                    "rhs": None if v.rhs is None else name(v.rhs),
                }
                for v in self.violations
            ],
        }

    def summary(self, namer=None, max_lines: int = 12) -> str:
        lines = [f"[{self.status}] {self.subject} ({self.checked} instances checked)"]
        for a in self.assumptions:
            lines.append(f"  assumed: {a}")
        for v in self.violations[:max_lines]:
            lines.append("  violated: " + v.describe(namer))
        hidden = len(self.violations) - max_lines
        if hidden > 0:
            lines.append(f"  ... {hidden} more violations")
        return "\n".join(lines)


class Collector:
    """Accumulates law instances for one report, spending budget per instance."""

    def __init__(self, subject: str, budget: Budget | None = None):
        self.report = AxiomReport(subject)
        self.budget = budget if budget is not None else Budget()
        self._hit_budget = False

    def eq(self, axiom: str, witness: tuple, lhs, rhs) -> bool:
        """Record one instance of an equational law; returns True when it holds."""
        if self._hit_budget:
            return True
        try:
            self.budget.spend()
        except BudgetExceeded:
            self._hit_budget = True
            self.report.status = BUDGET_EXCEEDED
            return True
        self.report.checked += 1
        if lhs != rhs:
            self.report.violations.append(Violation(axiom, witness, lhs, rhs))
            return False
        return True

    def check(self, axiom: str, witness: tuple, ok: bool) -> bool:
        return self.eq(axiom, witness, True, bool(ok))

    def fail(self, axiom: str, witness: tuple, lhs=None, rhs=None) -> None:
        self.report.violations.append(Violation(axiom, witness, lhs, rhs))

    def assume(self, text: str) -> None:
        if text not in self.report.assumptions:
            self.report.assumptions.append(text)

    def inconclusive(self) -> None:
        if self.report.status == PASS:
            self.report.status = INCONCLUSIVE

    def done(self) -> AxiomReport:
        return self.report.finish()


def combine(subject: str, parts: list[AxiomReport]) -> AxiomReport:
    out = AxiomReport(subject)
    for p in parts:
        out.absorb(p, prefix=f"{p.subject}: " if p.subject else "")
    return out.finish()
