from __future__ import annotations

from dataclasses import dataclass, field
from rbm.shared.enums import StrEnum
from fractions import Fraction
from typing import Optional, Sequence

from rbm.lp.numeric import Number, Tolerance, exact_tolerance
from rbm.shared.enums import SolveMode
from rbm.shared.errors import MalformedProgramError, ValidationError


class Relation(StrEnum):
    EQ = "="
    GE = ">="


class LpStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    row: tuple[tuple[int, Number], ...]
    relation: Relation
    rhs: Number
    name: str = ""


@dataclass(frozen=True)
class LinearProgram:
    """min c·x  przy  wiersze (=, >=),  x >= lower_bounds (domyślnie 0)."""

    num_vars: int
    objective: tuple[Number, ...]
    constraints: tuple[Constraint, ...]
    lower_bounds: Optional[tuple[Number, ...]] = None
    var_names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def validate(self) -> None:
        if self.num_vars < 0:
            raise MalformedProgramError("Negative variable count", details={"num_vars": self.num_vars})
        if len(self.objective) != self.num_vars:
            raise MalformedProgramError(
                "Objective length does not match variable count",
                details={"objective": len(self.objective), "num_vars": self.num_vars},
            )
        if self.lower_bounds is not None and len(self.lower_bounds) != self.num_vars:
            raise MalformedProgramError("Lower bounds length does not match variable count")
        for idx, c in enumerate(self.constraints):
            seen: set[int] = set()
            for var, _coef in c.row:
                if var < 0 or var >= self.num_vars:
                    raise MalformedProgramError(
                        f"Constraint {idx} references variable {var} outside [0, {self.num_vars})",
                        details={"constraint": idx, "variable": var},
                    )
                if var in seen:
                    raise MalformedProgramError(
                        f"Constraint {idx} repeats variable {var}",
                        details={"constraint": idx, "variable": var},
                    )
                seen.add(var)

    def lower(self, var: int) -> Number:
        if self.lower_bounds is None:
            return 0
        return self.lower_bounds[var]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    values: tuple[Number, ...]
    objective: Optional[Number]
    mode: SolveMode
    backend: str = "tableau"
    pivots: int = 0


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    index: Optional[int] = None
    name: str = ""
    lhs: Optional[Number] = None
    rhs: Optional[Number] = None
    relation: Optional[str] = None

    def describe(self) -> str:
        if self.ok:
            return "ok"
        if self.relation == "bound":
            return f"variable {self.index} below its lower bound ({self.lhs} < {self.rhs})"
        return f"constraint {self.index} ({self.name or '-'}) violated: {self.lhs} {self.relation} {self.rhs} fails"


def _infer_tolerance(values: Sequence[Number], eps: float | None) -> Tolerance:
    if eps is not None:
        return Tolerance(mode=SolveMode.FLOAT, eps=eps) if eps > 0 else exact_tolerance()
    if any(isinstance(v, float) for v in values):
        from rbm.app.config import get_settings

        return Tolerance(mode=SolveMode.FLOAT, eps=get_settings().eps_feas)
    return exact_tolerance()


def check(lp: LinearProgram, values: Sequence[Number], *, eps: float | None = None) -> CheckResult:
    """Sprawdza wartości względem LP; zwraca pierwsze naruszone ograniczenie.

    Wartości wymierne (Fraction/int) sprawdzane dokładnie, float z eps_feas.
    """
    if len(values) != lp.num_vars:
        raise ValidationError(
            f"Expected {lp.num_vars} values, got {len(values)}",
            details={"expected": lp.num_vars, "got": len(values)},
        )
    tol = _infer_tolerance(values, eps)

    for var in range(lp.num_vars):
        lb = lp.lower(var)
        if not tol.ge(values[var], lb):
            return CheckResult(ok=False, index=var, lhs=values[var], rhs=lb, relation="bound")

    for idx, c in enumerate(lp.constraints):
        lhs: Number = Fraction(0) if tol.exact else 0.0
        for var, coef in c.row:
            lhs += coef * values[var]
        if c.relation == Relation.EQ:
            good = tol.eq(lhs, c.rhs, terms=len(c.row))
        else:
            good = tol.ge(lhs, c.rhs)
        if not good:
            return CheckResult(ok=False, index=idx, name=c.name, lhs=lhs, rhs=c.rhs, relation=str(c.relation))

    return CheckResult(ok=True)
