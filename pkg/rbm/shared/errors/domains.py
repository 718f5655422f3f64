from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class DomainError(Exception):
    """Bazowy błąd domenowy (instancje, LP, zaokrąglanie, wyrocznia).

    CLI mapuje go na kod wyjścia; biblioteka nigdy nie robi sys.exit sama.
    """

    message: str
    code: str = "domain_error"
    details: dict[str, Any] | None = None

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationError(DomainError):
    code: str = "validation_error"


@dataclass(frozen=True)
class InstanceParseError(ValidationError):
    code: str = "instance_parse_error"


@dataclass(frozen=True)
class InvalidScheduleError(ValidationError):
    code: str = "invalid_schedule"


@dataclass(frozen=True)
class MalformedProgramError(ValidationError):
    code: str = "malformed_program"


@dataclass(frozen=True)
class ConstantsError(ValidationError):
    code: str = "invalid_constants"


@dataclass(frozen=True)
class InfeasibleSolutionError(ValidationError):
    code: str = "infeasible_solution"


@dataclass(frozen=True)
class RelaxationInfeasibleError(DomainError):
    code: str = "relaxation_infeasible"


@dataclass(frozen=True)
class OracleBudgetExceeded(DomainError):
    code: str = "oracle_budget_exceeded"


@dataclass(frozen=True)
class ClaimViolationError(DomainError):
    code: str = "claim_violation"
