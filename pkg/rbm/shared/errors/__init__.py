from .domains import (
    ClaimViolationError,
    ConstantsError,
    DomainError,
    InfeasibleSolutionError,
    InstanceParseError,
    InvalidScheduleError,
    MalformedProgramError,
    OracleBudgetExceeded,
    RelaxationInfeasibleError,
    ValidationError,
)
