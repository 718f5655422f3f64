from .numeric import Number, Tolerance, exact_tolerance, format_number, parse_number, tolerance_for
from .program import CheckResult, Constraint, LinearProgram, LpSolution, LpStatus, Relation, check
from .solver import pick_float_backend, solve
