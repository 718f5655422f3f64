from .builder import RelaxationLp, RowKind, build_lp, solve_relaxation
from .feasibility import FeasibilityReport, FeasibilityViolation, check_feasibility
from .io import format_packing, format_solution, parse_solution
from .msm import MsmEntry, MsmPacking, PackingReport, decompose_msm, verify_packing
from .solution import FractionalSolution, IntegralEncoding, WeightView, schedule_to_solution


def weights(sol: FractionalSolution) -> WeightView:
    return WeightView(sol)
