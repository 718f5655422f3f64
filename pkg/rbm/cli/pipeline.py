from __future__ import annotations

import logging
import time
import uuid
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from rbm.app.config import Settings, get_settings
from rbm.cli.schemas import InstanceDigestOut, RunReport, StageTimingsOut
from rbm.instances.models import Instance
from rbm.instances.services import schedule_cost, validate_schedule
from rbm.lp.numeric import Tolerance, format_number, tolerance_for
from rbm.oracle.exact import optimal_cost
from rbm.oracle.greedy import greedy_largest_block
from rbm.relaxation.builder import solve_relaxation
from rbm.relaxation.msm import MsmPacking, decompose_msm, verify_packing
from rbm.relaxation.solution import FractionalSolution
from rbm.rounding.claims import ClaimsReport, check_claims
from rbm.rounding.constants import load_preset
from rbm.rounding.service import RoundingResult, round_solution
from rbm.shared.enums import ConstantsPreset, FloatBackend, SolveMode
from rbm.shared.errors import InvalidScheduleError
from rbm.shared.run_context import run_stage, set_run_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineOptions:
    mode: SolveMode
    preset: ConstantsPreset
    oracle: bool = False
    assert_claims: Optional[bool] = None  # None -> domyślnie tylko w trybie rational
    timings: bool = True
    backend: Optional[FloatBackend] = None
    oracle_budget: Optional[int] = None

    @property
    def claims_enabled(self) -> bool:
        if self.assert_claims is None:
            return self.mode == SolveMode.RATIONAL
        return self.assert_claims


@dataclass
class PipelineResult:
    report: RunReport
    solution: FractionalSolution
    packing: MsmPacking
    rounding: RoundingResult
    claims: Optional[ClaimsReport] = None
    timings: dict[str, float] = field(default_factory=dict)


@contextmanager
def _timed(stage: str, timings: dict[str, float]) -> Iterator[None]:
    t0 = time.perf_counter()
    with run_stage(stage):
        try:
            yield
        finally:
            timings[stage] = timings.get(stage, 0.0) + (time.perf_counter() - t0)


def run_pipeline(inst: Instance, options: PipelineOptions, settings: Optional[Settings] = None) -> PipelineResult:
    """relaksacja -> rozkład MSM -> zaokrąglanie -> twierdzenia -> (wyrocznia) -> raport.

    Naruszenia twierdzeń trafiają do raportu; o kodzie wyjścia decyduje wywołujący.
    """
    settings = settings or get_settings()
    set_run_context(run_id=uuid.uuid4().hex[:12], instance_digest=inst.digest())
    timings: dict[str, float] = {}
    consts = load_preset(options.preset)
    tol_feas = tolerance_for(options.mode, settings.eps_feas)
    tol_cmp: Tolerance = tolerance_for(options.mode, settings.eps_cmp)
    problems: list[str] = []

    with _timed("relaxation", timings):
        sol = solve_relaxation(inst, options.mode, backend=options.backend, settings=settings)
        packing = decompose_msm(sol, tol=tol_feas)

    with _timed("rounding", timings):
        result = round_solution(sol, consts, tol=tol_cmp, packing=packing)

    claims: Optional[ClaimsReport] = None
    with _timed("checks", timings):
        sched = validate_schedule(inst, result.schedule)
        if not sched.ok:
            raise InvalidScheduleError(
                f"Rounding produced an invalid schedule: {sched.first.message}",
                details={"violations": [v.message for v in sched.violations]},
            )
        rounded = schedule_cost(inst, result.schedule)
        greedy = schedule_cost(inst, greedy_largest_block(inst))
        if options.claims_enabled:
            pack_report = verify_packing(sol, packing, tol=tol_feas)
            problems.extend(f"packing: {p}" for p in pack_report.problems)
            claims = check_claims(sol, result, consts, tol_cmp)
            problems.extend(claims.messages())

    oracle: Optional[int] = None
    if options.oracle:
        with _timed("oracle", timings):
            oracle = optimal_cost(inst, options.oracle_budget or settings.oracle_budget).cost
        if options.claims_enabled:
            if not tol_feas.le(sol.z, oracle):
                problems.append(f"sandwich: z_lp {format_number(sol.z)} > oracle {oracle}")
            if oracle > rounded:
                problems.append(f"sandwich: oracle {oracle} > rounded {rounded}")

    bound = consts.cost_bound(sol.z)
    exact = options.mode == SolveMode.RATIONAL
    report = RunReport(
        instance=InstanceDigestOut(k=inst.k, n=inst.n, colors=inst.num_colors, seed=inst.seed, sha256=inst.digest()),
        mode=options.mode.value,
        preset=options.preset.value,
        z_lp=float(sol.z),
        z_lp_exact=format_number(sol.z) if exact else None,
        distinct_colors=inst.num_colors,
        z_lp_at_least_colors=bool(tol_feas.ge(sol.z, inst.num_colors)),
        rounded_cost=rounded,
        greedy_cost=greedy,
        oracle_cost=oracle,
        ratio=float(Fraction(rounded) / sol.z) if exact else rounded / float(sol.z),
        bound=float(bound),
        bound_exact=format_number(bound) if exact else None,
        case_counts=result.trace.case_counts(),
        charge_total=float(result.trace.charge_total()),
        phase_count=len(result.trace.phases),
        msm_entries=len(packing),
        claims_checked=options.claims_enabled,
        claims=problems,
        timings=StageTimingsOut(
            relaxation_s=round(timings.get("relaxation", 0.0), 6) if options.timings else 0.0,
            rounding_s=round(timings.get("rounding", 0.0), 6) if options.timings else 0.0,
            oracle_s=round(timings.get("oracle", 0.0), 6) if options.timings else 0.0,
            checks_s=round(timings.get("checks", 0.0), 6) if options.timings else 0.0,
        ),
    )
    logger.info(
        "pipeline done: z_lp=%s rounded=%d greedy=%d oracle=%s violations=%d",
        report.z_lp_exact or report.z_lp,
        rounded,
        greedy,
        oracle,
        len(problems),
    )
    return PipelineResult(report=report, solution=sol, packing=packing, rounding=result, claims=claims, timings=timings)
