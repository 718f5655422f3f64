from __future__ import annotations

import math
from typing import Optional

from pydantic import BaseModel, Field

from rbm.instances.services import run_count, validate_schedule
from rbm.lp.numeric import Tolerance, format_number
from rbm.relaxation.solution import FractionalSolution
from rbm.rounding.constants import Constants
from rbm.rounding.service import RoundingResult
from rbm.rounding.trace import LIMITED_CASES, StepRecord
from rbm.shared.enums import StepCase
from rbm.shared.errors import ClaimViolationError


class ClaimViolation(BaseModel):
    claim: str
    phase: Optional[int] = None
    slot: Optional[int] = None
    message: str


class ClaimsReport(BaseModel):
    checked: list[str] = Field(default_factory=list)
    violations: list[ClaimViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> list[str]:
        return [f"{v.claim}: {v.message}" for v in self.violations]


CASE4_FOLLOW_UPS = (
    StepCase.CASE_1,
    StepCase.CASE_2,
    StepCase.CASE_3_SCAN,
    StepCase.CASE_3_FALLBACK,
    StepCase.CASE_3_WINDOW,
)


def case4_follow_up_violations(steps: list[StepRecord]) -> list[StepRecord]:
    """Kroki fazy, które po przypadku 4 (z pominięciem kroków przypadku 0) nie są przypadkami 1-3."""
    out: list[StepRecord] = []
    for pos, st in enumerate(steps):
        if st.case != StepCase.CASE_4:
            continue
        nxt = next((s for s in steps[pos + 1 :] if s.case != StepCase.CASE_0), None)
        if nxt is not None and nxt.case not in CASE4_FOLLOW_UPS:
            out.append(nxt)
    return out


def check_claims(
    sol: FractionalSolution,
    result: RoundingResult,
    consts: Constants,
    tol: Tolerance,
) -> ClaimsReport:
    """Sprawdza na śladzie wszystkie twierdzenia o przebiegu zaokrąglania."""
    inst = sol.inst
    trace = result.trace
    delta1, delta2, delta3, _gamma = consts.in_mode(tol.mode)
    report = ClaimsReport()

    def fail(claim: str, message: str, phase: int | None = None, slot: int | None = None) -> None:
        report.violations.append(ClaimViolation(claim=claim, phase=phase, slot=slot, message=message))

    report.checked.append("schedule_valid")
    sched = validate_schedule(inst, result.schedule)
    if not sched.ok:
        fail("schedule_valid", sched.first.message)

    report.checked.append("step_tiling")
    expected = inst.first_slot
    for st in trace.steps:
        if st.slot_from != expected or st.slot_to - st.slot_from + 1 != len(st.items):
            fail("step_tiling", f"step {st.case.value} covers {st.slot_from}..{st.slot_to}, expected start {expected}", st.phase)
            break
        expected = st.slot_to + 1
    else:
        if expected != inst.last_slot + 1:
            fail("step_tiling", f"steps end at {expected - 1}, schedule ends at {inst.last_slot}")

    report.checked.append("case4_once_per_phase")
    report.checked.append("case4_followed_by_case_1_to_3")
    report.checked.append("phase_reaches_target")
    report.checked.append("limited_steps_per_phase")
    for ph in trace.phases:
        if ph.cases.count(StepCase.CASE_4.value) > 1:
            fail("case4_once_per_phase", f"case 4 ran {ph.cases.count('4')} times", ph.number)
        for st in case4_follow_up_violations(trace.steps_in_phase(ph.number)):
            msg = f"step {st.case.value} at slot {st.slot_from} follows case 4"
            fail("case4_followed_by_case_1_to_3", msg, ph.number, st.slot_from)
        if not ph.reached:
            fail("phase_reaches_target", f"phase ended at {ph.end_slot} < t_q={ph.target}", ph.number)
        limited = sum(1 for st in trace.steps_in_phase(ph.number) if st.case in LIMITED_CASES)
        if limited > 4:
            fail("limited_steps_per_phase", f"{limited} limited steps", ph.number)

    for a in trace.anomalies:
        if a.kind in ("case2_short", "case3_short"):
            fail("phase_reaches_target", a.message, a.phase, a.slot)
        elif a.kind == "no_progress":
            fail("procedure_progress", a.message, a.phase, a.slot)

    report.checked.append("scan_removes_required")
    report.checked.append("scan_trigger_sums")
    report.checked.append("uncharged_volume")
    ratio = consts.uncharged_ratio if tol.exact else float(consts.uncharged_ratio)
    for sc in trace.scans:
        if sc.removed_held < sc.required:
            fail("scan_removes_required", f"removed {sc.removed_held} < required {sc.required}", sc.phase, sc.slot)
        for trig in sc.triggers:
            if not tol.ge(trig, delta1):
                fail("scan_trigger_sums", f"trigger {format_number(trig)} < delta1", sc.phase, sc.slot)
        if not tol.ge(sc.uncharged, ratio * sc.delta):
            fail(
                "uncharged_volume",
                f"uncharged {format_number(sc.uncharged)} < {format_number(ratio * sc.delta)}",
                sc.phase,
                sc.slot,
            )

    report.checked.append("long_sequence_weight")
    for c4 in trace.case4:
        if not tol.ge(c4.long_weight, 1 - delta3):
            fail("long_sequence_weight", f"weight {format_number(c4.long_weight)} < 1 - delta3", c4.phase, c4.slot)

    z = sol.z
    report.checked.append("charge_total")
    total = trace.charge_total(z - z)
    if not tol.le(total, 2 * z):
        fail("charge_total", f"charged {format_number(total)} > 2z = {format_number(2 * z)}")

    report.checked.append("case0_steps")
    case0 = sum(1 for st in trace.steps if st.case == StepCase.CASE_0)
    if not tol.le(case0 * delta1, z):
        fail("case0_steps", f"{case0} case-0 steps exceed z/delta1")

    report.checked.append("phase_count")
    bound = math.ceil(z / delta3 - tol.eps) if not tol.exact else math.ceil(z / delta3)
    if len(trace.phases) > max(bound, 1):
        fail("phase_count", f"{len(trace.phases)} phases > ceil(z/delta3) = {bound}")

    report.checked.append("cost_bound")
    if sched.ok:
        cost = run_count(inst, result.schedule)
        limit = consts.cost_bound(z)
        if not tol.le(cost, limit):
            fail("cost_bound", f"cost {cost} > {format_number(limit)}")

    return report


def assert_claims(
    sol: FractionalSolution,
    result: RoundingResult,
    consts: Constants,
    tol: Tolerance,
) -> ClaimsReport:
    report = check_claims(sol, result, consts, tol)
    if not report.ok:
        raise ClaimViolationError(
            f"{len(report.violations)} rounding claim(s) violated",
            details={"violations": report.messages()},
        )
    return report
