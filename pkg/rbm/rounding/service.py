from __future__ import annotations

import logging
from typing import NamedTuple, Optional

from rbm.instances.models import Schedule
from rbm.lp.numeric import Number, Tolerance
from rbm.relaxation.feasibility import check_feasibility
from rbm.relaxation.msm import MsmPacking, decompose_msm
from rbm.relaxation.solution import FractionalSolution, WeightView
from rbm.rounding.constants import PAPER, Constants
from rbm.rounding.scan import case3_scan
from rbm.rounding.snapshot import Snapshot, take_snapshot
from rbm.rounding.state import RoundingState
from rbm.rounding.targets import Window, compute_targets, compute_window
from rbm.rounding.trace import (
    Anomaly,
    Case4Record,
    ChargeRecord,
    DeltaRecord,
    PhaseRecord,
    RoundingTrace,
    ScanRecord,
    StepRecord,
)
from rbm.shared.enums import StepCase
from rbm.shared.errors import InfeasibleSolutionError

logger = logging.getLogger(__name__)


class RoundingResult(NamedTuple):
    schedule: Schedule
    trace: RoundingTrace


class _RoundingRun:
    def __init__(
        self,
        sol: FractionalSolution,
        consts: Constants,
        tol: Tolerance,
        packing: Optional[MsmPacking],
    ) -> None:
        self.sol = sol
        self.inst = sol.inst
        self.consts = consts
        self.tol = tol
        self.packing = packing
        self.delta1, self.delta2, self.delta3, self.gamma = consts.in_mode(tol.mode)
        self.wv = WeightView(sol)
        self.state = RoundingState(self.inst)
        self.trace = RoundingTrace()
        threshold = 1 - self.delta1
        self.t_of = [0] + [self.wv.first_slot_at_most(i, threshold, tol) for i in self.inst.items()]

    # --- kroki ---

    def _evict(self, phase: PhaseRecord, case: StepCase, color: int) -> list[int]:
        start = self.state.next_slot
        items = self.state.evict(color)
        if items:
            self.trace.steps.append(
                StepRecord(
                    phase=phase.number,
                    case=case,
                    slot_from=start,
                    slot_to=self.state.completed_slot,
                    color=color,
                    items=tuple(items),
                )
            )
            logger.debug("step case=%s slots=%d..%d color=%d", case, start, self.state.completed_slot, color)
        return items

    def _reached(self, phase: PhaseRecord) -> bool:
        return self.state.completed_slot >= phase.target or self.state.done

    def _anomaly(self, phase: PhaseRecord, kind: str, message: str) -> None:
        self.trace.anomalies.append(
            Anomaly(phase=phase.number, slot=self.state.next_slot, kind=kind, message=message)
        )
        logger.warning("rounding anomaly in phase %d: %s (%s)", phase.number, kind, message)

    # --- przypadki ---

    def _case0(self, phase: PhaseRecord) -> bool:
        """Zwraca True, gdy cel fazy został osiągnięty."""
        while not self._reached(phase):
            s = self.state.completed_slot
            ready = [i for i in self.state.held_items() if self.t_of[i] <= s]
            if not ready:
                return False
            item = min(ready, key=lambda i: (self.t_of[i], i))
            self._evict(phase, StepCase.CASE_0, self.inst.color(item))
            if StepCase.CASE_0.value not in phase.cases:
                phase.cases.append(StepCase.CASE_0.value)
        return True

    def _case1_color(self, phase: PhaseRecord, snap: Snapshot) -> Optional[int]:
        order = [b.color for b in snap.blocks]
        j = self.state.next_slot
        if j <= self.inst.n and self.inst.color(j) not in order:
            order.append(self.inst.color(j))
        for color in order:
            if self.state.has_color(color) and self.state.simulate_evict(color) >= phase.target:
                return color
        return None

    def _case2(self, phase: PhaseRecord, snap: Snapshot, window: Window) -> bool:
        need = window.target - self.state.next_slot
        b1, b2 = snap.two_largest()
        if b1 is None:
            return False
        if b1.size >= need:
            chosen = [b1]
        elif b2 is not None and b1.size + b2.size >= need:
            chosen = [b1, b2]
        else:
            return False
        for b in chosen:
            self._evict(phase, StepCase.CASE_2, b.color)
        if not self._reached(phase) and window.color is not None:
            self._evict(phase, StepCase.CASE_2, window.color)
        return True

    def _case3(self, phase: PhaseRecord, snap: Snapshot, window: Window) -> bool:
        need = window.target - self.state.next_slot
        if not self.tol.ge(snap.delta, need / self.gamma):
            return False
        plan = case3_scan(snap, need, self.consts, self.tol)

        for ev in plan.evictions:
            for b in ev.charged:
                self.state.charge(b.items, snap.slot)
                self.trace.charges.append(
                    ChargeRecord(
                        phase=phase.number,
                        slot=snap.slot,
                        block_color=b.color,
                        items=b.items,
                        amount=b.d_hat,
                        step_index=len(self.trace.steps),
                    )
                )
            self._evict(phase, StepCase.CASE_3_SCAN, ev.block.color)
        if plan.fallback is not None:
            self._evict(phase, StepCase.CASE_3_FALLBACK, plan.fallback.color)

        self.trace.scans.append(
            ScanRecord(
                phase=phase.number,
                slot=snap.slot,
                required=need,
                removed_held=plan.removed_held,
                triggers=tuple(ev.trigger for ev in plan.evictions),
                delta=snap.delta,
                uncharged=snap.uncharged,
                fallback_used=plan.fallback is not None,
            )
        )
        if not self._reached(phase) and window.color is not None:
            self._evict(phase, StepCase.CASE_3_WINDOW, window.color)
        return True

    def _long_weight(self, target: int) -> Number:
        """Λ: waga łańcuchów z pakowania, które zaczęły się przed j i sięgają t_q."""
        if self.packing is None:
            self.packing = decompose_msm(self.sol, tol=self.tol)
        j = self.state.next_slot
        total = self.wv.zero
        for e in self.packing.entries:
            if e.start < j and e.last_slot >= target:
                total += e.weight
        return total

    def _case4(self, phase: PhaseRecord, snap: Snapshot, repeated: bool) -> None:
        if repeated:
            self._anomaly(phase, "case4_repeated", "case 4 applied twice in one phase")
        self.trace.case4.append(
            Case4Record(
                phase=phase.number,
                slot=snap.slot,
                target=phase.target,
                long_weight=self._long_weight(phase.target),
            )
        )
        largest = snap.largest()
        if largest is not None:
            self._evict(phase, StepCase.CASE_4, largest.color)

    # --- pętla ---

    def _force_progress(self, phase: PhaseRecord) -> None:
        colors = [c for c in range(self.inst.num_colors) if self.state.has_color(c)]
        color = max(colors, key=lambda c: (self.state.count(c), -c))
        self._anomaly(phase, "no_progress", "procedure iteration removed nothing")
        self._evict(phase, StepCase.CASE_4, color)

    def _run_phase(self, phase: PhaseRecord) -> None:
        case4_seen = False
        while not self._reached(phase):
            before = self.state.next_slot
            if self._case0(phase):
                break

            window = compute_window(self.inst, self.state, phase.target)
            snap = take_snapshot(self.state, self.wv, self.t_of, self.tol)
            self.trace.deltas.append(DeltaRecord(slot=snap.slot, value=snap.delta))

            color = self._case1_color(phase, snap)
            if color is not None:
                phase.cases.append(StepCase.CASE_1.value)
                self._evict(phase, StepCase.CASE_1, color)
            elif self._case2(phase, snap, window):
                phase.cases.append(StepCase.CASE_2.value)
                if not self._reached(phase):
                    self._anomaly(phase, "case2_short", f"case 2 stopped at slot {self.state.completed_slot}")
            elif self._case3(phase, snap, window):
                phase.cases.append("3")
                if not self._reached(phase):
                    self._anomaly(phase, "case3_short", f"case 3 stopped at slot {self.state.completed_slot}")
            else:
                phase.cases.append(StepCase.CASE_4.value)
                self._case4(phase, snap, repeated=case4_seen)
                case4_seen = True

            if self.state.next_slot == before:
                self._force_progress(phase)

    def run(self) -> RoundingResult:
        targets = compute_targets(self.sol, self.delta3, self.tol)
        self.trace.targets = list(targets)
        q = 0
        number = 0
        while not self.state.done:
            while targets[q] <= self.state.completed_slot:
                q += 1
            number += 1
            phase = PhaseRecord(number=number, target_index=q + 1, target=targets[q], start_slot=self.state.next_slot)
            self.trace.phases.append(phase)
            self._run_phase(phase)
            phase.end_slot = self.state.completed_slot
            logger.debug("phase %d target=%d ended at %d cases=%s", number, phase.target, phase.end_slot, phase.cases)

        schedule = self.state.to_schedule()
        logger.info(
            "rounding done: phases=%d steps=%d anomalies=%d",
            len(self.trace.phases),
            len(self.trace.steps),
            len(self.trace.anomalies),
        )
        return RoundingResult(schedule=schedule, trace=self.trace)


def round_solution(
    sol: FractionalSolution,
    consts: Constants = PAPER,
    *,
    tol: Optional[Tolerance] = None,
    packing: Optional[MsmPacking] = None,
) -> RoundingResult:
    """Zaokrąglanie fazowe: w każdej fazie przypadek 0 do wyczerpania, potem pierwszy z 1-4.

    Działa dla dowolnego dopuszczalnego x (nie tylko optimum LP).
    """
    consts.validate()
    if tol is None:
        from rbm.app.config import get_settings

        tol = sol.tolerance(get_settings().eps_cmp)
    report = check_feasibility(sol, tol=tol)
    if not report.ok:
        raise InfeasibleSolutionError(
            f"Cannot round an infeasible solution: {report.first.message}",
            details={"violations": [v.message for v in report.violations[:20]]},
        )
    return _RoundingRun(sol, consts, tol, packing).run()
