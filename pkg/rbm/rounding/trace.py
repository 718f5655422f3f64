from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from rbm.instances.models import Instance
from rbm.lp.numeric import Number, format_number
from rbm.shared.enums import StepCase

# kroki liczone do limitu 4 na fazę
LIMITED_CASES = (
    StepCase.CASE_1,
    StepCase.CASE_2,
    StepCase.CASE_4,
    StepCase.CASE_3_FALLBACK,
    StepCase.CASE_3_WINDOW,
)


@dataclass(frozen=True)
class StepRecord:
    phase: int
    case: StepCase
    slot_from: int
    slot_to: int
    color: int
    items: tuple[int, ...]


@dataclass(frozen=True)
class ChargeRecord:
    phase: int
    slot: int
    block_color: int
    items: tuple[int, ...]
    amount: Number
    # indeks kroku w `steps`, który to obciążenie opłaca
    step_index: int = 0


@dataclass(frozen=True)
class DeltaRecord:
    slot: int
    value: Number


@dataclass(frozen=True)
class ScanRecord:
    phase: int
    slot: int
    required: int
    removed_held: int
    triggers: tuple[Number, ...]
    delta: Number
    uncharged: Number
    fallback_used: bool


@dataclass(frozen=True)
class Case4Record:
    phase: int
    slot: int
    target: int
    long_weight: Number


@dataclass(frozen=True)
class Anomaly:
    phase: int
    slot: int
    kind: str
    message: str


@dataclass
class PhaseRecord:
    number: int
    target_index: int
    target: int
    start_slot: int
    end_slot: Optional[int] = None
    cases: list[str] = field(default_factory=list)

    @property
    def reached(self) -> bool:
        return self.end_slot is not None and self.end_slot >= self.target


@dataclass
class RoundingTrace:
    """Zapis przebiegu (tylko dopisywanie w ramach jednego przebiegu)."""

    steps: list[StepRecord] = field(default_factory=list)
    phases: list[PhaseRecord] = field(default_factory=list)
    charges: list[ChargeRecord] = field(default_factory=list)
    deltas: list[DeltaRecord] = field(default_factory=list)
    scans: list[ScanRecord] = field(default_factory=list)
    case4: list[Case4Record] = field(default_factory=list)
    anomalies: list[Anomaly] = field(default_factory=list)
    targets: list[int] = field(default_factory=list)

    def case_counts(self) -> dict[str, int]:
        counts = Counter(s.case for s in self.steps)
        return {c.value: counts.get(c, 0) for c in StepCase}

    def charge_total(self, zero: Number = 0) -> Number:
        total = zero
        for c in self.charges:
            total += c.amount
        return total

    def steps_in_phase(self, phase: int) -> list[StepRecord]:
        return [s for s in self.steps if s.phase == phase]

    def serialize(self, inst: Instance) -> str:
        """Linie PHASE / STEP / CHARGE / DELTA w kolejności zdarzeń w slotach.

        CHARGE stoi tuż przed krokiem, który opłaca; DELTA przed pierwszym krokiem po swoim slocie.
        """
        lines: list[str] = []
        deltas = sorted(self.deltas, key=lambda d: d.slot)
        d_pos = 0
        c_pos = 0
        idx = 0

        def emit_charges(upto: int) -> None:
            nonlocal c_pos
            while c_pos < len(self.charges) and self.charges[c_pos].step_index <= upto:
                c = self.charges[c_pos]
                lines.append(f"CHARGE {c.slot} {inst.labels[c.block_color]} {format_number(c.amount)}")
                c_pos += 1

        for ph in self.phases:
            lines.append(f"PHASE {ph.number} {ph.target}")
            while idx < len(self.steps) and self.steps[idx].phase == ph.number:
                st = self.steps[idx]
                while d_pos < len(deltas) and deltas[d_pos].slot < st.slot_from:
                    lines.append(f"DELTA {deltas[d_pos].slot} {format_number(deltas[d_pos].value)}")
                    d_pos += 1
                emit_charges(idx)
                label = inst.labels[st.color]
                lines.append(f"STEP {st.case.value} {st.slot_from} {st.slot_to} {label} {len(st.items)}")
                idx += 1
        emit_charges(len(self.steps))
        return "\n".join(lines) + ("\n" if lines else "")
