from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from rbm.lp.numeric import Number, Tolerance, format_number
from rbm.relaxation.feasibility import check_feasibility
from rbm.relaxation.solution import FractionalSolution
from rbm.shared.errors import InfeasibleSolutionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MsmEntry:
    """Łańcuch i_1, n(i_1), ... wydany w slotach start+1 .. start+m z wagą weight."""

    items: tuple[int, ...]
    start: int
    weight: Number

    @property
    def first_slot(self) -> int:
        return self.start + 1

    @property
    def last_slot(self) -> int:
        return self.start + len(self.items)

    def covers(self, slot: int) -> bool:
        return self.first_slot <= slot <= self.last_slot

    def slot_of(self, item: int) -> Optional[int]:
        for s, i in enumerate(self.items, start=1):
            if i == item:
                return self.start + s
        return None


@dataclass(frozen=True)
class MsmPacking:
    entries: tuple[MsmEntry, ...]

    def total(self) -> Number:
        it = iter(self.entries)
        first = next(it, None)
        if first is None:
            return 0
        acc = first.weight
        for e in it:
            acc += e.weight
        return acc

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class PackingReport:
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def decompose_msm(sol: FractionalSolution, *, tol: Optional[Tolerance] = None) -> MsmPacking:
    """Rozkład dopuszczalnego x na upakowanie łańcuchów jednokolorowych.

    Dopóki istnieje dodatni wpis: bierz najmniejszy slot, w nim najmniejszy element,
    wydłużaj łańcuch po n(i) dopóki x_{n(i), slot+1} > 0, odejmij wagę od całego łańcucha.
    """
    if tol is None:
        from rbm.app.config import get_settings

        tol = sol.tolerance(get_settings().eps_feas)
    report = check_feasibility(sol, tol=tol)
    if not report.ok:
        raise InfeasibleSolutionError(
            f"Cannot decompose an infeasible solution: {report.first.message}",
            details={"violations": [v.message for v in report.violations[:20]]},
        )

    inst = sol.inst
    by_slot: dict[int, dict[int, Number]] = {}
    for (i, j), v in sol.values.items():
        if tol.positive(v):
            by_slot.setdefault(j, {})[i] = v

    entries: list[MsmEntry] = []
    for slot in inst.slots():
        bucket = by_slot.get(slot)
        while bucket:
            first = min(bucket)
            chain = [first]
            cur, cur_slot = first, slot
            while not inst.is_last(cur):
                nxt = inst.next_of(cur)
                nb = by_slot.get(cur_slot + 1)
                if not nb or nxt not in nb:
                    break
                chain.append(nxt)
                cur, cur_slot = nxt, cur_slot + 1

            weight = min(by_slot[slot + s][item] for s, item in enumerate(chain))
            for s, item in enumerate(chain):
                b = by_slot[slot + s]
                left = b[item] - weight
                if tol.positive(left):
                    b[item] = left
                else:
                    del b[item]
            entries.append(MsmEntry(items=tuple(chain), start=slot - 1, weight=weight))

    logger.debug("msm packing: %d entries for %d nonzeros", len(entries), sol.nonzeros())
    return MsmPacking(entries=tuple(entries))


def verify_packing(sol: FractionalSolution, packing: MsmPacking, *, tol: Optional[Tolerance] = None) -> PackingReport:
    """Warunki łańcucha (i)-(iii) oraz pokrycie elementów (a), slotów (b) i suma wag (c)."""
    if tol is None:
        from rbm.app.config import get_settings

        tol = sol.tolerance(get_settings().eps_feas)
    inst = sol.inst
    zero = sol.z - sol.z
    problems: list[str] = []
    per_item: dict[int, Number] = {}
    per_slot: dict[int, Number] = {}

    for idx, e in enumerate(packing.entries):
        label = f"entry {idx} (start {e.start}, items {list(e.items)})"
        if not e.items:
            problems.append(f"{label}: empty chain")
            continue
        if not (tol.positive(e.weight) and tol.le(e.weight, 1)):
            problems.append(f"{label}: weight {format_number(e.weight)} outside (0, 1]")
        for s, item in enumerate(e.items, start=1):
            if item < 1 or item > inst.n:
                problems.append(f"{label}: item {item} out of range")
                break
            if s < len(e.items) and inst.next_of(item) != e.items[s]:
                problems.append(f"{label}: {e.items[s]} is not the next item of color after {item}")
            if e.start + s < item:
                problems.append(f"{label}: item {item} matched to slot {e.start + s} before arrival")
            per_item[item] = per_item.get(item, zero) + e.weight
        last = e.items[-1]
        if 1 <= last <= inst.n and not e.last_slot < inst.next_of(last) - 1:
            problems.append(f"{label}: chain is not maximal (next item {inst.next_of(last)} already available)")
        for slot in range(e.first_slot, e.last_slot + 1):
            per_slot[slot] = per_slot.get(slot, zero) + e.weight

    for i in inst.items():
        got = per_item.get(i, zero)
        if not tol.eq(got, 1, terms=max(1, len(packing.entries))):
            problems.append(f"item {i}: packed weight {format_number(got)} != 1")
    for j in inst.slots():
        got = per_slot.get(j, zero)
        if not tol.eq(got, 1, terms=max(1, len(packing.entries))):
            problems.append(f"slot {j}: packed weight {format_number(got)} != 1")
    extra = sorted(set(per_slot) - set(inst.slots()))
    if extra:
        problems.append(f"packing covers slots outside the schedule: {extra}")

    total = packing.total()
    if not tol.eq(total, sol.z, terms=max(1, len(packing.entries))):
        problems.append(f"Σ λ = {format_number(total)} != z = {format_number(sol.z)}")

    return PackingReport(problems=tuple(problems))
