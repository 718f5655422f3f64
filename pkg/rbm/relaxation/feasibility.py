from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from rbm.lp.numeric import Number, Tolerance, format_number
from rbm.relaxation.solution import FractionalSolution, WeightView


@dataclass(frozen=True)
class FeasibilityViolation:
    constraint: str  # "1", "2", "3", "5", "range", "capacity", "monotone"
    item: Optional[int]
    slot: Optional[int]
    value: Number
    message: str


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[FeasibilityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[FeasibilityViolation]:
        return self.violations[0] if self.violations else None

    def by_constraint(self, constraint: str) -> list[FeasibilityViolation]:
        return [v for v in self.violations if v.constraint == constraint]


def check_feasibility(sol: FractionalSolution, *, tol: Optional[Tolerance] = None) -> FeasibilityReport:
    """Sprawdza (1), (2), (3) (łącznie z wierszem dla j = k+n+1), (5) oraz wnioski
    o pojemności bufora i monotoniczności wag między kolejnymi elementami koloru.

    Tryb rational: dokładnie; float: eps skalowany liczbą składników sumy.
    """
    if tol is None:
        from rbm.app.config import get_settings

        tol = sol.tolerance(get_settings().eps_feas)
    inst = sol.inst
    out: list[FeasibilityViolation] = []
    zero = sol.z - sol.z
    one = zero + 1

    for (i, j), v in sol.values.items():
        if i < 1 or i > inst.n or j < inst.first_slot_of(i) or j > inst.last_slot:
            out.append(FeasibilityViolation("range", i, j, v, f"x[{i},{j}] is not a variable of the program"))
        elif not tol.ge(v, 0):
            out.append(FeasibilityViolation("5", i, j, v, f"x[{i},{j}] = {format_number(v)} < 0"))

    for i in inst.items():
        total = sum((v for _j, v in sol.row(i)), zero)
        if not tol.eq(total, one, terms=len(sol.row(i))):
            out.append(FeasibilityViolation("1", i, None, total, f"item {i}: Σ_j x = {format_number(total)} != 1"))

    per_slot: dict[int, Number] = {}
    per_slot_terms: dict[int, int] = {}
    for (i, j), v in sol.values.items():
        per_slot[j] = per_slot.get(j, zero) + v
        per_slot_terms[j] = per_slot_terms.get(j, 0) + 1
    for j in inst.slots():
        total = per_slot.get(j, zero)
        if not tol.eq(total, one, terms=per_slot_terms.get(j, 1)):
            out.append(FeasibilityViolation("2", None, j, total, f"slot {j}: Σ_i x = {format_number(total)} != 1"))

    for i in inst.items():
        if inst.is_last(i):
            continue
        nxt = inst.next_of(i)
        for j in range(nxt, inst.last_slot + 2):
            diff = sol.x(nxt, j) - sol.x(i, j - 1)
            if not tol.ge(diff, 0):
                kind = "tail" if j == inst.last_slot + 1 else "order"
                out.append(
                    FeasibilityViolation(
                        "3", i, j, diff, f"{kind}: x[{nxt},{j}] - x[{i},{j - 1}] = {format_number(diff)} < 0"
                    )
                )

    wv = WeightView(sol)
    for j in range(inst.k, inst.last_slot + 1):
        expected = inst.k if j <= inst.n else inst.k + inst.n - j
        cap = wv.capacity(j)
        if not tol.eq(cap, expected, terms=min(j, inst.n)):
            out.append(
                FeasibilityViolation("capacity", None, j, cap, f"slot {j}: Σ w = {format_number(cap)} != {expected}")
            )

    for i in inst.items():
        if inst.is_last(i):
            continue
        nxt = inst.next_of(i)
        for j in range(max(nxt - 1, inst.k), inst.last_slot + 1):
            a, b = wv.w(i, j), wv.w(nxt, j)
            if not tol.le(a, b):
                out.append(
                    FeasibilityViolation(
                        "monotone", i, j, a - b, f"w[{i}]^{j} = {format_number(a)} > w[{nxt}]^{j} = {format_number(b)}"
                    )
                )

    return FeasibilityReport(violations=tuple(out))
