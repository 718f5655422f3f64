from __future__ import annotations

from rbm.instances.models import Instance, Schedule, ScheduleReport, Violation
from rbm.shared.errors import DomainError, InvalidScheduleError, ValidationError


def next_same_color(inst: Instance, i: int) -> int:
    """n(i): indeks następnego elementu tego samego koloru albo k+n+2."""
    if i < 1 or i > inst.n:
        raise ValidationError(f"Item index {i} outside [1, {inst.n}]", details={"item": i})
    return inst.next_of(i)


def validate_schedule(inst: Instance, schedule: Schedule) -> ScheduleReport:
    """Bijekcja sloty [k+1, k+n] <-> elementy [1, n] oraz i <= j (element przyszedł)."""
    violations: list[Violation] = []
    if schedule.k != inst.k:
        violations.append(
            Violation(kind="capacity", slot=None, item=None, message=f"schedule k={schedule.k} != instance k={inst.k}")
        )

    expected = set(inst.slots())
    seen_slots: set[int] = set()
    seen_items: set[int] = set()
    for slot, item in schedule.assignment:
        if slot not in expected:
            violations.append(Violation("slot_range", slot, item, f"slot {slot} outside [{inst.first_slot}, {inst.last_slot}]"))
            continue
        if slot in seen_slots:
            violations.append(Violation("slot_reused", slot, item, f"slot {slot} assigned twice"))
            continue
        seen_slots.add(slot)
        if item < 1 or item > inst.n:
            violations.append(Violation("item_range", slot, item, f"item {item} outside [1, {inst.n}]"))
            continue
        if item in seen_items:
            violations.append(Violation("item_reused", slot, item, f"item {item} removed twice"))
            continue
        seen_items.add(item)
        if item > slot:
            violations.append(Violation("not_arrived", slot, item, f"item {item} removed at slot {slot} before arrival"))

    for slot in sorted(expected - seen_slots):
        violations.append(Violation("slot_missing", slot, None, f"slot {slot} has no item"))
    for item in sorted(set(inst.items()) - seen_items):
        violations.append(Violation("item_missing", None, item, f"item {item} never removed"))

    violations.sort(key=lambda v: (v.slot if v.slot is not None else inst.sentinel, v.item or 0))
    return ScheduleReport(violations=tuple(violations))


def _require_valid(inst: Instance, schedule: Schedule) -> dict[int, int]:
    report = validate_schedule(inst, schedule)
    if not report.ok:
        first = report.first
        raise InvalidScheduleError(
            f"Invalid schedule: {first.message}",
            details={"violations": [v.message for v in report.violations]},
        )
    return schedule.as_mapping()


def run_count(inst: Instance, schedule: Schedule) -> int:
    """Liczba maksymalnych serii tego samego koloru w sekwencji wyjściowej."""
    mapping = _require_valid(inst, schedule)
    runs = 0
    prev = None
    for slot in inst.slots():
        c = inst.color(mapping[slot])
        if c != prev:
            runs += 1
            prev = c
    return runs


def objective_value(inst: Instance, schedule: Schedule) -> int:
    """Wartość celu IP: |{(i, j): s(j) = i, j <= n(i) - 2}|."""
    mapping = _require_valid(inst, schedule)
    return sum(1 for slot, item in mapping.items() if slot <= inst.next_of(item) - 2)


def order_interruptions(inst: Instance, schedule: Schedule) -> list[Violation]:
    """Naruszenia ograniczenia porządku dla rozwiązania całkowitoliczbowego.

    Po wydaniu i w slocie j-1 >= n(i)-1 w slocie j musi być n(i); element
    nie-ostatni nie może zająć slotu k+n.
    """
    mapping = _require_valid(inst, schedule)
    out: list[Violation] = []
    for slot in inst.slots():
        item = mapping[slot]
        nxt = inst.next_of(item)
        if inst.is_last(item) or slot < nxt - 1:
            continue
        if slot == inst.last_slot:
            out.append(Violation("tail", slot, item, f"item {item} is not last of its color but fills the final slot"))
        elif mapping[slot + 1] != nxt:
            out.append(
                Violation("order", slot + 1, item, f"item {nxt} must follow item {item} at slot {slot + 1}")
            )
    return out


def schedule_cost(inst: Instance, schedule: Schedule) -> int:
    """Koszt harmonogramu = liczba serii kolorów.

    Gdy harmonogram nie przerywa kolorów (ograniczenie porządku spełnione),
    wzór celu IP musi dać to samo; rozbieżność to błąd wewnętrzny.
    """
    runs = run_count(inst, schedule)
    if not order_interruptions(inst, schedule):
        objective = objective_value(inst, schedule)
        if objective != runs:
            raise DomainError(
                "Objective formula disagrees with run count on a non-interrupting schedule",
                code="cost_mismatch",
                details={"runs": runs, "objective": objective},
            )
    return runs
