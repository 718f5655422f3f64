from __future__ import annotations

from collections import deque
from typing import Iterable

from rbm.instances.models import Instance, Schedule
from rbm.shared.errors import DomainError


class RoundingState:
    """Bufor algorytmu przed wypełnieniem slotu `next_slot`.

    Bufor = {i <= min(next_slot, n)} bez elementów już wydanych; per kolor kolejka
    rosnących indeksów. `tau[i]` to ostatni slot, w którym i został obciążony (start: i-1).
    """

    def __init__(self, inst: Instance) -> None:
        self.inst = inst
        self.next_slot = inst.first_slot
        self.filled: list[int] = []
        self.removed = [False] * (inst.n + 1)
        self.tau = [i - 1 for i in range(inst.n + 1)]
        self._queues: dict[int, deque[int]] = {c: deque() for c in range(inst.num_colors)}
        self._arrived = 0
        self._arrivals_by_color: dict[int, list[int]] = {c: [] for c in range(inst.num_colors)}
        for i in inst.items():
            self._arrivals_by_color[inst.color(i)].append(i)
        self._admit_until(min(self.next_slot, inst.n))

    def _admit_until(self, upto: int) -> None:
        while self._arrived < upto:
            self._arrived += 1
            self._queues[self.inst.color(self._arrived)].append(self._arrived)

    @property
    def completed_slot(self) -> int:
        return self.next_slot - 1

    @property
    def done(self) -> bool:
        return self.next_slot > self.inst.last_slot

    def available_items(self) -> list[int]:
        return sorted(i for q in self._queues.values() for i in q)

    def held_items(self) -> list[int]:
        """Elementy trzymane w migawce s = next_slot - 1 (bez elementu przychodzącego teraz)."""
        s = self.completed_slot
        return [i for i in self.available_items() if i <= s]

    def count(self, color: int) -> int:
        return len(self._queues[color])

    def has_color(self, color: int) -> bool:
        return bool(self._queues[color])

    def fill(self, item: int) -> None:
        try:
            self._queues[self.inst.color(item)].remove(item)
        except ValueError:
            raise DomainError(
                f"Item {item} is not in the buffer at slot {self.next_slot}",
                code="item_not_buffered",
                details={"item": item, "slot": self.next_slot},
            ) from None
        self.filled.append(item)
        self.removed[item] = True
        self.next_slot += 1
        if self.next_slot <= self.inst.last_slot:
            self._admit_until(min(self.next_slot, self.inst.n))

    def evict(self, color: int) -> list[int]:
        """Wydaje kolor do opróżnienia, wciągając nadchodzące elementy tego koloru."""
        out: list[int] = []
        q = self._queues[color]
        while q and not self.done:
            item = q[0]
            self.fill(item)
            out.append(item)
        return out

    def simulate_evict(self, color: int) -> int:
        """Ostatni wypełniony slot po evict(color), bez zmiany stanu."""
        pending = len(self._queues[color])
        arrivals = self._arrivals_by_color[color]
        pos = 0
        while pos < len(arrivals) and arrivals[pos] <= self._arrived:
            pos += 1
        slot = self.next_slot
        while pending > 0 and slot <= self.inst.last_slot:
            pending -= 1
            slot += 1
            if slot <= self.inst.n and pos < len(arrivals) and arrivals[pos] == slot:
                pending += 1
                pos += 1
        return slot - 1

    def charge(self, items: Iterable[int], slot: int) -> None:
        for i in items:
            self.tau[i] = slot

    def to_schedule(self) -> Schedule:
        return Schedule.from_items(self.inst.k, self.filled)
