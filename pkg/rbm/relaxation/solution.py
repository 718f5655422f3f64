from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterator, Mapping

from rbm.instances.models import Instance, Schedule, Violation
from rbm.instances.services import order_interruptions, validate_schedule
from rbm.lp.numeric import Number, Tolerance, exact_tolerance
from rbm.shared.enums import SolveMode
from rbm.shared.errors import InvalidScheduleError


def _zero(mode: SolveMode) -> Number:
    return Fraction(0) if mode == SolveMode.RATIONAL else 0.0


@dataclass(frozen=True)
class FractionalSolution:
    """Rzadkie x_{i,j}: tylko wpisy niezerowe, klucz (item, slot).

    Poza zakresem (j < max(i, k+1) albo j > k+n) zmienne nie istnieją i czytane są jako 0.
    """

    inst: Instance
    mode: SolveMode
    values: Mapping[tuple[int, int], Number]
    z: Number
    _rows: dict[int, tuple[tuple[int, Number], ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        rows: dict[int, list[tuple[int, Number]]] = {}
        for (i, j), v in self.values.items():
            rows.setdefault(i, []).append((j, v))
        object.__setattr__(self, "_rows", {i: tuple(sorted(r)) for i, r in rows.items()})

    @classmethod
    def from_values(cls, inst: Instance, mode: SolveMode, values: Mapping[tuple[int, int], Number]) -> "FractionalSolution":
        clean = {key: v for key, v in values.items() if v != 0}
        return cls(inst=inst, mode=mode, values=clean, z=objective_of(inst, clean, mode))

    def x(self, i: int, j: int) -> Number:
        return self.values.get((i, j), _zero(self.mode))

    def row(self, i: int) -> tuple[tuple[int, Number], ...]:
        """Niezerowe (slot, wartość) elementu i, rosnąco po slocie."""
        return self._rows.get(i, ())

    def entries(self) -> Iterator[tuple[int, int, Number]]:
        for i in sorted(self._rows):
            for j, v in self._rows[i]:
                yield i, j, v

    def nonzeros(self) -> int:
        return len(self.values)

    def tolerance(self, eps: float) -> Tolerance:
        if self.mode == SolveMode.RATIONAL:
            return exact_tolerance()
        return Tolerance(mode=SolveMode.FLOAT, eps=eps)


def objective_of(inst: Instance, values: Mapping[tuple[int, int], Number], mode: SolveMode) -> Number:
    z = _zero(mode)
    for (i, j), v in values.items():
        if j <= inst.next_of(i) - 2:
            z += v
    return z


class WeightView:
    """w_i^j = 1 - Σ_{j' <= j} x_{i,j'} (dla j < i wynosi 1), nierosnące w j."""

    def __init__(self, sol: FractionalSolution) -> None:
        self.sol = sol
        self.inst = sol.inst
        self._one: Number = Fraction(1) if sol.mode == SolveMode.RATIONAL else 1.0
        self._slots: dict[int, list[int]] = {}
        self._cum: dict[int, list[Number]] = {}
        for i in self.inst.items():
            row = sol.row(i)
            self._slots[i] = [j for j, _v in row]
            self._cum[i] = list(accumulate(v for _j, v in row))

    @property
    def one(self) -> Number:
        return self._one

    @property
    def zero(self) -> Number:
        return self._one - self._one

    def w(self, i: int, j: int) -> Number:
        slots = self._slots[i]
        pos = bisect_right(slots, j)
        if pos == 0:
            return self._one
        return self._one - self._cum[i][pos - 1]

    def capacity(self, j: int) -> Number:
        """Σ_{i <= min(j, n)} w_i^j; dla j w [k, k+n] powinno wynosić k."""
        total = self.zero
        for i in range(1, min(j, self.inst.n) + 1):
            total += self.w(i, j)
        return total

    def first_slot_at_most(self, i: int, threshold: Number, tol: Tolerance) -> int:
        """min{t: w_i^t <= threshold}; k+n+1 jeśli nie istnieje."""
        if tol.le(self._one, threshold):
            return max(i - 1, self.inst.k)
        for pos, j in enumerate(self._slots[i]):
            if tol.le(self._one - self._cum[i][pos], threshold):
                return j
        return self.inst.last_slot + 1


@dataclass(frozen=True)
class IntegralEncoding:
    solution: FractionalSolution
    interruptions: tuple[Violation, ...]

    @property
    def satisfies_order(self) -> bool:
        return not self.interruptions


def schedule_to_solution(inst: Instance, schedule: Schedule, mode: SolveMode = SolveMode.RATIONAL) -> IntegralEncoding:
    """Koduje poprawny harmonogram jako x ∈ {0,1}; ograniczenia (1), (2), (5) spełnione.

    Ograniczenie porządku może nie zachodzić; jego naruszenia są zwracane w `interruptions`.
    """
    report = validate_schedule(inst, schedule)
    if not report.ok:
        raise InvalidScheduleError(
            f"Invalid schedule: {report.first.message}",
            details={"violations": [v.message for v in report.violations]},
        )
    one: Number = Fraction(1) if mode == SolveMode.RATIONAL else 1.0
    values = {(item, slot): one for slot, item in schedule.assignment}
    sol = FractionalSolution.from_values(inst, mode, values)
    return IntegralEncoding(solution=sol, interruptions=tuple(order_interruptions(inst, schedule)))
