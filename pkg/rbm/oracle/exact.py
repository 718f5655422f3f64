from __future__ import annotations

import logging
import sys
from typing import NamedTuple, Optional

from rbm.instances.models import Instance, Schedule
from rbm.shared.errors import OracleBudgetExceeded, ValidationError

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 8


class OracleResult(NamedTuple):
    cost: int
    witness: Schedule


def optimal_cost(inst: Instance, budget: Optional[int] = None) -> OracleResult:
    """Dokładne minimum liczby serii kolorów (przeszukiwanie z memoizacją).

    Stan: (slot, liczności kolorów w buforze, kolor poprzedniego slotu). W obrębie
    koloru wydawany jest zawsze najwcześniejszy element, więc gałąź = wybór koloru.
    Budżet liczony w wpisach memo; przekroczenie to błąd, nigdy zła odpowiedź.
    """
    if budget is None:
        from rbm.app.config import get_settings

        budget = get_settings().oracle_budget

    n, last = inst.n, inst.last_slot
    start = [0] * inst.num_colors
    for i in range(1, min(inst.first_slot, n) + 1):
        start[inst.color(i)] += 1

    memo: dict[tuple[int, tuple[int, ...], int], tuple[int, int]] = {}

    def best(j: int, counts: tuple[int, ...], prev: int) -> int:
        if j > last:
            return 0
        key = (j, counts, prev)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        if len(memo) >= budget:
            raise OracleBudgetExceeded(
                f"Oracle exceeded {budget} memo entries",
                details={"budget": budget, "n": n, "k": inst.k, "colors": inst.num_colors},
            )

        result: Optional[tuple[int, int]] = None
        arriving = inst.color(j + 1) if j + 1 <= n else None
        for c, cnt in enumerate(counts):
            if cnt == 0:
                continue
            nxt = list(counts)
            nxt[c] -= 1
            if arriving is not None:
                nxt[arriving] += 1
            cost = (0 if c == prev else 1) + best(j + 1, tuple(nxt), c)
            if result is None or cost < result[0]:
                result = (cost, c)
        assert result is not None  # bufor nigdy nie jest pusty przed k+n
        memo[key] = result
        return result[0]

    # głębokość rekurencji = n; zapas na stos wywołującego
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 1000))
    try:
        cost = best(inst.first_slot, tuple(start), -1)
    finally:
        sys.setrecursionlimit(limit)

    # odtworzenie świadka z memo
    queues: dict[int, list[int]] = {c: [] for c in range(inst.num_colors)}
    for i in range(1, min(inst.first_slot, n) + 1):
        queues[inst.color(i)].append(i)
    counts, prev, items = tuple(start), -1, []
    for j in inst.slots():
        _cost, c = memo[(j, counts, prev)]
        items.append(queues[c].pop(0))
        nxt = list(counts)
        nxt[c] -= 1
        if j + 1 <= n:
            nxt[inst.color(j + 1)] += 1
            queues[inst.color(j + 1)].append(j + 1)
        counts, prev = tuple(nxt), c

    logger.debug("oracle: cost=%d memo=%d", cost, len(memo))
    return OracleResult(cost=cost, witness=Schedule.from_items(inst.k, items))


def brute_force_cost(inst: Instance) -> int:
    """Surowe przeszukiwanie po elementach (nie kolorach); tylko do weryfikacji, n <= 8."""
    if inst.n > BRUTE_FORCE_MAX_N:
        raise ValidationError(
            f"brute_force_cost supports n <= {BRUTE_FORCE_MAX_N} (got n={inst.n})",
            details={"n": inst.n},
        )
    best = inst.n + 1
    used = [False] * (inst.n + 1)

    def go(j: int, prev: int, runs: int) -> None:
        nonlocal best
        if runs >= best:
            return
        if j > inst.last_slot:
            best = runs
            return
        for i in range(1, min(j, inst.n) + 1):
            if used[i]:
                continue
            used[i] = True
            c = inst.color(i)
            go(j + 1, c, runs + (0 if c == prev else 1))
            used[i] = False

    go(inst.first_slot, -1, 0)
    return best
