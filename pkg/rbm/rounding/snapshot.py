from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from rbm.lp.numeric import Number, Tolerance
from rbm.relaxation.solution import WeightView
from rbm.rounding.state import RoundingState
from rbm.shared.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Block:
    """Wszystkie trzymane elementy jednego koloru; `volume` = Σ d_i."""

    position: int
    color: int
    items: tuple[int, ...]
    t_first: int
    volume: Number

    @property
    def size(self) -> int:
        return len(self.items)

    @property
    def first(self) -> int:
        return self.items[0]

    @property
    def d_hat(self) -> Number:
        return self.volume / self.size


@dataclass(frozen=True)
class Snapshot:
    slot: int
    blocks: tuple[Block, ...]
    delta: Number
    uncharged: Number

    def largest(self, exclude: Sequence[int] = ()) -> Block | None:
        """Największy blok; remis -> wcześniejszy w kolejności bloków."""
        best = None
        for b in self.blocks:
            if b.position in exclude:
                continue
            if best is None or b.size > best.size:
                best = b
        return best

    def two_largest(self) -> tuple[Block | None, Block | None]:
        first = self.largest()
        if first is None:
            return None, None
        return first, self.largest(exclude=(first.position,))


def delta(state: RoundingState, wv: WeightView) -> Number:
    """Δ = Σ_{i <= s wydane przez algorytm} w_i^s dla s = ostatni wypełniony slot."""
    s = state.completed_slot
    total = wv.zero
    for i in range(1, min(s, state.inst.n) + 1):
        if state.removed[i]:
            total += wv.w(i, s)
    return total


def take_snapshot(state: RoundingState, wv: WeightView, t_of: Sequence[int], tol: Tolerance) -> Snapshot:
    s = state.completed_slot
    by_color: dict[int, list[int]] = {}
    for i in state.held_items():
        by_color.setdefault(state.inst.color(i), []).append(i)

    zero = wv.zero
    raw: list[tuple[int, int, int, tuple[int, ...], Number]] = []
    held_volume = zero
    uncharged = zero
    for color, items in by_color.items():
        volume = zero
        for i in items:
            w_now = wv.w(i, s)
            held_volume += 1 - w_now
            volume += wv.w(i, state.tau[i]) - w_now
        uncharged += volume
        raw.append((t_of[items[0]], items[0], color, tuple(items), volume))

    raw.sort(key=lambda r: (r[0], r[1]))
    blocks = tuple(
        Block(position=pos, color=color, items=items, t_first=t_first, volume=volume)
        for pos, (t_first, _first, color, items, volume) in enumerate(raw, start=1)
    )

    removed_volume = delta(state, wv)
    if not tol.eq(removed_volume, held_volume, terms=state.inst.n):
        raise DomainError(
            "Buffer volume difference disagrees between held and removed items",
            code="delta_mismatch",
            details={"slot": s, "removed": str(removed_volume), "held": str(held_volume)},
        )
    return Snapshot(slot=s, blocks=blocks, delta=removed_volume, uncharged=uncharged)
