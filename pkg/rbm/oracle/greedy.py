from __future__ import annotations

from rbm.instances.models import Instance, Schedule
from rbm.rounding.state import RoundingState


def greedy_largest_block(inst: Instance) -> Schedule:
    """Punkt odniesienia: zawsze wydaj kolor z największą liczbą elementów w buforze (remis -> mniejsze id)."""
    state = RoundingState(inst)
    while not state.done:
        color = max(
            (c for c in range(inst.num_colors) if state.has_color(c)),
            key=lambda c: (state.count(c), -c),
        )
        state.evict(color)
    return state.to_schedule()
