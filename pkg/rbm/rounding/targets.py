from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from rbm.instances.models import Instance
from rbm.lp.numeric import Number, Tolerance
from rbm.relaxation.solution import FractionalSolution
from rbm.rounding.state import RoundingState


def compute_targets(sol: FractionalSolution, delta3: Number, tol: Tolerance) -> list[int]:
    """t_q = pierwszy slot, w którym skumulowany koszt y osiąga q·δ3; na końcu k+n.

    y_{i,j} = x_{i,j} gdy n(i) > j+1, czyli dokładnie zmienne z kosztem 1.
    """
    inst = sol.inst
    if tol.exact:
        q_max = math.floor(sol.z / delta3)
    else:
        q_max = math.floor(sol.z / delta3 + tol.eps)

    per_slot: dict[int, Number] = {}
    for (i, j), v in sol.values.items():
        if inst.next_of(i) > j + 1:
            per_slot[j] = per_slot.get(j, sol.z - sol.z) + v

    targets: list[int] = []
    acc = sol.z - sol.z
    q = 1
    for j in inst.slots():
        acc += per_slot.get(j, 0)
        while q <= q_max and tol.ge(acc, q * delta3):
            targets.append(j)
            q += 1
    # szum float może zostawić ostatnie progi nieosiągnięte
    while q <= q_max:
        targets.append(inst.last_slot)
        q += 1
    targets.append(inst.last_slot)
    return targets


@dataclass(frozen=True)
class Window:
    items: tuple[int, ...]
    color: Optional[int]
    target: int  # t_q^j

    @property
    def size(self) -> int:
        return len(self.items)


def compute_window(inst: Instance, state: RoundingState, t_q: int) -> Window:
    """I_q^j: najliczniejszy jednokolorowy podzbiór przybyć z [j, t_q]; t_q^j = max(j, t_q + 1 - |I|).

    Remisy: kolor z najwcześniejszym przybyciem w oknie.
    """
    j = state.next_slot
    if t_q < j:
        return Window(items=(), color=None, target=j)

    groups: dict[int, list[int]] = {}
    for i in range(j, min(t_q, inst.n) + 1):
        groups.setdefault(inst.color(i), []).append(i)
    if not groups:
        return Window(items=(), color=None, target=max(j, t_q + 1))

    color, items = max(groups.items(), key=lambda kv: (len(kv[1]), -kv[1][0]))
    return Window(items=tuple(items), color=color, target=max(j, t_q + 1 - len(items)))
