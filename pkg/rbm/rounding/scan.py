from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from rbm.lp.numeric import Number, Tolerance
from rbm.rounding.constants import Constants
from rbm.rounding.snapshot import Block, Snapshot
from rbm.shared.errors import ValidationError


@dataclass(frozen=True)
class ScanEviction:
    block: Block
    trigger: Number
    charged: tuple[Block, ...]


@dataclass(frozen=True)
class ScanPlan:
    evictions: tuple[ScanEviction, ...]
    fallback: Optional[Block]
    required: int
    removed_held: int


def case3_scan(snapshot: Snapshot, required: int, consts: Constants, tol: Tolerance) -> ScanPlan:
    """Plan przypadku 3 liczony w całości z migawki.

    Od s = ostatni blok: r = najmniejszy indeks z Σ_{u=r}^{s-1} D_u <= δ2·|B_s|.
    Jeśli Σ_{u=r}^{s} d̂_u >= δ1, wydaj B_s i obciąż B_{r'}..B_{s-1} (r' = największy
    indeks z sumą sufiksu >= δ1), dalej s = r' - 1. W przeciwnym razie s = argmax |B_u|
    na [r-1, s-1]. Na końcu blok zapasowy, gdy wydano mniej niż `required` trzymanych elementów.
    """
    delta1, delta2, _delta3, gamma = consts.in_mode(tol.mode)
    if not tol.ge(snapshot.delta, required / gamma):
        raise ValidationError(
            "Scan precondition failed: volume difference below required/gamma",
            details={"delta": str(snapshot.delta), "required": required},
        )

    blocks = snapshot.blocks
    zero = snapshot.delta - snapshot.delta
    evictions: list[ScanEviction] = []
    evicted: set[int] = set()

    s = len(blocks)
    while s >= 1:
        budget = delta2 * blocks[s - 1].size
        r = s
        acc = zero
        while r > 1 and tol.le(acc + blocks[r - 2].volume, budget):
            acc += blocks[r - 2].volume
            r -= 1

        total = sum((blocks[u - 1].d_hat for u in range(r, s + 1)), zero)
        if tol.ge(total, delta1):
            suffix = zero
            r_prime = r
            for u in range(s, r - 1, -1):
                suffix += blocks[u - 1].d_hat
                if tol.ge(suffix, delta1):
                    r_prime = u
                    break
            evictions.append(
                ScanEviction(
                    block=blocks[s - 1],
                    trigger=suffix,
                    charged=tuple(blocks[u - 1] for u in range(r_prime, s)),
                )
            )
            evicted.add(s)
            if r_prime <= 1:
                break
            s = r_prime - 1
        elif r > 1:
            # remis -> większy indeks
            s = max(range(r - 1, s), key=lambda u: (blocks[u - 1].size, u))
        else:
            break

    removed = sum(blocks[p - 1].size for p in evicted)
    fallback = None
    if removed < required:
        fallback = snapshot.largest(exclude=tuple(evicted))
        if fallback is not None:
            removed += fallback.size

    return ScanPlan(evictions=tuple(evictions), fallback=fallback, required=required, removed_held=removed)
