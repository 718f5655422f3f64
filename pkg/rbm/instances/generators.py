from __future__ import annotations

import random

from rbm.instances.models import Instance
from rbm.shared.enums import Distribution
from rbm.shared.errors import ValidationError

# średnia długość serii w rozkładzie blocky (geometryczny, p = 1/3)
BLOCKY_CONTINUE_P = 2 / 3


def color_label(c: int) -> str:
    if c < 26:
        return chr(ord("A") + c)
    return f"C{c}"


def _uniform(rng: random.Random, n: int, colors: int) -> list[int]:
    return [rng.randrange(colors) for _ in range(n)]


def _round_robin(_rng: random.Random, n: int, colors: int) -> list[int]:
    return [i % colors for i in range(n)]


def _blocky(rng: random.Random, n: int, colors: int) -> list[int]:
    out: list[int] = []
    prev = -1
    while len(out) < n:
        choices = [c for c in range(colors) if c != prev] or [0]
        c = rng.choice(choices)
        length = 1
        while rng.random() < BLOCKY_CONTINUE_P:
            length += 1
        out.extend([c] * length)
        prev = c
    return out[:n]


_GENERATORS = {
    Distribution.UNIFORM: _uniform,
    Distribution.ROUND_ROBIN: _round_robin,
    Distribution.BLOCKY: _blocky,
}


def generate_instance(*, n: int, k: int, colors: int, distribution: Distribution, seed: int) -> Instance:
    """Deterministyczny generator (random.Random(seed)): ten sam seed -> ta sama instancja."""
    if n < 1 or k < 1 or colors < 1:
        raise ValidationError(
            "Generator needs n >= 1, k >= 1, colors >= 1",
            details={"n": n, "k": k, "colors": colors},
        )
    rng = random.Random(seed)
    seq = _GENERATORS[Distribution(distribution)](rng, n, colors)
    return Instance.from_tokens(k, [color_label(c) for c in seq], seed=seed)
