from __future__ import annotations

import re
from pathlib import Path
from typing import Optional

from rbm.instances.models import Instance, Schedule
from rbm.shared.errors import InstanceParseError

_SEED_RE = re.compile(r"\bseed=(-?\d+)\b")


def parse_instance(text: str) -> Instance:
    """Format: linia `k n`, potem n tokenów kolorów (białe znaki dowolne).

    Linie zaczynające się od `#` to komentarze; `seed=N` w komentarzu jest zapamiętywany.
    """
    seed: Optional[int] = None
    tokens: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            m = _SEED_RE.search(line)
            if m and seed is None:
                seed = int(m.group(1))
            continue
        tokens.extend(line.split())

    if len(tokens) < 2:
        raise InstanceParseError("Instance header `k n` missing")
    try:
        k = int(tokens[0])
        n = int(tokens[1])
    except ValueError as e:
        raise InstanceParseError(f"Invalid header {tokens[0]!r} {tokens[1]!r} (must be ints)") from e
    if k < 1:
        raise InstanceParseError(f"Invalid k={k} (must be >= 1)", details={"k": k})
    if n < 1:
        raise InstanceParseError(f"Invalid n={n} (must be >= 1)", details={"n": n})

    colors = tokens[2:]
    if len(colors) != n:
        raise InstanceParseError(
            f"Expected {n} color tokens, got {len(colors)}",
            details={"expected": n, "got": len(colors)},
        )
    return Instance.from_tokens(k, colors, seed=seed)


def format_instance(inst: Instance, *, comment: Optional[str] = None) -> str:
    lines: list[str] = []
    if comment:
        lines.append(f"# {comment}")
    elif inst.seed is not None:
        lines.append(f"# seed={inst.seed}")
    lines.append(f"{inst.k} {inst.n}")
    lines.append(" ".join(inst.tokens()))
    return "\n".join(lines) + "\n"


def read_instance(path: Path) -> Instance:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceParseError(f"Cannot read instance file {path}: {e}", details={"path": str(path)}) from e
    return parse_instance(text)


def write_instance(inst: Instance, path: Path, *, comment: Optional[str] = None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_instance(inst, comment=comment), encoding="utf-8")


def format_schedule(schedule: Schedule) -> str:
    """Jedna linia na slot: `slot item`, rosnąco po slocie."""
    return "".join(f"{slot} {item}\n" for slot, item in sorted(schedule.assignment))


def parse_schedule(inst: Instance, text: str) -> Schedule:
    mapping: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            slot, item = (int(p) for p in parts)
        except ValueError as e:
            raise InstanceParseError(f"Invalid schedule line {lineno}: {raw!r}") from e
        if slot in mapping:
            raise InstanceParseError(f"Slot {slot} listed twice (line {lineno})")
        mapping[slot] = item
    return Schedule.from_mapping(inst.k, mapping)
