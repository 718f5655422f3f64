from __future__ import annotations

from pathlib import Path

from rbm.instances.models import Instance
from rbm.lp.numeric import Number, format_number, parse_number
from rbm.relaxation.msm import MsmPacking
from rbm.relaxation.solution import FractionalSolution
from rbm.shared.enums import SolveMode
from rbm.shared.errors import InstanceParseError


def format_solution(sol: FractionalSolution) -> str:
    """Linie `i j value` dla niezerowych x, posortowane po (i, j)."""
    return "".join(f"{i} {j} {format_number(v)}\n" for i, j, v in sol.entries())


def parse_solution(inst: Instance, text: str, mode: SolveMode = SolveMode.RATIONAL) -> FractionalSolution:
    """Nie sprawdza dopuszczalności; od tego jest check_feasibility."""
    values: dict[tuple[int, int], Number] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InstanceParseError(f"Invalid solution line {lineno}: {raw!r} (expected `i j value`)")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise InstanceParseError(f"Invalid indices on line {lineno}: {raw!r}") from e
        if (i, j) in values:
            raise InstanceParseError(f"Duplicate entry x[{i},{j}] on line {lineno}")
        values[(i, j)] = parse_number(parts[2], mode)
    return FractionalSolution.from_values(inst, mode, values)


def format_packing(packing: MsmPacking) -> str:
    """Linie `lambda j' i_1 ... i_m`."""
    lines = []
    for e in packing.entries:
        items = " ".join(str(i) for i in e.items)
        lines.append(f"{format_number(e.weight)} {e.start} {items}")
    return "\n".join(lines) + ("\n" if lines else "")


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
