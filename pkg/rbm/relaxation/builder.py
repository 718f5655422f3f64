from __future__ import annotations

import logging
from dataclasses import dataclass
from rbm.shared.enums import StrEnum
from typing import Optional

from rbm.app.config import Settings, get_settings
from rbm.instances.models import Instance
from rbm.lp.numeric import Number, tolerance_for
from rbm.lp.program import Constraint, LinearProgram, LpStatus, Relation
from rbm.lp.solver import solve
from rbm.relaxation.feasibility import check_feasibility
from rbm.relaxation.solution import FractionalSolution
from rbm.shared.enums import FloatBackend, SolveMode
from rbm.shared.errors import InfeasibleSolutionError, RelaxationInfeasibleError

logger = logging.getLogger(__name__)


class RowKind(StrEnum):
    ITEM = "item"
    SLOT = "slot"
    ORDER = "order"
    TAIL = "tail"


@dataclass(frozen=True)
class RelaxationLp:
    inst: Instance
    program: LinearProgram
    var_keys: tuple[tuple[int, int], ...]
    var_index: dict[tuple[int, int], int]
    row_kinds: tuple[str, ...]

    @property
    def num_vars(self) -> int:
        return self.program.num_vars

    def count(self, kind: str) -> int:
        return sum(1 for r in self.row_kinds if r == kind)


def build_lp(inst: Instance) -> RelaxationLp:
    """Czasowo-indeksowane LP: x_{i,j} dla max(i, k+1) <= j <= k+n.

    Współczynniki są całkowite, więc ten sam program służy obu trybom.
    Wiersze porządku tylko tam, gdzie istnieją obie zmienne; wiersz `tail`
    (-x_{i,k+n} >= 0 dla nie-ostatnich i) to ograniczenie porządku dla j = k+n+1.
    """
    keys: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for i in inst.items():
        for j in range(inst.first_slot_of(i), inst.last_slot + 1):
            index[(i, j)] = len(keys)
            keys.append((i, j))

    objective = tuple(1 if j <= inst.next_of(i) - 2 else 0 for i, j in keys)
    rows: list[Constraint] = []
    kinds: list[str] = []

    for i in inst.items():
        row = tuple((index[(i, j)], 1) for j in range(inst.first_slot_of(i), inst.last_slot + 1))
        rows.append(Constraint(row=row, relation=Relation.EQ, rhs=1, name=f"item[{i}]"))
        kinds.append(RowKind.ITEM)

    for j in inst.slots():
        row = tuple((index[(i, j)], 1) for i in range(1, min(j, inst.n) + 1))
        rows.append(Constraint(row=row, relation=Relation.EQ, rhs=1, name=f"slot[{j}]"))
        kinds.append(RowKind.SLOT)

    for i in inst.items():
        if inst.is_last(i):
            continue
        nxt = inst.next_of(i)
        for j in range(nxt, inst.last_slot + 1):
            a = index.get((nxt, j))
            b = index.get((i, j - 1))
            if a is None or b is None:
                continue
            rows.append(Constraint(row=((a, 1), (b, -1)), relation=Relation.GE, rhs=0, name=f"order[{i},{j}]"))
            kinds.append(RowKind.ORDER)

    for i in inst.items():
        if inst.is_last(i):
            continue
        rows.append(
            Constraint(row=((index[(i, inst.last_slot)], -1),), relation=Relation.GE, rhs=0, name=f"tail[{i}]")
        )
        kinds.append(RowKind.TAIL)

    program = LinearProgram(
        num_vars=len(keys),
        objective=objective,
        constraints=tuple(rows),
        var_names=tuple(f"x[{i},{j}]" for i, j in keys),
    )
    return RelaxationLp(inst=inst, program=program, var_keys=tuple(keys), var_index=index, row_kinds=tuple(kinds))


def solve_relaxation(
    inst: Instance,
    mode: SolveMode = SolveMode.RATIONAL,
    *,
    backend: Optional[FloatBackend] = None,
    settings: Optional[Settings] = None,
) -> FractionalSolution:
    settings = settings or get_settings()
    relax = build_lp(inst)
    logger.info(
        "solving relaxation: mode=%s vars=%d rows=%d",
        mode,
        relax.num_vars,
        len(relax.program.constraints),
    )
    res = solve(relax.program, mode, backend=backend, settings=settings)
    if res.status != LpStatus.OPTIMAL:
        # każda instancja ma rozwiązanie całkowite (zachłanne), więc to błąd wewnętrzny
        raise RelaxationInfeasibleError(
            f"Relaxation solve ended with status {res.status}",
            details={"status": str(res.status), "digest": inst.digest()},
        )

    values: dict[tuple[int, int], Number] = {}
    for key, v in zip(relax.var_keys, res.values):
        if mode == SolveMode.FLOAT and abs(v) <= settings.eps_piv:
            continue
        if v != 0:
            values[key] = v
    sol = FractionalSolution.from_values(inst, mode, values)

    report = check_feasibility(sol, tol=tolerance_for(mode, settings.eps_feas))
    if not report.ok:
        raise InfeasibleSolutionError(
            f"Relaxation solution fails feasibility: {report.first.message}",
            details={"violations": [v.message for v in report.violations[:20]]},
        )
    logger.info("relaxation solved: z=%s nonzeros=%d backend=%s pivots=%d", sol.z, sol.nonzeros(), res.backend, res.pivots)
    return sol
