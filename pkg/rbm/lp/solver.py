from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional

from rbm.app.config import Settings, get_settings
from rbm.lp.highs import solve_highs
from rbm.lp.numeric import Number
from rbm.lp.program import LinearProgram, LpSolution, LpStatus
from rbm.lp.tableau import FloatTableau, RationalTableau, dump_tableau, solve_two_phase
from rbm.shared.enums import FloatBackend, SolveMode

logger = logging.getLogger(__name__)


def _tableau_cells(lp: LinearProgram) -> int:
    rows = len(lp.constraints)
    return rows * (lp.num_vars + 2 * rows)


def pick_float_backend(lp: LinearProgram, settings: Settings, backend: Optional[FloatBackend] = None) -> FloatBackend:
    chosen = backend or settings.float_backend
    if chosen != FloatBackend.AUTO:
        return chosen
    if _tableau_cells(lp) <= settings.tableau_cell_limit:
        return FloatBackend.TABLEAU
    return FloatBackend.HIGHS


def solve(
    lp: LinearProgram,
    mode: SolveMode = SolveMode.RATIONAL,
    *,
    backend: Optional[FloatBackend] = None,
    settings: Optional[Settings] = None,
) -> LpSolution:
    """Minimalizuje LP; status OPTIMAL / INFEASIBLE / UNBOUNDED.

    rational: dokładny dwufazowy simpleks na Fraction (wynik jest wierzchołkiem).
    float: tablica numpy albo HiGHS (auto wg rozmiaru tablicy).
    """
    lp.validate()
    settings = settings or get_settings()

    if mode == SolveMode.RATIONAL:
        outcome = solve_two_phase(
            lp,
            RationalTableau,
            Fraction,
            feasible=lambda z: z == 0,
        )
        used = "tableau"
    else:
        chosen = pick_float_backend(lp, settings, backend)
        if chosen == FloatBackend.HIGHS:
            return solve_highs(lp, eps_feas=settings.eps_feas, eps_piv=settings.eps_piv)
        eps_piv = settings.eps_piv
        outcome = solve_two_phase(
            lp,
            lambda form: FloatTableau(form, eps_piv),
            float,
            feasible=lambda z: z <= settings.eps_feas * max(1, len(lp.constraints)),
        )
        used = "tableau"

    if settings.lp_debug_dump:
        dump_tableau(outcome.tableau, Path(settings.lp_debug_dump))

    logger.debug(
        "lp solved: mode=%s status=%s vars=%d rows=%d pivots=%d",
        mode,
        outcome.status,
        lp.num_vars,
        len(lp.constraints),
        outcome.pivots,
    )

    if outcome.status != LpStatus.OPTIMAL:
        return LpSolution(status=outcome.status, values=(), objective=None, mode=mode, backend=used, pivots=outcome.pivots)

    objective: Number = Fraction(0) if mode == SolveMode.RATIONAL else 0.0
    for c, x in zip(lp.objective, outcome.values):
        if c != 0:
            objective += c * x
    return LpSolution(
        status=LpStatus.OPTIMAL,
        values=outcome.values,
        objective=objective,
        mode=mode,
        backend=used,
        pivots=outcome.pivots,
    )
