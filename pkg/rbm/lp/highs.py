from __future__ import annotations

import logging

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix

from rbm.lp.program import LinearProgram, LpSolution, LpStatus, Relation
from rbm.shared.enums import SolveMode
from rbm.shared.errors import DomainError

logger = logging.getLogger(__name__)

# scipy.optimize.linprog: 0 optimum, 2 sprzeczny, 3 nieograniczony
_STATUS = {0: LpStatus.OPTIMAL, 2: LpStatus.INFEASIBLE, 3: LpStatus.UNBOUNDED}


def _sparse_block(lp: LinearProgram, relation: Relation, sign: float):
    data: list[float] = []
    ri: list[int] = []
    ci: list[int] = []
    rhs: list[float] = []
    for c in lp.constraints:
        if c.relation != relation:
            continue
        r = len(rhs)
        for var, coef in c.row:
            data.append(sign * float(coef))
            ri.append(r)
            ci.append(var)
        rhs.append(sign * float(c.rhs))
    if not rhs:
        return None, None
    mat = coo_matrix((data, (ri, ci)), shape=(len(rhs), lp.num_vars)).tocsr()
    return mat, np.array(rhs, dtype=float)


def solve_highs(lp: LinearProgram, *, eps_feas: float, eps_piv: float) -> LpSolution:
    """Backend float dla dużych programów: dualny simpleks HiGHS z SciPy."""
    c = np.array([float(v) for v in lp.objective], dtype=float)
    a_eq, b_eq = _sparse_block(lp, Relation.EQ, 1.0)
    # linprog zna tylko <=, więc wiersze >= są mnożone przez -1
    a_ub, b_ub = _sparse_block(lp, Relation.GE, -1.0)
    lows = [float(lp.lower(v)) for v in range(lp.num_vars)]
    tol = max(eps_feas, 1e-10)

    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(lo, None) for lo in lows],
        method="highs-ds",
        options={"primal_feasibility_tolerance": tol, "dual_feasibility_tolerance": tol},
    )
    status = _STATUS.get(int(res.status))
    if status is None:
        raise DomainError(
            f"HiGHS failed: {res.message}",
            code="lp_backend_failure",
            details={"status": int(res.status)},
        )
    if status != LpStatus.OPTIMAL:
        return LpSolution(status=status, values=(), objective=None, mode=SolveMode.FLOAT, backend="highs")

    values: list[float] = []
    for v, raw in enumerate(res.x):
        x = float(raw)
        if abs(x - lows[v]) <= eps_piv:
            x = lows[v]
        values.append(x)
    objective = float(sum(cv * xv for cv, xv in zip(c, values)))
    logger.debug("highs: %d vars, %d rows, objective %.12g", lp.num_vars, len(lp.constraints), objective)
    return LpSolution(
        status=LpStatus.OPTIMAL,
        values=tuple(values),
        objective=objective,
        mode=SolveMode.FLOAT,
        backend="highs",
        pivots=int(getattr(res, "nit", 0) or 0),
    )
