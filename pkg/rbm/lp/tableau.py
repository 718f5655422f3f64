from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from rbm.lp.numeric import Number, format_number
from rbm.lp.program import LinearProgram, LpStatus, Relation
from rbm.shared.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class StandardForm:
    """A·x = b, b >= 0, z bazą startową (zmienna nadwyżki albo sztuczna) w każdym wierszu.

    Kolumny: [0, num_vars) zmienne oryginalne (przesunięte o dolne ograniczenia),
    dalej nadwyżki wierszy >=, na końcu zmienne sztuczne.
    """

    num_vars: int
    ncols: int
    rows: list[dict[int, Number]]
    rhs: list[Number]
    basis: list[int]
    costs: list[Number]
    artificial: frozenset[int]
    shift: list[Number]


def to_standard_form(lp: LinearProgram, convert: Callable[[Number], Number]) -> StandardForm:
    zero, one = convert(0), convert(1)
    shift = [convert(lp.lower(v)) for v in range(lp.num_vars)]

    ncols = lp.num_vars
    rows: list[dict[int, Number]] = []
    rhs: list[Number] = []
    basis: list[Optional[int]] = []

    for c in lp.constraints:
        coeffs = {var: convert(coef) for var, coef in c.row if coef != 0}
        b = convert(c.rhs)
        for var, a in coeffs.items():
            if shift[var] != 0:
                b -= a * shift[var]

        start: Optional[int] = None
        if c.relation == Relation.GE:
            slack = ncols
            ncols += 1
            if b <= 0:
                # -a·x + s = -b: nadwyżka od razu bazowa, bez zmiennej sztucznej
                coeffs = {var: -a for var, a in coeffs.items()}
                coeffs[slack] = one
                b = -b
                start = slack
            else:
                coeffs[slack] = -one
        elif b < 0:
            coeffs = {var: -a for var, a in coeffs.items()}
            b = -b

        rows.append(coeffs)
        rhs.append(b)
        basis.append(start)

    artificial: list[int] = []
    for r, start in enumerate(basis):
        if start is None:
            rows[r][ncols] = one
            basis[r] = ncols
            artificial.append(ncols)
            ncols += 1

    costs = [convert(c) for c in lp.objective] + [zero] * (ncols - lp.num_vars)
    return StandardForm(
        num_vars=lp.num_vars,
        ncols=ncols,
        rows=rows,
        rhs=rhs,
        basis=[b for b in basis if b is not None],
        costs=costs,
        artificial=frozenset(artificial),
        shift=shift,
    )


class RationalTableau:
    """Tablica simpleksowa na Fraction; wiersze rzadkie (dict kolumna -> wartość).

    Pivot aktualizuje tylko kolumny niezerowe wiersza pivota i tylko wiersze,
    które mają niezerowy wpis w kolumnie wchodzącej.
    """

    def __init__(self, form: StandardForm) -> None:
        self.ncols = form.ncols
        self.rows = [dict(r) for r in form.rows]
        self.rhs: list[Number] = list(form.rhs)
        self.basis = list(form.basis)
        self.d: dict[int, Number] = {}
        self.z: Number = Fraction(0)
        self.banned: frozenset[int] = frozenset()

    def ban(self, cols: Iterable[int]) -> None:
        self.banned = frozenset(cols)

    def set_objective(self, costs: Sequence[Number]) -> None:
        d: dict[int, Number] = {j: c for j, c in enumerate(costs) if c != 0}
        z: Number = Fraction(0)
        for r, row in enumerate(self.rows):
            cb = costs[self.basis[r]]
            if cb == 0:
                continue
            z += cb * self.rhs[r]
            for j, a in row.items():
                v = d.get(j, 0) - cb * a
                if v != 0:
                    d[j] = v
                else:
                    d.pop(j, None)
        self.d = d
        self.z = z

    def entering(self) -> Optional[int]:
        # Bland: najmniejszy indeks o ujemnym koszcie zredukowanym
        best: Optional[int] = None
        for j, v in self.d.items():
            if v < 0 and j not in self.banned and (best is None or j < best):
                best = j
        return best

    def leaving(self, e: int) -> Optional[int]:
        best_r: Optional[int] = None
        best_key: Optional[tuple[Number, int]] = None
        for r, row in enumerate(self.rows):
            a = row.get(e)
            if a is None or a <= 0:
                continue
            key = (self.rhs[r] / a, self.basis[r])
            if best_key is None or key < best_key:
                best_key = key
                best_r = r
        return best_r

    def pivot(self, r: int, e: int) -> None:
        row = self.rows[r]
        p = row[e]
        if p != 1:
            row = {j: a / p for j, a in row.items()}
            self.rows[r] = row
            self.rhs[r] = self.rhs[r] / p
        br = self.rhs[r]

        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(e)
            if not f:
                continue
            for j, a in row.items():
                v = other.get(j, 0) - f * a
                if v != 0:
                    other[j] = v
                else:
                    other.pop(j, None)
            self.rhs[i] -= f * br

        f = self.d.get(e)
        if f:
            for j, a in row.items():
                v = self.d.get(j, 0) - f * a
                if v != 0:
                    self.d[j] = v
                else:
                    self.d.pop(j, None)
            self.z += f * br

        self.basis[r] = e

    def objective_value(self) -> Number:
        return self.z

    def row_candidate(self, r: int, excluded: frozenset[int]) -> Optional[int]:
        cols = [j for j, a in self.rows[r].items() if a != 0 and j not in excluded]
        return min(cols) if cols else None

    def drop_row(self, r: int) -> None:
        del self.rows[r]
        del self.rhs[r]
        del self.basis[r]

    def basic_values(self) -> list[Number]:
        x: list[Number] = [Fraction(0)] * self.ncols
        for r, col in enumerate(self.basis):
            x[col] = self.rhs[r]
        return x

    def dense_rows(self) -> list[list[Number]]:
        return [[row.get(j, 0) for j in range(self.ncols)] for row in self.rows]


class FloatTableau:
    """Gęsta tablica numpy dla trybu float; wartości poniżej eps_piv zerowane po pivocie."""

    def __init__(self, form: StandardForm, eps_piv: float) -> None:
        self.eps = eps_piv
        self.ncols = form.ncols
        m = len(form.rows)
        self.T = np.zeros((m, form.ncols), dtype=float)
        for r, row in enumerate(form.rows):
            for j, a in row.items():
                self.T[r, j] = float(a)
        self.rhs = np.array([float(b) for b in form.rhs], dtype=float)
        self.basis = list(form.basis)
        self.d = np.zeros(form.ncols, dtype=float)
        self.z = 0.0
        self._banned_mask = np.zeros(form.ncols, dtype=bool)

    def ban(self, cols: Iterable[int]) -> None:
        mask = np.zeros(self.ncols, dtype=bool)
        for j in cols:
            mask[j] = True
        self._banned_mask = mask

    def set_objective(self, costs: Sequence[Number]) -> None:
        c = np.array([float(v) for v in costs], dtype=float)
        cb = c[self.basis] if self.basis else np.zeros(0)
        self.d = c - cb @ self.T if self.basis else c.copy()
        self.d[np.abs(self.d) < self.eps] = 0.0
        self.z = float(cb @ self.rhs) if self.basis else 0.0

    def entering(self) -> Optional[int]:
        cand = np.flatnonzero((self.d < -self.eps) & ~self._banned_mask)
        return int(cand[0]) if cand.size else None

    def leaving(self, e: int) -> Optional[int]:
        col = self.T[:, e]
        rows = np.flatnonzero(col > self.eps)
        if rows.size == 0:
            return None
        ratios = self.rhs[rows] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + self.eps]
        return int(min(ties, key=lambda r: self.basis[int(r)]))

    def pivot(self, r: int, e: int) -> None:
        p = self.T[r, e]
        self.T[r] /= p
        self.rhs[r] /= p
        col = self.T[:, e].copy()
        col[r] = 0.0
        self.T -= np.outer(col, self.T[r])
        self.rhs -= col * self.rhs[r]
        f = self.d[e]
        if f != 0.0:
            self.d -= f * self.T[r]
            self.z += f * self.rhs[r]
        self.T[np.abs(self.T) < self.eps] = 0.0
        self.d[np.abs(self.d) < self.eps] = 0.0
        self.rhs[np.abs(self.rhs) < self.eps] = 0.0
        self.basis[r] = e

    def objective_value(self) -> float:
        return self.z

    def row_candidate(self, r: int, excluded: frozenset[int]) -> Optional[int]:
        for j in np.flatnonzero(np.abs(self.T[r]) > self.eps):
            if int(j) not in excluded:
                return int(j)
        return None

    def drop_row(self, r: int) -> None:
        self.T = np.delete(self.T, r, axis=0)
        self.rhs = np.delete(self.rhs, r)
        del self.basis[r]

    def basic_values(self) -> list[float]:
        x = [0.0] * self.ncols
        for r, col in enumerate(self.basis):
            x[col] = max(0.0, float(self.rhs[r]))
        return x

    def dense_rows(self) -> list[list[float]]:
        return [list(map(float, row)) for row in self.T]


Tableau = RationalTableau | FloatTableau


def _run_phase(tab: Tableau, *, max_pivots: int, pivots: int, phase: str) -> tuple[LpStatus, int]:
    while True:
        e = tab.entering()
        if e is None:
            return LpStatus.OPTIMAL, pivots
        r = tab.leaving(e)
        if r is None:
            return LpStatus.UNBOUNDED, pivots
        tab.pivot(r, e)
        pivots += 1
        if pivots > max_pivots:
            raise DomainError(
                f"Simplex pivot limit exceeded in {phase}",
                code="lp_pivot_limit",
                details={"pivots": pivots},
            )


@dataclass(frozen=True)
class TableauOutcome:
    status: LpStatus
    values: tuple[Number, ...]
    pivots: int
    tableau: Tableau


def solve_two_phase(
    lp: LinearProgram,
    tab_factory: Callable[[StandardForm], Tableau],
    convert: Callable[[Number], Number],
    *,
    feasible: Callable[[Number], bool],
) -> TableauOutcome:
    """Dwufazowy simpleks z regułą Blanda.

    Faza 1 minimalizuje sumę zmiennych sztucznych; potem sztuczne bazowe (na poziomie 0)
    są wypychane z bazy albo ich wiersz jest usuwany jako redundantny.
    """
    form = to_standard_form(lp, convert)
    tab = tab_factory(form)
    max_pivots = 50 * (len(form.rows) + form.ncols) + 100
    pivots = 0

    if form.artificial:
        phase1 = [convert(0)] * form.ncols
        for j in form.artificial:
            phase1[j] = convert(1)
        tab.set_objective(phase1)
        _status, pivots = _run_phase(tab, max_pivots=max_pivots, pivots=pivots, phase="phase 1")
        if not feasible(tab.objective_value()):
            logger.debug("phase 1 ended with infeasibility %s after %d pivots", tab.objective_value(), pivots)
            return TableauOutcome(LpStatus.INFEASIBLE, (), pivots, tab)

        r = 0
        while r < len(tab.basis):
            if tab.basis[r] in form.artificial:
                j = tab.row_candidate(r, form.artificial)
                if j is None:
                    tab.drop_row(r)
                    continue
                tab.pivot(r, j)
                pivots += 1
            r += 1
        tab.ban(form.artificial)

    tab.set_objective(form.costs)
    status, pivots = _run_phase(tab, max_pivots=max_pivots, pivots=pivots, phase="phase 2")
    if status != LpStatus.OPTIMAL:
        return TableauOutcome(status, (), pivots, tab)

    x = tab.basic_values()
    values = tuple(x[v] + form.shift[v] for v in range(form.num_vars))
    return TableauOutcome(LpStatus.OPTIMAL, values, pivots, tab)


def dump_tableau(tab: Tableau, path: Path) -> None:
    """Zrzut końcowej tablicy do TSV (debug, RBM_LP_DEBUG_DUMP)."""
    lines = ["basis\trhs\t" + "\t".join(f"c{j}" for j in range(tab.ncols))]
    for r, row in enumerate(tab.dense_rows()):
        cells = [format_number(v) for v in row]
        lines.append(f"c{tab.basis[r]}\t{format_number(tab.rhs[r])}\t" + "\t".join(cells))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
