import unittest
from fractions import Fraction as F


def _lp(num_vars, objective, rows, lower=None):
    from rbm.lp.program import Constraint, LinearProgram, Relation

    cons = tuple(
        Constraint(row=tuple(row), relation=Relation(rel), rhs=rhs, name=f"r{idx}")
        for idx, (row, rel, rhs) in enumerate(rows)
    )
    return LinearProgram(
        num_vars=num_vars,
        objective=tuple(objective),
        constraints=cons,
        lower_bounds=tuple(lower) if lower is not None else None,
    )


class RationalSimplexTests(unittest.TestCase):
    def test_small_program(self):
        from rbm.lp import LpStatus, check, solve

        # min x + y, x + y >= 1, x - y = 0
        lp = _lp(2, [1, 1], [([(0, 1), (1, 1)], ">=", 1), ([(0, 1), (1, -1)], "=", 0)])
        sol = solve(lp)
        self.assertEqual(sol.status, LpStatus.OPTIMAL)
        self.assertEqual(sol.values, (F(1, 2), F(1, 2)))
        self.assertEqual(sol.objective, 1)
        self.assertTrue(check(lp, sol.values).ok)

    def test_infeasible(self):
        from rbm.lp import LpStatus, solve

        lp = _lp(1, [1], [([(0, 1)], ">=", 2), ([(0, -1)], ">=", -1)])
        self.assertEqual(solve(lp).status, LpStatus.INFEASIBLE)

    def test_unbounded(self):
        from rbm.lp import LpStatus, solve

        lp = _lp(1, [-1], [([(0, 1)], ">=", 1)])
        self.assertEqual(solve(lp).status, LpStatus.UNBOUNDED)

    def test_lower_bounds_are_respected(self):
        from rbm.lp import solve

        lp = _lp(2, [1, 2], [([(0, 1), (1, 1)], ">=", 0)], lower=[3, F(1, 2)])
        sol = solve(lp)
        self.assertEqual(sol.values, (3, F(1, 2)))
        self.assertEqual(sol.objective, 4)

    def test_redundant_equalities(self):
        from rbm.lp import solve

        lp = _lp(2, [1, 0], [([(0, 1), (1, 1)], "=", 1), ([(0, 2), (1, 2)], "=", 2)])
        sol = solve(lp)
        self.assertEqual(sol.values, (0, 1))
        self.assertEqual(sol.objective, 0)

    def test_degenerate_cycling_example_terminates(self):
        from rbm.lp import LpStatus, solve

        # klasyczny przykład cyklujący bez reguły Blanda
        lp = _lp(
            4,
            [F(-3, 4), 20, F(-1, 2), 6],
            [
                ([(0, F(-1, 4)), (1, 8), (2, 1), (3, -9)], ">=", 0),
                ([(0, F(-1, 2)), (1, 12), (2, F(1, 2)), (3, -3)], ">=", 0),
                ([(2, -1)], ">=", -1),
            ],
        )
        sol = solve(lp)
        self.assertEqual(sol.status, LpStatus.OPTIMAL)
        self.assertEqual(sol.objective, F(-5, 4))
        self.assertEqual(sol.values, (1, 0, 1, 0))

    def test_malformed_program(self):
        from rbm.lp import solve
        from rbm.shared.errors import MalformedProgramError

        with self.assertRaises(MalformedProgramError):
            solve(_lp(1, [1], [([(1, 1)], ">=", 0)]))
        with self.assertRaises(MalformedProgramError):
            solve(_lp(1, [1], [([(0, 1), (0, 2)], ">=", 0)]))
        with self.assertRaises(MalformedProgramError):
            solve(_lp(2, [1], []))

    def test_debug_dump_writes_final_tableau(self):
        import tempfile
        from dataclasses import replace
        from pathlib import Path

        from rbm.app.config import get_settings
        from rbm.lp import solve

        # x <= 1, y <= 1 jako -x >= -1, -y >= -1: nadwyżki bazowe od startu
        lp = _lp(2, [1, 1], [([(0, -1)], ">=", -1), ([(1, -1)], ">=", -1)])
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "debug" / "tableau.tsv"
            sol = solve(lp, settings=replace(get_settings(), lp_debug_dump=str(path)))
            lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(sol.values, (0, 0))
        self.assertEqual(lines[0], "basis\trhs\tc0\tc1\tc2\tc3")
        self.assertEqual(len(lines), 3)
        self.assertEqual(lines[1], "c2\t1\t1\t0\t1\t0")
        self.assertEqual(lines[2], "c3\t1\t0\t1\t0\t1")


class CheckTests(unittest.TestCase):
    def test_reports_first_violated_row(self):
        from rbm.lp import check

        lp = _lp(2, [1, 1], [([(0, 1)], ">=", 1), ([(0, 1), (1, 1)], "=", 2)])
        res = check(lp, (F(1), F(0)))
        self.assertFalse(res.ok)
        self.assertEqual(res.index, 1)
        self.assertIn("r1", res.describe())

    def test_bound_violation(self):
        from rbm.lp import check

        lp = _lp(1, [1], [], lower=[2])
        res = check(lp, (F(1),))
        self.assertFalse(res.ok)
        self.assertEqual(res.relation, "bound")

    def test_float_values_use_tolerance(self):
        from rbm.lp import check

        lp = _lp(1, [1], [([(0, 1)], "=", 1)])
        self.assertTrue(check(lp, (1.0 + 1e-12,), eps=1e-9).ok)
        self.assertFalse(check(lp, (F(1) + F(1, 10**12),)).ok)

    def test_wrong_length(self):
        from rbm.lp import check
        from rbm.shared.errors import ValidationError

        with self.assertRaises(ValidationError):
            check(_lp(2, [1, 1], []), (F(0),))


class FloatBackendTests(unittest.TestCase):
    def _relaxation(self):
        from rbm.instances.models import Instance
        from rbm.relaxation.builder import build_lp

        return build_lp(Instance.from_tokens(2, "ABCABBAC")).program

    def test_tableau_and_highs_agree_with_rational(self):
        from rbm.lp import solve
        from rbm.shared.enums import FloatBackend, SolveMode

        lp = self._relaxation()
        exact = solve(lp, SolveMode.RATIONAL)
        tab = solve(lp, SolveMode.FLOAT, backend=FloatBackend.TABLEAU)
        highs = solve(lp, SolveMode.FLOAT, backend=FloatBackend.HIGHS)
        self.assertEqual(tab.backend, "tableau")
        self.assertEqual(highs.backend, "highs")
        self.assertAlmostEqual(tab.objective, float(exact.objective), places=7)
        self.assertAlmostEqual(highs.objective, float(exact.objective), places=7)

    def test_auto_backend_by_size(self):
        from dataclasses import replace

        from rbm.app.config import get_settings
        from rbm.lp import pick_float_backend
        from rbm.shared.enums import FloatBackend

        lp = self._relaxation()
        settings = get_settings()
        small = replace(settings, float_backend=FloatBackend.AUTO, tableau_cell_limit=10**9)
        tiny = replace(settings, float_backend=FloatBackend.AUTO, tableau_cell_limit=1)
        self.assertEqual(pick_float_backend(lp, small), FloatBackend.TABLEAU)
        self.assertEqual(pick_float_backend(lp, tiny), FloatBackend.HIGHS)
        self.assertEqual(pick_float_backend(lp, tiny, FloatBackend.TABLEAU), FloatBackend.TABLEAU)


if __name__ == "__main__":
    unittest.main()
