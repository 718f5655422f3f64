import random
import unittest
from fractions import Fraction as F


def _inst(k, tokens):
    from rbm.instances.models import Instance

    return Instance.from_tokens(k, tokens)


def _solution(inst, values):
    from rbm.relaxation.solution import FractionalSolution
    from rbm.shared.enums import SolveMode

    return FractionalSolution.from_values(inst, SolveMode.RATIONAL, values)


class DecomposeTests(unittest.TestCase):
    def test_aabb(self):
        from rbm.relaxation.msm import decompose_msm, verify_packing

        inst = _inst(2, "ABAB")
        sol = _solution(inst, {(1, 3): F(1), (3, 4): F(1), (2, 5): F(1), (4, 6): F(1)})
        packing = decompose_msm(sol)
        got = [(e.items, e.start, e.weight) for e in packing.entries]
        self.assertEqual(got, [((1, 3), 2, 1), ((2, 4), 4, 1)])
        self.assertEqual(packing.total(), 2)
        self.assertTrue(verify_packing(sol, packing).ok)

    def test_single_item(self):
        from rbm.relaxation.msm import decompose_msm

        sol = _solution(_inst(1, "A"), {(1, 2): F(1)})
        packing = decompose_msm(sol)
        self.assertEqual([(e.items, e.start, e.weight) for e in packing.entries], [((1,), 1, 1)])

    def test_half_half(self):
        from rbm.relaxation.msm import decompose_msm, verify_packing

        half = F(1, 2)
        inst = _inst(1, "AB")
        sol = _solution(inst, {(1, 2): half, (2, 2): half, (1, 3): half, (2, 3): half})
        packing = decompose_msm(sol)
        # każdy kolor ma jeden element, więc łańcuchy są jednoelementowe
        self.assertEqual(len(packing), 4)
        self.assertTrue(all(e.weight == half for e in packing.entries))
        for slot in inst.slots():
            covered = sum(e.weight for e in packing.entries if e.covers(slot))
            self.assertEqual(covered, 1)
        self.assertEqual(packing.total(), sol.z)
        self.assertTrue(verify_packing(sol, packing).ok)

    def test_entry_helpers(self):
        from rbm.relaxation.msm import MsmEntry

        e = MsmEntry(items=(2, 5, 7), start=4, weight=F(1, 3))
        self.assertEqual((e.first_slot, e.last_slot), (5, 7))
        self.assertEqual(e.slot_of(5), 6)
        self.assertIsNone(e.slot_of(3))
        self.assertTrue(e.covers(7))
        self.assertFalse(e.covers(8))

    def test_infeasible_input(self):
        from rbm.relaxation.msm import decompose_msm
        from rbm.shared.errors import InfeasibleSolutionError

        sol = _solution(_inst(1, "AB"), {(1, 2): F(1), (2, 3): F(1, 2)})
        with self.assertRaises(InfeasibleSolutionError):
            decompose_msm(sol)

    def test_solver_output_on_random_instances(self):
        from rbm.relaxation import solve_relaxation
        from rbm.relaxation.msm import decompose_msm, verify_packing

        rng = random.Random(31)
        for _ in range(20):
            n = rng.randint(2, 9)
            k = rng.randint(1, 3)
            inst = _inst(k, [rng.choice("ABCD") for _ in range(n)])
            sol = solve_relaxation(inst)
            report = verify_packing(sol, decompose_msm(sol))
            self.assertTrue(report.ok, report.problems)


class VerifyPackingTests(unittest.TestCase):
    def test_detects_wrong_weight_and_broken_chain(self):
        from rbm.relaxation.msm import MsmEntry, MsmPacking, verify_packing

        inst = _inst(2, "ABAB")
        sol = _solution(inst, {(1, 3): F(1), (3, 4): F(1), (2, 5): F(1), (4, 6): F(1)})
        bad = MsmPacking(
            entries=(
                MsmEntry(items=(1, 2), start=2, weight=F(1)),
                MsmEntry(items=(3, 4), start=4, weight=F(1, 2)),
            )
        )
        report = verify_packing(sol, bad)
        self.assertFalse(report.ok)
        self.assertTrue(any("next item of color" in p for p in report.problems))
        self.assertTrue(any(p.startswith("Σ λ") for p in report.problems))

    def test_detects_non_maximal_chain(self):
        from rbm.relaxation.msm import MsmEntry, MsmPacking, verify_packing

        inst = _inst(2, "ABAB")
        sol = _solution(inst, {(1, 3): F(1), (3, 4): F(1), (2, 5): F(1), (4, 6): F(1)})
        split = MsmPacking(
            entries=(
                MsmEntry(items=(1,), start=2, weight=F(1)),
                MsmEntry(items=(3,), start=3, weight=F(1)),
                MsmEntry(items=(2, 4), start=4, weight=F(1)),
            )
        )
        report = verify_packing(sol, split)
        self.assertTrue(any("not maximal" in p for p in report.problems))


if __name__ == "__main__":
    unittest.main()
