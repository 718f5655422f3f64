import random
import unittest
from fractions import Fraction as F


def _inst(k, tokens):
    from rbm.instances.models import Instance

    return Instance.from_tokens(k, tokens)


def _aabb_solution():
    from rbm.relaxation.solution import FractionalSolution
    from rbm.shared.enums import SolveMode

    inst = _inst(2, "ABAB")
    values = {(1, 3): F(1), (3, 4): F(1), (2, 5): F(1), (4, 6): F(1)}
    return FractionalSolution.from_values(inst, SolveMode.RATIONAL, values)


def _block(position, color, size, volume, first):
    from rbm.rounding.snapshot import Block

    return Block(
        position=position,
        color=color,
        items=tuple(range(first, first + size)),
        t_first=position,
        volume=volume,
    )


def _snapshot(blocks, delta):
    from rbm.rounding.snapshot import Snapshot

    return Snapshot(slot=10, blocks=tuple(blocks), delta=delta, uncharged=delta)


def _interleaved_solution(inst):
    from rbm.instances.models import Schedule
    from rbm.relaxation.solution import schedule_to_solution

    # A B C A B: 1 4 2 5 3
    return schedule_to_solution(inst, Schedule.from_items(inst.k, [1, 4, 2, 5, 3])).solution


class ConstantsTests(unittest.TestCase):
    def test_paper_preset(self):
        from rbm.rounding.constants import PAPER

        PAPER.validate()
        self.assertEqual(PAPER.gamma, F(140, 39))
        self.assertEqual(PAPER.cost_factor, 140)
        self.assertEqual(PAPER.alpha, 144)
        self.assertEqual(PAPER.cost_bound(F(2)), 284)
        self.assertEqual(PAPER.uncharged_ratio, F(35, 39))

    def test_optimized_preset_is_below_135(self):
        from rbm.rounding.constants import load_preset

        consts = load_preset("optimized")
        self.assertLess(consts.alpha, 135)
        self.assertGreater(float(consts.gamma), consts.gamma_threshold)

    def test_invalid_constants(self):
        from rbm.rounding.constants import Constants
        from rbm.shared.errors import ConstantsError

        bad = [
            Constants(F(0), F(1, 10), F(1, 5)),
            Constants(F(1, 10), F(1, 10), F(1, 5)),
            Constants(F(1, 40), F(1, 10), F(1, 2)),
            Constants(F(1, 40), F(1, 10), F(1)),
        ]
        for consts in bad:
            with self.subTest(consts=consts), self.assertRaises(ConstantsError):
                consts.validate()

    def test_unknown_preset(self):
        from rbm.rounding.constants import load_preset
        from rbm.shared.errors import ConstantsError

        with self.assertRaises(ConstantsError):
            load_preset("tight")

    def test_float_view(self):
        from rbm.rounding.constants import PAPER
        from rbm.shared.enums import SolveMode

        d1, d2, d3, gamma = PAPER.in_mode(SolveMode.FLOAT)
        self.assertIsInstance(d1, float)
        self.assertAlmostEqual(gamma, 140 / 39)
        self.assertEqual(PAPER.in_mode(SolveMode.RATIONAL)[0], F(1, 40))


class StateTests(unittest.TestCase):
    def test_evict_sweeps_arrivals(self):
        from rbm.rounding.state import RoundingState

        inst = _inst(2, "ABAB")
        state = RoundingState(inst)
        self.assertEqual(state.next_slot, 3)
        self.assertEqual(state.available_items(), [1, 2, 3])
        self.assertEqual(state.held_items(), [1, 2])
        self.assertEqual(state.evict(inst.color(1)), [1, 3])
        self.assertEqual(state.next_slot, 5)

    def test_evict_absent_color(self):
        from rbm.rounding.state import RoundingState

        inst = _inst(2, "ABAB")
        state = RoundingState(inst)
        state.evict(0)
        self.assertEqual(state.evict(0), [])
        self.assertEqual(state.next_slot, 5)
        self.assertEqual(state.evict(1), [2, 4])
        self.assertTrue(state.done)
        self.assertEqual(state.to_schedule().items_in_order(), [1, 3, 2, 4])

    def test_fill_takes_item_out_of_buffer(self):
        from rbm.rounding.state import RoundingState
        from rbm.shared.errors import DomainError

        inst = _inst(2, "ABAB")
        state = RoundingState(inst)
        with self.assertRaises(DomainError):
            state.fill(4)
        state.fill(1)
        self.assertEqual(state.available_items(), [2, 3, 4])
        self.assertEqual(state.held_items(), [2, 3])
        self.assertEqual(state.count(inst.color(1)), 1)
        with self.assertRaises(DomainError) as ctx:
            state.fill(1)
        self.assertEqual(ctx.exception.code, "item_not_buffered")
        self.assertEqual(state.next_slot, 4)

    def test_simulate_matches_evict(self):
        from rbm.rounding.state import RoundingState

        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(1, 14)
            k = rng.randint(1, 4)
            inst = _inst(k, [rng.choice("ABC") for _ in range(n)])
            state = RoundingState(inst)
            while not state.done:
                colors = [c for c in range(inst.num_colors) if state.has_color(c)]
                color = rng.choice(colors)
                predicted = state.simulate_evict(color)
                state.evict(color)
                self.assertEqual(state.completed_slot, predicted)

    def test_charge_updates_tau(self):
        from rbm.rounding.state import RoundingState

        state = RoundingState(_inst(2, "ABAB"))
        self.assertEqual(state.tau[3], 2)
        state.charge([1, 3], 4)
        self.assertEqual((state.tau[1], state.tau[3]), (4, 4))


class TargetTests(unittest.TestCase):
    def test_targets_aabb(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.targets import compute_targets

        targets = compute_targets(_aabb_solution(), F(1, 5), exact_tolerance())
        self.assertEqual(targets, [4] * 5 + [6] * 5 + [6])

    def test_no_full_threshold(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.targets import compute_targets

        self.assertEqual(compute_targets(_aabb_solution(), F(3), exact_tolerance()), [6])

    def test_window_tie_prefers_earliest_arrival(self):
        from rbm.rounding.state import RoundingState
        from rbm.rounding.targets import compute_window

        inst = _inst(2, "ABAB")
        window = compute_window(inst, RoundingState(inst), 4)
        self.assertEqual(window.items, (3,))
        self.assertEqual(window.color, inst.color(3))
        self.assertEqual(window.target, 4)

    def test_window_single_color(self):
        from rbm.rounding.state import RoundingState
        from rbm.rounding.targets import compute_window

        inst = _inst(1, "AAAAAA")
        window = compute_window(inst, RoundingState(inst), 6)
        self.assertEqual(window.size, 5)
        self.assertEqual(window.target, max(2, 6 - 4))

    def test_window_target_before_slot(self):
        from rbm.rounding.state import RoundingState
        from rbm.rounding.targets import compute_window

        inst = _inst(2, "ABAB")
        window = compute_window(inst, RoundingState(inst), 2)
        self.assertEqual(window.items, ())
        self.assertEqual(window.target, 3)


class DeltaTests(unittest.TestCase):
    def test_zero_when_following_solution(self):
        from rbm.relaxation import weights
        from rbm.rounding.snapshot import delta
        from rbm.rounding.state import RoundingState

        sol = _aabb_solution()
        wv = weights(sol)
        state = RoundingState(sol.inst)
        for item in (1, 3, 2):
            state.fill(item)
            self.assertEqual(delta(state, wv), 0)

    def test_removing_unweighted_item(self):
        from rbm.relaxation import weights
        from rbm.rounding.snapshot import delta
        from rbm.rounding.state import RoundingState

        sol = _aabb_solution()
        state = RoundingState(sol.inst)
        state.fill(2)
        self.assertGreaterEqual(delta(state, weights(sol)), 1)

    def test_snapshot_blocks(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.relaxation import weights
        from rbm.rounding.snapshot import take_snapshot
        from rbm.rounding.state import RoundingState

        inst = _inst(2, "ABCAB")
        sol = _interleaved_solution(inst)
        state = RoundingState(inst)
        state.fill(1)
        t_of = [0, 3, 5, 6, 4, 7]
        snap = take_snapshot(state, weights(sol), t_of, exact_tolerance())
        self.assertEqual(snap.slot, 3)
        self.assertEqual([b.items for b in snap.blocks], [(2,), (3,)])
        self.assertEqual(snap.delta, 0)


class ScanTests(unittest.TestCase):
    def test_scan_example(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.constants import PAPER
        from rbm.rounding.scan import case3_scan

        blocks = [
            _block(1, 0, 3, F(9, 100), 1),
            _block(2, 1, 2, F(0), 4),
            _block(3, 2, 1, F(5, 100), 6),
        ]
        plan = case3_scan(_snapshot(blocks, F(1)), 3, PAPER, exact_tolerance())
        self.assertEqual([ev.block.position for ev in plan.evictions], [3, 2])
        self.assertEqual([ev.trigger for ev in plan.evictions], [F(1, 20), F(3, 100)])
        self.assertEqual([tuple(b.position for b in ev.charged) for ev in plan.evictions], [(), (1,)])
        self.assertIsNone(plan.fallback)
        self.assertEqual(plan.removed_held, 3)

    def test_all_zero_volume_uses_fallback(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.constants import PAPER
        from rbm.rounding.scan import case3_scan

        blocks = [_block(1, 0, 3, F(0), 1), _block(2, 1, 2, F(0), 4), _block(3, 2, 1, F(0), 6)]
        plan = case3_scan(_snapshot(blocks, F(1)), 1, PAPER, exact_tolerance())
        self.assertEqual(plan.evictions, ())
        self.assertEqual(plan.fallback.position, 1)
        self.assertEqual(plan.removed_held, 3)

    def test_single_block(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.constants import PAPER
        from rbm.rounding.scan import case3_scan

        plan = case3_scan(_snapshot([_block(1, 0, 2, F(1, 10), 1)], F(1)), 2, PAPER, exact_tolerance())
        self.assertEqual(len(plan.evictions), 1)
        self.assertEqual(plan.evictions[0].charged, ())
        self.assertEqual(plan.removed_held, 2)

    def test_jump_to_largest_block(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.constants import PAPER
        from rbm.rounding.scan import case3_scan

        blocks = [
            _block(1, 0, 1, F(0), 1),
            _block(2, 1, 5, F(1), 2),
            _block(3, 2, 1, F(1), 7),
            _block(4, 3, 1, F(0), 8),
        ]
        plan = case3_scan(_snapshot(blocks, F(1)), 2, PAPER, exact_tolerance())
        self.assertEqual([ev.block.position for ev in plan.evictions], [3, 2])
        self.assertEqual(plan.removed_held, 6)

    def test_precondition(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding.constants import PAPER
        from rbm.rounding.scan import case3_scan
        from rbm.shared.errors import ValidationError

        with self.assertRaises(ValidationError):
            case3_scan(_snapshot([_block(1, 0, 2, F(0), 1)], F(0)), 5, PAPER, exact_tolerance())


class RoundSolutionTests(unittest.TestCase):
    def _round(self, k, tokens, consts=None):
        from rbm.lp.numeric import exact_tolerance
        from rbm.relaxation import solve_relaxation
        from rbm.rounding import PAPER, check_claims, round_solution

        consts = consts or PAPER
        sol = solve_relaxation(_inst(k, tokens))
        result = round_solution(sol, consts, tol=exact_tolerance())
        return sol, result, check_claims(sol, result, consts, exact_tolerance())

    def test_abab(self):
        from rbm.instances.services import schedule_cost, validate_schedule

        sol, result, claims = self._round(2, "ABAB")
        self.assertTrue(validate_schedule(sol.inst, result.schedule).ok)
        cost = schedule_cost(sol.inst, result.schedule)
        self.assertGreaterEqual(cost, 2)
        self.assertLessEqual(cost, 284)
        self.assertTrue(claims.ok, claims.messages())

    def test_single_color_uses_case_1(self):
        from rbm.instances.services import schedule_cost

        sol, result, claims = self._round(2, "AAA")
        self.assertEqual(schedule_cost(sol.inst, result.schedule), 1)
        self.assertEqual(result.trace.phases[0].cases, ["1"])
        self.assertEqual(len(result.trace.phases), 1)
        self.assertTrue(claims.ok, claims.messages())

    def test_optimized_constants(self):
        from rbm.rounding import OPTIMIZED

        _sol, _result, claims = self._round(2, "ABCABCBA", OPTIMIZED)
        self.assertTrue(claims.ok, claims.messages())

    def test_steps_tile_the_schedule(self):
        sol, result, _claims = self._round(3, "ABCADBCAD")
        slots = []
        for st in result.trace.steps:
            slots.extend(range(st.slot_from, st.slot_to + 1))
        self.assertEqual(slots, list(range(4, 13)))
        text = result.trace.serialize(sol.inst)
        self.assertTrue(text.startswith("PHASE 1 "))
        self.assertIn("STEP ", text)

    def test_integral_input(self):
        from rbm.instances.services import schedule_cost
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding import PAPER, round_solution

        sol = _aabb_solution()
        result = round_solution(sol, PAPER, tol=exact_tolerance())
        self.assertEqual(schedule_cost(sol.inst, result.schedule), 2)

    def test_float_mode(self):
        from rbm.instances.services import validate_schedule
        from rbm.lp.numeric import tolerance_for
        from rbm.relaxation import solve_relaxation
        from rbm.rounding import PAPER, check_claims, round_solution
        from rbm.shared.enums import SolveMode

        sol = solve_relaxation(_inst(2, "ABCCBAAB"), SolveMode.FLOAT)
        tol = tolerance_for(SolveMode.FLOAT, 1e-9)
        result = round_solution(sol, PAPER, tol=tol)
        self.assertTrue(validate_schedule(sol.inst, result.schedule).ok)
        self.assertTrue(check_claims(sol, result, PAPER, tol).ok)

    def test_rejects_infeasible_input(self):
        from rbm.relaxation.solution import FractionalSolution
        from rbm.rounding import round_solution
        from rbm.shared.enums import SolveMode
        from rbm.shared.errors import InfeasibleSolutionError

        sol = FractionalSolution.from_values(_inst(1, "AB"), SolveMode.RATIONAL, {(1, 2): F(1)})
        with self.assertRaises(InfeasibleSolutionError):
            round_solution(sol)

    def test_rejects_invalid_constants(self):
        from rbm.rounding import Constants, round_solution
        from rbm.shared.errors import ConstantsError

        with self.assertRaises(ConstantsError):
            round_solution(_aabb_solution(), Constants(F(1, 10), F(1, 10), F(1, 5)))


class ClaimsReportTests(unittest.TestCase):
    def test_assert_claims_raises_on_violation(self):
        from rbm.instances.models import Schedule
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding import PAPER, assert_claims, round_solution
        from rbm.rounding.service import RoundingResult
        from rbm.shared.errors import ClaimViolationError

        sol = _aabb_solution()
        result = round_solution(sol, PAPER, tol=exact_tolerance())
        broken = RoundingResult(schedule=Schedule.from_items(2, [1, 1, 2, 4]), trace=result.trace)
        with self.assertRaises(ClaimViolationError):
            assert_claims(sol, broken, PAPER, exact_tolerance())

    def test_case4_follow_up(self):
        from rbm.rounding.claims import case4_follow_up_violations
        from rbm.rounding.trace import StepRecord
        from rbm.shared.enums import StepCase

        def steps(*cases):
            return [StepRecord(1, c, 3 + pos, 3 + pos, 0, (pos + 1,)) for pos, c in enumerate(cases)]

        ok = steps(StepCase.CASE_4, StepCase.CASE_0, StepCase.CASE_0, StepCase.CASE_3_SCAN)
        self.assertEqual(case4_follow_up_violations(ok), [])
        self.assertEqual(case4_follow_up_violations(steps(StepCase.CASE_0, StepCase.CASE_4)), [])
        bad = steps(StepCase.CASE_4, StepCase.CASE_0, StepCase.CASE_4)
        self.assertEqual([s.slot_from for s in case4_follow_up_violations(bad)], [5])

    def test_case4_follow_up_is_checked(self):
        from rbm.lp.numeric import exact_tolerance
        from rbm.rounding import PAPER, check_claims, round_solution

        sol = _aabb_solution()
        result = round_solution(sol, PAPER, tol=exact_tolerance())
        report = check_claims(sol, result, PAPER, exact_tolerance())
        self.assertIn("case4_followed_by_case_1_to_3", report.checked)
        self.assertTrue(report.ok, report.messages())


class TraceTests(unittest.TestCase):
    def test_charges_precede_the_step_they_pay_for(self):
        from rbm.rounding.trace import ChargeRecord, DeltaRecord, PhaseRecord, RoundingTrace, StepRecord
        from rbm.shared.enums import StepCase

        inst = _inst(2, "ABAB")
        trace = RoundingTrace(
            steps=[
                StepRecord(1, StepCase.CASE_1, 3, 4, 0, (1, 3)),
                StepRecord(1, StepCase.CASE_3_SCAN, 5, 6, 1, (2, 4)),
            ],
            phases=[PhaseRecord(number=1, target_index=0, target=6, start_slot=3, end_slot=6)],
            charges=[ChargeRecord(phase=1, slot=4, block_color=0, items=(1,), amount=F(1, 20), step_index=1)],
            deltas=[DeltaRecord(slot=4, value=F(1, 10))],
        )
        self.assertEqual(
            trace.serialize(inst).splitlines(),
            [
                "PHASE 1 6",
                "STEP 1 3 4 A 2",
                "DELTA 4 1/10",
                "CHARGE 4 A 1/20",
                "STEP 3scan 5 6 B 2",
            ],
        )


if __name__ == "__main__":
    unittest.main()
