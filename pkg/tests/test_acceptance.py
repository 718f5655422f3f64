import os
import random
import unittest
from fractions import Fraction


def _random_instance(seed: int):
    from rbm.instances.generators import generate_instance
    from rbm.shared.enums import Distribution

    rng = random.Random(seed)
    dists = list(Distribution)
    return generate_instance(
        n=rng.randint(1, 10),
        k=rng.randint(1, 3),
        colors=rng.randint(1, 3),
        distribution=dists[seed % len(dists)],
        seed=seed,
    )


class SmallInstanceHarnessTests(unittest.TestCase):
    """Pełny potok na 200 małych instancjach, tryb dokładny."""

    def test_claims_and_sandwich(self):
        from rbm.cli.pipeline import PipelineOptions, run_pipeline
        from rbm.relaxation.feasibility import check_feasibility
        from rbm.shared.enums import ConstantsPreset, SolveMode

        options = PipelineOptions(mode=SolveMode.RATIONAL, preset=ConstantsPreset.PAPER, oracle=True, timings=False)
        for seed in range(200):
            inst = _random_instance(seed)
            with self.subTest(seed=seed, tokens="".join(inst.tokens()), k=inst.k):
                res = run_pipeline(inst, options)
                report = res.report
                self.assertEqual(report.claims, [])
                z = res.solution.z
                self.assertTrue(check_feasibility(res.solution).ok)
                self.assertLessEqual(report.msm_entries, res.solution.nonzeros())
                self.assertLessEqual(z, report.oracle_cost)
                self.assertLessEqual(report.oracle_cost, report.rounded_cost)
                self.assertLessEqual(report.oracle_cost, report.greedy_cost)
                self.assertLessEqual(report.rounded_cost, Fraction(report.bound_exact))

    def test_pipeline_is_deterministic(self):
        from rbm.cli.pipeline import PipelineOptions, run_pipeline
        from rbm.shared.enums import ConstantsPreset, SolveMode

        options = PipelineOptions(mode=SolveMode.RATIONAL, preset=ConstantsPreset.PAPER, timings=False)
        for seed in (3, 17, 101):
            inst = _random_instance(seed)
            a = run_pipeline(inst, options)
            b = run_pipeline(inst, options)
            self.assertEqual(a.report.model_dump_json(), b.report.model_dump_json())
            self.assertEqual(a.rounding.schedule, b.rounding.schedule)

    def test_float_mode_agrees_with_rational(self):
        from rbm.relaxation import solve_relaxation
        from rbm.shared.enums import SolveMode

        for seed in range(0, 60, 3):
            inst = _random_instance(seed)
            exact = solve_relaxation(inst, SolveMode.RATIONAL)
            approx = solve_relaxation(inst, SolveMode.FLOAT)
            self.assertAlmostEqual(approx.z, float(exact.z), places=6)

    def test_oracle_matches_brute_force(self):
        from rbm.oracle import brute_force_cost, optimal_cost

        for seed in range(200):
            inst = _random_instance(seed)
            if inst.n > 7:
                continue
            self.assertEqual(optimal_cost(inst).cost, brute_force_cost(inst), seed)


@unittest.skipUnless(os.getenv("RBM_RUN_SLOW") == "1", "set RBM_RUN_SLOW=1 to run scale tests")
class ScaleTests(unittest.TestCase):
    def test_float_pipeline_on_larger_instance(self):
        from rbm.cli.pipeline import PipelineOptions, run_pipeline
        from rbm.instances.generators import generate_instance
        from rbm.shared.enums import ConstantsPreset, Distribution, SolveMode

        inst = generate_instance(n=200, k=16, colors=8, distribution=Distribution.UNIFORM, seed=1)
        options = PipelineOptions(
            mode=SolveMode.FLOAT,
            preset=ConstantsPreset.PAPER,
            assert_claims=True,
            timings=False,
        )
        res = run_pipeline(inst, options)
        self.assertEqual(res.report.claims, [])
        self.assertGreaterEqual(res.report.rounded_cost, inst.num_colors)


if __name__ == "__main__":
    unittest.main()
