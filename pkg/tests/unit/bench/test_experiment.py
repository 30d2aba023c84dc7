import unittest
from unittest import mock

import numpy as np

from DDPerfLib.bench import RUN_COLUMNS, derive_report, run_experiment
from DDPerfLib.helper.exceptions import ConfigError, NonConvergenceError
from DDPerfLib.input import ExperimentConfig
from DDPerfLib.laplace_grid import build_grid, make_partition
from DDPerfLib.perf_metrics import TimingKind, TimingRecord


class TestRunExperiment(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.config = ExperimentConfig(nx=12, ny=12, partitions=((1, 1), (2, 2), (3, 3)), reps=2)
        cls.result_set = run_experiment(cls.config)

    def test_one_row_per_repetition(self):
        raw = self.result_set.raw
        # p = 1 partitions reuse the monolithic timing
        self.assertEqual(len(raw), 10)
        self.assertEqual((raw["kind"] == TimingKind.MONOLITHIC.value).sum(), 2)
        self.assertEqual(sorted(set(raw["p"])), [1, 4, 9])
        self.assertTrue(self.result_set.failures.empty)
        self.assertTrue(self.result_set.has_monolithic())

    def test_aggregated_minimum(self):
        aggregated = self.result_set.aggregated
        self.assertEqual(len(aggregated), 5)
        self.assertTrue((aggregated["repetitions"] == 2).all())
        raw = self.result_set.raw
        parallel = raw[(raw["kind"] == "parallel") & (raw["p"] == 4)]
        cell = aggregated[(aggregated["kind"] == "parallel") & (aggregated["p"] == 4)]
        self.assertEqual(cell["seconds"].iloc[0], parallel["seconds"].min())

    def test_local_size_of_centre_subdomain(self):
        grid = build_grid(12, 12)
        for px in (2, 3):
            partition = make_partition(grid, px, px)
            expected = partition.local_size(partition.center_subdomain())
            rows = self.result_set.raw[self.result_set.raw["p"] == px * px]
            self.assertTrue((rows["local_n"] == expected).all())

    def test_parallel_solves_converged(self):
        raw = self.result_set.raw
        parallel = raw[raw["kind"] == "parallel"]
        self.assertTrue((parallel["iterations"] > 0).all())
        self.assertTrue((parallel["residual"] <= 1e-6).all())

    def test_records(self):
        records = self.result_set.records
        self.assertEqual(len(records), 5)
        self.assertIsInstance(records[0], TimingRecord)
        self.assertIs(records[0].kind, TimingKind.MONOLITHIC)

    def test_run_summaries(self):
        runs, raw = self.result_set.runs, self.result_set.raw
        self.assertEqual(list(runs.columns), RUN_COLUMNS)
        self.assertEqual(list(runs["kind"]), list(raw["kind"]))
        np.testing.assert_array_equal(runs["seconds"], raw["seconds"])
        self.assertTrue((runs["factor_seconds"] > 0.0).all())
        self.assertTrue((runs["factor_seconds"] + runs["iterate_seconds"] <= runs["seconds"] + 1e-9).all())
        self.assertTrue((runs["flop_count"] > 0).all())
        self.assertTrue((runs["n"] == 144).all())
        parallel = runs[runs["kind"] == "parallel"]
        np.testing.assert_array_equal(parallel["iterations"], raw.loc[raw["kind"] == "parallel", "iterations"])

    def test_phase_split_in_report(self):
        runs = self.result_set.runs
        row = derive_report(self.result_set).row(4)
        cell = runs[(runs["kind"] == "parallel") & (runs["p"] == 4)]
        fastest = cell.loc[cell["seconds"].idxmin()]
        self.assertEqual(row["T"], fastest["seconds"])
        self.assertEqual(row["T_factor"], fastest["factor_seconds"])
        self.assertEqual(row["T_iterate"], fastest["iterate_seconds"])
        self.assertGreater(derive_report(self.result_set).row(1)["T_factor"], 0.0)

    def test_snapshot(self):
        self.assertEqual(self.result_set.config["partitions"], "1x1,2x2,3x3")
        self.assertIn("timer_resolution", self.result_set.environment)

    def test_report(self):
        report = derive_report(self.result_set)
        self.assertEqual(list(report.frame["p"]), [1, 4, 9])
        self.assertGreater(report.row(4)["S"], 0.0)

    def test_protocol_subset(self):
        config = ExperimentConfig(nx=8, ny=8, partitions=((2, 2),), reps=1, protocols=("single-local",))
        raw = run_experiment(config).raw
        self.assertEqual(list(raw["kind"]), ["single-local"])

    def test_explicit_load(self):
        config = ExperimentConfig(nx=8, ny=8, partitions=((2, 2),), reps=1, protocols=("monolithic",))
        raw = run_experiment(config, load=np.ones(64)).raw
        self.assertEqual(raw["n"].iloc[0], 64)

    def test_one_layout_per_subdomain_count(self):
        config = ExperimentConfig(nx=12, ny=12, partitions=((4, 1), (2, 2)), reps=1)
        with self.assertRaises(ConfigError):
            run_experiment(config)

    def test_non_convergence_becomes_failure_row(self):
        config = ExperimentConfig(nx=8, ny=8, partitions=((2, 2),), reps=3)
        with mock.patch("DDPerfLib.bench.experiment.solve_dd",
                        side_effect=NonConvergenceError(5, [1.0, 0.5])):
            rs = run_experiment(config)
        failures = rs.failures
        self.assertEqual(len(failures), 1)
        self.assertEqual(failures["kind"].iloc[0], "parallel")
        self.assertEqual(failures["iterations"].iloc[0], 5)
        report = derive_report(rs)
        self.assertTrue(any("parallel p=4" in note for note in report.notes))


if __name__ == '__main__':
    unittest.main()
