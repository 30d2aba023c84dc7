import json
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from DDPerfLib.bench import derive_report, load_results, reference_result_set, run_experiment, save_results
from DDPerfLib.bench.experiment import RAW_COLUMNS, RUN_COLUMNS
from DDPerfLib.input import ExperimentConfig
from DDPerfLib.helper.exceptions import SchemaError

HEADER = ",".join(RAW_COLUMNS)


class TestResultsIO(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = Path(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()

    def write_csv(self, *lines):
        path = self.directory / "hand.csv"
        path.write_text("\n".join((HEADER,) + lines) + "\n", encoding="utf-8")
        return path

    def test_save_writes_schema(self):
        csv_path, json_path = save_results(reference_result_set(), self.directory)
        self.assertEqual(csv_path.read_text(encoding="utf-8").splitlines()[0], HEADER)
        payload = json.loads(json_path.read_text(encoding="utf-8"))
        self.assertEqual(payload["columns"], RAW_COLUMNS)
        self.assertEqual(len(payload["rows"]), 11)
        self.assertIsNone(payload["environment"]["timer_resolution"])

    def test_round_trip_gives_same_report(self):
        rs = reference_result_set()
        csv_path, json_path = save_results(rs, self.directory)
        expected = derive_report(rs).frame
        for path in (csv_path, json_path, self.directory):
            loaded = load_results(path)
            self.assertEqual(loaded.config, rs.config)
            pd.testing.assert_frame_equal(derive_report(loaded).frame, expected, check_dtype=False)

    def test_run_summaries_round_trip(self):
        rs = run_experiment(ExperimentConfig(nx=6, ny=6, partitions=((2, 2),), reps=2))
        csv_path, json_path = save_results(rs, self.directory)
        self.assertEqual(csv_path.read_text(encoding="utf-8").splitlines()[0], HEADER)
        payload = json.loads(json_path.read_text(encoding="utf-8"))
        self.assertEqual(len(payload["runs"]), 6)
        self.assertEqual(set(payload["runs"][0]), set(RUN_COLUMNS))
        expected = derive_report(rs).frame
        for path in (csv_path, json_path, self.directory):
            loaded = load_results(path)
            pd.testing.assert_frame_equal(loaded.runs, rs.runs, check_dtype=False)
            frame = derive_report(loaded).frame
            pd.testing.assert_series_equal(frame["T_factor"], expected["T_factor"], check_dtype=False)
            pd.testing.assert_series_equal(frame["T_iterate"], expected["T_iterate"], check_dtype=False)
            self.assertFalse(frame["T_factor"].isna().any())

    def test_csv_without_sidecar_has_no_phase_split(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.5,0,0")
        rs = load_results(path)
        self.assertTrue(rs.runs.empty)
        self.assertTrue(derive_report(rs).frame["T_factor"].isna().all())

    def test_full_precision(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.3333333333333333,0,1.2345678901234567e-15")
        raw = load_results(path).raw
        self.assertEqual(raw["seconds"].iloc[0], 0.3333333333333333)
        self.assertEqual(raw["residual"].iloc[0], 1.2345678901234567e-15)

    def test_hand_written_csv(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.5,0,0",
                              "parallel,4,100,25,4,0,0.1,12,1e-9",
                              "single-local,4,100,25,1,0,0.04,0,0")
        rs = load_results(path)
        self.assertEqual(rs.config, {})
        row = derive_report(rs).row(4)
        self.assertAlmostEqual(row["S"], 5.0)
        self.assertAlmostEqual(row["E_DC"], 0.4)

    def test_failed_cell_round_trip(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.5,0,0",
                              "parallel,4,100,25,1,0,,100,0.001")
        rs = load_results(path)
        self.assertEqual(len(rs.failures), 1)

    def test_bad_value_names_line(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.5,0,0",
                              "parallel,4,100,25,4,0,-0.1,12,1e-9")
        with self.assertRaises(SchemaError) as context:
            load_results(path)
        self.assertEqual(context.exception.line, 3)
        self.assertTrue(str(context.exception).startswith("line 3:"))

    def test_unknown_kind(self):
        path = self.write_csv("sequential,1,100,100,1,0,0.5,0,0")
        with self.assertRaises(SchemaError) as context:
            load_results(path)
        self.assertEqual(context.exception.line, 2)

    def test_non_numeric_value(self):
        path = self.write_csv("monolithic,1,100,100,1,0,0.5,0,0",
                              "monolithic,1,100,100,1,1,fast,0,0")
        with self.assertRaises(SchemaError) as context:
            load_results(path)
        self.assertEqual(context.exception.line, 3)

    def test_fractional_count(self):
        path = self.write_csv("parallel,2.5,100,25,1,0,0.5,0,0")
        with self.assertRaises(SchemaError):
            load_results(path)

    def test_monolithic_with_many_processors(self):
        path = self.write_csv("monolithic,4,100,100,1,0,0.5,0,0")
        with self.assertRaises(SchemaError):
            load_results(path)

    def test_wrong_header(self):
        path = self.directory / "bad.csv"
        path.write_text("kind,p,n,seconds\nmonolithic,1,100,0.5\n", encoding="utf-8")
        with self.assertRaises(SchemaError) as context:
            load_results(path)
        self.assertEqual(context.exception.line, 1)

    def test_empty_file(self):
        path = self.directory / "empty.csv"
        path.write_text("", encoding="utf-8")
        with self.assertRaises(SchemaError):
            load_results(path)

    def test_bad_json(self):
        path = self.directory / "timings.json"
        path.write_text(json.dumps({"columns": ["kind"], "rows": []}), encoding="utf-8")
        with self.assertRaises(SchemaError):
            load_results(path)


if __name__ == '__main__':
    unittest.main()
