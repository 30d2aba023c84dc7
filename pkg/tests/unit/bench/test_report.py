import io
import json
import math
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from DDPerfLib.bench import ResultSet, derive_report, emit, format_value, reference_result_set, VIEWS
from DDPerfLib.bench.cli import reference_report
from DDPerfLib.bench.experiment import RAW_COLUMNS
from DDPerfLib.helper.exceptions import (EmptyReportError, InvalidTimingError, MissingRecordError,
                                         UnwritableDestinationError)


def normalise(line):
    return " ".join(line.split())


def result_set(rows, environment=None):
    raw = pd.DataFrame([dict(zip(RAW_COLUMNS, row)) for row in rows], columns=RAW_COLUMNS)
    return ResultSet({}, raw, environment or {})


class TestDeriveReport(unittest.TestCase):

    def setUp(self):
        self.report = derive_report(reference_result_set())

    def test_one_row_per_processor_count(self):
        self.assertEqual(list(self.report.frame["p"]), [1, 16, 25, 64, 256, 400])

    def test_sequential_row(self):
        row = self.report.row(1)
        self.assertEqual(row["S"], 1.0)
        self.assertEqual(row["S_DC"], 1.0)
        self.assertEqual(row["E_DC"], 1.0)
        self.assertEqual(row["local_n"], 10 ** 6)

    def test_derived_values(self):
        row = self.report.row(16)
        self.assertAlmostEqual(row["S"], 164.483, places=3)
        self.assertAlmostEqual(row["S_DC"], 233.943, places=3)
        self.assertAlmostEqual(row["E_DC"], 0.70309, places=5)
        self.assertAlmostEqual(row["p_over_S_DC"], 0.068393, places=5)
        self.assertAlmostEqual(row["T_s"], 1829.875)
        self.assertEqual(row["local_n"], 62500)
        self.assertEqual(row["workers"], 16)
        self.assertAlmostEqual(self.report.row(25)["S_DC"], 569.057, places=3)
        self.assertAlmostEqual(self.report.row(400)["S_DC_over_p"], 365.975)

    def test_no_unreliable_flag_without_timer_resolution(self):
        self.assertFalse(self.report.frame["unreliable"].any())

    def test_unknown_row(self):
        with self.assertRaises(KeyError):
            self.report.row(3)

    def test_missing_monolithic(self):
        rs = result_set([("parallel", 4, 100, 25, 4, 0, 0.1, 10, 1e-9)])
        with self.assertRaises(MissingRecordError):
            derive_report(rs)

    def test_missing_single_local(self):
        rs = result_set([("monolithic", 1, 100, 100, 1, 0, 0.5, 0, 0.0),
                         ("parallel", 4, 100, 25, 4, 0, 0.1, 10, 1e-9)])
        report = derive_report(rs)
        row = report.row(4)
        self.assertAlmostEqual(row["S"], 5.0)
        self.assertTrue(math.isnan(row["S_DC"]))
        self.assertTrue(math.isnan(row["E_DC"]))
        self.assertIn("n/a", emit(report, view="dc_framework"))

    def test_minimum_over_repetitions(self):
        rs = result_set([("monolithic", 1, 100, 100, 1, 0, 0.6, 0, 0.0),
                         ("monolithic", 1, 100, 100, 1, 1, 0.5, 0, 0.0),
                         ("parallel", 4, 100, 25, 1, 0, 0.2, 10, 1e-9),
                         ("parallel", 4, 100, 25, 1, 1, 0.1, 10, 1e-9),
                         ("single-local", 4, 100, 25, 1, 0, 0.04, 0, 0.0)])
        row = derive_report(rs).row(4)
        self.assertAlmostEqual(row["T"], 0.1)
        self.assertAlmostEqual(row["S_DC"], 12.5)
        self.assertAlmostEqual(row["E_DC"], 0.4)

    def test_unreliable_timings(self):
        rs = result_set([("monolithic", 1, 100, 100, 1, 0, 0.5, 0, 0.0),
                         ("parallel", 4, 100, 25, 1, 0, 1e-6, 10, 1e-9)],
                        environment={"timer_resolution": 1e-7})
        report = derive_report(rs)
        self.assertTrue(report.row(4)["unreliable"])
        self.assertFalse(report.row(1)["unreliable"])
        self.assertTrue(any("unreliable" in note for note in report.notes))

    def test_two_layouts_with_same_processor_count(self):
        rs = result_set([("monolithic", 1, 100, 100, 1, 0, 0.5, 0, 0.0),
                         ("parallel", 4, 100, 25, 1, 0, 0.1, 10, 1e-9),
                         ("parallel", 4, 100, 20, 1, 0, 0.2, 12, 1e-9)])
        with self.assertRaises(InvalidTimingError) as context:
            derive_report(rs)
        self.assertIn("p = 4", str(context.exception))

    def test_phase_split_missing_without_run_summaries(self):
        report = derive_report(reference_result_set())
        self.assertTrue(report.frame["T_factor"].isna().all())
        self.assertIn("T_factor", emit(report, view="full").splitlines()[0])

    def test_failed_cells_noted(self):
        rs = result_set([("monolithic", 1, 100, 100, 1, 0, 0.5, 0, 0.0),
                         ("parallel", 4, 100, 25, 1, 0, float("nan"), 100, 1e-3),
                         ("single-local", 4, 100, 25, 1, 0, 0.04, 0, 0.0)])
        report = derive_report(rs)
        self.assertTrue(math.isnan(report.row(4)["T"]))
        self.assertAlmostEqual(report.row(4)["S_DC"], 12.5)
        self.assertTrue(any("parallel p=4" in note for note in report.notes))


class TestEmit(unittest.TestCase):

    def setUp(self):
        self.report = reference_report()

    def test_dc_framework_table(self):
        lines = emit(self.report, view="dc_framework").splitlines()
        self.assertEqual(normalise(lines[0]), "p | p² | T(p,n) | S(p,n) | T_DC | S_DC | E_DC | S/p²")
        self.assertEqual(normalise(lines[2]), "1 | 1 | 29,278.00 | 1.0 | 29,278.00 | 1.0 | 100.0% | 100.0%")
        self.assertEqual(normalise(lines[3]), "16 | 256 | 178.00 | 164.5 | 125.15 | 233.9 | 70.3% | 64.3%")
        self.assertEqual(normalise(lines[7]),
                         "400 | 160,000 | 1.00 | 29,278.0 | 0.20 | 146,390.0 | 20.0% | 18.3%")

    def test_dc_comparison_table(self):
        lines = emit(self.report, view="dc_comparison").splitlines()
        self.assertEqual(normalise(lines[0]), "p | E_DC | p/S_DC")
        self.assertEqual(normalise(lines[6]), "256 | 27.5% | 0.48%")

    def test_discrepancy_note(self):
        text = emit(self.report, view="goal_comparison")
        self.assertIn("Printed S_DC at p = 25 is 596.1", text)
        self.assertNotIn("Printed S_DC at p = 16", text)

    def test_every_view_renders(self):
        for view in VIEWS:
            for fmt in ("table", "csv", "json"):
                self.assertTrue(emit(self.report, fmt, view=view))

    def test_deterministic(self):
        self.assertEqual(emit(self.report, "json"), emit(reference_report(), "json"))
        self.assertEqual(emit(self.report), emit(self.report))

    def test_csv_keeps_full_precision(self):
        lines = emit(self.report, "csv", view="speedup").splitlines()
        # headers holding a comma are quoted
        self.assertEqual(lines[0], 'p,n,"T(p,n)","S(p,n)",S/p,p/S')
        self.assertEqual(lines[1], "1,1000000,29278.0,1.0,1.0,1.0")
        self.assertTrue(lines[5].startswith("256,1000000,2.0,14639.0,"))

    def test_csv_reads_back(self):
        frame = pd.read_csv(io.StringIO(emit(self.report, "csv", view="speedup")))
        self.assertEqual(list(frame.columns), ["p", "n", "T(p,n)", "S(p,n)", "S/p", "p/S"])
        self.assertEqual(list(frame["p"]), [1, 16, 25, 64, 256, 400])
        self.assertEqual(frame["T(p,n)"].iloc[0], 29278.0)

    def test_json(self):
        payload = json.loads(emit(self.report, "json", view="dc_goal"))
        self.assertEqual(payload["view"], "dc_goal")
        self.assertEqual(payload["columns"], ["p", "n/p", "T_DC", "S_DC", "p²", "(p²-S_DC)/p²"])
        self.assertEqual(payload["rows"][5]["p²"], 160000)
        self.assertAlmostEqual(payload["rows"][5]["S_DC"], 146390.0)

    def test_filter_rows(self):
        lines = emit(self.report, view="speedup", p_values=[16, 25]).splitlines()
        self.assertTrue(normalise(lines[2]).startswith("16 |"))
        self.assertTrue(normalise(lines[3]).startswith("25 |"))

    def test_empty_report(self):
        with self.assertRaises(EmptyReportError):
            emit(self.report, p_values=[7])

    def test_unknown_view_and_format(self):
        with self.assertRaises(ValueError):
            emit(self.report, view="table9")
        with self.assertRaises(ValueError):
            emit(self.report, fmt="xml")

    def test_write_destination(self):
        with tempfile.TemporaryDirectory() as directory:
            destination = Path(directory) / "nested" / "report.csv"
            text = emit(self.report, "csv", destination)
            self.assertEqual(destination.read_text(encoding="utf-8"), text)

    def test_unwritable_destination(self):
        with tempfile.TemporaryDirectory() as directory:
            blocker = Path(directory) / "file"
            blocker.write_text("")
            with self.assertRaises(UnwritableDestinationError):
                emit(self.report, destination=blocker / "report.txt")


class TestFormatValue(unittest.TestCase):

    def test_styles(self):
        self.assertEqual(format_value(1000000, "count"), "1,000,000")
        self.assertEqual(format_value(125.15, "time"), "125.15")
        self.assertEqual(format_value(233.943, "speedup"), "233.9")
        self.assertEqual(format_value(10.2802, "multiple"), "10.28p")
        self.assertEqual(format_value(0.70309, "percent"), "70.3%")
        self.assertEqual(format_value(0.068393, "bound"), "6.84%")
        self.assertEqual(format_value(True, "flag"), "yes")
        self.assertEqual(format_value(False, "flag"), "")

    def test_missing(self):
        self.assertEqual(format_value(float("nan"), "speedup"), "n/a")
        self.assertEqual(format_value(None, "time"), "n/a")

    def test_unknown_style(self):
        with self.assertRaises(ValueError):
            format_value(1.0, "scientific")


if __name__ == '__main__':
    unittest.main()
