import unittest

from DDPerfLib.bench import reference_result_set, printed_goal_discrepancies
from DDPerfLib.bench.reference import LOCAL_SECONDS, PARALLEL_SECONDS, REFERENCE_N


class TestReferenceData(unittest.TestCase):

    def test_result_set(self):
        rs = reference_result_set()
        self.assertTrue(rs.has_monolithic())
        self.assertEqual(len(rs.aggregated), 11)
        self.assertEqual(set(rs.raw["n"]), {REFERENCE_N})
        self.assertEqual(set(PARALLEL_SECONDS), set(LOCAL_SECONDS))

    def test_local_sizes_shrink_with_p(self):
        sizes = [LOCAL_SECONDS[p][0] for p in sorted(LOCAL_SECONDS)]
        self.assertEqual(sizes, sorted(sizes, reverse=True))

    def test_only_p25_goal_disagrees(self):
        discrepancies = printed_goal_discrepancies()
        self.assertEqual(list(discrepancies["p"]), [25])
        row = discrepancies.iloc[0]
        self.assertEqual(row["printed"], 596.1)
        self.assertAlmostEqual(row["recomputed"], 569.057, places=3)
        self.assertGreater(row["relative_gap"], 0.04)


if __name__ == '__main__':
    unittest.main()
