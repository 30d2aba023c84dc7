import unittest
import numpy as np

from DDPerfLib.helper.exceptions import InsufficientDataError
from DDPerfLib.perf_metrics import fit_complexity


class TestFitComplexity(unittest.TestCase):

    def test_exact_power_law(self):
        sizes = np.array([100.0, 400.0, 1600.0, 6400.0])
        alpha, c, residual = fit_complexity(sizes, 3e-6 * sizes ** 2)
        self.assertAlmostEqual(alpha, 2.0)
        self.assertAlmostEqual(c, 3e-6)
        self.assertLess(residual, 1e-9)

    def test_local_solve_times_are_quadratic(self):
        # sizes and sequential times of the local problems at p = 16 .. 400 on 10**6 unknowns
        sizes = [62500, 40000, 15625, 4096, 2500]
        times = [125.15, 51.45, 7.90, 0.55, 0.2]
        alpha, _, _ = fit_complexity(sizes, times)
        self.assertAlmostEqual(alpha, 2.0, delta=0.1)

    def test_too_few_points(self):
        with self.assertRaises(InsufficientDataError):
            fit_complexity([1.0, 2.0], [1.0, 4.0])

    def test_invalid_points(self):
        with self.assertRaises(ValueError):
            fit_complexity([1.0, 2.0, 0.0], [1.0, 4.0, 1.0])
        with self.assertRaises(ValueError):
            fit_complexity([1.0, 2.0, 2.0], [1.0, 4.0, 4.0])
        with self.assertRaises(ValueError):
            fit_complexity([1.0, 2.0, 3.0], [1.0, 4.0])


if __name__ == '__main__':
    unittest.main()
