import unittest
import numpy as np
import scipy.linalg
import scipy.sparse as sp

from DDPerfLib.band_lu import BandedMatrix, factor, solve, flop_model
from DDPerfLib.helper.exceptions import SingularMatrixError, DimensionMismatchError


def laplace_1d(n):
    return BandedMatrix.from_diagonals(n, {-1: -1.0, 0: 2.0, 1: -1.0})


def random_spd_band(n, b, seed=0):
    rng = np.random.default_rng(seed)
    a = np.zeros((n, n))
    for offset in range(1, b + 1):
        values = rng.uniform(-1.0, 0.0, n - offset)
        a += np.diag(values, offset) + np.diag(values, -offset)
    # strict diagonal dominance keeps it SPD
    a += np.diag(np.abs(a).sum(axis=1) + 1.0)
    return a


def random_band(n, kl, ku, rng):
    # diagonally dominant by rows, so elimination needs no pivoting
    a = np.zeros((n, n))
    for offset in range(-kl, ku + 1):
        if offset:
            a += np.diag(rng.uniform(-1.0, 1.0, n - abs(offset)), offset)
    a += np.diag(np.abs(a).sum(axis=1) + rng.uniform(0.5, 1.5, n))
    return a


class TestBandedMatrix(unittest.TestCase):

    def test_storage_layout(self):
        m = laplace_1d(4)
        self.assertEqual((m.kl, m.ku), (1, 1))
        self.assertEqual(m.data.shape, (4, 3))
        self.assertEqual(m.entry(1, 0), -1.0)
        self.assertEqual(m.entry(0, 3), 0.0)
        # corners that fall outside the matrix are zero
        self.assertEqual(m.data[0, 0], 0.0)
        self.assertEqual(m.data[3, 2], 0.0)
        np.testing.assert_array_equal(m.bands[1], [2.0, 2.0, 2.0, 2.0])

    def test_dense_round_trip(self):
        a = random_spd_band(12, 3)
        m = BandedMatrix.from_dense(a)
        self.assertEqual((m.kl, m.ku), (3, 3))
        np.testing.assert_array_equal(m.to_dense(), a)
        np.testing.assert_allclose(m.to_sparse().toarray(), a)
        self.assertTrue(m.is_symmetric())

    def test_matvec(self):
        a = random_spd_band(15, 4, seed=3)
        x = np.linspace(-1.0, 1.0, 15)
        np.testing.assert_allclose(BandedMatrix.from_dense(a) @ x, a @ x)

    def test_from_sparse_outside_band(self):
        a = sp.csr_matrix(np.array([[1.0, 0.0, 2.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
        with self.assertRaises(ValueError):
            BandedMatrix.from_sparse(a, 1, 1)

    def test_invalid_storage(self):
        with self.assertRaises(ValueError):
            BandedMatrix(np.zeros((4, 2)), 1, 1)
        with self.assertRaises(ValueError):
            BandedMatrix(np.zeros((2, 5)), 2, 2)

    def test_lapack_layout_matches_scipy(self):
        a = random_spd_band(10, 2, seed=7)
        m = BandedMatrix.from_dense(a)
        b = np.arange(10.0)
        x = scipy.linalg.solve_banded((m.kl, m.ku), m.to_lapack(), b)
        np.testing.assert_allclose(a @ x, b, atol=1e-12)


class TestBandedLU(unittest.TestCase):

    def test_identity(self):
        lu = factor(BandedMatrix.from_diagonals(5, {0: 1.0}))
        np.testing.assert_array_equal(lu.lower(), np.eye(5))
        np.testing.assert_array_equal(lu.upper(), np.eye(5))
        self.assertEqual(lu.flop_count, 0)
        r = np.array([3.0, -1.0, 0.5, 0.0, 2.0])
        np.testing.assert_array_equal(lu.solve(r), r)

    def test_tridiagonal_pivots(self):
        lu = factor(laplace_1d(3))
        np.testing.assert_allclose(np.diag(lu.upper()), [2.0, 3.0 / 2.0, 4.0 / 3.0], rtol=1e-15)
        np.testing.assert_allclose(lu.lower() @ lu.upper(), laplace_1d(3).to_dense(), rtol=0, atol=1e-15)

    def test_two_by_two_solve(self):
        x = factor(laplace_1d(2)).solve(np.array([1.0, 1.0]))
        np.testing.assert_allclose(x, [1.0, 1.0], rtol=1e-15)

    def test_random_spd_band_of_order_eight(self):
        a = random_spd_band(8, 3, seed=8)
        m = BandedMatrix.from_dense(a)
        self.assertEqual((m.kl, m.ku), (3, 3))
        lu = factor(m)
        self.assertLessEqual(np.linalg.norm(lu.lower() @ lu.upper() - a) / np.linalg.norm(a), 1e-12)
        rhs = np.random.default_rng(8).uniform(-1.0, 1.0, 8)
        np.testing.assert_allclose(lu.solve(rhs), np.linalg.solve(a, rhs), rtol=1e-10)

    def test_reconstruction_for_every_order_up_to_64(self):
        rng = np.random.default_rng(64)
        for n in range(1, 65):
            for _ in range(4):
                kl, ku = (int(v) for v in rng.integers(0, n, size=2))
                a = random_band(n, kl, ku, rng)
                lu = factor(BandedMatrix.from_dense(a, kl, ku))
                error = np.linalg.norm(lu.lower() @ lu.upper() - a) / np.linalg.norm(a)
                self.assertLessEqual(error, 1e-12, msg=f"n={n}, kl={kl}, ku={ku}")

    def test_factors_reproduce_matrix(self):
        a = random_spd_band(20, 4, seed=1)
        lu = factor(BandedMatrix.from_dense(a))
        np.testing.assert_allclose(lu.lower() @ lu.upper(), a, atol=1e-12)
        np.testing.assert_allclose(np.diag(lu.lower()), 1.0)
        self.assertTrue(np.all(lu.pivots() > 0))

    def test_solve_against_dense(self):
        a = random_spd_band(30, 5, seed=2)
        b = np.random.default_rng(4).uniform(-1.0, 1.0, 30)
        x = solve(factor(BandedMatrix.from_dense(a)), b)
        np.testing.assert_allclose(x, np.linalg.solve(a, b), rtol=1e-10, atol=1e-12)

    def test_solve_against_scipy_banded(self):
        m = laplace_1d(50)
        b = np.ones(50)
        expected = scipy.linalg.solve_banded((1, 1), m.to_lapack(), b)
        np.testing.assert_allclose(factor(m).solve(b), expected, rtol=1e-10)

    def test_rhs_untouched(self):
        lu = factor(laplace_1d(5))
        b = np.ones(5)
        lu.solve(b)
        np.testing.assert_array_equal(b, np.ones(5))

    def test_rhs_of_wrong_length(self):
        with self.assertRaises(DimensionMismatchError):
            factor(laplace_1d(5)).solve(np.ones(4))

    def test_singular_matrix(self):
        # [[1, 1], [1, 1]] leaves a zero second pivot
        m = BandedMatrix.from_dense(np.ones((2, 2)))
        with self.assertRaises(SingularMatrixError) as context:
            factor(m)
        self.assertEqual(context.exception.index, 1)
        self.assertIsNone(context.exception.subdomain)

    def test_indefinite_matrix(self):
        m = BandedMatrix.from_diagonals(3, {0: np.array([1.0, -1.0, 1.0])})
        with self.assertRaises(SingularMatrixError):
            factor(m)

    def test_random_instances_match_dense_solve(self):
        rng = np.random.default_rng(2014)
        for trial in range(1000):
            n = int(rng.integers(1, 65))
            b = int(rng.integers(0, n))
            a = random_spd_band(n, b, seed=trial)
            rhs = rng.uniform(-1.0, 1.0, n)
            x = factor(BandedMatrix.from_dense(a, b, b)).solve(rhs)
            expected = np.linalg.solve(a, rhs)
            self.assertLessEqual(np.linalg.norm(x - expected), 1e-10 * np.linalg.norm(expected),
                                 msg=f"n={n}, b={b}")
            self.assertLessEqual(np.abs(a @ x - rhs).max(), 1e-10 * np.abs(rhs).max())

    def test_flop_count(self):
        lu = factor(laplace_1d(10))
        self.assertEqual(lu.flop_count, 10 * 1 * 3)
        self.assertEqual(lu.flop_count, flop_model(10, 1))

    def test_flop_model(self):
        self.assertEqual(flop_model(4096, 64), 4096 * 64 * 66)
        self.assertEqual(flop_model(5, 0), 0)
        with self.assertRaises(ValueError):
            flop_model(5, 5)
        with self.assertRaises(ValueError):
            flop_model(0, 0)

    def test_flop_model_is_quadratic_in_bandwidth(self):
        self.assertAlmostEqual(flop_model(10 ** 4, 200) / flop_model(10 ** 4, 100), 4.0, delta=0.05)

    def test_flop_model_global_against_local(self):
        # 1000 x 1000 grid against one 50 x 50 subdomain of a 20 x 20 split
        ratio = flop_model(10 ** 6, 1000) / flop_model(2500, 50)
        self.assertAlmostEqual(ratio, 1.002e12 / 6.5e6)
        self.assertAlmostEqual(ratio / 400 ** 2, 0.963, places=3)


if __name__ == '__main__':
    unittest.main()
