import context
import unittest
from fractions import Fraction

import numpy as np

from scfgprob.core.exactmath import (
    to_fraction, format_rational, rat_vector, rat_matrix, solve_linear,
    inverse, inverse_if_nonneg, nonneg_solution_exists, ceil_log2,
    round_down_dyadic, DyadicVector, max_norm)
from scfgprob.utils.exceptions import InputError, SingularMatrixError


class TestRationals(unittest.TestCase):

    def test_to_fraction(self):
        self.assertEqual(to_fraction('1/3'), Fraction(1, 3))
        self.assertEqual(to_fraction('0.25'), Fraction(1, 4))
        self.assertEqual(to_fraction(2), Fraction(2))
        self.assertRaises(InputError, to_fraction, 0.5)
        self.assertRaises(InputError, to_fraction, '1/0')
        self.assertRaises(InputError, to_fraction, 'a/b')

    def test_format_rational(self):
        self.assertEqual(format_rational(Fraction(3, 4)), '3/4')
        self.assertEqual(format_rational(Fraction(4, 2)), '2')

    def test_read_only(self):
        v = rat_vector([1, '1/2'])
        with self.assertRaises(ValueError):
            v[0] = Fraction(0)

    def test_ragged_matrix(self):
        self.assertRaises(InputError, rat_matrix, [[1, 2], [3]])

    def test_max_norm(self):
        self.assertEqual(max_norm(rat_vector(['-3/2', 1])), Fraction(3, 2))
        self.assertEqual(max_norm([]), 0)


class TestSolveLinear(unittest.TestCase):

    def test_two_by_two(self):
        A = rat_matrix([[2, 1], [1, 3]])
        x = solve_linear(A, rat_vector([3, 5]))
        self.assertEqual(list(x), [Fraction(4, 5), Fraction(7, 5)])

    def test_singular(self):
        A = rat_matrix([[1, 2], [2, 4]])
        self.assertRaises(SingularMatrixError, solve_linear, A, rat_vector([1, 2]))

    def test_dimension_mismatch(self):
        A = rat_matrix([[1, 0], [0, 1]])
        self.assertRaises(InputError, solve_linear, A, rat_vector([1]))

    def test_inverse(self):
        A = rat_matrix([[1, 2], [3, 4]])
        W = inverse(A)
        product = A.dot(W)
        for i in range(2):
            for j in range(2):
                self.assertEqual(product[i, j], int(i == j))

    def test_random_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            A = rat_matrix(rng.integers(-5, 6, size=(n, n)).tolist())
            b = rat_vector(rng.integers(-5, 6, size=n).tolist())
            try:
                x = solve_linear(A, b)
            except SingularMatrixError:
                continue
            self.assertEqual(list(A.dot(x)), list(b))


class TestMMatrix(unittest.TestCase):

    def test_contraction(self):
        M = rat_matrix([['1/2', 0], ['1/4', '1/2']])
        W = inverse_if_nonneg(M)
        self.assertIsNotNone(W)
        self.assertEqual(W[0, 0], 2)

    def test_spectral_radius_one(self):
        self.assertIsNone(inverse_if_nonneg(rat_matrix([[1]])))

    def test_spectral_radius_above_one(self):
        # I - M is invertible but the inverse is negative
        self.assertIsNone(inverse_if_nonneg(rat_matrix([[2]])))


class TestFeasibility(unittest.TestCase):

    def test_feasible(self):
        A = rat_matrix([[1, 1], [1, -1]])
        self.assertTrue(nonneg_solution_exists(A, rat_vector([2, 0])))

    def test_infeasible(self):
        A = rat_matrix([[1, 1]])
        self.assertFalse(nonneg_solution_exists(A, rat_vector([-1])))

    def test_eigenvector(self):
        # (M - I)u = 0, sum u = 1 for M = [[1/2, 1/2], [1/2, 1/2]]
        A = rat_matrix([['-1/2', '1/2'], ['1/2', '-1/2'], [1, 1]])
        self.assertTrue(nonneg_solution_exists(A, rat_vector([0, 0, 1])))


class TestDyadic(unittest.TestCase):

    def test_ceil_log2(self):
        self.assertEqual(ceil_log2(1), 0)
        self.assertEqual(ceil_log2(Fraction(2**20)), 20)
        self.assertEqual(ceil_log2(Fraction(2**20 + 1)), 21)
        self.assertEqual(ceil_log2(Fraction(1, 3)), -1)
        self.assertRaises(InputError, ceil_log2, 0)

    def test_round_down(self):
        r = round_down_dyadic([Fraction(1, 3), Fraction(-1, 5), 1], 3)
        self.assertEqual(list(r), [Fraction(2, 8), 0, 1])
        self.assertRaises(InputError, round_down_dyadic, [1], 0)

    def test_decimal(self):
        v = DyadicVector([3, 8], 3)
        self.assertEqual(v.decimal(0), '0.375')
        self.assertEqual(v.decimal(1), '1')
        self.assertEqual(v.to_json(), {'bits': 3, 'values': ['0.375', '1']})

    def test_negative(self):
        self.assertRaises(InputError, DyadicVector, [-1], 2)


if __name__ == '__main__':
    unittest.main()
