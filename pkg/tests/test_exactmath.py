import random
import unittest
from fractions import Fraction

import sympy

from errors import InvarianceError
from exactmath import (
    ExactMatrix,
    MultiPoly,
    as_rational,
    column_basis,
    format_rational,
    nullspace,
    nullspace_matrix,
    poly_identity_test,
    restrict,
    solve_in_span,
)


class TestRationals(unittest.TestCase):
    def test_coercion(self):
        self.assertEqual(as_rational('3/5'), sympy.Rational(3, 5))
        self.assertEqual(as_rational(' -7 '), sympy.Integer(-7))
        self.assertEqual(as_rational(Fraction(1, 3)), sympy.Rational(1, 3))

    def test_inexact_values_rejected(self):
        with self.assertRaises(TypeError):
            as_rational(0.5)
        with self.assertRaises(TypeError):
            as_rational(True)

    def test_format(self):
        self.assertEqual(format_rational(sympy.Rational(-1, 2)), '-1/2')
        self.assertEqual(format_rational(4), '4')


class TestExactMatrix(unittest.TestCase):
    def test_products_and_identity(self):
        a = ExactMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual(a @ ExactMatrix.identity(2), a)
        self.assertEqual((a @ a.inverse()), ExactMatrix.identity(2))
        self.assertEqual(a.trace(), 5)
        self.assertEqual(a.scale('1/2').get(1, 1), 2)

    def test_max_violation_reports_largest_entry(self):
        m = ExactMatrix.from_rows([[0, '-3/2'], [1, 0]])
        self.assertEqual(m.max_violation(), (0, 1, sympy.Rational(-3, 2)))
        self.assertIsNone(ExactMatrix.zeros(2, 2).max_violation())

    def test_nullspace(self):
        m = ExactMatrix.from_rows([[1, 1, 0], [2, 2, 0]])
        kernel = nullspace(m)
        self.assertEqual(len(kernel), 2)
        for v in kernel:
            self.assertTrue((m @ v).is_zero())
        self.assertEqual(nullspace_matrix(m).shape, (3, 2))

    def test_full_rank_has_trivial_kernel(self):
        self.assertEqual(nullspace(ExactMatrix.identity(3)), [])

    def test_column_basis(self):
        m = ExactMatrix.from_rows([[1, 2, 0], [1, 2, 1]])
        self.assertEqual(column_basis(m).cols, 2)

    def test_solve_in_span(self):
        basis = ExactMatrix.column_vector([1, 1])
        self.assertEqual(solve_in_span(basis, ExactMatrix.column_vector([2, 2])),
                         ExactMatrix.from_rows([[2]]))
        self.assertIsNone(solve_in_span(basis, ExactMatrix.column_vector([1, 0])))

    def test_restrict_detects_non_invariant_subspace(self):
        swap = ExactMatrix.from_rows([[0, 1], [1, 0]])
        diagonal = ExactMatrix.column_vector([1, 1])
        self.assertEqual(restrict(diagonal, swap), ExactMatrix.from_rows([[1]]))
        with self.assertRaises(InvarianceError):
            restrict(ExactMatrix.column_vector([1, 0]), swap)


class TestMultiPoly(unittest.TestCase):
    def test_arithmetic_is_exact(self):
        x = MultiPoly.variable('x')
        self.assertTrue(((x + 1) ** 2 - (x * x + x * 2 + 1)).is_zero())
        self.assertEqual((x / 3).terms, {(1,): sympy.Rational(1, 3)})

    def test_substitute_and_evaluate(self):
        x, y = MultiPoly.variable('x'), MultiPoly.variable('y')
        p = x * x + y
        shifted = p.substitute({'x': y + 1})
        self.assertEqual(shifted, y * y + y * 3 + 1)
        self.assertEqual(p.evaluate({'x': '1/2', 'y': 2}), sympy.Rational(9, 4))

    def test_unbound_variables_raise(self):
        p = MultiPoly.variable('x') + MultiPoly.variable('y')
        with self.assertRaises(ValueError):
            p.evaluate({'x': 1})

    def test_identity_test(self):
        rng = random.Random(7)
        x = MultiPoly.variable('x')
        self.assertTrue(poly_identity_test((x + 1) * (x - 1) - (x * x - 1), rng))
        self.assertFalse(poly_identity_test(x - x * x, rng))


if __name__ == '__main__':
    unittest.main()
