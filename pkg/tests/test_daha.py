import random
import unittest

import sympy

from daha import (
    LinearRep,
    find_invertible_element,
    intertwiner_space,
    joint_spectrum,
    make_presentation,
    rational_eigenvalues,
    scale_presentation,
    scale_rep,
    verify_linear_rep,
)
from errors import PresentationError
from exactmath import ExactMatrix


def one_dim(values):
    return LinearRep(1, {name: ExactMatrix.from_rows([[v]]) for name, v in values.items()})


class TestPresentation(unittest.TestCase):
    def test_bc_generators(self):
        pres = make_presentation('BC', 3, ('-1/2', 1))
        self.assertEqual(pres.group_generators, ('S1', 'S2', 'gamma3'))
        self.assertEqual(pres.y_generators, ('y1', 'y2', 'y3'))
        self.assertEqual(pres.describe(), 'BC_3(-1/2, 1)')

    def test_mixed_coxeter_switch(self):
        names = {r.name for r in make_presentation('BC', 2, (1, 1)).relations}
        listed = {r.name for r in make_presentation('BC', 2, (1, 1), mixed_coxeter=False).relations}
        self.assertIn('(S1 gamma2)^4 = 1', names)
        self.assertNotIn('(S1 gamma2)^4 = 1', listed)
        self.assertTrue(listed < names)

    def test_invalid_presentations(self):
        with self.assertRaises(PresentationError):
            make_presentation('BC', 0, (1, 1))
        with self.assertRaises(PresentationError):
            make_presentation('BC', 2, (1,))
        with self.assertRaises(PresentationError):
            make_presentation('D', 2, (1,))


class TestVerification(unittest.TestCase):
    def test_trivial_type_a_module(self):
        kappa = sympy.Rational(3, 2)
        pres = make_presentation('A', 2, (kappa,))
        rep = one_dim({'S1': 1, 'y1': kappa / 2, 'y2': -kappa / 2})
        self.assertTrue(verify_linear_rep(pres, rep).passed)

    def test_sign_type_a_module(self):
        pres = make_presentation('A', 2, (2,))
        rep = one_dim({'S1': -1, 'y1': -1, 'y2': 1})
        self.assertTrue(verify_linear_rep(pres, rep).passed)

    def test_failure_names_relation(self):
        pres = make_presentation('BC', 1, (0, 1))
        rep = one_dim({'gamma1': 1, 'y1': 1})
        report = verify_linear_rep(pres, rep)
        self.assertFalse(report.passed)
        self.assertEqual([r.name for r in report.failures], ['gamma1 y1 + y1 gamma1 = 1'])
        self.assertEqual(report.to_dict()['failures'][0]['violation']['value'], '1')

    def test_missing_generator(self):
        with self.assertRaises(PresentationError):
            verify_linear_rep(make_presentation('BC', 1, (0, 1)), one_dim({'y1': 0}))

    def test_scaling(self):
        pres = make_presentation('BC', 1, (0, '1/3'))
        rep = one_dim({'gamma1': 1, 'y1': sympy.Rational(1, 6)})
        self.assertTrue(verify_linear_rep(pres, rep).passed)
        for c in (2, -1):
            self.assertTrue(verify_linear_rep(scale_presentation(pres, c), scale_rep(rep, c)).passed)


class TestSpectra(unittest.TestCase):
    def test_rational_eigenvalues(self):
        m = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, '1/2']])
        self.assertEqual(rational_eigenvalues(m), {1: 2, sympy.Rational(1, 2): 1})

    def test_joint_spectrum(self):
        rep = LinearRep(2, {
            'y1': ExactMatrix.diagonal([1, 2]),
            'y2': ExactMatrix.diagonal([3, 3]),
        })
        self.assertEqual(joint_spectrum(rep, ['y1', 'y2']), {(1, 3): 1, (2, 3): 1})


class TestIntertwiners(unittest.TestCase):
    def test_isomorphic_modules(self):
        pres = make_presentation('BC', 1, (0, 1))
        a = LinearRep(2, {'gamma1': ExactMatrix.diagonal([1, -1]),
                          'y1': ExactMatrix.diagonal(['1/2', '-1/2'])})
        swap = ExactMatrix.from_rows([[0, 1], [1, 0]])
        b = LinearRep(2, {name: swap @ m @ swap for name, m in a.assignment.items()})
        self.assertTrue(verify_linear_rep(pres, a).passed)
        basis = intertwiner_space(a, b, pres)
        self.assertEqual(len(basis), 2)
        self.assertIsNotNone(find_invertible_element(basis, random.Random(1)))

    def test_non_isomorphic_modules(self):
        pres = make_presentation('BC', 1, (0, 1))
        plus = one_dim({'gamma1': 1, 'y1': sympy.Rational(1, 2)})
        minus = one_dim({'gamma1': -1, 'y1': sympy.Rational(-1, 2)})
        self.assertTrue(verify_linear_rep(pres, minus).passed)
        self.assertEqual(intertwiner_space(plus, minus, pres), [])


if __name__ == '__main__':
    unittest.main()
