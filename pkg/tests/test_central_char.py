import logging
import random
import unittest

import sympy

from central_char import (
    CaseTag,
    CentralCharacterChecker,
    casimir_restriction,
    character_residuals,
    classify_case,
    evaluate_character,
    infinitesimal_character,
    shift_order_outcomes,
)
from config import VerifierConfig
from errors import UnsupportedCase
from functor_image import FunctorParams
from tensor_model import TensorModel

R = sympy.Rational
LOGGER = logging.getLogger('tests.central_char')


class TestCharacters(unittest.TestCase):
    def test_casimir_degrees(self):
        self.assertEqual(casimir_restriction(2, 3).poly.total_degree, 2)
        self.assertEqual(casimir_restriction(3, 3).poly.total_degree, 3)
        with self.assertRaises(UnsupportedCase):
            casimir_restriction(4, 3)

    def test_case1_c2(self):
        c2, _ = evaluate_character(1, 2, CaseTag('case1', 1))
        self.assertEqual(c2.evaluate({'mu': 0, 'tau': 0, 'nu1': R(3, 5)}), R(9, 50) - R(3, 2))

    def test_infinitesimal_character_shapes(self):
        case1 = infinitesimal_character(1, 2, CaseTag('case1', 1))
        case2 = infinitesimal_character(1, 2, CaseTag('case2'))
        self.assertEqual(len(case1.lam), 2)
        self.assertEqual(case1.lam[0].evaluate({'mu': 0, 'tau': 0, 'nu1': 0}), -1)
        self.assertEqual(case2.lam[1].evaluate({'mu': 0, 'tau': 0, 'nu1': 0}), -1)

    def test_unsupported_shapes(self):
        with self.assertRaises(UnsupportedCase):
            CaseTag('case3')
        with self.assertRaises(UnsupportedCase):
            CaseTag('case1', 0)
        with self.assertRaises(UnsupportedCase):
            infinitesimal_character(1, 1, CaseTag('case2'))
        with self.assertRaises(UnsupportedCase):
            infinitesimal_character(1, 2, CaseTag('equal-rank', 1))
        with self.assertRaises(UnsupportedCase):
            infinitesimal_character(1, 2, CaseTag('case1', 2))


class TestPrintedFormulas(unittest.TestCase):
    def test_case1_reproduced(self):
        report = character_residuals(1, 2, CaseTag('case1', 1), rng=random.Random(3))
        self.assertTrue(report['c2']['matches'])
        self.assertTrue(report['c3']['matches'])

    def test_case2_c3_residual(self):
        report = character_residuals(1, 2, CaseTag('case2'), rng=random.Random(3))
        self.assertTrue(report['c2']['matches'])
        self.assertFalse(report['c3']['matches'])
        self.assertNotEqual(report['c3']['residual'], '0')

    def test_shift_order(self):
        self.assertTrue(shift_order_outcomes(random.Random(5))['shift-then-conjugate'])


class TestIdentity(unittest.TestCase):
    def setUp(self):
        self.checker = CentralCharacterChecker(LOGGER)

    def test_mixed_rank_cases(self):
        for case in self.checker.cases_for(1, 2):
            with self.subTest(case=str(case)):
                result = self.checker.check(1, 2, case)
                self.assertTrue(result.holds)
                self.assertTrue(result.constant_terms['corrected'])

    def test_equal_rank(self):
        self.assertEqual(self.checker.cases_for(1, 1), [CaseTag('equal-rank', 1)])
        self.assertTrue(self.checker.check(1, 1, CaseTag('equal-rank', 1)).holds)

    def test_constant_term_resolution(self):
        outcomes = self.checker.constant_term_outcomes()
        self.assertEqual(outcomes, {'corrected': True, 'as-printed': False})
        self.assertEqual(self.checker.default_constant_term(), 'corrected')
        self.assertEqual(self.checker.check(1, 2, CaseTag('case2')).constant_term, 'corrected')

    def test_pinned_constant_term(self):
        config = VerifierConfig()
        config.YCC_CONSTANT_TERM = 'as-printed'
        result = CentralCharacterChecker(LOGGER, config).check(1, 2, CaseTag('case1', 1))
        self.assertEqual(result.constant_term, 'as-printed')
        self.assertFalse(result.holds)
        self.assertFalse(result.constant_terms['as-printed'])

    def test_evaluate_at(self):
        result = self.checker.check(1, 2, CaseTag('case1', 1))
        values = self.checker.evaluate_at(result, {'mu': 0, 'tau': 0, 'nu1': R(3, 5)})
        self.assertEqual(values['y1_squared'], '9/100')
        self.assertEqual(result.to_dict()['case'], 'case1(k=1)')


class TestClassification(unittest.TestCase):
    def test_shapes(self):
        case_a = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(-1,), xi=(0,))
        case_b = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(0,), xi=(-1,))
        equal = FunctorParams(p=1, q=1, n=1, mu=0, nvec=(0,))
        self.assertEqual(classify_case(case_a), CaseTag('case1', 1))
        self.assertEqual(classify_case(case_b), CaseTag('case2'))
        self.assertEqual(classify_case(equal), CaseTag('equal-rank', 1))

    def test_rank_two_is_rejected(self):
        with self.assertRaises(UnsupportedCase):
            classify_case(FunctorParams(p=1, q=2, n=2, mu=0, nvec=(-1,), xi=(-1,)))

    def test_end_to_end(self):
        params = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(-1,), xi=(0,), nu=(R(3, 5),))
        result = CentralCharacterChecker(LOGGER).end_to_end_check(params, TensorModel(params, LOGGER))
        self.assertTrue(result['y1_squared_is_scalar'])
        self.assertEqual(result['tensor_value'], '9/100')
        self.assertTrue(result['holds'])
        self.assertEqual((result['order'], result['constant_term']), ('shift-then-conjugate', 'corrected'))

    def test_end_to_end_uses_given_readings(self):
        params = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(0,), xi=(-1,))
        checker = CentralCharacterChecker(LOGGER)
        model = TensorModel(params, LOGGER)
        result = checker.end_to_end_check(params, model, 'conjugate-then-shift', 'as-printed')
        self.assertEqual((result['order'], result['constant_term']), ('conjugate-then-shift', 'as-printed'))
        self.assertTrue(checker.end_to_end_check(params, model)['holds'])


if __name__ == '__main__':
    unittest.main()
