import logging
import random
import unittest

import sympy

from config import VerifierConfig
from daha import rational_eigenvalues, verify_linear_rep
from errors import GuardrailExceeded
from exactmath import ExactMatrix
from functor_image import FunctorParams, target_presentation
from symcomb import SignedPermutation
from tensor_model import (
    TensorModel,
    check_guardrail,
    invariant_subspace,
    isomorphism_check,
    orbit_span_check,
    pick_reading,
    resolve_eigen_index,
    resolve_hecke_reading,
    resolve_theta_sign,
    y_operator,
)

R = sympy.Rational
LOGGER = logging.getLogger('tests.tensor_model')


def case_a():
    return FunctorParams(p=1, q=2, n=1, mu=0, nvec=(-1,), xi=(0,), nu=(R(3, 5),))


def case_b():
    return FunctorParams(p=1, q=2, n=1, mu=0, nvec=(0,), xi=(-1,))


class TestCaseA(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.model = TensorModel(case_a(), LOGGER)

    def test_dimensions(self):
        self.assertEqual(self.model.full_dimension, 3)
        self.assertEqual(self.model.space.dimension, 2)
        self.assertEqual(self.model.dimension, 2)

    def test_y_spectrum(self):
        y = self.model.y_operator(1)
        self.assertEqual(rational_eigenvalues(y), {R(3, 10): 1, R(-3, 10): 1})
        self.assertEqual(y @ y, ExactMatrix.identity(2).scale(R(9, 100)))

    def test_gamma_is_an_involution(self):
        gamma = self.model.gamma_operator(1)
        self.assertTrue((gamma @ gamma).is_identity())
        self.assertEqual(gamma.trace(), 0)
        self.assertEqual(self.model.group_action(SignedPermutation((1,), (-1,))), gamma)

    def test_only_long_root_reading_holds(self):
        rep = self.model.tensor_rep()
        self.assertTrue(verify_linear_rep(target_presentation(case_a(), 'long-root'), rep).passed)
        self.assertFalse(verify_linear_rep(target_presentation(case_a(), 'as-written'), rep).passed)
        resolution = resolve_hecke_reading(self.model)
        self.assertEqual((resolution.chosen, resolution.status), ('long-root', 'resolved'))

    def test_default_presentation_accepts_the_model(self):
        self.assertTrue(verify_linear_rep(target_presentation(case_a()), self.model.tensor_rep()).passed)

    def test_eigenvector(self):
        self.assertTrue(self.model.eigenvector_check().passed)
        varpi = self.model.build_varpi(1)
        y = self.model.y_operator(1)
        self.assertEqual(y @ varpi, varpi.scale(R(3, 10)))

    def test_structural_checks(self):
        self.assertTrue(all(self.model.prop_checks().values()))

    def test_isomorphism(self):
        result = isomorphism_check(self.model, 'long-root', 'k-m_p', random.Random(7))
        self.assertEqual(result['induced_dimension'], 2)
        self.assertTrue(result['invertible'])


class TestOtherPacks(unittest.TestCase):
    def test_case_b(self):
        model = TensorModel(case_b(), LOGGER)
        self.assertEqual(model.dimension, 1)
        self.assertEqual(model.y_operator(1), ExactMatrix.from_rows([['1/2']]))

    def test_index_reading_resolved_on_xi_block(self):
        resolution = resolve_eigen_index(TensorModel(case_b(), LOGGER))
        self.assertEqual((resolution.chosen, resolution.status), ('k-m_p', 'resolved'))
        self.assertFalse(resolution.outcomes['k-m_p+1']['complete'])

    def test_equal_rank(self):
        params = FunctorParams(p=1, q=1, n=2, mu=0, nvec=(0,), nu=(R(1, 3),))
        self.assertEqual(TensorModel(params, LOGGER).dimension, 4)

    def test_inadmissible_packs_vanish(self):
        for entry in VerifierConfig.INADMISSIBLE_GRID:
            data = {k: v for k, v in entry.items() if k != 'label'}
            with self.subTest(label=entry['label']):
                self.assertEqual(TensorModel(FunctorParams.from_dict(data), LOGGER).dimension, 0)

    def test_theta_sign(self):
        resolution = resolve_theta_sign(case_a(), LOGGER)
        self.assertEqual(resolution.chosen, 1)
        self.assertEqual(resolution.outcomes['1'], 2)


class TestEntryPoints(unittest.TestCase):
    def test_module_level_functions(self):
        params = case_a()
        self.assertEqual(invariant_subspace(params).cols, 2)
        self.assertTrue(orbit_span_check(params))
        y = y_operator(params, 1)
        self.assertEqual(y @ y, ExactMatrix.identity(2).scale(R(9, 100)))

    def test_inadmissible_orbit_span(self):
        params = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(1,), xi=(0,))
        self.assertTrue(orbit_span_check(params))


class TestGuardrail(unittest.TestCase):
    def test_limit(self):
        self.assertEqual(check_guardrail(case_a(), 3), 3)
        with self.assertRaises(GuardrailExceeded) as ctx:
            check_guardrail(case_a(), 2)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_model_respects_config(self):
        config = VerifierConfig()
        config.MAX_TENSOR_DIM = 2
        with self.assertRaises(GuardrailExceeded):
            TensorModel(case_a(), LOGGER, config)


class TestPickReading(unittest.TestCase):
    def test_statuses(self):
        readings = ('a', 'b')
        self.assertEqual(pick_reading('x', readings, ['b'], {}).status, 'resolved')
        self.assertEqual(pick_reading('x', readings, ['a', 'b'], {}).status, 'ambiguous')
        unresolved = pick_reading('x', readings, [], {})
        self.assertEqual((unresolved.chosen, unresolved.status), ('a', 'unresolved'))
        fixed = pick_reading('x', readings, ['a'], {}, fixed='b')
        self.assertEqual((fixed.chosen, fixed.status), ('b', 'fixed'))


if __name__ == '__main__':
    unittest.main()
