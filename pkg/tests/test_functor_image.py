import json
import os
import tempfile
import unittest

import sympy

from daha import verify_linear_rep
from errors import InadmissibleParameters, ParameterError
from functor_image import (
    FunctorParams,
    build_P_tilde,
    derive,
    dump_params,
    eigenvalue_table,
    load_params,
    predicted_dimension,
    psi_set_cardinality,
    relation_constants,
    require_admissible,
    target_presentation,
    validate,
)

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'sample_params')

R = sympy.Rational


def case_a():
    return FunctorParams(p=1, q=2, n=1, mu=0, nvec=(-1,), xi=(0,), nu=(R(3, 5),))


def case_b():
    return FunctorParams(p=1, q=2, n=1, mu=0, nvec=(0,), xi=(-1,))


def equal_rank_n2():
    return FunctorParams(p=1, q=1, n=2, mu=0, nvec=(0,), nu=(R(1, 3),))


class TestParameterParsing(unittest.TestCase):
    def test_from_dict(self):
        params = FunctorParams.from_dict({'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [-1], 'xi': [0], 'nu': ['3/5']})
        self.assertEqual(params, case_a())
        self.assertEqual(params.N, 3)
        self.assertEqual(params.to_dict()['nu'], ['3/5'])

    def test_dump_params(self):
        data = json.loads(dump_params(case_a()))
        self.assertEqual(data['mu'], '0')
        self.assertEqual(FunctorParams.from_dict(data), case_a())

    def test_default_nu(self):
        self.assertEqual(case_b().nu, (R(1, 3),))

    def test_rejects_malformed_documents(self):
        bad = [
            [1, 2],
            {'p': 1, 'q': 2, 'n': 1, 'mu': '0'},
            {'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [0], 'colour': 'red'},
            {'p': 2, 'q': 1, 'n': 1, 'mu': '0', 'nvec': [0, 0]},
            {'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': []},
            {'p': 1, 'q': 3, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1, 0]},
            {'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': ['1/2'], 'xi': [0]},
            {'p': 1, 'q': 2, 'n': 1, 'mu': 0.5, 'nvec': [0], 'xi': [0]},
        ]
        for data in bad:
            with self.subTest(data=data):
                with self.assertRaises(ParameterError):
                    FunctorParams.from_dict(data)

    def test_load_params(self):
        self.assertEqual(load_params(os.path.join(SAMPLES, 'case_a.json')), case_a())
        with self.assertRaises(ParameterError):
            load_params(os.path.join(SAMPLES, 'missing.json'))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'broken.json')
            with open(path, 'w', encoding='utf-8') as f:
                f.write('{"p": 1,')
            with self.assertRaises(ParameterError):
                load_params(path)


class TestDerivedQuantities(unittest.TestCase):
    def test_case_a(self):
        d = derive(case_a())
        self.assertEqual(d.tau, 0)
        self.assertEqual(d.n_mu, (1,))
        self.assertEqual(d.n_xi, 0)
        self.assertEqual(d.kappa1, R(-1, 2))
        self.assertEqual(d.block_sizes(), (1, 0))

    def test_case_b(self):
        d = derive(case_b())
        self.assertEqual(d.n_mu, (0,))
        self.assertEqual(d.xi_mu, (1,))
        self.assertEqual(d.m, (0, 0, 1))

    def test_equal_rank(self):
        d = derive(equal_rank_n2())
        self.assertEqual(d.tau, 1)
        self.assertEqual(d.n_mu, (2,))
        self.assertEqual(d.rho_branch, 'q=p')

    def test_mu_integrality(self):
        with self.assertRaises(ParameterError):
            derive(FunctorParams(p=1, q=2, n=1, mu=R(1, 2), nvec=(0,), xi=(0,)))


class TestAdmissibility(unittest.TestCase):
    def test_admissible_samples(self):
        for params in (case_a(), case_b(), equal_rank_n2()):
            self.assertEqual(validate(params), [])

    def test_inadmissible_sample(self):
        params = load_params(os.path.join(SAMPLES, 'inadmissible.json'))
        violations = validate(params)
        self.assertTrue(violations)
        with self.assertRaises(InadmissibleParameters) as ctx:
            require_admissible(params)
        self.assertEqual(ctx.exception.violations, violations)
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_positive_xi(self):
        params = FunctorParams(p=1, q=2, n=1, mu=0, nvec=(-2,), xi=(1,))
        self.assertTrue(any('positive' in v for v in validate(params)))


class TestDimensionFormula(unittest.TestCase):
    def test_known_dimensions(self):
        self.assertEqual(predicted_dimension(case_a()).total, 2)
        self.assertEqual(predicted_dimension(case_b()).total, 1)
        self.assertEqual(predicted_dimension(equal_rank_n2()).total, 4)

    def test_factorization(self):
        formula = predicted_dimension(case_a())
        self.assertEqual((formula.coset_factor, formula.specht_factor), (2, 1))
        self.assertEqual(formula.to_dict()['dimension'], 2)

    def test_psi_set(self):
        self.assertEqual(psi_set_cardinality(case_a()), 2)
        self.assertEqual(psi_set_cardinality(equal_rank_n2()), 3)


class TestEigenvalueTable(unittest.TestCase):
    def test_torus_block(self):
        table = eigenvalue_table(case_a())
        self.assertEqual(table.values, ((R(3, 10),),))
        self.assertTrue(table.complete)

    def test_xi_block(self):
        self.assertEqual(eigenvalue_table(case_b()).values, ((R(1, 2),),))

    def test_equal_rank_column(self):
        self.assertEqual(eigenvalue_table(equal_rank_n2()).column(0), (R(2, 3), R(-1, 3)))

    def test_shifted_index_overflows(self):
        table = eigenvalue_table(case_b(), 'k-m_p+1')
        self.assertFalse(table.complete)
        self.assertEqual(table.to_dict()['rows'], [[None]])

    def test_unknown_reading(self):
        with self.assertRaises(ValueError):
            eigenvalue_table(case_a(), 'k')


class TestRelationConstants(unittest.TestCase):
    def test_readings(self):
        self.assertEqual(relation_constants(case_a(), 'as-written'), (R(-1, 2), 1))
        self.assertEqual(relation_constants(case_a(), 'long-root'), (1, -1))
        with self.assertRaises(ValueError):
            relation_constants(case_a(), 'short-root')

    def test_presentation(self):
        pres = target_presentation(equal_rank_n2(), 'long-root')
        self.assertEqual(pres.params, (1, 0))
        self.assertEqual(pres.generators, ('S1', 'gamma2', 'y1', 'y2'))


class TestInducedModule(unittest.TestCase):
    def test_relations_hold(self):
        for params in (case_a(), case_b(), equal_rank_n2()):
            with self.subTest(params=params.to_dict()):
                rep = build_P_tilde(params, 'long-root')
                self.assertEqual(rep.dimension, predicted_dimension(params).total)
                self.assertTrue(verify_linear_rep(target_presentation(params, 'long-root'), rep).passed)

    def test_default_reading_matches_default_presentation(self):
        for params in (case_a(), equal_rank_n2()):
            with self.subTest(params=params.to_dict()):
                rep = build_P_tilde(params)
                self.assertTrue(verify_linear_rep(target_presentation(params), rep).passed)
                self.assertEqual(target_presentation(params).params, relation_constants(params, 'long-root'))

    def test_case_a_y_spectrum(self):
        rep = build_P_tilde(case_a(), 'long-root')
        y = rep['y1']
        self.assertEqual(y @ y, y.identity(2).scale(R(9, 100)))


if __name__ == '__main__':
    unittest.main()
