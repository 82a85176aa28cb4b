import unittest

from errors import PresentationError
from exactmath import ExactMatrix
from symcomb import (
    CosetTable,
    Partition,
    SignedPermutation,
    coset_count_formula,
    enumerate_bc_group,
    enumerate_standard_tableaux,
    hyperoctahedral_cosets,
    jm_matrices,
    murphy_basis,
    partitions_of,
    schur_weyl_check,
    specht_dimension,
    specht_matrices,
    weyl_dimension,
    word_to_element,
    young_symmetrizer_image,
)


class TestPartitions(unittest.TestCase):
    def test_counts(self):
        self.assertEqual([len(partitions_of(m)) for m in range(1, 7)], [1, 2, 3, 5, 7, 11])

    def test_hooks_and_conjugate(self):
        shape = Partition((3, 1))
        self.assertEqual(shape.conjugate(), Partition((2, 1, 1)))
        self.assertEqual(sorted(shape.hook_lengths()), [1, 1, 2, 4])
        self.assertEqual(shape.contents(), [0, 1, 2, -1])

    def test_invalid_parts(self):
        with self.assertRaises(ValueError):
            Partition((1, 2))
        self.assertEqual(Partition.from_sequence([2, 0, 0]), Partition((2,)))

    def test_specht_dimension_matches_tableaux(self):
        for shape in partitions_of(5):
            self.assertEqual(specht_dimension(shape), len(enumerate_standard_tableaux(shape)))
        self.assertEqual(specht_dimension(Partition((3, 2, 1))), 16)


class TestSpechtModules(unittest.TestCase):
    def test_coxeter_relations(self):
        module = specht_matrices(Partition((2, 1, 1)))
        s1, s2, s3 = (module.generator_matrices[f'S{i}'] for i in (1, 2, 3))
        identity = ExactMatrix.identity(module.dimension)
        self.assertEqual(s1 @ s1, identity)
        self.assertEqual(s1 @ s2 @ s1, s2 @ s1 @ s2)
        self.assertEqual(s1 @ s3, s3 @ s1)

    def test_character_of_identity_is_dimension(self):
        module = specht_matrices(Partition((3, 2)))
        self.assertEqual(module.character((1, 2, 3, 4, 5)), 5)

    def test_sign_representation(self):
        module = specht_matrices(Partition((1, 1, 1)))
        self.assertEqual(module.transposition_matrix(1, 3), ExactMatrix.from_rows([[-1]]))


class TestMurphyBasis(unittest.TestCase):
    def test_eigenvectors_of_jucys_murphy_elements(self):
        for shape in (Partition((2, 1)), Partition((3, 2)), Partition((2, 2, 1))):
            for variant in ('L', 'Lhat'):
                basis = murphy_basis(shape, variant)
                jm = jm_matrices(shape, variant)
                for s, w in enumerate(basis.vectors):
                    for i, op in enumerate(jm):
                        self.assertEqual(op @ w, w.scale(basis.eigenvalues[s][i]))

    def test_hat_eigenvalues_are_reversed_contents(self):
        shape = Partition((3, 1))
        plain, hat = murphy_basis(shape, 'L'), murphy_basis(shape, 'Lhat')
        for alpha, alpha_hat in zip(plain.eigenvalues, hat.eigenvalues):
            self.assertEqual(alpha_hat, (alpha[3], alpha[2], alpha[1], 0))

    def test_basis_is_invertible(self):
        basis = murphy_basis(Partition((2, 2)), 'L')
        self.assertEqual(basis.matrix.rank(), 2)


class TestSchurWeyl(unittest.TestCase):
    def test_weyl_dimension(self):
        self.assertEqual(weyl_dimension((1,), 2), 2)
        self.assertEqual(weyl_dimension((2,), 2), 3)
        self.assertEqual(weyl_dimension((1, 1), 3), 3)
        self.assertEqual(weyl_dimension((-1, -1), 2), 1)

    def test_dimension_identity(self):
        for N in range(1, 4):
            for m in range(1, 5):
                total, power = schur_weyl_check(N, m)
                self.assertEqual(total, power)

    def test_young_symmetrizer_image(self):
        self.assertEqual(young_symmetrizer_image(Partition((2,)), 2).cols, 3)
        self.assertEqual(young_symmetrizer_image(Partition((1, 1)), 2).cols, 1)
        self.assertEqual(young_symmetrizer_image(Partition((2, 1)), 2).cols, 2)


class TestHyperoctahedral(unittest.TestCase):
    def test_group_orders(self):
        self.assertEqual(len(enumerate_bc_group(1)), 2)
        self.assertEqual(len(enumerate_bc_group(2)), 8)
        self.assertEqual(len(enumerate_bc_group(3)), 48)

    def test_words_evaluate_to_their_elements(self):
        for element, word in enumerate_bc_group(3).items():
            self.assertEqual(word_to_element(word, 3), element)

    def test_inverse(self):
        g = SignedPermutation((2, 3, 1), (1, -1, 1))
        self.assertTrue((g * g.inverse()).is_identity())
        self.assertTrue((g.inverse() * g).is_identity())

    def test_coset_counts(self):
        for n, blocks in ((2, (1, 1)), (2, (2, 0)), (3, (1, 2)), (3, (1, 1, 1)), (3, (0, 3))):
            self.assertEqual(len(CosetTable(n, blocks)), coset_count_formula(n, blocks))
        self.assertEqual(len(CosetTable(2, (1, 1))), 4)

    def test_locate_factorizes(self):
        table = CosetTable(3, (1, 2))
        for element in enumerate_bc_group(3):
            c, h = table.locate(element)
            self.assertEqual(table.representatives[c].element * h, element)

    def test_coset_representatives(self):
        reps = hyperoctahedral_cosets(3, (1, 2))
        self.assertEqual(len(reps), coset_count_formula(3, (1, 2)))
        self.assertEqual(len({rep.element for rep in reps}), len(reps))
        for rep in reps:
            self.assertEqual(word_to_element(rep.word, 3), rep.element)

    def test_bad_blocks(self):
        with self.assertRaises(PresentationError):
            CosetTable(3, (1, 1))


if __name__ == '__main__':
    unittest.main()
