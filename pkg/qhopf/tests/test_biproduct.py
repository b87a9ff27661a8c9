from unittest import TestCase

from qhopf.algebra import (jacobson_radical, verify_algebra,
                           verify_algebra_morphism)
from qhopf.api.exception import MissingAntipode
from qhopf.biproduct import (assemble_biproduct_hopf, smash_coproduct,
                             smash_product_algebra)
from qhopf.catalog.biproducts import (HOPF_BIPRODUCTS, biproduct_isomorphism,
                                      hopf_biproduct, printed_delta_y,
                                      quasi_bialgebra_biproduct,
                                      quasi_bialgebra_names)
from qhopf.catalog.braided import (LEMMA_ALGEBRAS, bar_bialgebra, c3_hopf,
                                   lemma_algebra)
from qhopf.catalog.hopf import build_h2, build_kc2
from qhopf.exactcore import CycScalar
from qhopf.quasihopf import QuasiHopfData, verify_quasi_bialgebra


def negate(u):
    return {k: -v for k, v in u.items()}


class TestQuasiBialgebraBiproducts(TestCase):
    '''
    The six-dimensional quasi-bialgebras B×H(2) built on the bialgebras
    with an idempotent xbar
    '''

    def test_printed_relations_of_hu(self):
        for j in (0, 1):
            with self.subTest(j=j):
                data = quasi_bialgebra_biproduct("Hu", j)
                A = data.assembled.alg
                G, X, Y = (data.generators[k] for k in ("G", "X", "Y"))
                self.assertEqual(X, A.multiply(X, X))
                self.assertEqual(Y, A.multiply(X, Y))
                self.assertEqual({}, A.multiply(Y, X))
                self.assertEqual({}, A.multiply(Y, Y))
                self.assertEqual(A.unit.coords, A.multiply(G, G))
                self.assertEqual(negate(A.multiply(Y, G)), A.multiply(G, Y))

    def test_printed_comultiplication_of_y(self):
        for j in (0, 1):
            with self.subTest(j=j):
                data = quasi_bialgebra_biproduct("Hu", j)
                Q = data.assembled
                delta = Q.qb.coproduct if isinstance(Q, QuasiHopfData) else Q.coproduct
                (y_index,), = data.generators["Y"].keys()
                self.assertEqual(printed_delta_y(data, j), delta(y_index))

    def test_biproducts_pass_and_are_not_semisimple(self):
        for name in quasi_bialgebra_names():
            for j in (0, 1):
                with self.subTest(name=name, j=j):
                    data = quasi_bialgebra_biproduct(name, j)
                    self.assertEqual(6, data.dim)
                    self.assertTrue(verify_quasi_bialgebra(data.assembled).passed)
                    result = jacobson_radical(data.assembled.alg)
                    self.assertEqual(2, result.dim)
                    self.assertEqual(2, result.nilpotency_index)

    def test_no_antipode_no_quasi_hopf_biproduct(self):
        with self.assertRaises(MissingAntipode):
            assemble_biproduct_hopf(bar_bialgebra("Bu", 0), build_h2())


class TestHopfBiproducts(TestCase):

    def test_biproducts_over_h2_are_semisimple(self):
        for name in ("B_C6xH2", "B_starxH2"):
            with self.subTest(name=name):
                data = hopf_biproduct(name)
                self.assertIsInstance(data.assembled, QuasiHopfData)
                self.assertEqual(0, jacobson_radical(data.assembled.alg).dim)

    def test_every_hopf_biproduct_has_dimension_six(self):
        for name in HOPF_BIPRODUCTS:
            with self.subTest(name=name):
                self.assertEqual(6, hopf_biproduct(name).dim)

    def test_explicit_isomorphisms_onto_the_classical_algebras(self):
        for name in ("B_C6xkC2", "B_S3xkC2", "B_starxkC2"):
            with self.subTest(name=name):
                data, target, mapping = biproduct_isomorphism(name)
                report = verify_algebra_morphism(data.assembled, target, mapping, bijective=True, quasi_hopf=True)
                self.assertTrue(report.passed, report.failed_checks)

    def test_generator_of_the_s3_biproduct_acts_by_inversion(self):
        data = hopf_biproduct("B_S3xkC2")
        A = data.assembled.alg
        one = CycScalar.one()
        x = data.embed_braided({(1,): one})
        g = data.embed_base({(1,): one})
        self.assertEqual(A.multiply(A.multiply(x, x), g), A.multiply(g, x))


class TestSmashProduct(TestCase):

    def test_smash_product_of_the_lemma_algebras_is_associative(self):
        for name in LEMMA_ALGEBRAS:
            for j in (0, 1):
                with self.subTest(algebra=name, j=j):
                    A = smash_product_algebra(lemma_algebra(name, j), build_h2())
                    self.assertEqual(6, A.dim)
                    self.assertEqual({(0,): CycScalar.one()}, A.unit.coords)
                    self.assertTrue(verify_algebra(A).passed)

    def test_smash_coproduct_of_grouplikes_with_trivial_reassociator(self):
        comult, counit = smash_coproduct(c3_hopf("C6"), build_kc2())
        one = CycScalar.one()
        self.assertEqual({(s, s, s): one for s in range(6)}, comult.coords)
        self.assertEqual({(s,): one for s in range(6)}, counit.coords)
