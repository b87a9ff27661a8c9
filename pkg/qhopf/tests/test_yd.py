from unittest import TestCase
from unittest.mock import patch

from qhopf.api.exception import (BaseMismatch, BraidingUnconfigured,
                                 Infeasible, UnsupportedBase)
from qhopf.catalog import registry
from qhopf.catalog.braided import c3_hopf, primitive_coalgebra
from qhopf.catalog.hopf import build_h2, build_kc2, ks3
from qhopf.exactcore import CycScalar, Tensor
from qhopf.yd import (YDModuleData, base_kind, braiding_findings,
                      braiding_h_linear, braiding_matrix, build_simple,
                      decompose_simples, op_cop, simple_labels,
                      solve_braided_antipode, verify_braided_hopf,
                      verify_yd_bialgebra, verify_yd_coalgebra,
                      verify_yd_module, yd_tensor)


class TestSimpleModules(TestCase):

    def test_base_kinds(self):
        self.assertEqual("H2", base_kind(build_h2()))
        self.assertEqual("kC2", base_kind(build_kc2()))
        with self.assertRaises(UnsupportedBase):
            base_kind(ks3())

    def test_simple_objects_are_yd_modules(self):
        for H in (build_h2(), build_kc2()):
            for label in simple_labels(H):
                with self.subTest(label=label):
                    report = verify_yd_module(build_simple(H, label))
                    self.assertTrue(report.passed, report.failed_checks)
                    self.assertListEqual(
                        ["module_unital", "module_associative", "counit_compat", "y1", "y3"],
                        [r.check_id for r in report.records],
                    )

    def test_unknown_simple_label_should_raise(self):
        with self.assertRaises(UnsupportedBase):
            build_simple(build_h2(), "M_0^0")

    def test_broken_coaction_fails_counit_compat(self):
        H = build_kc2()
        one = CycScalar.one()
        M = YDModuleData(
            H, 1,
            Tensor.from_coords((2, 1, 1), {(0, 0, 0): one, (1, 0, 0): one}),
            Tensor.from_coords((1, 2, 1), {(0, 0, 0): one, (0, 1, 0): one}),
            name="broken",
        )
        self.assertIn("counit_compat", verify_yd_module(M).failed_checks)


class TestTensorProducts(TestCase):

    def test_tensor_products_of_simples_are_yd_modules(self):
        for H in (build_h2(), build_kc2()):
            labels = simple_labels(H)
            for left in labels:
                for right in labels:
                    with self.subTest(left=left, right=right):
                        product = yd_tensor(build_simple(H, left), build_simple(H, right))
                        self.assertEqual(1, product.dim)
                        decomposition = decompose_simples(product)
                        self.assertTrue(decomposition.reconstructed)
                        self.assertEqual(1, len(decomposition.labels()))

    def test_grading_adds_over_kc2(self):
        H = build_kc2()
        product = yd_tensor(build_simple(H, "M_1^0"), build_simple(H, "M_1^1"))
        self.assertListEqual(["M_0^1"], decompose_simples(product).labels())

    def test_modules_over_different_bases_should_raise(self):
        with self.assertRaises(BaseMismatch):
            yd_tensor(build_simple(build_h2(), "M_0"), build_simple(build_kc2(), "M_0^0"))


class TestDecomposition(TestCase):

    def test_c3_fixtures_decompose_into_simples(self):
        expected = {
            "B_C6": ["M_0^0", "M_0^0", "M_0^0"],
            "B_S3": ["M_0^0", "M_0^0", "M_1^0"],
            "B_star": ["M_0^0", "M_0^0", "M_0^1"],
        }
        for name, labels in expected.items():
            with self.subTest(name=name):
                decomposition = decompose_simples(registry.build(name).module)
                self.assertListEqual(labels, decomposition.labels())
                self.assertTrue(decomposition.reconstructed)


class TestBraidedStructures(TestCase):

    def test_c3_hopf_algebras_over_both_bases(self):
        for base in ("kC2", "H2"):
            for kind in ("C6", "star"):
                with self.subTest(base=base, kind=kind):
                    B = c3_hopf(kind, base)
                    self.assertTrue(verify_braided_hopf(B).passed)

    def test_primitive_coalgebra_fails_only_the_compatibility(self):
        B = primitive_coalgebra(0)
        self.assertTrue(verify_yd_coalgebra(B).passed)
        self.assertListEqual(["moltcon2"], verify_yd_bialgebra(B).failed_checks)

    def test_antipode_is_infeasible_for_an_idempotent(self):
        with self.assertRaises(Infeasible) as _exc:
            solve_braided_antipode(registry.build("Bu", {"j": 0}))
        self.assertIn("inconsistent", _exc.exception.certificate)

    def test_braiding_must_be_configured(self):
        module = registry.build("B_S3").module
        with patch("qhopf.yd.settings.QHOPF_BRAIDING", None):
            with self.assertRaises(BraidingUnconfigured):
                braiding_matrix(module)
        with self.assertRaises(BraidingUnconfigured):
            braiding_matrix(module, "unknown")

    def test_braiding_is_h_linear_over_kc2(self):
        self.assertTrue(braiding_h_linear(registry.build("B_S3").module, "coaction_action"))

    def test_braiding_findings_use_the_configured_braiding(self):
        B = registry.build("B_S3")
        with patch("qhopf.yd.settings.QHOPF_BRAIDING", "coaction_action"):
            findings = braiding_findings(B, expected=B)
            flipped = op_cop(B)
        self.assertSetEqual({"h_linear", "yd_bialgebra", "matches_expected"}, set(findings))
        self.assertTrue(findings["h_linear"])
        self.assertEqual(B.dim, flipped.dim)
        self.assertEqual(B.unit, flipped.unit)
