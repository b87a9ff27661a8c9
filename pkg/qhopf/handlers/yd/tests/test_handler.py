from unittest import TestCase

from qhopf.api.exception import HandlerException
from qhopf.catalog import registry
from qhopf.catalog.braided import c3_hopf, lemma_algebra, simple_module
from qhopf.handlers.base import algebra_of
from qhopf.handlers.yd.handler import YDHandler


class TestYDHandler(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.handler = YDHandler()

    def test_task_list_is_as_expected(self):
        self.assertEqual(
            ("start_verification", "qhopf.load_structure", "qhopf.verify_structure"),
            self.handler.get_task_list(action="verify"),
        )

    def test_can_handle(self):
        self.assertTrue(self.handler.can_handle({"entry": "M_2"}))
        self.assertTrue(self.handler.can_handle({"entry": "bb_ii", "params": {"j": 1}}))
        self.assertTrue(self.handler.can_handle({"entry": "H2", "expect": "yd_module"}))
        self.assertFalse(self.handler.can_handle({"entry": "H2"}))

    def test_verify_module(self):
        report = self.handler.verify(simple_module("M_1^1"))
        self.assertTrue(report.passed)
        self.assertEqual(["module_unital", "module_associative", "counit_compat", "y1", "y3"],
                         [r.check_id for r in report.records])

    def test_braided_hopf_algebra_verifies_as_a_module(self):
        report = self.handler.verify(c3_hopf("S3"), kind="yd_module")
        self.assertTrue(report.passed)
        self.assertEqual("y3", report.records[-1].check_id)

    def test_algebra_without_coalgebra_is_a_kind_mismatch(self):
        report = self.handler.verify(lemma_algebra("B_0o_10", 0), kind="braided_bialgebra")
        self.assertEqual(["kind"], report.failed_checks)

    def test_bialgebra_without_antipode_is_a_kind_mismatch(self):
        report = self.handler.verify(registry.build("bb_iii", {"j": 1}), kind="braided_hopf")
        self.assertEqual(["kind"], report.failed_checks)

    def test_module_is_not_an_algebra(self):
        report = self.handler.verify(simple_module("M_0"), kind="braided_algebra")
        self.assertEqual(["kind"], report.failed_checks)
        with self.assertRaises(HandlerException):
            algebra_of(simple_module("M_0"))

    def test_radical_of_a_braided_algebra(self):
        radical = self.handler.radical(lemma_algebra("B_0o_0", 1))
        self.assertEqual(3, radical["dim"])
        self.assertEqual(2, radical["radical_dim"])
