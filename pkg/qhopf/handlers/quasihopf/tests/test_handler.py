from unittest import TestCase

from qhopf.api.exception import HandlerException, InvalidPayloadException
from qhopf.catalog import registry
from qhopf.catalog.hopf import build_h2
from qhopf.handlers.quasihopf.handler import QuasiHopfHandler


class TestQuasiHopfHandler(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.handler = QuasiHopfHandler()
        cls.valid_entry = {"entry": "kS3_Psi", "params": {"a": 1}}

    def test_task_list_is_as_expected(self):
        self.assertEqual(
            ("start_verification", "qhopf.load_structure", "qhopf.verify_structure"),
            self.handler.get_task_list(action="verify"),
        )
        self.assertEqual(
            ("start_radical", "qhopf.load_structure", "qhopf.compute_radical"),
            self.handler.get_task_list(action="radical"),
        )

    def test_unknown_action_should_raise(self):
        with self.assertRaises(HandlerException) as _exc:
            self.handler.get_task_list(action="twist")
        self.assertEqual("The requested action is not implemented yet: twist", str(_exc.exception.detail))

    def test_can_handle_should_return_true_for_quasi_hopf_kinds(self):
        self.assertTrue(self.handler.can_handle(self.valid_entry))
        self.assertTrue(self.handler.can_handle({"entry": "Hu", "params": {"j": 0}}))
        self.assertTrue(self.handler.can_handle({"document": {"kind": "algebra"}}))

    def test_can_handle_should_return_false_for_other_kinds(self):
        self.assertFalse(self.handler.can_handle({"entry": "B_star"}))
        self.assertFalse(self.handler.can_handle({"document": {"kind": "cocycle"}}))

    def test_is_valid_should_raise_without_a_source(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            self.handler.is_valid({})
        self.assertEqual("Provide either a catalog entry or a document", str(_exc.exception.detail))

    def test_is_valid_checks_the_document(self):
        with self.assertRaises(InvalidPayloadException):
            self.handler.is_valid({"document": {"kind": "quasi_hopf", "dim": 2}})
        self.assertTrue(self.handler.is_valid(self.valid_entry))

    def test_load_builds_the_catalog_entry(self):
        self.assertIs(registry.build("kS3_Psi", {"a": 1}), self.handler.load(self.valid_entry))

    def test_verify_uses_the_stored_kind(self):
        report = self.handler.verify(build_h2())
        self.assertTrue(report.passed)
        self.assertEqual("q6", report.records[-1].check_id)

    def test_verify_as_algebra(self):
        report = self.handler.verify(build_h2(), kind="algebra")
        self.assertTrue(report.passed)
        self.assertIsNone(report.record("q1"))

    def test_missing_antipode_is_a_kind_mismatch(self):
        structure = registry.build("Huu", {"j": 0})
        report = self.handler.verify(structure, kind="quasi_hopf")
        self.assertEqual(["kind"], report.failed_checks)
        self.assertEqual({"expected": "quasi_hopf", "actual": "quasi_bialgebra"}, report.record("kind").witness)

    def test_radical_of_a_semisimple_algebra(self):
        radical = self.handler.radical(build_h2())
        self.assertEqual(0, radical["radical_dim"])
        self.assertTrue(radical["semisimple"])
        self.assertEqual([], radical["basis"])

    def test_create_error_log(self):
        log = self.handler.create_error_log(Exception("boom"), "qhopf.load_structure", "abc")
        self.assertEqual("Task: qhopf.load_structure raised an error during actions for: abc: boom", log)
