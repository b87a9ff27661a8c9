import uuid
from unittest import TestCase
from unittest.mock import patch

from qhopf.api.exception import (BadParameter, HandlerException,
                                 InvalidPayloadException,
                                 VerificationStepException)
from qhopf.api.views import submit
from qhopf.catalog.hopf import build_h2
from qhopf.celery_tasks import (ErrorBaseTaskClass, compute_radical,
                                load_structure, verify_structure)
from qhopf.handlers.apps import run_setup_hooks
from qhopf.models import ExecutionRequest
from qhopf.orchestrator import orchestrator

HANDLER = "qhopf.handlers.quasihopf.handler.QuasiHopfHandler"


class TestCeleryTasks(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        run_setup_hooks()

    def _create(self, **input_params):
        return str(orchestrator.create_execution_request(
            func_name="start_verification",
            step="start_verification",
            input_params={**input_params, "handler_module_path": HANDLER},
            action="verify",
        ))

    @patch("qhopf.celery_tasks.verification_orchestrator.apply_async")
    def test_load_structure(self, mock_next):
        _id = self._create(entry="H2")
        load_structure(_id, handler_module_path=HANDLER, action="verify")
        _exec = orchestrator.get_execution_object(_id)
        self.assertIs(build_h2(), _exec.structure)
        self.assertEqual("H2", _exec.name)
        mock_next.assert_called_once_with((_id, HANDLER, "qhopf.load_structure", "verify"))

    @patch("qhopf.celery_tasks.verification_orchestrator.apply_async")
    def test_load_structure_with_invalid_payload_should_raise(self, mock_next):
        _id = self._create(entry="H2", document={"kind": "algebra"})
        with self.assertRaises(VerificationStepException) as _exc:
            load_structure(_id, handler_module_path=HANDLER, action="verify")
        self.assertIn("Provide either a catalog entry or a document", str(_exc.exception.detail))
        self.assertIsInstance(_exc.exception.__cause__ or _exc.exception.__context__, InvalidPayloadException)
        self.assertEqual(ExecutionRequest.STATUS_FAILED, orchestrator.get_execution_object(_id).status)
        errors = orchestrator.get_execution_object(_id).output_params["errors"]
        self.assertEqual(1, len(errors))
        self.assertTrue(errors[0].startswith(f"Task: qhopf.load_structure raised an error during actions for: {_id}"))
        self.assertIn("Provide either a catalog entry or a document", errors[0])
        mock_next.assert_not_called()

    @patch("qhopf.celery_tasks.verification_orchestrator.apply_async")
    def test_verify_structure_stores_the_report(self, mock_next):
        _id = self._create(entry="H2", expect="quasi_bialgebra")
        orchestrator.update_execution_request_status(_id, structure=build_h2())
        verify_structure(_id, handler_module_path=HANDLER, action="verify")
        report = orchestrator.get_execution_object(_id).output_params["report"]
        self.assertTrue(report.passed)
        self.assertIsNone(report.record("q5"))
        mock_next.assert_called_once()

    @patch("qhopf.celery_tasks.verification_orchestrator.apply_async")
    def test_compute_radical(self, mock_next):
        _id = self._create(entry="Hu", params={"j": 0})
        load_structure(_id, handler_module_path=HANDLER, action="radical")
        compute_radical(_id, handler_module_path=HANDLER, action="radical")
        radical = orchestrator.get_execution_object(_id).output_params["radical"]
        self.assertEqual(2, radical["radical_dim"])
        self.assertFalse(radical["semisimple"])
        self.assertTrue(all(radical["certificates"].values()))

    def test_get_uuid_picks_the_execution_id(self):
        _uuid = str(uuid.uuid4())
        self.assertEqual(_uuid, ErrorBaseTaskClass()._get_uuid(["not-an-id", _uuid, HANDLER]))


class TestSubmit(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        run_setup_hooks()

    def test_verification_chain_runs_to_completion(self):
        execution = submit({"entry": "kC6_Phi", "params": {"a": 1}})
        self.assertEqual(ExecutionRequest.STATUS_FINISHED, execution.status)
        self.assertTrue(execution.output_params["report"].passed)

    def test_failing_checks_are_a_result(self):
        execution = submit({"entry": "DH2_printed"})
        self.assertEqual(ExecutionRequest.STATUS_FINISHED, execution.status)
        self.assertIn("q1", execution.output_params["report"].failed_checks)

    def test_expected_kind_selects_the_suite(self):
        execution = submit({"entry": "Hu", "params": {"j": 1}, "expect": "quasi_hopf"})
        report = execution.output_params["report"]
        self.assertEqual(["kind"], report.failed_checks)

    def test_radical_action(self):
        execution = submit({"entry": "B_C6xH2"}, action="radical")
        self.assertEqual(0, execution.output_params["radical"]["radical_dim"])

    def test_unknown_kind_should_raise(self):
        with self.assertRaises(HandlerException):
            submit({"document": {"kind": "twist", "dim": 1, "F": []}})

    def test_unknown_action_should_raise(self):
        with self.assertRaises(HandlerException):
            submit({"entry": "H2"}, action="decompose")

    def test_bad_parameter_is_raised_before_any_task(self):
        with self.assertRaises(BadParameter):
            submit({"entry": "kC6_Phi", "params": {"a": 9}})
