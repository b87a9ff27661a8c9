import uuid
from unittest import TestCase
from unittest.mock import patch

from celery import states

from qhopf.api.exception import (HandlerException,
                                 VerificationStepException)
from qhopf.handlers.apps import run_setup_hooks
from qhopf.handlers.base import BaseHandler
from qhopf.handlers.quasihopf.handler import QuasiHopfHandler
from qhopf.handlers.yd.handler import YDHandler
from qhopf.models import ExecutionRequest
from qhopf.orchestrator import VerificationOrchestrator

HANDLER = "qhopf.handlers.quasihopf.handler.QuasiHopfHandler"


class TestVerificationOrchestrator(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        run_setup_hooks()
        cls.orchestrator = VerificationOrchestrator()

    def _create(self, step="start_verification"):
        return str(self.orchestrator.create_execution_request(
            func_name="start_verification",
            step=step,
            input_params={"entry": "H2", "handler_module_path": HANDLER},
            action="verify",
        ))

    def test_handlers_are_registered_once(self):
        run_setup_hooks()
        self.assertEqual([QuasiHopfHandler, YDHandler], BaseHandler.get_registry())

    def test_get_handler(self):
        self.assertIsInstance(self.orchestrator.get_handler({"entry": "kS3"}), QuasiHopfHandler)
        self.assertIsInstance(self.orchestrator.get_handler({"entry": "B_C6"}), YDHandler)
        self.assertIsInstance(self.orchestrator.get_handler({"document": {"kind": "yd_module"}}), YDHandler)

    def test_get_handler_returns_none_for_an_unknown_kind(self):
        self.assertIsNone(self.orchestrator.get_handler({"document": {"kind": "cocycle"}}))

    def test_get_execution_object_raise_exp_if_not_exists(self):
        with self.assertRaises(HandlerException) as _exc:
            self.orchestrator.get_execution_object(str(uuid.uuid4()))
        self.assertEqual(str(_exc.exception.detail), "The selected UUID does not exists")

    def test_create_execution_request(self):
        _id = self._create()
        _exec = self.orchestrator.get_execution_object(_id)
        self.assertEqual(ExecutionRequest.STATUS_READY, _exec.status)
        self.assertEqual("H2", _exec.input_params["entry"])
        self.assertEqual("verify", _exec.action)

    @patch("qhopf.orchestrator.verifier_app.tasks.get")
    def test_perform_next_verification_step(self, mock_celery):
        _id = self._create()
        self.orchestrator.perform_next_step(_id, action="verify", handler_module_path=HANDLER)
        mock_celery.assert_called_once_with("qhopf.load_structure")
        self.assertEqual(ExecutionRequest.STATUS_RUNNING, self.orchestrator.get_execution_object(_id).status)

    @patch("qhopf.orchestrator.verifier_app.tasks.get")
    def test_perform_last_verification_step(self, mock_celery):
        _id = self._create(step="qhopf.verify_structure")
        self.orchestrator.perform_next_step(_id, action="verify", handler_module_path=HANDLER)
        mock_celery.assert_not_called()
        self.assertEqual(ExecutionRequest.STATUS_FINISHED, self.orchestrator.get_execution_object(_id).status)

    @patch("qhopf.orchestrator.verifier_app.tasks.get")
    def test_perform_with_error_set_invalid_status(self, mock_celery):
        mock_celery.side_effect = Exception("test exception")
        _id = self._create()
        with self.assertRaises(Exception):
            self.orchestrator.perform_next_step(_id, action="verify", handler_module_path=HANDLER)
        _exec = self.orchestrator.get_execution_object(_id)
        self.assertEqual(ExecutionRequest.STATUS_FAILED, _exec.status)
        self.assertEqual("test exception", _exec.log)

    def test_unknown_action_should_raise(self):
        _id = self._create()
        with self.assertRaises(HandlerException):
            self.orchestrator.perform_next_step(_id, action="decompose", handler_module_path=HANDLER)
        self.assertEqual(ExecutionRequest.STATUS_FAILED, self.orchestrator.get_execution_object(_id).status)

    def test_set_as_failed(self):
        _id = self._create()
        self.orchestrator.set_as_failed(_id, reason="automatic test")
        req = self.orchestrator.get_execution_object(_id)
        self.assertEqual(ExecutionRequest.STATUS_FAILED, req.status)
        self.assertEqual("automatic test", req.log)
        self.assertIsNotNone(req.finished)

    def test_set_as_completed(self):
        _id = self._create()
        self.orchestrator.set_as_completed(_id)
        self.assertEqual(ExecutionRequest.STATUS_FINISHED, self.orchestrator.get_execution_object(_id).status)

    def test_evaluate_execution_progress(self):
        _id = self._create()
        self.orchestrator.mark_task(_id, "task-1", states.STARTED)
        self.orchestrator.evaluate_execution_progress(_id)
        self.assertEqual(ExecutionRequest.STATUS_READY, self.orchestrator.get_execution_object(_id).status)

        self.orchestrator.mark_task(_id, "task-1", states.FAILURE)
        with self.assertRaises(VerificationStepException):
            self.orchestrator.evaluate_execution_progress(_id)

        self.orchestrator.mark_task(_id, "task-1", states.SUCCESS)
        self.orchestrator.evaluate_execution_progress(_id)
        self.assertEqual(ExecutionRequest.STATUS_FINISHED, self.orchestrator.get_execution_object(_id).status)

    def test_update_execution_request_status(self):
        _id = self._create()
        self.orchestrator.update_execution_request_status(_id, status=ExecutionRequest.STATUS_RUNNING, name="H2")
        req = self.orchestrator.get_execution_object(_id)
        self.assertEqual(ExecutionRequest.STATUS_RUNNING, req.status)
        self.assertEqual("H2", req.name)

    def test_delete_execution_request(self):
        _id = self._create()
        self.orchestrator.delete_execution_request(_id)
        with self.assertRaises(HandlerException):
            self.orchestrator.get_execution_object(_id)
