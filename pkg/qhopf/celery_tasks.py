import logging
from uuid import UUID

from celery import Task, states
from kombu.utils.imports import symbol_by_name

from qhopf.api.exception import (HandlerException, InvalidPayloadException,
                                 StartVerificationException,
                                 VerificationStepException)
from qhopf.celery_app import verifier_app
from qhopf.orchestrator import now, orchestrator
from qhopf.settings import (QHOPF_GLOBAL_RATE_LIMIT,
                            QHOPF_RADICAL_RATE_LIMIT)
from qhopf.utils import error_handler

logger = logging.getLogger(__name__)


class ErrorBaseTaskClass(Task):
    '''
    Basic Error task class. Is common to all the base tasks of the verification phase
    it defines a on_failure method which set the task as "failed" with some extra information
    '''
    max_retries = 3
    track_started = True

    def on_failure(self, exc, task_id, args, kwargs, einfo):
        _uuid = self._get_uuid(args)
        reason = f"Task FAILED with ID: {_uuid}, reason: {exc}"
        logger.error(reason)
        orchestrator.mark_task(_uuid, task_id, states.FAILURE)
        orchestrator.set_as_failed(
            execution_id=_uuid, reason=str(exc.detail if hasattr(exc, "detail") else exc.args[0])
        )
        self.update_state(
            task_id=task_id,
            state="FAILURE",
            meta={
                "exec_id": _uuid,
                "reason": reason
            }
        )

    def _get_uuid(self, _list):
        for el in _list:
            try:
                UUID(str(el))
                return str(el)
            except ValueError:
                continue


def _step_failed(task, execution_id, exc, handler_module_path):
    '''
    Eager tasks propagate before on_failure runs, the step is closed here.
    The handler error log is appended to output_params["errors"]
    '''
    orchestrator.mark_task(execution_id, task.request.id, states.FAILURE)
    try:
        _exec = orchestrator.get_execution_object(execution_id)
        handler = symbol_by_name(handler_module_path)
    except (HandlerException, ImportError, AttributeError, ValueError):
        _exec = None
    if _exec is not None:
        _log = handler.create_error_log(exc, task.name, execution_id, handler_module_path)
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            output_params={**_exec.output_params, "errors": _exec.output_params.get("errors", []) + [_log]},
        )
    orchestrator.set_as_failed(execution_id, reason=str(exc.detail if hasattr(exc, "detail") else exc))


@verifier_app.task(
    bind=True,
    base=ErrorBaseTaskClass,
    name="qhopf.verification_orchestrator",
    queue="qhopf.verification_orchestrator",
    max_retries=1,
    rate_limit=QHOPF_GLOBAL_RATE_LIMIT,
    task_track_started=True
)
def verification_orchestrator(
    self, execution_id: str, handler=None, step="start_verification", action="verify", **kwargs
):
    '''
    Base task. Is the task responsible to call the orchestrator and redirect the verification to the next step
    mainly is a wrapper for the Orchestrator object.

            Parameters:
                    execution_id (UUID): unique ID used to keep track of the execution request
                    handler (str): module path of the handler owning the task list
                    step (str): last step performed from the tasks
                    action (str): verify or radical
            Returns:
                    None
    '''
    try:
        orchestrator.perform_next_step(
            execution_id=execution_id,
            step=step,
            handler_module_path=handler,
            action=action,
            **kwargs
        )

    except Exception as e:
        raise StartVerificationException(detail=error_handler(e, execution_id))


@verifier_app.task(
    bind=True,
    base=ErrorBaseTaskClass,
    name="qhopf.load_structure",
    queue="qhopf.load_structure",
    max_retries=1,
    rate_limit=QHOPF_GLOBAL_RATE_LIMIT,
    ignore_result=False,
    task_track_started=True
)
def load_structure(self, execution_id, /, handler_module_path, action, **kwargs):
    '''
    Task to build the structure named by the payload.
    NOTE: the payload is validated before the structure is built

            Parameters:
                    execution_id (UUID): unique ID used to keep track of the execution request
                    handler_module_path (str): handler able to load and verify the kind
            Returns:
                    the task name and the execution id
    '''
    try:
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            func_name="load_structure",
            step="qhopf.load_structure",
            celery_task_request=self.request
        )
        _exec = orchestrator.get_execution_object(execution_id)
        handler = symbol_by_name(handler_module_path)

        if not handler.is_valid(_exec.input_params):
            raise InvalidPayloadException("The payload is invalid")

        structure = handler.load(_exec.input_params)
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            name=getattr(structure, "name", None),
            structure=structure,
        )
        orchestrator.mark_task(execution_id, self.request.id, states.SUCCESS)

        verification_orchestrator.apply_async(
            (execution_id, handler_module_path, "qhopf.load_structure", action)
        )
        return self.name, execution_id

    except Exception as e:
        _step_failed(self, execution_id, e, handler_module_path)
        raise VerificationStepException(detail=error_handler(e, execution_id))


@verifier_app.task(
    bind=True,
    base=ErrorBaseTaskClass,
    name="qhopf.verify_structure",
    queue="qhopf.verify_structure",
    max_retries=1,
    rate_limit=QHOPF_GLOBAL_RATE_LIMIT,
    ignore_result=False,
    task_track_started=True
)
def verify_structure(self, execution_id, /, handler_module_path, action, **kwargs):
    '''
    Run the axiom suite of the requested kind and store the report.
    A failing axiom is a result, not an error: the task succeeds
    '''
    try:
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            func_name="verify_structure",
            step="qhopf.verify_structure",
            celery_task_request=self.request
        )
        _exec = orchestrator.get_execution_object(execution_id)
        handler = symbol_by_name(handler_module_path)()

        report = handler.verify(_exec.structure, kind=_exec.input_params.get("expect"))
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            output_params={**_exec.output_params, "report": report}
        )
        logger.info(f"Verification of {report.subject}: {report.summary()}")
        orchestrator.mark_task(execution_id, self.request.id, states.SUCCESS)

        verification_orchestrator.apply_async(
            (execution_id, handler_module_path, "qhopf.verify_structure", action)
        )
        return self.name, execution_id

    except Exception as e:
        _step_failed(self, execution_id, e, handler_module_path)
        raise VerificationStepException(detail=error_handler(e, execution_id))


@verifier_app.task(
    bind=True,
    base=ErrorBaseTaskClass,
    name="qhopf.compute_radical",
    queue="qhopf.compute_radical",
    max_retries=1,
    rate_limit=QHOPF_RADICAL_RATE_LIMIT,
    ignore_result=False,
    task_track_started=True
)
def compute_radical(self, execution_id, /, handler_module_path, action, **kwargs):
    '''
    Jacobson radical of the underlying algebra, with its certificates
    '''
    try:
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            func_name="compute_radical",
            step="qhopf.compute_radical",
            celery_task_request=self.request
        )
        _exec = orchestrator.get_execution_object(execution_id)
        handler = symbol_by_name(handler_module_path)

        radical = handler.radical(_exec.structure)
        orchestrator.update_execution_request_status(
            execution_id=execution_id,
            last_updated=now(),
            output_params={**_exec.output_params, "radical": radical}
        )
        orchestrator.mark_task(execution_id, self.request.id, states.SUCCESS)

        verification_orchestrator.apply_async(
            (execution_id, handler_module_path, "qhopf.compute_radical", action)
        )
        return self.name, execution_id

    except Exception as e:
        _step_failed(self, execution_id, e, handler_module_path)
        raise VerificationStepException(detail=error_handler(e, execution_id))
