import logging
import threading
from datetime import datetime, timezone
from typing import Dict, Optional
from uuid import UUID, uuid4

from celery import states
from kombu.utils.imports import symbol_by_name

from qhopf.api.exception import HandlerException, VerificationStepException
from qhopf.celery_app import verifier_app
from qhopf.handlers.base import BaseHandler
from qhopf.models import ExecutionRequest

logger = logging.getLogger(__name__)


def now():
    return datetime.now(timezone.utc)


class VerificationOrchestrator:
    '''
    Main verification object. Is responsible to handle all the execution steps.
    Using the ExecutionRequest object, will extrapolate the information and
    it call the next step of the handler task chain.
    The execution requests live in the memory of the current process
    '''

    def __init__(self) -> None:
        self._executions: Dict[str, ExecutionRequest] = {}
        self._lock = threading.Lock()

    def get_handler(self, _data) -> Optional[BaseHandler]:
        """
        If the payload names a supported kind, return the handler which can
        verify it, otherwise return None
        """
        for handler in BaseHandler.get_registry():
            if handler.can_handle(_data):
                return handler()
        logger.error(f"Handler not found for the payload kind {_data.get('expect') or _data.get('entry')}")
        return None

    def load_handler(self, module_path):
        return symbol_by_name(module_path)

    def get_execution_object(self, exec_id) -> ExecutionRequest:
        '''
        Returns the ExecutionRequest object with the detail about the
        current execution
        '''
        req = self._executions.get(str(exec_id))
        if req is None:
            raise HandlerException("The selected UUID does not exists")
        return req

    def perform_next_step(self, execution_id: str, action: str, step: str = None, handler_module_path: str = None, **kwargs) -> None:
        '''
        It takes the executionRequest detail to extract which was the last step
        and take from the task_lists provided by the handler
        which will be the following step. if empty a None is returned, otherwise
        the next step is called
        '''
        try:
            _exec_obj = self.get_execution_object(str(execution_id))
            if step is None:
                step = _exec_obj.step

            # retrieve the task list for the structure kind
            tasks = self.load_handler(handler_module_path).get_task_list(action=action)
            _index = tasks.index(step) + 1
            if _index == 1:
                # first task available, the execution is running from now on
                self.update_execution_request_status(
                    execution_id=str(_exec_obj.exec_id),
                    status=ExecutionRequest.STATUS_RUNNING
                )
            remaining_tasks = tasks[_index:] if not _index >= len(tasks) else []
            if not remaining_tasks:
                # The list of task is empty, it means that the process is finished
                self.evaluate_execution_progress(execution_id)
                return
            next_step = next(iter(remaining_tasks))

            task_params = (str(execution_id), handler_module_path, action)
            logger.info(f"STARTING NEXT STEP {next_step}")

            verifier_app.tasks.get(next_step).apply_async(task_params, kwargs)
            return execution_id

        except StopIteration:
            logger.info("The whole list of tasks has been processed")
            self.set_as_completed(execution_id)
            return
        except Exception as e:
            self.set_as_failed(execution_id, reason=str(e.detail if hasattr(e, "detail") else e.args[0]))
            raise e

    def set_as_failed(self, execution_id, reason=None):
        '''
        Utility method to set the ExecutionRequest object to fail
        '''
        self.update_execution_request_status(
            execution_id=str(execution_id),
            status=ExecutionRequest.STATUS_FAILED,
            finished=now(),
            last_updated=now(),
            log=reason,
        )

    def set_as_completed(self, execution_id):
        '''
        Utility method to set the ExecutionRequest object to finished
        '''
        self.update_execution_request_status(
            execution_id=str(execution_id),
            status=ExecutionRequest.STATUS_FINISHED,
            finished=now(),
            last_updated=now(),
        )

    def mark_task(self, execution_id, task_id, state):
        with self._lock:
            _exec = self._executions.get(str(execution_id))
            if _exec is not None and task_id:
                _exec.tasks[task_id] = state

    def evaluate_execution_progress(self, execution_id):
        '''
        The execution id is a mandatory argument for the task
        We use that to filter out all the task execution that are still in progress.
        if any is failed, we raise it.
        '''
        _exec = self.get_execution_object(execution_id)
        pending = [t for t, s in _exec.tasks.items() if s not in (states.SUCCESS, states.FAILURE)]
        failed = [t for t, s in _exec.tasks.items() if s == states.FAILURE]
        if pending:
            logger.info(f"Execution progress with id {execution_id} is not finished yet, continuing")
            return
        elif failed:
            logger.error(f"For the execution ID {execution_id} The following celery task are failed: {failed}")
            raise VerificationStepException("One or more steps raised an error during the verification, please check the logs")
        else:
            logger.info(f"Execution with ID {execution_id} is completed. All tasks are done")
            self.set_as_completed(execution_id)

    def create_execution_request(
        self,
        func_name: str,
        step: str,
        input_params: dict,
        action=None,
        name=None,
    ) -> UUID:
        """
        Create an execution request. Return the UUID of the request
        """
        exec_id = uuid4()
        with self._lock:
            self._executions[str(exec_id)] = ExecutionRequest(
                exec_id=str(exec_id),
                func_name=func_name,
                step=step,
                input_params=input_params,
                action=action,
                name=name,
                created=now(),
                last_updated=now(),
            )
        return exec_id

    def update_execution_request_status(self, execution_id, status=None, celery_task_request=None, **kwargs):
        '''
        Update the execution request status and keep track of the
        celery task running the step
        '''
        if status is not None:
            kwargs['status'] = status
        with self._lock:
            _exec = self._executions.get(str(execution_id))
            if _exec is None:
                logger.error(f"No execution request with ID {execution_id}")
                return
            for key, value in kwargs.items():
                setattr(_exec, key, value)
            if celery_task_request is not None and celery_task_request.id:
                _exec.tasks[celery_task_request.id] = states.STARTED

    def delete_execution_request(self, execution_id):
        with self._lock:
            self._executions.pop(str(execution_id), None)


orchestrator = VerificationOrchestrator()
