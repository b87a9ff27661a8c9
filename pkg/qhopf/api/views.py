import logging

from qhopf.api.exception import HandlerException
from qhopf.catalog import registry
from qhopf.celery_tasks import verification_orchestrator
from qhopf.handlers.base import payload_kind
from qhopf.models import ExecutionRequest
from qhopf.orchestrator import orchestrator
from qhopf.utils import root_cause

logger = logging.getLogger(__name__)


def submit(_data: dict, action: str = "verify") -> ExecutionRequest:
    '''
    Main function called by the command line.
    It picks the handler able to manage the payload kind, opens an
    execution request and runs the handler task chain for the action.
    Usage errors are raised before any task starts
    '''
    handler = orchestrator.get_handler(_data)
    if handler is None:
        raise HandlerException(f"No handler can manage the kind {payload_kind(_data) or 'of the payload'}")
    if not handler.can_do(action):
        raise HandlerException(f"The handler {handler} cannot manage the action required: {action}")
    handler.is_valid(_data)
    if _data.get("entry"):
        registry.get_entry(_data["entry"]).resolve(_data.get("params"))

    step = next(iter(handler.get_task_list(action=action)))
    execution_id = orchestrator.create_execution_request(
        func_name=step,
        step=step,
        input_params={**_data, "handler_module_path": str(handler)},
        action=action,
        name=_data.get("entry") or (_data.get("document") or {}).get("name"),
    )
    try:
        sig = verification_orchestrator.s(
            str(execution_id),
            handler=str(handler),
            step=step,
            action=action
        )
        sig.apply_async()
    except Exception as e:
        orchestrator.set_as_failed(execution_id=str(execution_id), reason=str(e))
        cause = root_cause(e)
        logger.error(f"Execution {execution_id} failed: {cause}")
        raise cause
    return orchestrator.get_execution_object(execution_id)
