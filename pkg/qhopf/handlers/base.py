from abc import ABC
import logging

from qhopf.algebra import AlgebraPresentation, jacobson_radical
from qhopf.api.exception import HandlerException, InvalidPayloadException
from qhopf.api import serializer
from qhopf.catalog import registry
from qhopf.models import VerificationReport
from qhopf.quasihopf import QuasiBialgebraData, QuasiHopfData
from qhopf.yd import BraidedBialgebraData

logger = logging.getLogger(__name__)


def payload_kind(_data) -> str:
    '''
    Kind of the structure named by a payload: the expected kind when
    given, the catalog kind or the document kind otherwise
    '''
    if _data.get("expect"):
        return _data["expect"]
    if _data.get("entry"):
        return registry.get_entry(_data["entry"]).kind
    document = _data.get("document") or {}
    return document.get("kind", "")


def algebra_of(structure) -> AlgebraPresentation:
    if isinstance(structure, AlgebraPresentation):
        return structure
    if isinstance(structure, (QuasiBialgebraData, QuasiHopfData, BraidedBialgebraData)):
        return structure.alg
    raise HandlerException(f"{type(structure).__name__} carries no multiplication")


class BaseHandler(ABC):
    '''
    Base abstract handler object
    define the required method needed to define a verification handler
    it must:
    - provide the tasks list for every action
    - load the structure from a catalog entry or a document
    - verify the structure against the axioms of its kind
    - create_error_log
    '''

    REGISTRY = []

    KINDS = ()

    ACTIONS = {
        "verify": (),
        "radical": (),
    }

    def __str__(self):
        return f"{self.__module__}.{self.__class__.__name__}"

    def __repr__(self):
        return self.__str__()

    @classmethod
    def register(cls):
        if cls not in BaseHandler.REGISTRY:
            BaseHandler.REGISTRY.append(cls)

    @classmethod
    def get_registry(cls):
        return BaseHandler.REGISTRY

    @classmethod
    def get_task_list(cls, action) -> tuple:
        if action not in cls.ACTIONS:
            raise HandlerException(f"The requested action is not implemented yet: {action}")
        return cls.ACTIONS.get(action)

    @classmethod
    def can_handle(cls, _data) -> bool:
        '''
        This endpoint will return True or False if with the info provided
        the handler is able to handle the structure or not
        '''
        return payload_kind(_data) in cls.KINDS

    @classmethod
    def can_do(cls, action) -> bool:
        return action in cls.ACTIONS

    @staticmethod
    def is_valid(_data) -> bool:
        '''
        A payload names exactly one catalog entry or carries one document
        '''
        if bool(_data.get("entry")) == bool(_data.get("document")):
            raise InvalidPayloadException("Provide either a catalog entry or a document")
        if _data.get("document"):
            serializer.validate(_data["document"])
        return True

    @staticmethod
    def load(_data):
        if _data.get("entry"):
            return registry.build(_data["entry"], _data.get("params"))
        return serializer.decode(_data["document"])

    @staticmethod
    def kind_of(structure) -> str:
        return serializer.encode_kind(structure)

    @staticmethod
    def kind_mismatch(structure, expected: str, actual: str) -> VerificationReport:
        '''
        A structure lacking the data of the requested kind fails by definition
        '''
        report = VerificationReport(getattr(structure, "name", "") or expected)
        report.add("kind", f"carries the data of a {expected}", {"expected": expected, "actual": actual})
        return report

    def verify(self, structure, kind=None) -> VerificationReport:
        raise NotImplementedError

    @staticmethod
    def radical(structure) -> dict:
        A = algebra_of(structure)
        result = jacobson_radical(A)
        return {
            "subject": A.name,
            "dim": A.dim,
            "radical_dim": result.dim,
            "basis": [serializer.encode_sparse(v) for v in result.radical.vectors()],
            "nilpotency_index": result.nilpotency_index,
            "certificates": dict(result.certificates),
            "semisimple": result.dim == 0,
        }

    @staticmethod
    def create_error_log(exc, task_name, *args):
        '''
        This function will handle the creation of the log error for each message.
        This is helpful and needed, so each handler can specify the log as needed
        '''
        return f"Task: {task_name} raised an error during actions for: {', '.join(str(a) for a in args)}: {exc}"
