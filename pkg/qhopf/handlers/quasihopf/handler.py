import logging

from qhopf.algebra import AlgebraPresentation, verify_algebra
from qhopf.handlers.base import BaseHandler, algebra_of
from qhopf.models import VerificationReport
from qhopf.quasihopf import (QuasiBialgebraData, QuasiHopfData,
                             verify_quasi_bialgebra, verify_quasi_hopf)

logger = logging.getLogger(__name__)


class QuasiHopfHandler(BaseHandler):
    '''
    Handler for algebras, quasi-bialgebras and quasi-Hopf algebras.
    It must provide the task_lists required to complete the verification
    '''

    KINDS = ("algebra", "quasi_bialgebra", "quasi_hopf")

    ACTIONS = {
        "verify": (
            "start_verification",
            "qhopf.load_structure",
            "qhopf.verify_structure",
        ),
        "radical": (
            "start_radical",
            "qhopf.load_structure",
            "qhopf.compute_radical",
        ),
    }

    def verify(self, structure, kind=None) -> VerificationReport:
        actual = self.kind_of(structure)
        kind = kind or actual
        if kind == "quasi_hopf":
            if not isinstance(structure, QuasiHopfData):
                return self.kind_mismatch(structure, kind, actual)
            return verify_quasi_hopf(structure)
        if kind == "quasi_bialgebra":
            if not isinstance(structure, (QuasiBialgebraData, QuasiHopfData)):
                return self.kind_mismatch(structure, kind, actual)
            return verify_quasi_bialgebra(structure)
        if isinstance(structure, AlgebraPresentation) or hasattr(structure, "alg"):
            return verify_algebra(algebra_of(structure))
        return self.kind_mismatch(structure, kind, actual)
