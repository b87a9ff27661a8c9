import logging

from qhopf.handlers.base import BaseHandler
from qhopf.models import VerificationReport
from qhopf.yd import (BraidedBialgebraData, YDModuleData, verify_braided_hopf,
                      verify_yd_algebra, verify_yd_bialgebra,
                      verify_yd_coalgebra, verify_yd_module)

logger = logging.getLogger(__name__)


class YDHandler(BaseHandler):
    '''
    Handler for Yetter-Drinfeld modules and the algebras, coalgebras,
    bialgebras and Hopf algebras living in that category
    '''

    KINDS = (
        "yd_module",
        "braided_algebra",
        "braided_coalgebra",
        "braided_bialgebra",
        "braided_hopf",
    )

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

    VERIFIERS = {
        "braided_algebra": verify_yd_algebra,
        "braided_coalgebra": verify_yd_coalgebra,
        "braided_bialgebra": verify_yd_bialgebra,
        "braided_hopf": verify_braided_hopf,
    }

    def verify(self, structure, kind=None) -> VerificationReport:
        actual = self.kind_of(structure)
        kind = kind or actual
        if kind == "yd_module":
            module = structure.module if isinstance(structure, BraidedBialgebraData) else structure
            if not isinstance(module, YDModuleData):
                return self.kind_mismatch(structure, kind, actual)
            return verify_yd_module(module)
        if not isinstance(structure, BraidedBialgebraData):
            return self.kind_mismatch(structure, kind, actual)
        if kind != "braided_algebra" and not structure.has_coalgebra:
            return self.kind_mismatch(structure, kind, actual)
        if kind == "braided_hopf" and structure.antipode is None:
            return self.kind_mismatch(structure, kind, actual)
        logger.debug(f"Verifying {structure.name} as {kind}")
        return self.VERIFIERS[kind](structure)
