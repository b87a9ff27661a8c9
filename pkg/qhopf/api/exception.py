EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE_ERROR = 2


class QHopfException(Exception):
    '''
    Root of the verifier exceptions.
    Every error carries a detail, a code and a category
    so the CLI and the celery tasks can report it in the same way
    '''
    exit_code = EXIT_USAGE_ERROR
    default_detail = "Exception during the verification"
    default_code = "qhopf_exception"
    category = "qhopf"

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def __str__(self):
        return str(self.detail)


class DivisionByZero(QHopfException):
    default_detail = "Division by the zero scalar"
    default_code = "division_by_zero"
    category = "exactcore"


class BadOrder(QHopfException):
    default_detail = "The requested root order is not supported by the cyclotomic field"
    default_code = "bad_order"
    category = "exactcore"


class ShapeMismatch(QHopfException):
    default_detail = "Tensor dimensions do not match"
    default_code = "shape_mismatch"
    category = "exactcore"


class NotInvertible(QHopfException):
    default_detail = "The element is not invertible"
    default_code = "not_invertible"
    category = "exactcore"


class NonCanonicalScalar(QHopfException):
    default_detail = "Scalar triples are not in canonical form"
    default_code = "non_canonical_scalar"
    category = "exactcore"


class CertificateFailure(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "A post-computation certificate did not hold"
    default_code = "certificate_failure"
    category = "algebra"


class NonSplit(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "Minimal polynomial does not split over the cyclotomic field"
    default_code = "non_split"
    category = "algebra"


class NotAnIdeal(QHopfException):
    default_detail = "The subspace is not a two-sided ideal"
    default_code = "not_an_ideal"
    category = "algebra"


class AntipodeNotInvertible(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "The antipode is singular"
    default_code = "antipode_not_invertible"
    category = "quasihopf"


class Infeasible(QHopfException):
    '''
    Raised by the linear solvers when the system has no solution.
    The reduced inconsistent system is kept in `certificate`
    '''
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "The linear system has no solution"
    default_code = "infeasible"
    category = "solver"

    def __init__(self, detail=None, code=None, certificate=None):
        super().__init__(detail=detail, code=code)
        self.certificate = certificate


class NotAutomorphism(QHopfException):
    default_detail = "The permutation is not a group automorphism"
    default_code = "not_automorphism"
    category = "cocycle"


class BaseMismatch(QHopfException):
    default_detail = "The YD modules are defined over different bases"
    default_code = "base_mismatch"
    category = "yd"


class NotDiagonalizable(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "The action and coaction are not simultaneously diagonalizable"
    default_code = "not_diagonalizable"
    category = "yd"


class UnsupportedBase(QHopfException):
    default_detail = "Only the bases kC2 and H2 are supported"
    default_code = "unsupported_base"
    category = "yd"


class BraidingUnconfigured(QHopfException):
    default_detail = "No braiding formula is configured, set QHOPF_BRAIDING"
    default_code = "braiding_unconfigured"
    category = "yd"


class MissingAntipode(QHopfException):
    default_detail = "The braided bialgebra carries no antipode"
    default_code = "missing_antipode"
    category = "biproduct"


class UnknownIndeterminate(QHopfException):
    default_detail = "Indeterminate not part of the shared universe"
    default_code = "unknown_indeterminate"
    category = "constraints"


class PartialAssignment(QHopfException):
    default_detail = "The assignment does not cover every indeterminate"
    default_code = "partial_assignment"
    category = "constraints"


class UnknownEntry(QHopfException):
    default_detail = "The requested catalog entry does not exist"
    default_code = "unknown_entry"
    category = "catalog"


class BadParameter(QHopfException):
    default_detail = "Catalog parameter out of range"
    default_code = "bad_parameter"
    category = "catalog"


class InvalidPayloadException(QHopfException):
    default_detail = "The provided JSON payload is invalid"
    default_code = "invalid_payload"
    category = "serializer"


class StartVerificationException(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "Error during start of the verification session"
    default_code = "start_verification_exception"
    category = "qhopf"


class VerificationStepException(QHopfException):
    exit_code = EXIT_VERIFICATION_FAILED
    default_detail = "Error during a verification step"
    default_code = "verification_step_exception"
    category = "qhopf"


class HandlerException(QHopfException):
    default_detail = "base handler exception"
    default_code = "handler_exception"
    category = "handler"
