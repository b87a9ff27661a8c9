from qhopf.api.exception import (QHopfException, StartVerificationException,
                                 VerificationStepException)

WRAPPERS = (StartVerificationException, VerificationStepException)


def error_handler(exc, exec_id=None):
    return f'{str(exc.detail if hasattr(exc, "detail") else exc.args[0])} {exec_id}'


def root_cause(exc):
    '''
    Innermost verifier exception behind the task wrappers, so the
    caller sees the original error and its exit code
    '''
    found = exc
    seen = set()
    while exc is not None and id(exc) not in seen:
        seen.add(id(exc))
        if isinstance(exc, QHopfException) and not isinstance(exc, WRAPPERS):
            found = exc
        exc = exc.__cause__ or exc.__context__
    return found
