from unittest import TestCase

from qhopf.api.exception import BadParameter, VerificationStepException
from qhopf.utils import error_handler, root_cause


class TestUtils(TestCase):

    def test_error_handler_appends_the_execution_id(self):
        self.assertEqual("boom 1234", error_handler(Exception("boom"), "1234"))
        self.assertEqual("bad a 1234", error_handler(BadParameter("bad a"), "1234"))

    def test_root_cause_unwraps_the_step_exception(self):
        original = BadParameter("a=9 outside [0, 1]")
        try:
            try:
                raise original
            except BadParameter as e:
                raise VerificationStepException(detail=error_handler(e, "1234"))
        except VerificationStepException as wrapped:
            self.assertIs(original, root_cause(wrapped))

    def test_root_cause_of_a_plain_error_is_itself(self):
        exc = ValueError("plain")
        self.assertIs(exc, root_cause(exc))
