import io
import json
import os
import tempfile
from unittest import TestCase
from unittest.mock import patch

from qhopf.api.cli import run
from qhopf.api.exception import HandlerException
from qhopf.orchestrator import orchestrator


class TestCommandLine(TestCase):
    '''
    Exit codes: 0 when every check passes, 1 when a verification
    fails, 2 for usage and format errors
    '''

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def read(self, name):
        with open(self.path(name)) as f:
            return json.load(f)

    def run_quietly(self, *argv):
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            code = run(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_catalog_list(self):
        code, out, _ = self.run_quietly("catalog", "list", "--kind", "quasi_hopf")
        self.assertEqual(0, code)
        self.assertIn("H2\tquasi_hopf", out)
        self.assertNotIn("B_C6\t", out)

    def test_verify_catalog_entry(self):
        code, out, _ = self.run_quietly("verify", "--entry", "H2")
        self.assertEqual(0, code)
        self.assertIn("[PASS] q6", out)

    def test_verify_as_another_kind_fails(self):
        code, _, _ = self.run_quietly("verify", "--entry", "Hu", "--params", "j=0", "--expect", "quasi_hopf")
        self.assertEqual(1, code)

    def test_printed_double_fails_with_a_json_report(self):
        code, _, _ = self.run_quietly("verify", "--entry", "DH2_printed", "--report", "json",
                                      "-o", self.path("report.json"))
        self.assertEqual(1, code)
        report = self.read("report.json")
        failed = [r["check_id"] for r in report["records"] if r["status"] == "fail"]
        self.assertEqual(["delta_algebra_morphism", "q1", "q2", "q5"], sorted(failed))
        self.assertIsNotNone(report["records"][0]["anchor"])

    def test_exported_document_verifies(self):
        self.assertEqual(0, self.run_quietly("catalog", "export", "kS3_Psi", "--params", "a=2",
                                             "-o", self.path("psi.json"))[0])
        self.assertEqual("quasi_hopf", self.read("psi.json")["kind"])
        code, _, _ = self.run_quietly("verify", "--file", self.path("psi.json"))
        self.assertEqual(0, code)

    def test_unknown_entry_is_a_usage_error(self):
        code, _, err = self.run_quietly("verify", "--entry", "H3")
        self.assertEqual(2, code)
        self.assertTrue(err.startswith("qhopf: catalog:"))

    def test_entry_and_file_together_is_a_usage_error(self):
        code, _, err = self.run_quietly("verify", "--entry", "H2", "--file", self.path("h2.json"))
        self.assertEqual(2, code)
        self.assertIn("exactly one", err)

    def test_malformed_json_is_a_usage_error(self):
        with open(self.path("broken.json"), "w") as f:
            f.write("{\"kind\": \"algebra\", ")
        code, _, err = self.run_quietly("verify", "--file", self.path("broken.json"))
        self.assertEqual(2, code)
        self.assertIn("malformed JSON", err)

    def test_unknown_command_is_a_usage_error(self):
        code, _, _ = self.run_quietly("frobnicate")
        self.assertEqual(2, code)

    def test_radical(self):
        code, _, _ = self.run_quietly("radical", "--entry", "Huu_c", "--params", "j=1", "-o", self.path("rad.json"))
        self.assertEqual(0, code)
        self.assertEqual(2, self.read("rad.json")["radical_dim"])

    def test_finished_executions_are_dropped(self):
        with patch.object(orchestrator, "delete_execution_request",
                          wraps=orchestrator.delete_execution_request) as _delete:
            self.assertEqual(0, self.run_quietly("verify", "--entry", "H2")[0])
            self.assertEqual(0, self.run_quietly("radical", "--entry", "H2")[0])
        self.assertEqual(2, _delete.call_count)
        for call in _delete.call_args_list:
            with self.assertRaises(HandlerException):
                orchestrator.get_execution_object(call.args[0])

    def test_cocycle_build_and_check(self):
        self.run_quietly("cocycle", "build", "cyclic", "--n", "3", "--a", "1", "-o", self.path("c3.json"))
        self.assertEqual(0, self.run_quietly("cocycle", "check", "--file", self.path("c3.json"))[0])
        self.run_quietly("cocycle", "build", "psi", "--a", "1", "--variant", "proof_derived", "-o", self.path("psi.json"))
        self.assertEqual(1, self.run_quietly("cocycle", "check", "--file", self.path("psi.json"))[0])

    def test_cocycle_cohomologous(self):
        self.run_quietly("cocycle", "build", "cyclic", "--n", "3", "--a", "1", "-o", self.path("a1.json"))
        self.run_quietly("cocycle", "build", "cyclic", "--n", "3", "--a", "2", "-o", self.path("a2.json"))
        code, _, _ = self.run_quietly("cocycle", "cohomologous", "--file", self.path("a1.json"),
                                      "--other", self.path("a1.json"), "-o", self.path("same.json"))
        self.assertEqual(0, code)
        self.assertTrue(self.read("same.json")["cohomologous"])
        code, _, _ = self.run_quietly("cocycle", "cohomologous", "--file", self.path("a1.json"),
                                      "--other", self.path("a2.json"), "-o", self.path("other.json"))
        self.assertEqual(1, code)
        self.assertFalse(self.read("other.json")["cohomologous"])

    def test_cohomology_search_on_s3_is_refused(self):
        self.run_quietly("cocycle", "build", "s3", "--p", "1", "-o", self.path("s3.json"))
        code, _, err = self.run_quietly("cocycle", "cohomologous", "--file", self.path("s3.json"),
                                        "--other", self.path("s3.json"))
        self.assertEqual(2, code)
        self.assertIn("cyclic groups", err)

    def test_yd_decompose(self):
        code, _, _ = self.run_quietly("yd", "decompose", "--entry", "B_S3", "-o", self.path("dec.json"))
        self.assertEqual(0, code)
        result = self.read("dec.json")
        self.assertEqual(["M_0^0", "M_0^0", "M_1^0"], sorted(result["summands"]))
        self.assertTrue(result["reconstructed"])

    def test_yd_tensor(self):
        code, _, _ = self.run_quietly("yd", "tensor", "--left", "M_1", "--right", "M_3",
                                      "--module-output", self.path("m.json"))
        self.assertEqual(0, code)
        self.assertEqual(1, self.read("m.json")["dim"])

    def test_biproduct_without_antipode_is_a_quasi_bialgebra(self):
        code, _, _ = self.run_quietly("biproduct", "--braided", "Buu", "--base", "H2", "--params", "j=1",
                                      "-o", self.path("huu.json"))
        self.assertEqual(0, code)
        document = self.read("huu.json")
        self.assertEqual("quasi_bialgebra", document["kind"])
        self.assertEqual(6, document["dim"])

    def test_biproduct_over_the_wrong_base(self):
        code, _, err = self.run_quietly("biproduct", "--braided", "bb_i", "--base", "kC2", "--params", "j=0")
        self.assertEqual(2, code)
        self.assertIn("H2", err)

    def test_constraints_case3(self):
        code, _, _ = self.run_quietly("constraints", "case3", "-o", self.path("case3.json"))
        self.assertEqual(0, code)
        result = self.read("case3.json")
        self.assertTrue(result["infeasible"])
        self.assertEqual(4, len(result["results"]))
        self.assertTrue(all(r["replays"] for r in result["results"]))

    def test_constraints_case3_single_pair(self):
        code, _, _ = self.run_quietly("constraints", "case3", "--i", "1", "--j", "0", "-o", self.path("mixed.json"))
        self.assertEqual(0, code)
        results = self.read("mixed.json")["results"]
        self.assertEqual(["case3(i=1, j=0)"], [r["system"] for r in results])
        self.assertEqual([[0, 1, 1], [3, -1, 1]], results[0]["certificate"]["constant"])

    def test_constraints_custom(self):
        system = {
            "kind": "constraint_system",
            "indeterminates": ["x", "y"],
            "equations": [
                {"polynomial": [[[["x", 1]], [[0, 1, 1]]], [[], [[0, -1, 1]]]]},
                {"polynomial": [[[["x", 1], ["y", 1]], [[0, 1, 1]]]]},
            ],
        }
        with open(self.path("sys.json"), "w") as f:
            json.dump(system, f)
        with open(self.path("sol.json"), "w") as f:
            json.dump({"x": [[0, 1, 1]], "y": []}, f)
        code, _, _ = self.run_quietly("constraints", "custom", "--file", self.path("sys.json"),
                                      "-o", self.path("reduced.json"))
        self.assertEqual(0, code)
        self.assertFalse(self.read("reduced.json")["infeasible"])
        code, _, _ = self.run_quietly("constraints", "custom", "--file", self.path("sys.json"),
                                      "--assignment", self.path("sol.json"), "-o", self.path("check.json"))
        self.assertEqual(0, code)
        self.assertTrue(self.read("check.json")["satisfied"])
