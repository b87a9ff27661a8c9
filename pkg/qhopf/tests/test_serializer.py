import json
import os
import tempfile
from unittest import TestCase

from qhopf.api import serializer
from qhopf.api.exception import InvalidPayloadException
from qhopf.catalog.braided import c3_hopf, simple_module
from qhopf.catalog.hopf import build_h2
from qhopf.cocycle import build_cyclic_cocycle, verify_3cocycle
from qhopf.constraints import ConstraintSystem, PolyExpr, detect_contradiction
from qhopf.quasihopf import QuasiHopfData, verify_quasi_hopf
from qhopf.yd import BraidedBialgebraData, verify_braided_hopf


def algebra_document(**overrides):
    doc = {
        "kind": "algebra",
        "dim": 2,
        "unit": [[0, [[0, 1, 1]]]],
        "mult": [[0, 0, 0, [[0, 1, 1]]], [0, 1, 1, [[0, 1, 1]]], [1, 0, 1, [[0, 1, 1]]], [1, 1, 0, [[0, 1, 1]]]],
    }
    doc.update(overrides)
    return doc


class TestSerializer(TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, text):
        path = os.path.join(self.tmp.name, "doc.json")
        with open(path, "w") as f:
            f.write(text)
        return path

    def test_group_algebra_document_is_decoded(self):
        A = serializer.decode(algebra_document(name="k[C2]"))
        self.assertEqual(2, A.dim)
        self.assertEqual(["e0", "e1"], A.basis_labels)
        self.assertEqual("k[C2]", A.name)

    def test_missing_kind_should_raise(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.validate({"dim": 2})
        self.assertIn("'kind' is a required property", str(_exc.exception.detail))

    def test_schema_error_reports_the_offending_path(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode(algebra_document(dim=0))
        self.assertTrue(str(_exc.exception.detail).startswith("/dim:"))

    def test_other_cyclotomic_order_should_raise(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode(algebra_document(cyclotomic_order=5))
        self.assertIn("/cyclotomic_order", str(_exc.exception.detail))

    def test_index_outside_the_dimension_should_raise(self):
        doc = algebra_document()
        doc["mult"].append([2, 0, 0, [[0, 1, 1]]])
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode(doc)
        self.assertTrue(str(_exc.exception.detail).startswith("/mult/4:"))

    def test_zero_denominator_should_raise(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode_scalar([[0, 1, 0]], "/unit/0")
        self.assertTrue(str(_exc.exception.detail).startswith("/unit/0:"))

    def test_non_canonical_scalar_should_raise(self):
        for triples in ([[0, 2, 4]], [[1, 1, 1], [0, 1, 1]], [[0, 0, 1]]):
            with self.subTest(triples=triples):
                with self.assertRaises(InvalidPayloadException) as _exc:
                    serializer.decode_scalar(triples, "/unit/0")
                self.assertTrue(str(_exc.exception.detail).startswith("/unit/0:"))

    def test_quasi_hopf_document_keeps_the_structure(self):
        doc = serializer.encode(build_h2())
        self.assertEqual("qhopf/1", doc["format"])
        H = serializer.decode(json.loads(serializer.dumps(doc)))
        self.assertIsInstance(H, QuasiHopfData)
        self.assertEqual(build_h2().phi, H.phi)
        self.assertTrue(verify_quasi_hopf(H).passed)

    def test_braided_document_names_its_base(self):
        doc = serializer.encode(c3_hopf("star"))
        self.assertEqual("braided_hopf", doc["kind"])
        self.assertEqual("kC2", doc["base"])
        B = serializer.decode(doc)
        self.assertIsInstance(B, BraidedBialgebraData)
        self.assertTrue(verify_braided_hopf(B).passed)
        self.assertEqual(doc, serializer.encode(B))

    def test_module_action_must_cover_the_base(self):
        doc = serializer.encode(simple_module("M_1"))
        doc["action"] = doc["action"][:1]
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode(doc)
        self.assertTrue(str(_exc.exception.detail).startswith("/action:"))

    def test_cocycle_document(self):
        phi = build_cyclic_cocycle(3, 1)
        decoded = serializer.decode(serializer.encode(phi))
        self.assertEqual(phi.values, decoded.values)
        self.assertTrue(verify_3cocycle(decoded).passed)

    def test_zero_cocycle_value_should_raise(self):
        doc = {"kind": "cocycle", "group": "C2", "values": [[[1, 1, 1], []]]}
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.decode(doc)
        self.assertIn("nonzero", str(_exc.exception.detail))

    def test_constraint_system_document(self):
        x, y = PolyExpr.variable("x"), PolyExpr.variable("y")
        doc = {
            "kind": "constraint_system",
            "indeterminates": ["x", "y"],
            "equations": [{"polynomial": (x - 1).to_wire()}, {"polynomial": (x + y * y + 1).to_wire(), "source": "b"}],
        }
        cs = serializer.decode(doc)
        self.assertIsInstance(cs, ConstraintSystem)
        self.assertEqual(["", "b"], cs.sources)
        self.assertIsNone(detect_contradiction(cs))

    def test_constraint_template_document(self):
        cs = serializer.decode({
            "kind": "constraint_template",
            "base": "H2",
            "decomposition": ["M_0", "M_{2i+1}", "M_{2j+1}"],
            "params": {"i": 0, "j": 0},
            "axioms": ["modalg1", "modalg2"],
        })
        self.assertTrue(len(cs) > 0)

    def test_load_file_errors(self):
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.load_file(self._write('{"kind": '))
        self.assertIn("malformed JSON", str(_exc.exception.detail))
        with self.assertRaises(InvalidPayloadException) as _exc:
            serializer.load_file(self._write("[1, 2]"))
        self.assertIn("JSON object", str(_exc.exception.detail))
        with self.assertRaises(InvalidPayloadException):
            serializer.load_file(os.path.join(self.tmp.name, "missing.json"))

    def test_params_from_pairs(self):
        self.assertEqual({"a": "1", "j": "0"}, serializer.params_from_pairs(["a=1", " j = 0"]))
        with self.assertRaises(InvalidPayloadException):
            serializer.params_from_pairs(["a"])
