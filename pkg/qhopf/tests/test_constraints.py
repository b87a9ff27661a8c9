from unittest import TestCase

from qhopf.api.exception import (BadParameter, PartialAssignment,
                                 UnknownIndeterminate, UnsupportedBase)
from qhopf.catalog.braided import braided_bialgebra, fixture_pairs
from qhopf.constraints import (AXIOMS, ConstraintSystem, PolyExpr,
                               braided_iso_system, case3_system,
                               check_solution, detect_contradiction,
                               fixture_assignment,
                               generate_braided_constraints,
                               linear_eliminate, resolve_label)
from qhopf.exactcore import CycScalar, root_of_unity

x = PolyExpr.variable("x")
y = PolyExpr.variable("y")


class TestPolyExpr(TestCase):

    def test_arithmetic_and_evaluation(self):
        p = (x + 1) * (x - 1)
        self.assertEqual(x ** 2 - 1, p)
        self.assertEqual(2, p.degree)
        self.assertEqual({"x"}, p.variables())
        self.assertEqual(CycScalar.rational(3), p.evaluate({"x": 2}))

    def test_substitution(self):
        self.assertEqual(y ** 2 + y * 2 + 1, (x * y + x).substitute("x", y + 1))

    def test_linear_pivot_is_found_only_for_a_lone_linear_term(self):
        self.assertEqual(CycScalar.rational(3), (x * 3 + y).linear_pivot("x"))
        self.assertIsNone((x * 3 + x * y).linear_pivot("x"))
        self.assertIsNone((x ** 2).linear_pivot("x"))

    def test_evaluate_without_a_value_should_raise(self):
        with self.assertRaises(PartialAssignment):
            (x * y).evaluate({"x": 1})

    def test_wire_format_keeps_the_monomials(self):
        p = x * y * 2 - 1
        self.assertEqual(p, PolyExpr.from_wire(p.to_wire()))


class TestElimination(TestCase):

    def test_linear_equation_is_substituted_away(self):
        cs = ConstraintSystem(["x", "y"], [x - 1, x * y])
        reduced = linear_eliminate(cs)
        self.assertEqual([y], reduced.equations)
        self.assertEqual({"x": PolyExpr.constant(1)}, reduced.solved)
        self.assertIsNone(detect_contradiction(reduced))
        self.assertTrue(check_solution(cs, reduced.extend_assignment({"y": 0})))

    def test_contradiction_certificate_replays(self):
        cs = ConstraintSystem(["x", "y"], [x - 1, x * y - y, x + 1])
        certificate = detect_contradiction(cs)
        self.assertIsNotNone(certificate)
        self.assertTrue(certificate.constant)
        self.assertTrue(certificate.replay(cs))

    def test_nonzero_indeterminate_is_cancelled(self):
        cs = ConstraintSystem(["x", "y"], [x * y - x], nonzero=["x"])
        reduced = linear_eliminate(cs)
        self.assertEqual([y - 1], reduced.equations)
        self.assertEqual("cancel", reduced.trace[-1]["op"])

    def test_undeclared_indeterminate_should_raise(self):
        with self.assertRaises(UnknownIndeterminate):
            ConstraintSystem(["x"], [x * y])

    def test_check_solution_errors(self):
        cs = ConstraintSystem(["x", "y"], [x - y])
        with self.assertRaises(PartialAssignment):
            check_solution(cs, {"x": 1})
        with self.assertRaises(UnknownIndeterminate):
            check_solution(cs, {"x": 1, "y": 1, "z": 0})
        self.assertFalse(check_solution(cs, {"x": 1, "y": 2}))


class TestBraidedConstraints(TestCase):

    def test_labels_are_resolved_from_the_parameters(self):
        self.assertEqual("M_3", resolve_label("M_{2j+1}", {"j": 1}))
        self.assertEqual("M_1", resolve_label("M_{2i+1}", {"i": 0}))
        with self.assertRaises(BadParameter):
            resolve_label("M_{2j+1}", {})

    def test_template_errors(self):
        with self.assertRaises(BadParameter):
            generate_braided_constraints({"decomposition": ["M_0"], "axioms": ["modalg9"]})
        with self.assertRaises(UnsupportedBase):
            generate_braided_constraints({"decomposition": ["M_1", "M_0"], "axioms": ["modalg1"]})

    def test_case3_has_a_replayable_contradiction_for_every_pair(self):
        for i in (0, 1):
            for j in (0, 1):
                with self.subTest(i=i, j=j):
                    cs = case3_system(i, j)
                    certificate = detect_contradiction(cs)
                    self.assertIsNotNone(certificate)
                    self.assertEqual(CycScalar.one() + root_of_unity(4, 2 * i + 1), certificate.constant)
                    self.assertTrue(certificate.replay(cs))
                    self.assertEqual(certificate.equation, certificate.to_dict()["equation"])

    def test_case3_diagonal_constant(self):
        for j in (0, 1):
            with self.subTest(j=j):
                cs = case3_system(j)
                certificate = detect_contradiction(cs)
                self.assertEqual(CycScalar.one() + root_of_unity(4, 2 * j + 1), certificate.constant)

    def test_case3_rejects_bad_parameters(self):
        with self.assertRaises(BadParameter) as _exc:
            case3_system(2)
        self.assertIn("0 or 1", str(_exc.exception.detail))

    def test_fixture_satisfies_the_generated_bialgebra_system(self):
        for j in (0, 1):
            with self.subTest(j=j):
                cs = generate_braided_constraints({
                    "base": "H2",
                    "decomposition": ["M_0", "M_0", "M_{2j+1}"],
                    "params": {"j": j},
                    "axioms": list(AXIOMS[:8]),
                    "labels": ["1", "x", "y"],
                })
                assignment = fixture_assignment(cs, braided_bialgebra("bb_i", j))
                self.assertTrue(check_solution(cs, assignment))

    def test_distinct_braided_bialgebras_are_not_isomorphic(self):
        for j in (0, 1):
            for a, b in fixture_pairs():
                if a > b:
                    continue
                with self.subTest(j=j, source=a, target=b):
                    cs = braided_iso_system(braided_bialgebra(a, j), braided_bialgebra(b, j))
                    certificate = detect_contradiction(cs)
                    self.assertIsNotNone(certificate)
                    self.assertTrue(certificate.replay(cs))
