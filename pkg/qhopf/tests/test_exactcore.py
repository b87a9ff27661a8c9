from fractions import Fraction
from unittest import TestCase

from qhopf.api.exception import (BadOrder, DivisionByZero, NonCanonicalScalar,
                                 NotInvertible, ShapeMismatch)
from qhopf.catalog.hopf import build_h2
from qhopf.exactcore import (CycScalar, Tensor, get_field, root_of_unity,
                             set_cyclotomic_order, solve_linear,
                             tensor_element_invert, tensor_element_mul,
                             unit_power)


class TestCycScalar(TestCase):
    '''
    Arithmetic in Q(zeta_12), the default field of the verifier
    '''

    def test_field_has_the_expected_degree(self):
        field = get_field()
        self.assertEqual(12, field.order)
        self.assertEqual(4, field.degree)

    def test_roots_of_unity_have_the_right_order(self):
        i = root_of_unity(4)
        q = root_of_unity(3)
        self.assertEqual(CycScalar.rational(-1), i * i)
        self.assertEqual(CycScalar.one(), q ** 3)
        self.assertNotEqual(CycScalar.one(), q)
        self.assertEqual(CycScalar.zero(), 1 + q + q * q)

    def test_inverse_of_non_rational_scalar(self):
        i = root_of_unity(4)
        value = 1 + i
        expected = (1 - i) * CycScalar.rational(1, 2)
        self.assertEqual(expected, value.inverse())
        self.assertEqual(CycScalar.one(), value / value)

    def test_negative_power_uses_the_inverse(self):
        q = root_of_unity(3)
        self.assertEqual(q * q, q ** -1)

    def test_division_by_zero_should_raise(self):
        with self.assertRaises(DivisionByZero):
            CycScalar.zero().inverse()
        with self.assertRaises(DivisionByZero):
            CycScalar.rational(1, 0)

    def test_root_order_must_divide_the_field_order(self):
        with self.assertRaises(BadOrder) as _exc:
            root_of_unity(5)
        self.assertIn("does not divide", str(_exc.exception.detail))

    def test_wire_format_is_canonical(self):
        value = CycScalar.rational(3, 4) + root_of_unity(12) * 2
        self.assertEqual([[0, 3, 4], [1, 2, 1]], value.to_wire())
        self.assertEqual(value, CycScalar.from_wire(value.to_wire()))
        self.assertEqual(CycScalar.zero(), CycScalar.from_wire([]))

    def test_non_canonical_wire_should_raise(self):
        for triples in ([[0, 1, 4], [0, 1, 4]], [[1, 1, 1], [0, 1, 1]], [[0, 2, 4]], [[2, 0, 1]]):
            with self.subTest(triples=triples):
                with self.assertRaises(NonCanonicalScalar):
                    CycScalar.from_wire(triples)

    def test_wire_format_rejects_powers_outside_the_basis(self):
        with self.assertRaises(BadOrder):
            CycScalar.from_wire([[7, 1, 1]])
        with self.assertRaises(DivisionByZero):
            CycScalar.from_wire([[0, 1, 0]])

    def test_scalars_compare_with_integers_and_fractions(self):
        self.assertEqual(CycScalar.one(), 1)
        self.assertEqual(CycScalar.rational(1, 3), Fraction(1, 3))
        self.assertFalse(CycScalar.zero())


class TestTensor(TestCase):

    def test_coords_skip_zero_entries(self):
        t = Tensor.from_coords((2, 2), {(0, 1): CycScalar.one(), (1, 0): CycScalar.zero()})
        self.assertEqual({(0, 1): CycScalar.one()}, t.coords)

    def test_invalid_dims_should_raise(self):
        with self.assertRaises(ShapeMismatch):
            Tensor.zeros((2, 0))
        with self.assertRaises(ShapeMismatch):
            Tensor.from_coords((2,), {(0, 0): CycScalar.one()})

    def test_solve_linear_returns_the_unique_solution(self):
        A = Tensor.from_coords((2, 2), {
            (0, 0): CycScalar.one(), (0, 1): CycScalar.one(),
            (1, 0): CycScalar.one(), (1, 1): CycScalar.rational(-1),
        })
        solution = solve_linear(A, Tensor.vector([2, 0]))
        self.assertTrue(solution.feasible)
        self.assertEqual(Tensor.vector([1, 1]), solution.particular)
        self.assertListEqual([], solution.kernel_basis)
        self.assertEqual(2, solution.rank)

    def test_solve_linear_reports_the_inconsistent_rows(self):
        A = Tensor.from_coords((2, 2), {(i, j): CycScalar.one() for i in range(2) for j in range(2)})
        solution = solve_linear(A, Tensor.vector([1, 2]))
        self.assertFalse(solution.feasible)
        self.assertEqual([1], [position for position, _ in solution.inconsistent])

    def test_solve_linear_returns_the_kernel(self):
        A = Tensor.from_coords((1, 2), {(0, 0): CycScalar.one(), (0, 1): CycScalar.one()})
        solution = solve_linear(A, Tensor.vector([0]))
        self.assertEqual(1, len(solution.kernel_basis))
        self.assertEqual({(0,): CycScalar.one(), (1,): CycScalar.rational(-1)}, solution.kernel_basis[0].coords)

    def test_reassociator_of_h2_is_its_own_inverse(self):
        H = build_h2()
        inverse = tensor_element_invert(H.alg, 3, H.phi)
        self.assertEqual(H.phi, inverse)
        unit = Tensor.from_coords((2, 2, 2), unit_power(H.alg, 3))
        self.assertEqual(unit, tensor_element_mul(H.alg, 3, H.phi, inverse))

    def test_non_invertible_element_should_raise(self):
        H = build_h2()
        p_plus = Tensor.vector([CycScalar.rational(1, 2), CycScalar.rational(1, 2)])
        with self.assertRaises(NotInvertible):
            tensor_element_invert(H.alg, 1, p_plus)


class TestCyclotomicOrder(TestCase):

    def setUp(self):
        self.addCleanup(set_cyclotomic_order, get_field().order)

    def test_switching_the_order_rebuilds_the_field(self):
        field = set_cyclotomic_order(8)
        self.assertIs(field, get_field())
        self.assertEqual(4, field.degree)
        zeta = root_of_unity(8)
        self.assertEqual(CycScalar.rational(-1), zeta ** 4)
        with self.assertRaises(BadOrder):
            root_of_unity(3)
