import random
from unittest import TestCase

from qhopf.api.exception import BadOrder, BadParameter, NotAutomorphism
from qhopf.cocycle import (GroupTable, build_cyclic_cocycle, build_psi,
                           build_s3_cocycle, coboundary, cohomologous,
                           cyclic_class_invariant, gauge_cochain_psi,
                           idempotent_basis, invariant_under, inversion,
                           random_cochain, search_cobounding_cochain,
                           verify_3cocycle)
from qhopf.exactcore import CycScalar, root_of_unity


class TestCocycleFamilies(TestCase):

    def test_cyclic_cocycles_pass(self):
        for n in (2, 3, 6):
            for a in range(n):
                with self.subTest(n=n, a=a):
                    phi = build_cyclic_cocycle(n, a)
                    report = verify_3cocycle(phi)
                    self.assertTrue(report.passed, report.failed_checks)
                    self.assertTrue(phi.is_normalized())

    def test_s3_cocycles_pass(self):
        for p in range(6):
            with self.subTest(p=p):
                self.assertTrue(verify_3cocycle(build_s3_cocycle(p)).passed)

    def test_printed_psi_passes(self):
        for a in (1, 2):
            with self.subTest(a=a):
                self.assertTrue(verify_3cocycle(build_psi(a, "as_printed")).passed)

    def test_proof_derived_psi_is_not_a_cocycle(self):
        report = verify_3cocycle(build_psi(1, "proof_derived"))
        self.assertIn("normalized", report.failed_checks)
        self.assertIn("cocycle", report.failed_checks)
        self.assertGreater(report.record("cocycle").witness["failures"], 0)

    def test_psi_values_on_generators(self):
        for a in (1, 2):
            q = root_of_unity(3, a)
            for variant in ("as_printed", "proof_derived"):
                with self.subTest(a=a, variant=variant):
                    psi = build_psi(a, variant)
                    self.assertEqual(q, psi(1, 1, 1))
                    self.assertEqual(CycScalar.one(), psi(1, 1, 2))
            self.assertEqual(q * q, build_psi(a, "as_printed")(2, 1, 1))
            # the a-only correction loses the factor i
            self.assertEqual(q, build_psi(a, "proof_derived")(2, 1, 1))
            self.assertEqual(q, build_psi(a, "proof_derived")(0, 1, 1))

    def test_c6_with_divisor_three_fails_for_nonzero_a(self):
        self.assertTrue(verify_3cocycle(build_cyclic_cocycle(6, 0, divisor=3)).passed)
        self.assertFalse(verify_3cocycle(build_cyclic_cocycle(6, 1, divisor=3)).passed)

    def test_parameters_out_of_range_should_raise(self):
        with self.assertRaises(BadParameter):
            build_cyclic_cocycle(3, 3)
        with self.assertRaises(BadParameter):
            build_s3_cocycle(6)
        with self.assertRaises(BadParameter):
            build_psi(0)
        with self.assertRaises(BadParameter):
            build_psi(1, "unknown")
        with self.assertRaises(BadOrder):
            build_cyclic_cocycle(5, 1)


class TestCohomology(TestCase):

    def test_coboundaries_of_seeded_cochains_are_cocycles(self):
        rng = random.Random(20221)
        for group in (GroupTable.cyclic(3), GroupTable.s3()):
            for _ in range(3):
                with self.subTest(group=group.name):
                    self.assertTrue(verify_3cocycle(coboundary(random_cochain(group, rng))).passed)

    def test_printed_psi_is_cohomologous_to_the_cyclic_cocycle(self):
        for a in (1, 2):
            with self.subTest(a=a):
                phi, psi = build_cyclic_cocycle(3, a), build_psi(a, "as_printed")
                self.assertNotEqual(phi.values, psi.values)
                self.assertTrue(cohomologous(phi, psi, gauge_cochain_psi(a)))

    def test_search_finds_a_cobounding_cochain(self):
        phi, psi = build_cyclic_cocycle(3, 2), build_psi(2, "as_printed")
        g2 = search_cobounding_cochain(phi, psi)
        self.assertIsNotNone(g2)
        self.assertTrue(cohomologous(phi, psi, g2))

    def test_search_gives_up_on_different_classes(self):
        phi, psi = build_cyclic_cocycle(3, 1), build_cyclic_cocycle(3, 2)
        self.assertIsNone(search_cobounding_cochain(phi, psi))

    def test_class_invariant(self):
        phi = build_cyclic_cocycle(3, 1)
        self.assertEqual(root_of_unity(3, 1), cyclic_class_invariant(phi))
        self.assertEqual(CycScalar.one(), cyclic_class_invariant(build_cyclic_cocycle(3, 0)))
        twisted = phi * coboundary(random_cochain(phi.group, random.Random(3)))
        self.assertEqual(cyclic_class_invariant(phi), cyclic_class_invariant(twisted))

    def test_invariance_under_inversion(self):
        group = GroupTable.cyclic(3)
        self.assertTrue(invariant_under(build_cyclic_cocycle(3, 0), inversion(group)))
        with self.assertRaises(NotAutomorphism):
            invariant_under(build_cyclic_cocycle(3, 1), [0, 0, 0])

    def test_idempotent_basis_is_certified(self):
        T = idempotent_basis(3)
        self.assertEqual(CycScalar.rational(1, 3), T[0, 0])
        self.assertEqual((3, 3), T.dims)
