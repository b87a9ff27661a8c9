from unittest import TestCase

from qhopf.algebra import jacobson_radical
from qhopf.api.exception import BadParameter, UnknownEntry
from qhopf.catalog import registry
from qhopf.handlers.base import algebra_of
from qhopf.handlers.quasihopf.handler import QuasiHopfHandler
from qhopf.handlers.yd.handler import YDHandler


def handler_for(kind):
    return QuasiHopfHandler() if kind in QuasiHopfHandler.KINDS else YDHandler()


class TestCatalogRegistry(TestCase):

    def test_names_are_unique(self):
        names = [entry.name for entry in registry.list_entries()]
        self.assertEqual(len(names), len(set(names)))

    def test_every_entry_has_a_known_kind_and_anchor(self):
        for entry in registry.list_entries():
            with self.subTest(entry=entry.name):
                self.assertIn(entry.kind, registry.KINDS)
                self.assertTrue(entry.anchor)

    def test_manifest_counts_every_build(self):
        manifest = registry.manifest()
        self.assertEqual(registry.build_count(), manifest["builds"])
        self.assertEqual(manifest["builds"], sum(len(e["builds"]) for e in manifest["entries"]))

    def test_unknown_entry_should_raise(self):
        with self.assertRaises(UnknownEntry) as _exc:
            registry.get_entry("H3")
        self.assertIn("H3", str(_exc.exception.detail))

    def test_parameters_are_checked(self):
        with self.assertRaises(BadParameter):
            registry.build("kC6_Phi", {"a": 6})
        with self.assertRaises(BadParameter):
            registry.build("kC6_Phi", {})
        with self.assertRaises(BadParameter):
            registry.build("kC2", {"a": 1})
        with self.assertRaises(BadParameter):
            registry.build("kS3_Psi", {"a": "one"})

    def test_defaults_are_applied(self):
        self.assertIs(registry.build("Bu"), registry.build("Bu", {"j": 0}))

    def test_builds_are_cached(self):
        self.assertIs(registry.build("kS3dual_Phi", {"p": 2}), registry.build("kS3dual_Phi", {"p": "2"}))

    def test_printed_c6_reassociator_depends_on_a(self):
        entry = registry.get_entry("kC6_Phi_printed")
        self.assertEqual(registry.PASS, entry.expected_for({"a": 0}))
        self.assertEqual(registry.failing("q3", "q4"), entry.expected_for({"a": 1}))


class TestCatalogVerification(TestCase):
    '''
    A fresh verification run of every build matches the recorded outcome
    '''

    def test_every_build_matches_its_expected_summary(self):
        for entry in registry.list_entries():
            handler = handler_for(entry.kind)
            for params in entry.instances():
                with self.subTest(entry=entry.name, params=params):
                    structure = registry.build(entry.name, params)
                    report = handler.verify(structure, kind=entry.kind)
                    self.assertEqual(entry.expected_for(params), report.expected_summary())

    def test_radical_dimensions_match_the_recorded_facts(self):
        for entry in registry.list_entries():
            if "radical_dim" not in entry.facts:
                continue
            for params in entry.instances():
                with self.subTest(entry=entry.name, params=params):
                    A = algebra_of(registry.build(entry.name, params))
                    self.assertEqual(entry.facts["radical_dim"], jacobson_radical(A).dim)
