# flake8: noqa: D101, D102
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaspec.algebra import random_distributive_lattice, truncated_naturals
from gammaspec.sheaf import StructureSheaf, stalk_at
from gammaspec.topology import spectrum
from gammaspec.triadic import (
    GammaAutomorphism,
    automorphism_action,
    automorphism_sheaf_action,
    bracket_table,
    enumerate_gamma_automorphisms,
    is_bracket_symmetric,
    is_group,
    triadic_bracket,
    verify_filippov,
    verify_restriction_compat,
    verify_stalk_bracket,
)
from gammaspec.types import CapacityError, StructureError

from tests.fixtures import (
    BB_01,
    BB_10,
    E,
    ONE,
    all_fixtures,
    boolean_square,
    chain,
    chain3_times_boolean,
    idempotent_fixtures,
)


class TestBracket(unittest.TestCase):
    def test_chain3(self):
        T = chain(3)
        self.assertEqual(triadic_bracket(T, E, ONE, ONE, 0), E)
        table = bracket_table(T, 0)
        self.assertEqual(table.shape, (3, 3, 3))
        expected = np.minimum.outer(np.minimum.outer(np.arange(3), np.arange(3)), np.arange(3))
        np.testing.assert_array_equal(table, expected)

    def test_on_localizations(self):
        sheaf = StructureSheaf(chain(3))
        L = sheaf.localization(E)
        self.assertEqual(triadic_bracket(L, 1, 1, 1, 0), 1)

    def test_symmetry(self):
        for name, T in all_fixtures().items():
            self.assertTrue(is_bracket_symmetric(T), name)


class TestFilippov(unittest.TestCase):
    def test_base_localizations_and_stalks(self):
        for name, T in idempotent_fixtures().items():
            sheaf = StructureSheaf(T)
            self.assertEqual(verify_filippov(T).status, "pass", name)
            for f in T.elements():
                self.assertEqual(verify_filippov(sheaf.localization(f)).status, "pass", (name, f))
            for P in sheaf.spectrum.points:
                self.assertEqual(verify_filippov(stalk_at(T, P, sheaf)).status, "pass", (name, P))

    def test_hypothesis_not_met(self):
        report = verify_filippov(truncated_naturals(3))
        self.assertEqual(report.status, "hypothesis not met")
        self.assertTrue(report)
        self.assertIsNone(report.witness)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_lattices(self, seed):
        S = random_distributive_lattice(np.random.default_rng(seed))
        self.assertEqual(verify_filippov(S).status, "pass")


class TestCompatibility(unittest.TestCase):
    def test_restrictions(self):
        for name, T in all_fixtures().items():
            sheaf = StructureSheaf(T)
            for f in T.elements():
                for g in T.elements():
                    if sheaf.contains_open(f, g):
                        self.assertTrue(verify_restriction_compat(sheaf, f, g), (name, f, g))

    def test_stalks(self):
        for name, T in all_fixtures().items():
            sheaf = StructureSheaf(T)
            for P in sheaf.spectrum.points:
                self.assertTrue(verify_stalk_bracket(T, P, sheaf), (name, P))


class TestAutomorphisms(unittest.TestCase):
    def test_boolean_square_swap(self):
        autos = enumerate_gamma_automorphisms(boolean_square())
        self.assertEqual([a.images for a in autos], [(0, 1, 2, 3), (0, 2, 1, 3)])
        self.assertTrue(is_group(autos))
        swap = autos[1]
        self.assertEqual(swap.inverse().images, swap.images)
        self.assertTrue(swap.compose(swap).is_identity)

    def test_rigid_fixtures(self):
        for T in (chain(3), chain(4), chain3_times_boolean()):
            autos = enumerate_gamma_automorphisms(T)
            self.assertEqual(len(autos), 1)
            self.assertTrue(autos[0].is_identity)

    def test_not_an_automorphism(self):
        with self.assertRaises(StructureError):
            GammaAutomorphism(chain(3), (0, 2, 1))

    def test_cap(self):
        with self.assertRaises(CapacityError):
            enumerate_gamma_automorphisms(chain(5), cap=4)

    def test_spectrum_action(self):
        T = boolean_square()
        X = spectrum(T)
        swap = enumerate_gamma_automorphisms(T)[1]
        action = automorphism_action(swap, X)
        self.assertEqual(action.permutation, (1, 0))
        np.testing.assert_array_equal(action.matrix(), [[0, 1], [1, 0]])

    def test_sheaf_action(self):
        T = boolean_square()
        sheaf = StructureSheaf(T)
        swap = enumerate_gamma_automorphisms(T)[1]
        induced = automorphism_sheaf_action(swap, BB_10, sheaf)
        self.assertEqual(induced.source, sheaf.localization(BB_10).algebra)
        self.assertEqual(induced.target, sheaf.localization(BB_01).algebra)
        self.assertEqual(induced.images, (0, 1))

    def test_every_fixture(self):
        for name, T in all_fixtures().items():
            X = spectrum(T)
            sheaf = StructureSheaf(T)
            for sigma in enumerate_gamma_automorphisms(T):
                action = automorphism_action(sigma, X)
                self.assertEqual(sorted(action.permutation), list(range(X.size)), name)
                for f in T.elements():
                    self.assertTrue(automorphism_sheaf_action(sigma, f, sheaf).is_bijective(), name)


if __name__ == "__main__":
    unittest.main()
