# flake8: noqa: D101, D102
import itertools
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaspec.algebra import SemiringMap, make_chain, random_distributive_lattice
from gammaspec.ideals import IdealSubset
from gammaspec.semiring import validate_semiring
from gammaspec.sheaf import (
    SectionFamily,
    StructureSheaf,
    check_gluing_uniqueness,
    compatible_families,
    eta,
    format_localization,
    glue_sections,
    localize,
    restriction_map,
    sheaf_map,
    stalk_at,
    universal_extend,
    verify_anti_equivalence,
    verify_global_sections,
    verify_restriction_composition,
    verify_sheaf_map_naturality,
)
from gammaspec.types import PreconditionError

from tests.fixtures import BB_01, BB_10, BB_11, E, ONE, ZERO, all_fixtures, boolean_square, chain


class TestLocalization(unittest.TestCase):
    def test_chain3_at_e(self):
        L = localize(chain(3), E)
        self.assertEqual(L.size, 2)
        self.assertEqual(L.names, ("0/1", "e/1"))
        self.assertEqual(L.canonical, (0, 1, 1))
        self.assertTrue(validate_semiring(L.algebra).ok)
        self.assertEqual(L.parse("1/e"), L.parse("e"))

    def test_at_one_and_zero(self):
        T = chain(3)
        self.assertEqual(localize(T, ONE).canonical, (0, 1, 2))
        self.assertEqual(localize(T, ZERO).size, 1)

    def test_bad_denominator(self):
        with self.assertRaises(PreconditionError):
            localize(chain(3), E).fraction(ONE, ZERO)

    def test_every_localization_is_a_semiring(self):
        for name, T in all_fixtures().items():
            for f in T.elements():
                L = localize(T, f)
                self.assertTrue(validate_semiring(L.algebra).ok, (name, f))
                self.assertEqual(len(L.algebra.units), T.gamma.order)

    def test_format(self):
        text = format_localization(localize(chain(3), E))
        self.assertTrue(text.startswith("T_e: 2 classes"))
        self.assertIn("0/1: (0,1), (0,e)", text)


class TestUniversalProperty(unittest.TestCase):
    def test_extension_of_a_collapse(self):
        T, B = chain(3), make_chain(2)
        extension = universal_extend(SemiringMap(T, B, (0, 1, 1)), E)
        self.assertEqual(extension.images, (0, 1))

    def test_non_unit_image(self):
        with self.assertRaises(PreconditionError):
            universal_extend(SemiringMap(chain(3), make_chain(2), (0, 0, 1)), E)

    def test_canonical_map_extends_to_identity(self):
        for name, T in all_fixtures().items():
            for f in T.elements():
                L = localize(T, f)
                extension = universal_extend(L.canonical_map(), f, L)
                self.assertEqual(extension.images, tuple(range(L.size)), (name, f))


class TestRestriction(unittest.TestCase):
    def test_chain3(self):
        sheaf = StructureSheaf(chain(3))
        self.assertEqual(sheaf.restriction(ONE, E).images, (0, 1, 1))
        self.assertEqual(restriction_map(chain(3), ONE, E).images, (0, 1, 1))
        with self.assertRaises(PreconditionError):
            sheaf.restriction(E, ONE)

    def test_composition_on_fixtures(self):
        for name, T in all_fixtures().items():
            self.assertTrue(verify_restriction_composition(StructureSheaf(T)), name)


class TestGluing(unittest.TestCase):
    def test_boolean_square_cover(self):
        T = boolean_square()
        sheaf = StructureSheaf(T)
        cover = (BB_10, BB_01)
        glued = set()
        for sections in itertools.product(
            range(sheaf.localization(BB_10).size), range(sheaf.localization(BB_01).size)
        ):
            section = glue_sections(sheaf, SectionFamily(BB_11, cover, sections))
            self.assertEqual(tuple(sheaf.restrict(BB_11, g, section) for g in cover), sections)
            glued.add(section)
        self.assertEqual(len(glued), 4)
        self.assertTrue(check_gluing_uniqueness(sheaf, BB_11, cover))

    def test_parsed_family(self):
        sheaf = StructureSheaf(boolean_square())
        family = SectionFamily.parse(sheaf, "(1,1)", ["(1,0)", "(0,1)"], ["(1,0)", "(0,0)"])
        self.assertEqual(glue_sections(sheaf, family), BB_10)

    def test_trivial_covers(self):
        T = chain(3)
        sheaf = StructureSheaf(T)
        for f in T.elements():
            self.assertTrue(check_gluing_uniqueness(T, f, [f]))
            for c in range(sheaf.localization(f).size):
                self.assertEqual(glue_sections(sheaf, SectionFamily(f, (f,), (c,))), c)

    def test_incompatible_family(self):
        sheaf = StructureSheaf(chain(3))
        family = SectionFamily(ONE, (ONE, ONE), (E, ONE))
        with self.assertRaises(PreconditionError):
            glue_sections(sheaf, family)

    def test_not_a_standard_cover(self):
        sheaf = StructureSheaf(chain(3))
        with self.assertRaises(PreconditionError):
            glue_sections(sheaf, SectionFamily(ONE, (E,), (1,)))

    def test_family_shape(self):
        with self.assertRaises(ValueError):
            SectionFamily(ONE, (ONE, E), (0,))


class TestGlobalSections(unittest.TestCase):
    def test_chain3(self):
        sheaf = StructureSheaf(chain(3))
        self.assertEqual(len(compatible_families(sheaf)), 3)
        self.assertEqual(eta(sheaf, E), (0, 1, 1))
        verdict = verify_global_sections(sheaf)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.detail, "3 compatible families")

    def test_fixtures(self):
        for name, T in all_fixtures().items():
            self.assertTrue(verify_global_sections(T), name)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_lattices(self, seed):
        S = random_distributive_lattice(np.random.default_rng(seed))
        self.assertTrue(verify_global_sections(S))


class TestStalks(unittest.TestCase):
    def test_chain3(self):
        T = chain(3)
        self.assertEqual(stalk_at(T, IdealSubset.of(T, [ZERO])).size, 2)
        self.assertEqual(stalk_at(T, IdealSubset.of(T, [ZERO, E])).size, 3)

    def test_not_prime(self):
        T = boolean_square()
        with self.assertRaises(PreconditionError):
            stalk_at(T, IdealSubset.of(T, [0]))


class TestSheafMaps(unittest.TestCase):
    def test_collapses(self):
        T, B = chain(3), make_chain(2)
        for images in ((0, 1, 1), (0, 0, 1)):
            phi = SemiringMap(T, B, images)
            self.assertTrue(verify_sheaf_map_naturality(phi), images)
            self.assertTrue(verify_anti_equivalence(phi), images)

    def test_sheaf_map_on_global_sections(self):
        T, B = chain(3), make_chain(2)
        phi = SemiringMap(T, B, (0, 1, 1))
        self.assertEqual(sheaf_map(phi, ONE).images, (0, 1, 1))

    def test_identity_on_fixtures(self):
        for name, T in all_fixtures().items():
            sheaf = StructureSheaf(T)
            identity = SemiringMap(T, T, tuple(T.elements()))
            self.assertTrue(verify_anti_equivalence(identity, sheaf, sheaf), name)

    def test_not_a_homomorphism(self):
        with self.assertRaises(PreconditionError):
            verify_anti_equivalence(SemiringMap(chain(3), make_chain(2), (0, 1, 0)))


if __name__ == "__main__":
    unittest.main()
