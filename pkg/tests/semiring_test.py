# flake8: noqa: D101, D102
import itertools
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaspec.algebra import (
    SemiringMap,
    boolean_power,
    is_homomorphism,
    make_boolean,
    make_chain,
    make_group_lattice,
    product,
    product_factors,
    projection,
    random_distributive_lattice,
    relabel,
    semiring_from_dict,
    semiring_to_dict,
    truncated_naturals,
)
from gammaspec.algebra import make_modular
from gammaspec.semiring import (
    FiniteGroup,
    FiniteSemiring,
    TernaryGammaSemiring,
    Violation,
    inverse,
    is_idempotent,
    multiplicative_closure,
    powers,
    ternary_product,
    unit_group,
    validate_gamma_structure,
    validate_semiring,
)
from gammaspec.types import CapacityError, StructureError

from tests.fixtures import E, ONE, ZERO, chain


class TestValidation(unittest.TestCase):
    def test_chain3_is_valid(self):
        self.assertTrue(validate_semiring(make_chain(3)).ok)

    def test_broken_commutativity_is_reported_at_the_cell(self):
        S = make_chain(3)
        add = [list(row) for row in S.add]
        add[E][ONE] = E
        broken = FiniteSemiring(S.names, add, S.mul, S.zero, S.one)
        report = validate_semiring(broken)
        self.assertFalse(report.ok)
        self.assertIn(Violation("addition commutativity", ("e", "1")), report.violations)

    def test_malformed_tables_are_structural_errors(self):
        with self.assertRaises(StructureError):
            FiniteSemiring(("0", "1"), [[0, 1], [1]], [[0, 0], [0, 1]], 0, 1)
        with self.assertRaises(StructureError):
            FiniteSemiring(("0", "1"), [[0, 1], [1, 2]], [[0, 0], [0, 1]], 0, 1)
        with self.assertRaises(StructureError):
            FiniteSemiring(("0", "0"), [[0, 0], [0, 0]], [[0, 0], [0, 0]], 0, 1)

    def test_two_element_candidates(self):
        survivors = []
        for add_bits in itertools.product(range(2), repeat=4):
            for mul_bits in itertools.product(range(2), repeat=4):
                add = [add_bits[:2], add_bits[2:]]
                mul = [mul_bits[:2], mul_bits[2:]]
                if validate_semiring(FiniteSemiring(("0", "1"), add, mul, 0, 1)).ok:
                    survivors.append((add_bits, mul_bits))
        # Boolean semiring and Z/2
        self.assertEqual(
            sorted(survivors),
            [((0, 1, 1, 0), (0, 0, 0, 1)), ((0, 1, 1, 1), (0, 0, 0, 1))],
        )

    def test_cap(self):
        with self.assertRaises(CapacityError):
            validate_semiring(make_chain(5), cap=4)


class TestGammaStructure(unittest.TestCase):
    def test_trivial_gamma(self):
        self.assertTrue(validate_gamma_structure(chain(3)).ok)

    def test_non_unit_is_named(self):
        T = TernaryGammaSemiring(make_chain(3), FiniteGroup.cyclic(2), (ONE, E))
        report = validate_gamma_structure(T)
        self.assertIn("not a unit", report.axioms())
        self.assertIn(Violation("not a unit", ("g", "e")), report.violations)

    def test_constant_one(self):
        T = TernaryGammaSemiring(make_chain(3), FiniteGroup.cyclic(2), (ONE, ONE))
        self.assertTrue(validate_gamma_structure(T).ok)

    def test_group_lattice(self):
        for order in (1, 2, 3):
            T = make_group_lattice(order)
            self.assertTrue(validate_semiring(T).ok)
            self.assertTrue(validate_gamma_structure(T).ok)
            self.assertTrue(is_idempotent(T))

    def test_unit_map_length(self):
        with self.assertRaises(StructureError):
            TernaryGammaSemiring(make_chain(3), FiniteGroup.cyclic(2), (ONE,))


class TestTernaryProduct(unittest.TestCase):
    def test_chain3(self):
        self.assertEqual(ternary_product(chain(3), E, ONE, ONE, 0), E)

    def test_identity_inputs_give_the_unit(self):
        T = make_group_lattice(2)
        for g in T.gamma.elements():
            self.assertEqual(ternary_product(T, T.one, T.one, T.one, g), T.units[g])

    def test_zero_absorbs(self):
        T = make_group_lattice(3)
        for b, c, g in itertools.product(T.elements(), T.elements(), T.gamma.elements()):
            self.assertEqual(ternary_product(T, T.zero, b, c, g), T.zero)


class TestConstructors(unittest.TestCase):
    def test_idempotence(self):
        self.assertTrue(is_idempotent(make_chain(4)))
        self.assertTrue(is_idempotent(boolean_power(2)))
        self.assertFalse(is_idempotent(truncated_naturals(3)))

    def test_chain_names_and_tables(self):
        S = make_chain(3)
        self.assertEqual(S.names, ("0", "e", "1"))
        self.assertEqual(S.add[ZERO][E], E)
        self.assertEqual(S.mul[E][ONE], E)
        self.assertEqual(make_chain(2), make_boolean())

    def test_product_size(self):
        self.assertEqual(boolean_power(2).size, 4)
        self.assertEqual(boolean_power(2).names, ("(0,0)", "(0,1)", "(1,0)", "(1,1)"))

    def test_powers_and_units(self):
        S = truncated_naturals(3)
        self.assertEqual(powers(S, 2), (2, 3))
        self.assertEqual(multiplicative_closure(S, 2), frozenset({1, 2, 3}))
        self.assertEqual(unit_group(make_chain(3)), frozenset({ONE}))
        self.assertEqual(inverse(make_modular(5), 2), 3)
        self.assertIsNone(inverse(make_chain(3), E))


class TestHomomorphisms(unittest.TestCase):
    def test_identity(self):
        S = make_chain(3)
        self.assertTrue(is_homomorphism((0, 1, 2), S, S))

    def test_chain_collapses(self):
        self.assertTrue(is_homomorphism((0, 1, 1), make_chain(3), make_chain(2)))
        self.assertTrue(is_homomorphism((0, 0, 1), make_chain(3), make_chain(2)))
        self.assertFalse(is_homomorphism((0, 1, 0), make_chain(3), make_chain(2)))

    def test_composition(self):
        S, B = make_chain(3), make_chain(2)
        collapse = SemiringMap(S, B, (0, 1, 1))
        identity = SemiringMap(B, B, (0, 1))
        self.assertEqual(collapse.then(identity).images, (0, 1, 1))

    def test_product_factors(self):
        T = TernaryGammaSemiring.trivial(product(make_chain(3), make_boolean()))
        factors = product_factors(T)
        self.assertEqual(factors, (chain(3), TernaryGammaSemiring.trivial(make_boolean())))
        first = projection(T, factors[0], 0)
        self.assertTrue(first.is_homomorphism())
        self.assertEqual(first.images, (0, 0, 1, 1, 2, 2))

    def test_product_factors_keep_units(self):
        T = make_group_lattice(2)
        square = TernaryGammaSemiring(product(T.semiring, T.semiring), T.gamma, (5, 10))
        factors = product_factors(square)
        self.assertEqual([f.units for f in factors], [T.units, T.units])

    def test_not_a_product(self):
        self.assertEqual(product_factors(chain(3)), ())
        self.assertEqual(product_factors(make_group_lattice(2)), ())
        self.assertEqual(product_factors(make_boolean()), ())


class TestSerialization(unittest.TestCase):
    def test_group_lattice_document(self):
        T = make_group_lattice(2)
        document = semiring_to_dict(T)
        self.assertEqual(document["units"], {"e": "1", "g": "g"})
        self.assertEqual(semiring_from_dict(document), T)

    def test_missing_field(self):
        document = semiring_to_dict(make_chain(3))
        del document["mul"]
        with self.assertRaises(StructureError):
            semiring_from_dict(document)

    def test_unknown_element(self):
        document = semiring_to_dict(make_chain(3))
        document["add"][0][0] = "x"
        with self.assertRaises(StructureError):
            semiring_from_dict(document)

    def test_element_lists_must_be_lists(self):
        for value in (5, None, "0e1"):
            document = semiring_to_dict(make_chain(3))
            document["elements"] = value
            with self.assertRaises(StructureError):
                semiring_from_dict(document)
            document = semiring_to_dict(make_chain(3))
            document["gamma"]["elements"] = value
            with self.assertRaises(StructureError):
                semiring_from_dict(document)


class TestProperties(unittest.TestCase):
    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_distributive_lattices_are_semirings(self, seed):
        S = random_distributive_lattice(np.random.default_rng(seed))
        self.assertTrue(validate_semiring(S).ok)
        self.assertTrue(is_idempotent(S))

    @settings(max_examples=30, deadline=None)
    @given(st.permutations(range(5)))
    def test_relabel_is_an_isomorphism(self, permutation):
        S = make_chain(5)
        copy = relabel(S, permutation)
        self.assertTrue(validate_semiring(copy).ok)
        self.assertTrue(SemiringMap(S, copy, permutation).is_homomorphism())


if __name__ == "__main__":
    unittest.main()
