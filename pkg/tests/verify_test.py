# flake8: noqa: D101, D102
import dataclasses
import unittest
from fractions import Fraction
from unittest import mock

from gammaspec.fuzzy import FuzzySubset
from gammaspec.inputs import GlueScript
from gammaspec.verify import Verifier, run_verification
from tests.fixtures import all_fixtures, boolean_square, chain, chain3_times_boolean, modular3_with_sign


def statuses(results):
    return {r.name: r.status for r in results}


class TestRunVerification(unittest.TestCase):
    def test_no_failures_on_fixtures(self):
        for name, T in all_fixtures().items():
            with self.subTest(name):
                failed = [(r.name, r.detail) for r in run_verification(T) if r.status == "fail"]
                self.assertEqual(failed, [])

    def test_fixed_order(self):
        names = [r.name for r in run_verification(chain(3))]
        self.assertEqual(names, [name for name, _ in Verifier(chain(3)).checks()])
        self.assertEqual(names[0], "semiring axioms")
        self.assertEqual(names[-1], "fuzzy stability")

    def test_filippov_skipped_without_idempotent_addition(self):
        self.assertEqual(statuses(run_verification(modular3_with_sign()))["Filippov identity"], "skipped")
        self.assertEqual(statuses(run_verification(chain(4)))["Filippov identity"], "pass")

    def test_connectivity_detail(self):
        details = {r.name: r.detail for r in run_verification(boolean_square())}
        self.assertEqual(details["connectivity"], "disconnected")
        self.assertEqual(details["block decomposition"], "block sizes [1, 1]")
        details = {r.name: r.detail for r in run_verification(chain(4))}
        self.assertEqual(details["connectivity"], "connected")

    def test_automorphism_count(self):
        details = {r.name: r.detail for r in run_verification(boolean_square())}
        self.assertEqual(details["automorphisms"], "|Aut| = 2")

    def test_prime_indicators_feed_fuzzy_checks(self):
        results = statuses(run_verification(chain(3)))
        self.assertEqual(results["fuzzy α-cuts"], "pass")
        self.assertEqual(results["fuzzy stability"], "pass")

    def test_fuzzy_and_glue_inputs(self):
        T = boolean_square()
        fuzzy = {
            "graded": FuzzySubset.parse(T, {"(0,0)": "1", "(0,1)": "2/3"}),
            "not an ideal": FuzzySubset.parse(T, {"(0,0)": "1/3"}),
        }
        scripts = [GlueScript("(1,1)", ("(1,0)", "(0,1)"), ("(1,0)", "(0,0)"))]
        results = run_verification(T, fuzzy, scripts)
        self.assertNotIn("fail", statuses(results).values())
        self.assertEqual(Verifier(T, fuzzy)._fuzzy_subsets()["graded"](1), Fraction(2, 3))

    def test_rejected_glue_script_is_reported(self):
        scripts = [
            GlueScript("1", ("1",), ("e",)),
            GlueScript("1", ("1", "e"), ("1", "0")),
            GlueScript("1", ("z",), ("0",)),
        ]
        results = run_verification(chain(3), glue_scripts=scripts)
        self.assertEqual(len(results), len(Verifier(chain(3)).checks()))
        gluing = next(r for r in results if r.name == "gluing")
        self.assertEqual(gluing.status, "fail")
        self.assertIn("glue script 1:", gluing.detail)
        self.assertIn("glue script 2:", gluing.detail)
        self.assertNotIn("glue script 0:", gluing.detail)
        self.assertEqual(statuses(results)["global sections"], "pass")


class TestProductMaps(unittest.TestCase):
    def test_projections_of_products(self):
        verifier = Verifier(chain3_times_boolean())
        targets = [phi.target.size for phi, _ in verifier.projections]
        self.assertEqual(targets, [3, 2])
        self.assertEqual(Verifier(chain(3)).projections, [])

    def test_projection_rows(self):
        details = {r.name: (r.status, r.detail) for r in run_verification(boolean_square())}
        self.assertEqual(details["comap continuity"], ("pass", "2 projections"))
        self.assertEqual(details["universal property"], ("pass", "2 projections"))
        self.assertEqual(details["anti-equivalence"], ("pass", "5 homomorphisms"))


class TestChecksCanFail(unittest.TestCase):
    def test_prime_forms(self):
        verifier = Verifier(chain(3))
        self.assertEqual(verifier.check_prime_forms(), ("pass", "2 primes"))
        with mock.patch("gammaspec.verify.is_ternary_prime", return_value=False):
            status, detail = Verifier(chain(3)).check_prime_forms()
        self.assertEqual(status, "fail")
        self.assertEqual(detail, "binary True on {0}")

    def test_connectivity_with_a_negative_threshold(self):
        verifier = Verifier(chain(4))
        self.assertEqual(verifier.check_connectivity(), ("pass", "connected"))
        verifier.analysis = dataclasses.replace(verifier.analysis, zero_threshold=-1.0)
        self.assertEqual(verifier.check_connectivity(), ("fail", "connected"))

    def test_blocks(self):
        self.assertEqual(Verifier(chain3_times_boolean()).check_blocks(), ("pass", "block sizes [2, 1]"))


if __name__ == "__main__":
    unittest.main()
