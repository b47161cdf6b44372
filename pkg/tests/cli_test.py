# flake8: noqa: D101, D102
import contextlib
import io
import json
import os
import tempfile
import unittest

from gammaspec.algebra import boolean_power, make_chain, make_group_lattice, semiring_to_dict
from gammaspec.cli import EXIT_CONSISTENCY, EXIT_OK, EXIT_USER_ERROR, RunConfig, main, run


class InputFileMixin:
    def write_input(self, document) -> str:
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)  # type: ignore  # pylint: disable=E1101
        path = os.path.join(directory.name, "input.json")
        with open(path, "w", encoding="utf-8") as file:
            if isinstance(document, str):
                file.write(document)
            else:
                json.dump(document, file)
        return path


class TestCommands(unittest.TestCase):
    def test_chain4_laplacian(self):
        result = run(RunConfig("laplacian", chain=4))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("[ 2 -1 -1]", result.output)
        self.assertIn("eigenvalues: 0, 3, 3", result.output)
        self.assertIn("connectivity: connected", result.output)

    def test_boolean_square_laplacian(self):
        result = run(RunConfig("laplacian", boolean_product=2))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("[0 0]\n[0 0]", result.output)
        self.assertIn("eigenvalues: 0, 0", result.output)
        self.assertIn("connectivity: disconnected", result.output)
        self.assertIn("blocks: [1, 1]", result.output)

    def test_chain3_verify(self):
        result = run(RunConfig("verify", chain=3, format="json"))
        self.assertEqual(result.status, EXIT_OK)
        document = json.loads(result.output)
        self.assertEqual(document["schema"], 1)
        self.assertEqual(document["command"], "verify")
        statuses = {check["name"]: check["status"] for check in document["checks"]}
        self.assertNotIn("fail", statuses.values())
        self.assertEqual(statuses["global sections"], "pass")
        self.assertEqual(statuses["Filippov identity"], "pass")

    def test_verify_on_every_constructor(self):
        for config in (RunConfig("verify", chain=4), RunConfig("verify", boolean_product=2)):
            result = run(config)
            self.assertEqual(result.status, EXIT_OK, result.output)

    def test_spec(self):
        document = json.loads(run(RunConfig("spec", chain=3, format="json")).output)
        self.assertEqual(document["primes"], ["{0}", "{0,e}"])
        self.assertEqual(document["containment"], [[1, 1], [0, 1]])
        dot = run(RunConfig("spec", chain=3, format="dot", hasse=True)).output
        self.assertTrue(dot.startswith("digraph spectrum {"))

    def test_topology(self):
        result = run(RunConfig("topology", chain=4))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("topology axioms: pass", result.output)
        self.assertIn("T0: True", result.output)

    def test_cover(self):
        config = RunConfig("cover", boolean_product=2, arguments={"f": "(1,1)", "fs": ["(1,0)", "(0,1)"]})
        result = run(config)
        self.assertIn("covered by D((1,0), (0,1)): True (exact: True)", result.output)
        self.assertIn("(1,1)^1 = (1,0)·(1,0) + (0,1)·(0,1)", result.output)
        uncovered = run(RunConfig("cover", chain=3, arguments={"f": "1", "fs": ["e"]}))
        self.assertIn(": False (exact: False)", uncovered.output)

    def test_localize_and_stalk(self):
        result = run(RunConfig("localize", chain=3, arguments={"f": "e"}))
        self.assertTrue(result.output.startswith("T_e: 2 classes"))
        stalk = run(RunConfig("stalk", chain=3, arguments={"index": 1}))
        self.assertEqual(stalk.status, EXIT_OK)
        self.assertIn("bracket preserved: True", stalk.output)

    def test_bracket_and_autos(self):
        result = run(RunConfig("bracket", boolean_product=2))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("Filippov base: pass", result.output)
        autos = run(RunConfig("autos", boolean_product=2))
        self.assertTrue(autos.output.startswith("2 Γ-automorphisms"))

    def test_cluster(self):
        result = run(RunConfig("cluster", boolean_product=2, arguments={"k": 2, "cluster_seed": 5}))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("cluster 0: {(0,0),(0,1)}", result.output)
        self.assertIn("cluster 1: {(0,0),(1,0)}", result.output)

    def test_csv(self):
        self.assertEqual(run(RunConfig("laplacian", chain=4, format="csv")).output, "0,3,3")

    def test_deterministic(self):
        config = RunConfig("cluster", chain=5, format="json", arguments={"k": 2})
        self.assertEqual(run(config).output, run(config).output)


class TestErrors(unittest.TestCase):
    def test_two_sources(self):
        result = run(RunConfig("spec", chain=3, boolean_product=2))
        self.assertEqual(result.status, EXIT_USER_ERROR)
        self.assertTrue(result.error)

    def test_cap(self):
        self.assertEqual(run(RunConfig("spec", chain=3, cap=25)).status, EXIT_USER_ERROR)
        result = run(RunConfig("spec", boolean_product=5))
        self.assertEqual(result.status, EXIT_USER_ERROR)
        self.assertIn("exceeds cap", result.output)

    def test_format_not_available(self):
        self.assertEqual(run(RunConfig("validate", chain=3, format="csv")).status, EXIT_USER_ERROR)

    def test_stalk_index(self):
        result = run(RunConfig("stalk", chain=3, arguments={"index": 5}))
        self.assertEqual(result.status, EXIT_USER_ERROR)
        self.assertIn("out of range", result.output)

    def test_unknown_element(self):
        self.assertEqual(run(RunConfig("localize", chain=3, arguments={"f": "z"})).status, EXIT_USER_ERROR)

    def test_exit_statuses_are_distinct(self):
        self.assertEqual(len({EXIT_OK, EXIT_USER_ERROR, EXIT_CONSISTENCY}), 3)


class TestInputFiles(InputFileMixin, unittest.TestCase):
    def test_glue_scripts(self):
        document = semiring_to_dict(boolean_power(2))
        document["glue_scripts"] = [
            {"f": "(1,1)", "cover": ["(1,0)", "(0,1)"], "sections": ["(1,0)", "(0,0)"]}
        ]
        result = run(RunConfig("glue", input_path=self.write_input(document)))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn(": (1,0)/(1,1)", result.output)

    def test_fuzzy(self):
        document = semiring_to_dict(make_chain(3))
        document["fuzzy"] = {"mu": {"0": "1", "e": "1/2"}, "nu": {"0": "1/2"}}
        path = self.write_input(document)
        result = run(RunConfig("fuzzy", input_path=path, format="json"))
        self.assertEqual(result.status, EXIT_OK)
        report = json.loads(result.output)
        self.assertTrue(report["fuzzy"]["mu"]["fuzzy_ideal"])
        self.assertTrue(report["fuzzy"]["mu"]["bridge"])
        self.assertEqual(report["fuzzy"]["mu"]["cuts"]["1/2"], ["0", "e"])
        self.assertEqual(report["fuzzy"]["nu"]["detail"], "μ(0)=1 violated")
        self.assertEqual(run(RunConfig("verify", input_path=path)).status, EXIT_OK)

    def test_group_lattice_document(self):
        path = self.write_input(semiring_to_dict(make_group_lattice(2)))
        result = run(RunConfig("validate", input_path=path))
        self.assertEqual(result.status, EXIT_OK)
        self.assertIn("Γ-structure: |Γ| = 2, valid", result.output)

    def test_malformed_json(self):
        result = run(RunConfig("spec", input_path=self.write_input("{not json")))
        self.assertEqual(result.status, EXIT_USER_ERROR)
        self.assertTrue(result.output.startswith("error: input is not valid JSON"))

    def test_missing_file(self):
        result = run(RunConfig("spec", input_path=os.path.join(tempfile.gettempdir(), "no-such-input.json")))
        self.assertEqual(result.status, EXIT_USER_ERROR)

    def test_invalid_semiring(self):
        document = semiring_to_dict(make_chain(3))
        document["add"][1][2] = "e"
        path = self.write_input(document)
        self.assertEqual(run(RunConfig("validate", input_path=path)).status, EXIT_USER_ERROR)
        self.assertEqual(run(RunConfig("verify", input_path=path)).status, EXIT_USER_ERROR)

    def test_wrongly_typed_fields(self):
        def with_gamma_elements(value):
            document = semiring_to_dict(make_chain(3))
            document["gamma"]["elements"] = value
            return document

        def with_glue_field(key, value):
            document = semiring_to_dict(boolean_power(2))
            script = {"f": "(1,1)", "cover": ["(1,0)", "(0,1)"], "sections": ["(1,0)", "(0,0)"]}
            script[key] = value
            document["glue_scripts"] = [script]
            return document

        documents = {
            "elements number": dict(semiring_to_dict(make_chain(3)), elements=5),
            "elements null": dict(semiring_to_dict(make_chain(3)), elements=None),
            "gamma elements number": with_gamma_elements(2),
            "gamma elements null": with_gamma_elements(None),
            "cover number": with_glue_field("cover", 7),
            "sections null": with_glue_field("sections", None),
            "cover string": with_glue_field("cover", "(1,0)"),
        }
        for name, document in documents.items():
            with self.subTest(name):
                result = run(RunConfig("validate", input_path=self.write_input(document)))
                self.assertEqual(result.status, EXIT_USER_ERROR)
                self.assertTrue(result.error)
                self.assertIn("must be a list", result.output)


class TestMain(unittest.TestCase):
    def test_laplacian(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            status = main(["--chain", "4", "laplacian"])
        self.assertEqual(status, EXIT_OK)
        self.assertIn("eigenvalues: 0, 3, 3", out.getvalue())

    def test_cluster_arguments(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            status = main(["--boolean-product", "2", "--format", "json", "cluster", "-k", "2", "--seed", "4"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out.getvalue())["clusters"]["k"], 2)

    def test_unknown_subcommand(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                main(["--chain", "3", "frobnicate"])
        self.assertEqual(context.exception.code, EXIT_USER_ERROR)

    def test_error_goes_to_stderr(self):
        err = io.StringIO()
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(io.StringIO()):
            status = main(["--chain", "3", "stalk", "7"])
        self.assertEqual(status, EXIT_USER_ERROR)
        self.assertIn("out of range", err.getvalue())


if __name__ == "__main__":
    unittest.main()
