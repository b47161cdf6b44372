"""Command-line front-end: `gammaspec [source] [options] <command> ...`."""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .__config__ import HARD_ENUMERATION_CAP, JACOBI_TOLERANCE, REPORT_SCHEMA, enumeration_cap
from .algebra import boolean_power, make_chain, semiring_to_dict
from .fuzzy import FuzzySubset, alpha_cut, breakpoint_grid, cut_bridge, is_fuzzy_gamma_ideal, sup_distance, verify_stability
from .inputs import GammaInput, load_input
from .semiring import TernaryGammaSemiring, validate_gamma_structure, validate_semiring
from .sheaf import SectionFamily, StructureSheaf, format_localization, glue_sections, stalk_at
from .spectral import (
    analyze_spectrum,
    block_decomposition,
    connectivity_verdict,
    format_value,
    graph_to_dot,
    specialization_graph,
    spectral_cluster,
    to_csv,
    to_json,
)
from .topology import (
    check_standard_cover,
    closed_sets,
    find_power_decomposition,
    is_t0,
    principal_open,
    to_dot,
    verify_topology_axioms,
)
from .triadic import (
    automorphism_action,
    enumerate_gamma_automorphisms,
    verify_filippov,
    verify_restriction_compat,
    verify_stalk_bracket,
)
from .types import (
    OUTPUT_FORMAT,
    CapacityError,
    ConsistencyError,
    NumericalError,
    PreconditionError,
    StructureError,
)
from .utils import format_matrix
from .verify import run_verification

logger = logging.getLogger(__name__)

COMMANDS = (
    "validate",
    "spec",
    "topology",
    "cover",
    "localize",
    "stalk",
    "glue",
    "bracket",
    "autos",
    "laplacian",
    "cluster",
    "fuzzy",
    "verify",
)

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_CONSISTENCY = 2


@dataclass
class RunConfig:
    """One CLI invocation. Exactly one of `chain`, `boolean_product`, `input_path` is set."""

    command: str
    chain: Optional[int] = None
    boolean_product: Optional[int] = None
    input_path: Optional[str] = None
    format: OUTPUT_FORMAT = "text"
    seed: int = 0
    tol: float = JACOBI_TOLERANCE
    cap: Optional[int] = None
    hasse: bool = False
    arguments: Dict[str, Any] = field(default_factory=dict)

    def check(self) -> None:
        sources = [s for s in (self.chain, self.boolean_product, self.input_path) if s is not None]
        if len(sources) != 1:
            raise ValueError("Give exactly one of --chain, --boolean-product, --input")
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}'")
        if self.format not in ("text", "json", "dot", "csv"):
            raise ValueError(f"Unknown format '{self.format}'")
        if not self.tol > 0:
            raise ValueError(f"Tolerance must be positive, got {self.tol}")
        if self.cap is not None and not 1 <= self.cap <= HARD_ENUMERATION_CAP:
            raise ValueError(f"--cap must lie in 1..{HARD_ENUMERATION_CAP}, got {self.cap}")


@dataclass
class Report:
    """What a command produced: exit status, a JSON payload and its text rendering."""

    status: int
    payload: Dict[str, Any]
    text: str
    dot: Optional[str] = None
    csv: Optional[str] = None


class Session:
    def __init__(self, config: RunConfig):
        self.config = config
        self.cap = enumeration_cap(config.cap)
        if config.input_path is not None:
            self.input = load_input(config.input_path)
        elif config.chain is not None:
            self.input = GammaInput(TernaryGammaSemiring.trivial(make_chain(config.chain)))
        else:
            if config.boolean_product < 1:
                raise ValueError(f"--boolean-product needs N >= 1, got {config.boolean_product}")
            self.input = GammaInput(TernaryGammaSemiring.trivial(boolean_power(config.boolean_product)))
        self.algebra = self.input.algebra
        self.sheaf = StructureSheaf(self.algebra, self.cap)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.algebra.names

    def element(self, name: str) -> int:
        return self.algebra.semiring.index(name)

    def argument(self, key: str, default: Any = None) -> Any:
        return self.config.arguments.get(key, default)


def cmd_validate(session: Session) -> Report:
    T = session.algebra
    semiring = validate_semiring(T)
    lines = [f"semiring: {len(T.names)} elements, {'valid' if semiring.ok else 'invalid'}"]
    lines += [f"  {v}" for v in semiring.violations]
    gamma_violations: List[str] = []
    if semiring.ok:
        gamma = validate_gamma_structure(T)
        gamma_violations = [str(v) for v in gamma.violations]
        lines.append(f"Γ-structure: |Γ| = {T.gamma.order}, {'valid' if gamma.ok else 'invalid'}")
        lines += [f"  {v}" for v in gamma_violations]
    ok = semiring.ok and not gamma_violations
    payload = {
        "semiring": semiring_to_dict(T),
        "semiring_violations": [str(v) for v in semiring.violations],
        "gamma_violations": gamma_violations,
        "valid": ok,
    }
    return Report(EXIT_OK if ok else EXIT_USER_ERROR, payload, "\n".join(lines))


def cmd_spec(session: Session) -> Report:
    X = session.sheaf.spectrum
    labels = X.labels()
    lines = [f"{X.size} prime ideals"] + [f"  P{i} = {label}" for i, label in enumerate(labels)]
    matrix = X.containment.astype(int)
    if X.size:
        lines += ["containment:", format_matrix(matrix)]
    payload = {"primes": list(labels), "containment": matrix.tolist()}
    dot = to_dot(X, "hasse" if session.config.hasse else "comparability")
    return Report(EXIT_OK, payload, "\n".join(lines), dot=dot)


def cmd_topology(session: Session) -> Report:
    X = session.sheaf.spectrum
    report = verify_topology_axioms(X)
    t0 = is_t0(X)
    closed = closed_sets(X)
    T = session.algebra
    opens = {T.names[f]: [f"P{i}" for i in principal_open(X, f).members()] for f in T.elements()}
    lines = [
        f"topology axioms: {'pass' if report.holds else 'fail'} ({report.checked} instances)",
        f"T0: {t0}",
        f"closed sets: {len(closed)}",
    ] + [f"  D({name}) = {{{', '.join(points)}}}" for name, points in opens.items()]
    lines += [f"  failure: {f}" for f in report.failures]
    payload = {
        "holds": report.holds,
        "checked": report.checked,
        "failures": list(report.failures),
        "t0": t0,
        "closed_sets": [list(c.members()) for c in closed],
        "principal_opens": opens,
    }
    return Report(EXIT_OK if report.holds else EXIT_CONSISTENCY, payload, "\n".join(lines))


def cmd_cover(session: Session) -> Report:
    f = session.element(session.argument("f"))
    fs = [session.element(g) for g in session.argument("fs", [])]
    verdict = check_standard_cover(session.sheaf.spectrum, f, fs)
    names = session.names
    cover_text = ", ".join(names[g] for g in fs)
    lines = [f"D({names[f]}) covered by D({cover_text}): {verdict.covered} (exact: {verdict.exact})"]
    payload: Dict[str, Any] = {"covered": verdict.covered, "exact": verdict.exact, "decomposition": None}
    if verdict.covered:
        decomposition = find_power_decomposition(session.algebra, f, fs)
        terms = " + ".join(f"{names[a]}·{names[g]}" for a, g in zip(decomposition.coefficients, fs))
        lines.append(f"{names[f]}^{decomposition.exponent} = {terms or '0'}")
        payload["decomposition"] = {
            "exponent": decomposition.exponent,
            "coefficients": [names[a] for a in decomposition.coefficients],
        }
    return Report(EXIT_OK, payload, "\n".join(lines))


def _localization_payload(L) -> Dict[str, Any]:
    names = L.names
    return {
        "classes": list(names),
        "canonical": [names[c] for c in L.canonical],
        "add": [[names[v] for v in row] for row in L.algebra.semiring.add],
        "mul": [[names[v] for v in row] for row in L.algebra.semiring.mul],
    }


def cmd_localize(session: Session) -> Report:
    L = session.sheaf.localization(session.element(session.argument("f")))
    return Report(EXIT_OK, _localization_payload(L), format_localization(L))


def cmd_stalk(session: Session) -> Report:
    X = session.sheaf.spectrum
    index = session.argument("index")
    if not 0 <= index < X.size:
        raise ValueError(f"Prime index {index} out of range: the spectrum has {X.size} points")
    P = X.points[index]
    L = stalk_at(session.algebra, P, session.sheaf)
    bracket = verify_stalk_bracket(session.algebra, P, session.sheaf)
    payload = dict(_localization_payload(L), prime=P.label(session.algebra), bracket=bracket.holds)
    text = f"stalk at P{index} = {P.label(session.algebra)}\n{format_localization(L)}\nbracket preserved: {bracket.holds}"
    return Report(EXIT_OK if bracket else EXIT_CONSISTENCY, payload, text)


def cmd_glue(session: Session) -> Report:
    scripts = session.input.glue_scripts
    if not scripts:
        raise ValueError("The input has no 'glue_scripts' to run")
    results = []
    lines = []
    for script in scripts:
        family = SectionFamily.parse(session.sheaf, script.f, script.cover, script.sections)
        glued = glue_sections(session.sheaf, family)
        name = session.sheaf.localization(family.f).names[glued]
        results.append({"f": script.f, "cover": list(script.cover), "glued": name})
        lines.append(f"D({script.f}) from {list(script.sections)} over {list(script.cover)}: {name}")
    return Report(EXIT_OK, {"glued": results}, "\n".join(lines))


def cmd_bracket(session: Session) -> Report:
    T = session.algebra
    sheaf = session.sheaf
    rows = [("base", verify_filippov(T).status)]
    rows += [(f"T_{T.names[f]}", verify_filippov(sheaf.localization(f)).status) for f in T.elements()]
    compat = all(
        verify_restriction_compat(sheaf, f, g)
        for f in T.elements()
        for g in T.elements()
        if sheaf.contains_open(f, g)
    )
    failed = any(status == "fail" for _, status in rows) or not compat
    lines = [f"Filippov {name}: {status}" for name, status in rows]
    lines.append(f"restriction compatibility: {'pass' if compat else 'fail'}")
    payload = {"filippov": {name: status for name, status in rows}, "restriction_compatible": compat}
    return Report(EXIT_CONSISTENCY if failed else EXIT_OK, payload, "\n".join(lines))


def cmd_autos(session: Session) -> Report:
    X = session.sheaf.spectrum
    autos = enumerate_gamma_automorphisms(session.algebra)
    entries = []
    lines = [f"{len(autos)} Γ-automorphisms"]
    for sigma in autos:
        action = automorphism_action(sigma, X)
        description = sigma.as_map().describe()
        entries.append({"images": description, "spectrum": list(action.permutation)})
        lines.append(f"  {description}  on spectrum: {list(action.permutation)}")
    return Report(EXIT_OK, {"automorphisms": entries}, "\n".join(lines))


def cmd_laplacian(session: Session) -> Report:
    X = session.sheaf.spectrum
    analysis = analyze_spectrum(X, session.config.hasse, session.config.tol)
    verdict = connectivity_verdict(analysis)
    blocks = block_decomposition(analysis)
    lines = ["L ="]
    lines.append(format_matrix(analysis.matrices.laplacian) if analysis.size else "[]")
    lines.append("eigenvalues: " + ", ".join(format_value(v) for v in analysis.eigenvalues))
    lines.append(f"connectivity: {verdict.status}")
    lines.append(f"blocks: {[len(c) for c in blocks.components]}")
    payload = to_json(analysis)
    payload.pop("schema")
    payload["hasse"] = session.config.hasse
    graph = specialization_graph(X, session.config.hasse)
    return Report(EXIT_OK, payload, "\n".join(lines), dot=graph_to_dot(graph), csv=to_csv(analysis))


def cmd_cluster(session: Session) -> Report:
    analysis = analyze_spectrum(session.sheaf.spectrum, session.config.hasse, session.config.tol)
    seed = session.argument("cluster_seed")
    seed = session.config.seed if seed is None else seed
    result = spectral_cluster(analysis, session.argument("k"), seed)
    payload = to_json(analysis, result)
    payload.pop("schema")
    lines = [f"k = {result.k}, seed = {seed}, {result.iterations} iterations"]
    lines += [
        f"  cluster {c}: {', '.join(analysis.labels[v] for v in members)}"
        for c, members in enumerate(result.clusters())
    ]
    lines.append(f"objective: {format_value(result.objective)}")
    return Report(EXIT_OK, payload, "\n".join(lines))


def cmd_fuzzy(session: Session) -> Report:
    T = session.algebra
    subsets: Dict[str, FuzzySubset] = dict(session.input.fuzzy)
    wanted = session.argument("name")
    if wanted is not None:
        if wanted not in subsets:
            raise ValueError(f"No fuzzy subset named '{wanted}'")
        subsets = {wanted: subsets[wanted]}
    if not subsets:
        raise ValueError("The input has no 'fuzzy' subsets")
    entries = {}
    lines = []
    for name, mu in subsets.items():
        verdict = is_fuzzy_gamma_ideal(T, mu)
        cuts = {
            str(alpha): [T.names[x] for x in alpha_cut(mu, alpha).members()]
            for alpha in breakpoint_grid(mu)
        }
        bridge = cut_bridge(T, mu).holds if verdict else None
        entries[name] = {"fuzzy_ideal": verdict.holds, "detail": verdict.detail, "cuts": cuts, "bridge": bridge}
        lines.append(f"{name}: fuzzy Γ-ideal {verdict.holds}{' (' + verdict.detail + ')' if verdict.detail else ''}")
        lines += [f"  [{name}]_{alpha} = {{{', '.join(members)}}}" for alpha, members in cuts.items()]
    stability = []
    for (a, mu), (b, nu) in ((x, y) for x in subsets.items() for y in subsets.items()):
        epsilon = sup_distance(mu, nu)
        for alpha in breakpoint_grid(mu, nu, epsilon):
            verify_stability(mu, nu, alpha, epsilon)
        stability.append({"mu": a, "nu": b, "epsilon": str(epsilon)})
        lines.append(f"stability {a} vs {b}: pass at ε = {epsilon}")
    failed = any(entry["bridge"] is False for entry in entries.values())
    return Report(EXIT_CONSISTENCY if failed else EXIT_OK, {"fuzzy": entries, "stability": stability}, "\n".join(lines))


def cmd_verify(session: Session) -> Report:
    report = validate_semiring(session.algebra)
    if not report.ok:
        raise StructureError(f"Input is not a semiring: {report.violations[0]}")
    results = run_verification(
        session.algebra, session.input.fuzzy, session.input.glue_scripts, session.cap, session.config.seed
    )
    width = max(len(r.name) for r in results)
    lines = [
        f"{r.name.ljust(width)}  {r.status}{'  ' + r.detail if r.detail else ''}" for r in results
    ]
    failed = [r.name for r in results if r.status == "fail"]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks without failure")
    payload = {"checks": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results]}
    return Report(EXIT_CONSISTENCY if failed else EXIT_OK, payload, "\n".join(lines))


HANDLERS: Dict[str, Callable[[Session], Report]] = {
    "validate": cmd_validate,
    "spec": cmd_spec,
    "topology": cmd_topology,
    "cover": cmd_cover,
    "localize": cmd_localize,
    "stalk": cmd_stalk,
    "glue": cmd_glue,
    "bracket": cmd_bracket,
    "autos": cmd_autos,
    "laplacian": cmd_laplacian,
    "cluster": cmd_cluster,
    "fuzzy": cmd_fuzzy,
    "verify": cmd_verify,
}


def render(config: RunConfig, report: Report) -> str:
    if config.format == "json":
        document = {"schema": REPORT_SCHEMA, "command": config.command}
        document.update(report.payload)
        return json.dumps(document, indent=2, ensure_ascii=False)
    if config.format == "dot":
        if report.dot is None:
            raise ValueError(f"Format 'dot' is not available for '{config.command}'")
        return report.dot
    if config.format == "csv":
        if report.csv is None:
            raise ValueError(f"Format 'csv' is not available for '{config.command}'")
        return report.csv.rstrip("\n")
    return report.text


@dataclass(frozen=True)
class RunResult:
    status: int
    output: str
    error: bool = False


def run(config: RunConfig) -> RunResult:
    """Run one command and collect the exit status and the text to print.

    Exit status 0 means every requested check passed, 1 a problem with the input or
    options, 2 a consistency failure.
    """
    try:
        config.check()
        session = Session(config)
        report = HANDLERS[config.command](session)
        return RunResult(report.status, render(config, report))
    except ConsistencyError as error:
        logger.error("Consistency failure: %s", error)
        return RunResult(EXIT_CONSISTENCY, f"consistency failure: {error}", True)
    except json.JSONDecodeError as error:
        return RunResult(EXIT_USER_ERROR, f"error: input is not valid JSON: {error}", True)
    except (StructureError, CapacityError, PreconditionError, NumericalError, ValueError, OSError) as error:
        return RunResult(EXIT_USER_ERROR, f"error: {error}", True)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1; status 2 is kept for consistency failures."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog="gammaspec",
        description="Prime spectra, structure sheaves and Laplacians of finite ternary Γ-semirings.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--chain", type=int, metavar="N", help="N-element chain lattice")
    source.add_argument("--boolean-product", type=int, metavar="N", help="product of N Boolean semirings")
    source.add_argument("--input", dest="input_path", metavar="PATH", help="semiring JSON file")
    parser.add_argument("--format", choices=("text", "json", "dot", "csv"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=JACOBI_TOLERANCE, help="Jacobi off-diagonal tolerance")
    parser.add_argument("--cap", type=int, help="exhaustive enumeration cap (also GAMMASPEC_CAP)")
    parser.add_argument("--hasse", action="store_true", help="use covering edges instead of comparability")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", help="check semiring and Γ axioms")
    commands.add_parser("spec", help="prime ideals and containment")
    commands.add_parser("topology", help="Zariski topology checks")
    cover = commands.add_parser("cover", help="standard cover and power decomposition")
    cover.add_argument("f")
    cover.add_argument("fs", nargs="*")
    localize = commands.add_parser("localize", help="tables of T_f")
    localize.add_argument("f")
    stalk = commands.add_parser("stalk", help="stalk at a prime, by spectrum index")
    stalk.add_argument("index", type=int)
    commands.add_parser("glue", help="run glue_scripts from the input")
    commands.add_parser("bracket", help="Filippov identity and restriction compatibility")
    commands.add_parser("autos", help="Γ-automorphisms and their action")
    commands.add_parser("laplacian", help="Laplacian, eigenvalues and connectivity")
    cluster = commands.add_parser("cluster", help="spectral clustering of the spectrum")
    cluster.add_argument("-k", type=int, required=True)
    cluster.add_argument("--seed", dest="cluster_seed", type=int)
    fuzzy = commands.add_parser("fuzzy", help="fuzzy Γ-ideal and α-cut checks")
    fuzzy.add_argument("--name")
    commands.add_parser("verify", help="run every check")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra = {
        key: getattr(args, key)
        for key in ("f", "fs", "index", "k", "cluster_seed", "name")
        if hasattr(args, key)
    }
    return RunConfig(
        command=args.command,
        chain=args.chain,
        boolean_product=args.boolean_product,
        input_path=args.input_path,
        format=args.format,
        seed=args.seed,
        tol=args.tol,
        cap=args.cap,
        hasse=args.hasse,
        arguments=extra,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    result = run(config_from_args(args))
    print(result.output, file=sys.stderr if result.error else sys.stdout)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
