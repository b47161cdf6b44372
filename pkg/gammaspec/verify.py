"""Every finite-instance theorem check, run against one input and reported row by row."""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .__config__ import RESIDUAL_TOLERANCE
from .algebra import SemiringMap, identity_map, product_factors, projection, relabel
from .fuzzy import FuzzySubset, breakpoint_grid, cut_bridge, is_fuzzy_gamma_ideal, sup_distance, verify_stability
from .ideals import (
    IdealSubset,
    enumerate_ideals,
    generated_ideal,
    ideal_intersection,
    is_binary_prime,
    is_gamma_ideal,
    is_ternary_prime,
    radical,
    verify_radical_lemma,
)
from .inputs import GlueScript
from .semiring import Algebra, as_gamma_semiring, validate_gamma_structure, validate_semiring
from .sheaf import (
    SectionFamily,
    StructureSheaf,
    check_gluing_uniqueness,
    glue_sections,
    sheaf_map,
    stalk_at,
    universal_extend,
    verify_anti_equivalence,
    verify_global_sections,
    verify_restriction_composition,
)
from .spectral import (
    analyze_spectrum,
    block_decomposition,
    check_isomorphism_invariance,
    check_permutation_invariance,
    connectivity_verdict,
    spectral_cluster,
)
from .topology import (
    check_power_identity,
    check_standard_cover,
    find_power_decomposition,
    is_t0,
    spec_comap,
    verify_topology_axioms,
)
from .triadic import (
    automorphism_action,
    automorphism_sheaf_action,
    enumerate_gamma_automorphisms,
    is_bracket_symmetric,
    verify_filippov,
    verify_restriction_compat,
    verify_stalk_bracket,
)
from .types import CHECK_STATUS, CapacityError, ConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CHECK_STATUS
    detail: str = ""


Outcome = Tuple[CHECK_STATUS, str]


def _flag(holds: bool, detail: str = "") -> Outcome:
    return ("pass" if holds else "fail", detail)


class Verifier:
    """Runs the checks for one semiring. Shared data is computed once, on first use."""

    def __init__(
        self,
        algebra: Algebra,
        fuzzy: Optional[Dict[str, FuzzySubset]] = None,
        glue_scripts: Sequence[GlueScript] = (),
        cap: Optional[int] = None,
        seed: int = 0,
    ):
        self.algebra = as_gamma_semiring(algebra)
        self.fuzzy = dict(fuzzy or {})
        self.glue_scripts = tuple(glue_scripts)
        self.cap = cap
        self.seed = seed
        self.sheaf = StructureSheaf(self.algebra, cap)

    @cached_property
    def ideals(self) -> List[IdealSubset]:
        return enumerate_ideals(self.algebra, self.cap)

    @property
    def spectrum(self):
        return self.sheaf.spectrum

    def covers(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """Every (f, fs) with fs of one or two elements, fs ascending."""
        T = self.algebra
        pairs = [(g,) for g in T.elements()] + list(itertools.combinations(T.elements(), 2))
        return [(f, fs) for f in T.elements() for fs in pairs]

    def exact_covers(self) -> List[Tuple[int, Tuple[int, ...]]]:
        return [
            (f, fs) for f, fs in self.covers() if check_standard_cover(self.spectrum, f, fs).exact
        ]

    def checks(self) -> List[Tuple[str, Callable[[], Outcome]]]:
        return [
            ("semiring axioms", self.check_axioms),
            ("Γ-structure", self.check_gamma),
            ("bracket symmetry", lambda: _flag(is_bracket_symmetric(self.algebra))),
            ("generated ideals", self.check_generated_ideals),
            ("radical closure", self.check_radicals),
            ("prime forms agree", self.check_prime_forms),
            ("radical lemma", self.check_radical_lemma),
            ("topology axioms", self.check_topology),
            ("specialization closures", lambda: _flag(is_t0(self.spectrum))),
            ("standard covers", self.check_covers),
            ("comap continuity", self.check_comap),
            ("universal property", self.check_universal_property),
            ("restriction composition", lambda: _flag(bool(verify_restriction_composition(self.sheaf)))),
            ("gluing", self.check_gluing),
            ("global sections", self.check_global_sections),
            ("stalk brackets", self.check_stalks),
            ("Filippov identity", self.check_filippov),
            ("restriction brackets", self.check_restriction_brackets),
            ("automorphisms", self.check_automorphisms),
            ("anti-equivalence", self.check_anti_equivalence),
            ("connectivity", self.check_connectivity),
            ("block decomposition", self.check_blocks),
            ("relabel invariance", self.check_relabel),
            ("spectral clustering", self.check_clustering),
            ("fuzzy α-cuts", self.check_fuzzy_cuts),
            ("fuzzy stability", self.check_fuzzy_stability),
        ]

    def check_axioms(self) -> Outcome:
        report = validate_semiring(self.algebra)
        return _flag(report.ok, "; ".join(str(v) for v in report.violations[:3]))

    def check_gamma(self) -> Outcome:
        report = validate_gamma_structure(self.algebra)
        return _flag(report.ok, "; ".join(str(v) for v in report.violations[:3]))

    def check_generated_ideals(self) -> Outcome:
        T = self.algebra
        for x in T.elements():
            containing = [I for I in self.ideals if x in I]
            if generated_ideal(T, [x]) != ideal_intersection(T, *containing):
                return _flag(False, f"⟨{T.names[x]}⟩")
        return _flag(True)

    def check_radicals(self) -> Outcome:
        T = self.algebra
        for I in self.ideals:
            rad = radical(T, I)
            if not is_gamma_ideal(T, rad) or not I.issubset(rad) or radical(T, rad) != rad:
                return _flag(False, I.label(T))
        for I, J in itertools.product(self.ideals, repeat=2):
            if I.issubset(J) and not radical(T, I).issubset(radical(T, J)):
                return _flag(False, f"{I.label(T)} ⊆ {J.label(T)}")
        return _flag(True)

    def check_prime_forms(self) -> Outcome:
        T = self.algebra
        primes = 0
        for I in self.ideals:
            binary = is_binary_prime(T, I)
            if binary != is_ternary_prime(T, I):
                return _flag(False, f"binary {binary} on {I.label(T)}")
            primes += binary
        if primes != self.spectrum.size:
            return _flag(False, f"{primes} primes among the ideals, {self.spectrum.size} in the spectrum")
        return _flag(True, f"{primes} primes")

    def check_radical_lemma(self) -> Outcome:
        primes = list(self.spectrum.points)
        for I in self.ideals:
            result = verify_radical_lemma(self.algebra, I, primes)
            if not result.holds:
                return _flag(False, I.label(self.algebra))
        return _flag(True)

    def check_topology(self) -> Outcome:
        report = verify_topology_axioms(self.spectrum, self.ideals)
        return _flag(report.holds, "; ".join(report.failures[:3]) or f"{report.checked} instances")

    def check_covers(self) -> Outcome:
        T = self.algebra
        count = 0
        for f, fs in self.covers():
            if check_standard_cover(self.spectrum, f, fs):
                decomposition = find_power_decomposition(T, f, fs)
                if decomposition is None or not check_power_identity(T, f, fs, decomposition):
                    return _flag(False, f"power decomposition of {T.names[f]}")
                count += 1
        return _flag(True, f"{count} covers")

    @cached_property
    def projections(self) -> List[Tuple[SemiringMap, StructureSheaf]]:
        """Projections onto the factors of a product input, each with the factor's sheaf."""
        return [
            (projection(self.algebra, factor, i), StructureSheaf(factor, self.cap))
            for i, factor in enumerate(product_factors(self.algebra))
        ]

    def check_comap(self) -> Outcome:
        X = self.spectrum
        comap = spec_comap(identity_map(self.algebra), X, X)
        if comap.points != tuple(range(X.size)):
            return _flag(False, "identity")
        for phi, target in self.projections:
            points = spec_comap(phi, X, target.spectrum).points
            if len(set(points)) != len(points):
                return _flag(False, f"comap of {phi.describe()} is not injective")
        return _flag(True, f"{len(self.projections)} projections")

    def check_universal_property(self) -> Outcome:
        T = self.algebra
        for f in T.elements():
            L = self.sheaf.localization(f)
            extension = universal_extend(L.canonical_map(), f, L)
            if extension.images != tuple(range(L.size)):
                return _flag(False, f"T_{T.names[f]}")
        for phi, target in self.projections:
            for f in T.elements():
                extension = sheaf_map(phi, f, self.sheaf, target)
                canonical = target.localization(phi(f)).canonical
                L = self.sheaf.localization(f)
                if any(extension(L.canonical[a]) != canonical[phi(a)] for a in T.elements()):
                    return _flag(False, f"T_{T.names[f]} -> {phi.target.names[phi(f)]}")
        return _flag(True, f"{len(self.projections)} projections")

    def check_gluing(self) -> Outcome:
        T = self.algebra
        glued = 0
        for f, fs in self.exact_covers():
            check_gluing_uniqueness(self.sheaf, f, fs)
            for c in range(self.sheaf.localization(f).size):
                sections = tuple(self.sheaf.restrict(f, g, c) for g in fs)
                if glue_sections(self.sheaf, SectionFamily(f, fs, sections)) != c:
                    return _flag(False, f"section {c} over D({T.names[f]})")
                glued += 1
        rejected = []
        for i, script in enumerate(self.glue_scripts):
            try:
                family = SectionFamily.parse(self.sheaf, script.f, script.cover, script.sections)
                glue_sections(self.sheaf, family)
            except ValueError as error:
                rejected.append(f"glue script {i}: {error}")
                continue
            glued += 1
        if rejected:
            return _flag(False, "; ".join(rejected))
        return _flag(True, f"{glued} families glued")

    def check_global_sections(self) -> Outcome:
        verdict = verify_global_sections(self.sheaf)
        return _flag(verdict.holds, verdict.detail)

    def check_stalks(self) -> Outcome:
        for P in self.spectrum.points:
            verdict = verify_stalk_bracket(self.algebra, P, self.sheaf)
            if not verdict:
                return _flag(False, P.label(self.algebra))
        return _flag(True)

    def check_filippov(self) -> Outcome:
        report = verify_filippov(self.algebra)
        if report.status == "hypothesis not met":
            return ("skipped", "addition is not idempotent")
        algebras = [self.sheaf.localization(f) for f in self.algebra.elements()]
        algebras += [stalk_at(self.algebra, P, self.sheaf) for P in self.spectrum.points]
        for A in [self.algebra] + algebras:
            report = verify_filippov(A)
            if report.status == "fail":
                return _flag(False, str(report.witness))
        return _flag(True, f"{len(algebras) + 1} section semirings")

    def check_restriction_brackets(self) -> Outcome:
        T = self.algebra
        for f, g in itertools.product(T.elements(), repeat=2):
            if self.sheaf.contains_open(f, g) and not verify_restriction_compat(self.sheaf, f, g):
                return _flag(False, f"ρ({T.names[f]},{T.names[g]})")
        return _flag(True)

    @cached_property
    def automorphisms(self):
        return enumerate_gamma_automorphisms(self.algebra)

    def check_automorphisms(self) -> Outcome:
        for sigma in self.automorphisms:
            automorphism_action(sigma, self.spectrum)
            check_permutation_invariance(sigma, self.spectrum)
            for f in self.algebra.elements():
                automorphism_sheaf_action(sigma, f, self.sheaf)
        return _flag(True, f"|Aut| = {len(self.automorphisms)}")

    def check_anti_equivalence(self) -> Outcome:
        maps: List[Tuple[SemiringMap, StructureSheaf]] = [(identity_map(self.algebra), self.sheaf)]
        try:
            maps += [(sigma.as_map(), self.sheaf) for sigma in self.automorphisms]
        except CapacityError:
            pass
        maps += self.projections
        for phi, target in maps:
            verdict = verify_anti_equivalence(phi, self.sheaf, target)
            if not verdict:
                return _flag(False, f"{verdict.detail} for {phi.describe()}")
        return _flag(True, f"{len(maps)} homomorphisms")

    @cached_property
    def analysis(self):
        return analyze_spectrum(self.spectrum)

    def check_connectivity(self) -> Outcome:
        analysis = self.analysis
        verdict = connectivity_verdict(analysis)
        zeros_match = analysis.size == 0 or analysis.zero_multiplicity == len(analysis.components)
        return _flag(zeros_match and verdict.spectral == verdict.combinatorial, verdict.status)

    def check_blocks(self) -> Outcome:
        analysis = self.analysis
        blocks = block_decomposition(analysis)
        holds = (
            sorted(blocks.permutation) == list(range(analysis.size))
            and all(not np.any(block.sum(axis=1)) for block in blocks.blocks)
            and np.allclose(blocks.block_eigenvalues, analysis.eigenvalues, atol=RESIDUAL_TOLERANCE)
        )
        return _flag(holds, f"block sizes {[len(c) for c in blocks.components]}")

    def check_relabel(self) -> Outcome:
        T = self.algebra
        permutation = tuple(reversed(range(T.size)))
        copy = relabel(T, permutation)
        return _flag(check_isomorphism_invariance(SemiringMap(T, copy, permutation)))

    def check_clustering(self) -> Outcome:
        k = len(self.analysis.components)
        if k == 0:
            return ("skipped", "empty spectrum")
        result = spectral_cluster(self.analysis, k, self.seed)
        return _flag(True, f"k = {k}, {result.iterations} iterations")

    def _fuzzy_subsets(self) -> Dict[str, FuzzySubset]:
        subsets = dict(self.fuzzy)
        for i, P in enumerate(self.spectrum.points):
            subsets.setdefault(f"prime {i}", FuzzySubset.indicator(self.algebra, P))
        return subsets

    def check_fuzzy_cuts(self) -> Outcome:
        bridged = 0
        for name, mu in self._fuzzy_subsets().items():
            if is_fuzzy_gamma_ideal(self.algebra, mu):
                if not cut_bridge(self.algebra, mu):
                    return _flag(False, name)
                bridged += 1
        if not bridged:
            return ("skipped", "no fuzzy Γ-ideal given")
        return _flag(True, f"{bridged} fuzzy Γ-ideals")

    def check_fuzzy_stability(self) -> Outcome:
        subsets = list(self._fuzzy_subsets().values())
        if not subsets:
            return ("skipped", "no fuzzy subsets")
        for mu, nu in itertools.product(subsets, repeat=2):
            epsilon = sup_distance(mu, nu)
            for alpha in breakpoint_grid(mu, nu, epsilon):
                verify_stability(mu, nu, alpha, epsilon)
        return _flag(True)

    def run(self) -> List[CheckResult]:
        results = []
        for name, check in self.checks():
            try:
                status, detail = check()
            except ConsistencyError as error:
                status, detail = "fail", str(error)
            except CapacityError as error:
                status, detail = "skipped", str(error)
            if status == "fail":
                logger.warning("Check '%s' failed: %s", name, detail)
            results.append(CheckResult(name, status, detail))
        return results


def run_verification(
    T: Algebra,
    fuzzy: Optional[Dict[str, FuzzySubset]] = None,
    glue_scripts: Sequence[GlueScript] = (),
    cap: Optional[int] = None,
    seed: int = 0,
) -> List[CheckResult]:
    """Run every check and return one row per check, in a fixed order."""
    return Verifier(T, fuzzy, glue_scripts, cap, seed).run()
