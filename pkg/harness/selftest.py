"""Seeded property suites run by `twcanon selftest`."""
import logging
import random
from collections.abc import Callable
from itertools import combinations

from pydantic import BaseModel, Field

from config.settings import Settings
from domain.exceptions import TwCanonError
from domain.graph_models import ColoredGraph
from domain.results import CmpResult
from engine.atoms import chordal_completion_c, clique_free_decomposition, maximal_c_atoms
from engine.canonizer import canon
from engine.graph_core import components, leftmost_separation
from engine.nested import invariant_nested_decomposition, is_p_bounded, nested_violations, pbound_polynomial, refine
from engine.ordering import cmp_dec, cmp_seq, cmp_sets
from engine.treedec import validate
from harness.gadgets import edge_star_gadget
from harness.generators import random_partial_ktree, random_permutation
from harness.oracles import (
    brute_force_atoms,
    brute_force_clique_separators,
    brute_force_isomorphic,
    brute_force_min_separators,
)

logger = logging.getLogger(__name__)

MAX_ORDER = 10
# literal cmp_dec and subset enumeration stay on the smaller draws
SMALL_ORDER = 8


class SuiteResult(BaseModel):
    checked: int = 0
    failures: list[str] = Field(default_factory=list)


class SelfTestReport(BaseModel):
    """Per-suite counts and failure descriptions."""

    size: int
    seed: int
    suites: dict[str, SuiteResult] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(not suite.failures for suite in self.suites.values())

    def summary(self) -> str:
        lines = [f"selftest size={self.size} seed={self.seed}"]
        for name, suite in self.suites.items():
            status = "ok" if not suite.failures else f"{len(suite.failures)} FAILED"
            lines.append(f"  {name}: {suite.checked} checked, {status}")
            lines.extend(f"    - {failure}" for failure in suite.failures[:5])
        return "\n".join(lines)


def _case(rng: random.Random, max_order: int = MAX_ORDER) -> tuple[ColoredGraph, int]:
    k = rng.choice((1, 2, 3))
    n = rng.randint(k + 1, max_order)
    keep = rng.choice((0.6, 0.8, 1.0))
    return random_partial_ktree(n, k, keep, rng.randrange(2**31)), k


def _largest_component(graph: ColoredGraph) -> ColoredGraph:
    return graph.induced_subgraph(max(components(graph), key=len))


def _run(report: SelfTestReport, suite: str, label: str, check: Callable[[], str | None]) -> None:
    result = report.suites.setdefault(suite, SuiteResult())
    result.checked += 1
    try:
        problem = check()
    except TwCanonError as e:
        problem = e.message
    if problem:
        logger.warning("%s failed on %s: %s", suite, label, problem)
        result.failures.append(f"{label}: {problem}")


def _canon_vs_oracle(graph: ColoredGraph, other: ColoredGraph, k: int, settings: Settings) -> str | None:
    same = canon(graph, k, settings).same_canon(canon(other, k, settings))
    oracle = brute_force_isomorphic(graph, other, settings) is not None
    if same != oracle:
        return f"canon equality {same} but oracle says {oracle}"
    return None


def _labeling(graph: ColoredGraph, k: int, settings: Settings) -> str | None:
    result = canon(graph, k, settings)
    for u in graph.vertices:
        for v in graph.vertices:
            if result.matrix[result.labeling[u]][result.labeling[v]] != graph.color(u, v):
                return f"labeling breaks the pair {(u, v)}"
    return None


def _invariance(
    graph: ColoredGraph, shuffled: ColoredGraph, mapping: dict[int, int], k: int, settings: Settings
) -> str | None:
    if not canon(graph, k, settings).same_canon(canon(shuffled, k, settings)):
        return "canon differs on a permuted copy"
    for part in components(graph):
        local = {v: mapping[v] for v in part}
        sub = graph.induced_subgraph(part)
        image = shuffled.induced_subgraph(local.values())
        moved = clique_free_decomposition(sub, k).relabel(local)
        if clique_free_decomposition(image, k).signature() != moved.signature():
            return "clique-separator-free decomposition does not follow the permutation"
        nested = invariant_nested_decomposition(sub, k, settings).relabel(local)
        if invariant_nested_decomposition(image, k, settings).signature() != nested.signature():
            return "nested decomposition does not follow the permutation"
    return None


def _decompositions(graph: ColoredGraph, k: int, settings: Settings) -> str | None:
    for part in components(graph):
        sub = graph.induced_subgraph(part)
        base = clique_free_decomposition(sub, k)
        report = validate(sub, base)
        if not report:
            return report.message
        for parent, child in base.tree_edges():
            if not sub.is_clique(base.adhesion(child, parent)):
                return f"adhesion of {child!r} is not a clique"
        problems = nested_violations(invariant_nested_decomposition(sub, k, settings))
        if problems:
            return problems[0]
    return None


def _p_bound(graph: ColoredGraph, k: int, settings: Settings) -> str | None:
    for part in components(graph):
        nested = invariant_nested_decomposition(graph.induced_subgraph(part), k, settings)
        if not is_p_bounded(nested, pbound_polynomial(k)):
            return "nested decomposition is not p-bounded"
    return None


def _refinement_size(graph: ColoredGraph, k: int, settings: Settings) -> str | None:
    for part in components(graph):
        nested = invariant_nested_decomposition(graph.induced_subgraph(part), k, settings)
        for node in nested.base.nodes:
            sub = nested.subdecomposition(node)
            for member in sub.family(node):
                refined = refine(sub, member, ())
                if refined.size >= sub.size:
                    return f"refinement at {node!r} does not shrink ({refined.size} ≥ {sub.size})"
    return None


def _ordering_laws(graph: ColoredGraph, k: int, rng: random.Random, settings: Settings) -> str | None:
    first = _largest_component(graph)
    second, mapping = random_permutation(first, rng.randrange(2**31))
    third = _largest_component(random_partial_ktree(graph.order, k, 0.8, rng.randrange(2**31)))
    nested = [invariant_nested_decomposition(g, k, settings) for g in (first, second, third)]

    def compare(a: int, b: int) -> CmpResult:
        return cmp_dec(nested[a].graph, nested[a], (), nested[b].graph, nested[b], (), settings)

    for a, b in combinations(range(3), 2):
        if compare(a, b) is not compare(b, a).flip():
            return f"cmp_dec is not antisymmetric on {(a, b)}"
    try:
        cmp_sets([0, 1, 2], [], compare)
    except TwCanonError:
        return "cmp_dec is not transitive on the triple"
    if compare(0, 1) is not CmpResult.INCOMPARABLE:
        return "a nested decomposition and its permuted copy compare as different"
    if compare(0, 2) is CmpResult.INCOMPARABLE and brute_force_isomorphic(nested[0].graph, nested[2].graph, settings) is None:
        return "incomparable nested decompositions of non-isomorphic graphs"

    sigma = tuple(first.vertices[:3])
    if cmp_seq(first, sigma, second, tuple(mapping[v] for v in sigma)) is not CmpResult.INCOMPARABLE:
        return "sequence comparison does not follow the permutation"
    return None


def _separators(graph: ColoredGraph, k: int) -> str | None:
    atoms = maximal_c_atoms(graph, k).atoms
    if list(atoms) != brute_force_atoms(graph, k):
        return "maximal atoms differ from subset enumeration"
    for first, second in combinations(atoms, 2):
        shared = first & second
        if len(shared) > k or not graph.is_clique(shared):
            return f"atoms {sorted(first)} and {sorted(second)} meet outside a small clique"

    completed = chordal_completion_c(graph, k)
    if maximal_c_atoms(completed, k).atoms != atoms:
        return "completion changes the maximal atoms"
    if not set(brute_force_clique_separators(graph, k)) <= set(brute_force_clique_separators(completed, k)):
        return "completion loses a clique separator"

    for u, v in graph.non_edges():
        separation = leftmost_separation(graph, {u}, {v})
        if not separation.is_valid_for(graph) or u not in separation.a_side or v in separation.a_side:
            return f"leftmost separation of {(u, v)} is not a separation between them"
        minimum = brute_force_min_separators(graph, u, v)
        if len(separation.separator) != len(minimum[0]):
            return f"leftmost separator of {(u, v)} is not minimum"
        for cut in minimum:
            side = next(set(p) for p in components(graph, cut) if u in p) | cut
            if not separation.a_side <= side:
                return f"leftmost separation of {(u, v)} is not inclusion-minimal"
    return None


def _gadget(graph: ColoredGraph, other: ColoredGraph, settings: Settings) -> str | None:
    first_graph, first = edge_star_gadget(graph)
    second_graph, second = edge_star_gadget(other)
    verdict = cmp_dec(first_graph, first, (), second_graph, second, (), settings)
    expected = graph.order == other.order and len(graph.edges) == len(other.edges)
    if (verdict is CmpResult.INCOMPARABLE) != expected:
        return f"gadgets compare as {verdict.value} with edge counts {len(graph.edges)} and {len(other.edges)}"
    if verdict is CmpResult.INCOMPARABLE and brute_force_isomorphic(first_graph, second_graph, settings) is None:
        return "incomparable gadgets on non-isomorphic graphs"
    return None


def run_selftest(size: int = 20, seed: int = 0, settings: Settings | None = None) -> SelfTestReport:
    """
    Run every property suite on `size` seeded random partial k-trees.

    canon_vs_oracle checks two pairs per case (a permuted copy and an
    independent draw) against VF2. The ordering_laws, separators and gadget
    suites draw their own graphs of at most SMALL_ORDER vertices.
    """
    settings = settings or Settings()
    rng = random.Random(seed)
    report = SelfTestReport(size=size, seed=seed)

    for i in range(size):
        graph, k = _case(rng)
        label = f"case {i} (n={graph.order}, k={k})"
        shuffled, mapping = random_permutation(graph, rng.randrange(2**31))
        independent = random_partial_ktree(graph.order, k, 0.8, rng.randrange(2**31))

        _run(report, "canon_vs_oracle", label, lambda: _canon_vs_oracle(graph, shuffled, k, settings))
        _run(report, "canon_vs_oracle", label + " vs independent", lambda: _canon_vs_oracle(graph, independent, k, settings))
        _run(report, "labeling", label, lambda: _labeling(graph, k, settings))
        _run(report, "invariance", label, lambda: _invariance(graph, shuffled, mapping, k, settings))
        _run(report, "decompositions", label, lambda: _decompositions(graph, k, settings))
        _run(report, "p_bound", label, lambda: _p_bound(graph, k, settings))
        _run(report, "refinement_size", label, lambda: _refinement_size(graph, k, settings))

        small, small_k = _case(rng, SMALL_ORDER)
        small_label = f"case {i} (n={small.order}, k={small_k})"
        small_rng = random.Random(rng.randrange(2**31))
        other = random_partial_ktree(small.order, small_k, rng.choice((0.6, 0.8, 1.0)), rng.randrange(2**31))
        _run(report, "ordering_laws", small_label, lambda: _ordering_laws(small, small_k, small_rng, settings))
        _run(report, "separators", small_label, lambda: _separators(small, small_k))
        _run(report, "gadget", small_label, lambda: _gadget(small, other, settings))

    logger.info("selftest finished: %s", "ok" if report.ok else "failures")
    return report
