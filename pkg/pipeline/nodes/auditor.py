"""Auditor Node - checks every stage output before the run moves on."""
import logging
from typing import Any

from domain.graph_models import ColoredGraph
from engine.atoms import clique_separator_index
from engine.nested import is_p_bounded, nested_violations, pbound_polynomial
from engine.treedec import validate
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class AuditorNode:
    """
    The Auditor - validation gate between stages.

    Responsibilities:
    1. Atom stage: valid decomposition, clique adhesions, clique-separator-free bags
    2. Bounded stage: every anchored decomposition is valid for its atom
    3. Nested stage: nested invariants hold; p-bound failures are reported as warnings
    4. Canon stage: the labeling reproduces the canon

    Issues marked CRITICAL stop the run.
    """

    def __call__(self, state: CanonState) -> dict[str, Any]:
        stage = state.get("last_stage")
        check = getattr(self, f"_check_{stage}", None)
        issues = check(state) if check else []
        logger.debug("audit after %s: %d issue(s)", stage, len(issues))

        if not issues:
            return {"audit_feedback": [f"Auditor: {stage} checks passed"]}
        updates: dict[str, Any] = {"audit_feedback": issues}
        critical = [i for i in issues if i.startswith("CRITICAL")]
        if critical:
            updates["error"] = "; ".join(critical)
        return updates

    def _check_atoms(self, state: CanonState) -> list[str]:
        issues = []
        k = state["k"]
        for i, (graph, base) in enumerate(zip(state["improved"], state["clique_free"])):
            report = validate(graph, base)
            if not report:
                issues.append(f"CRITICAL: component {i}: {report.message}")
                continue
            for parent, child in base.tree_edges():
                if not graph.is_clique(base.adhesion(child, parent)):
                    issues.append(f"CRITICAL: component {i}: adhesion at {child!r} is not a clique")
            for node in base.nodes:
                if clique_separator_index(graph.induced_subgraph(base.bags[node]), k + 1).has_separator:
                    issues.append(f"CRITICAL: component {i}: bag {node!r} has a clique separator")
        return issues

    def _check_bounded(self, state: CanonState) -> list[str]:
        issues = []
        for i, (graph, decompositions) in enumerate(zip(state["improved"], state["bounded"])):
            for d in decompositions:
                report = validate(graph.induced_subgraph(d.vertices()), d)
                if not report:
                    issues.append(f"CRITICAL: component {i}, anchor {d.anchor}: {report.message}")
        return issues

    def _check_nested(self, state: CanonState) -> list[str]:
        issues = []
        polynomial = pbound_polynomial(state["k"])
        for i, nested in enumerate(state["nested"]):
            issues.extend(f"CRITICAL: component {i}: {p}" for p in nested_violations(nested))
            if not is_p_bounded(nested, polynomial):
                issues.append(f"WARNING: component {i}: nested decomposition is not p-bounded")
        return issues

    def _check_canon(self, state: CanonState) -> list[str]:
        graph: ColoredGraph = state["graph"]
        result = state["canon"]
        for u in graph.vertices:
            for v in graph.vertices:
                if result.matrix[result.labeling[u]][result.labeling[v]] != graph.color(u, v):
                    return [f"CRITICAL: labeling breaks the pair {(u, v)}"]
        return []
