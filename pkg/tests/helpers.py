"""Shared test utilities: canonical equality up to internal relabeling.

Reductions erase consumed interface labels, and different reduction orders
erase different ones, so normal forms are compared as labeled graphs: border
labels are identity-relevant node attributes, internal links are anonymous
edges.  Isomorphism of these graphs is the "canonically equal" used by the
confluence and session-soundness tests.
"""

from __future__ import annotations

import networkx as nx

from bipole import Module, border
from bipole.contraction import ContractedGraph
from bipole.generate import GenParams, gen_random

_NODE_MATCH = nx.algorithms.isomorphism.categorical_node_match(
    ["kind", "hp", "cp"], [None, None, None]
)
_EDGE_MATCH = nx.algorithms.isomorphism.categorical_multiedge_match("kind", None)


def module_graph(m: Module) -> nx.MultiGraph:
    g = nx.MultiGraph()
    bd = border(m)
    hyp_owner = {h: c.id for c in m.cells for h in c.hyps}
    for c in m.cells:
        g.add_node(
            ("c", c.id),
            kind="cell",
            hp=tuple(sorted(h for h in c.hyps if h in bd.hypotheses)),
            cp=(),
        )
        for k, pole in enumerate(c.poles):
            g.add_node(
                ("p", c.id, k),
                kind="pole",
                hp=(),
                cp=tuple(sorted(x for x in pole if x in bd.conclusions)),
            )
            g.add_edge(("c", c.id), ("p", c.id, k), kind="anchor")
            for x in pole:
                t = hyp_owner.get(x)
                if t is not None:
                    g.add_edge(("p", c.id, k), ("c", t), kind="link")
    return g


def cg_graph(g: ContractedGraph) -> nx.MultiGraph:
    gx = nx.MultiGraph()
    for b in g.blobs:
        gx.add_node(
            ("b", b.id), kind="blob", hp=tuple(b.hyp_pending), cp=tuple(b.concl_pending)
        )
    for p in g.poles:
        gx.add_node(("p", p.id), kind="pole", hp=(), cp=tuple(sorted(p.pending_ports)))
        gx.add_edge(("p", p.id), ("b", p.anchor), kind="anchor")
        for _label, t in p.ports:
            if t is not None:
                gx.add_edge(("p", p.id), ("b", t), kind="link")
    for u, v in g.bridges:
        gx.add_edge(("b", u), ("b", v), kind="bridge")
    return gx


def modules_iso(a: Module, b: Module) -> bool:
    return nx.is_isomorphic(
        module_graph(a), module_graph(b), node_match=_NODE_MATCH, edge_match=_EDGE_MATCH
    )


def cg_iso(a: ContractedGraph, b: ContractedGraph) -> bool:
    return nx.is_isomorphic(
        cg_graph(a), cg_graph(b), node_match=_NODE_MATCH, edge_match=_EDGE_MATCH
    )


def random_module(seed: int, max_cells: int = 6) -> Module:
    """The standard randomized corpus: mixed open/part-closed/closed."""
    return gen_random(
        GenParams(
            seed=seed,
            cells=1 + seed % max_cells,
            max_poles=3,
            max_concl=3,
            closure_prob=[0.0, 0.35, 0.7, 1.0][seed % 4],
        )
    )
