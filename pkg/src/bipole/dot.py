"""Deterministic DOT rendering.

Positive poles are triangles, negative poles thin bars, contracted blobs
filled circles; pending ports dangle as half-edges into point nodes.  Blobs
that no switching can keep attached (no pending port, no anchored pole, in a
multi-blob graph) are drawn red.  Output is byte-stable for a given value:
everything is emitted in sorted order.
"""

from __future__ import annotations

from typing import Union

from .contraction import ContractedGraph, witness_blobs
from .model import Ebm, Module, as_module, hyp_labels


def to_dot(x: Union[Module, Ebm, ContractedGraph]) -> str:
    if isinstance(x, Ebm):
        x = as_module(x)
    if isinstance(x, Module):
        return _module_dot(x)
    return _cg_dot(x)


def _module_dot(m: Module) -> str:
    lines = ["digraph module {", "  rankdir=BT;"]
    hyp_owner = {h: c.id for c in m.cells for h in c.hyps}
    pend = []
    edges = []
    for c in sorted(m.cells, key=lambda c: c.id):
        lines.append(f'  c{c.id} [shape=triangle label="{c.id}"];')
        for k, pole in enumerate(c.poles):
            lines.append(
                f'  c{c.id}_p{k} [shape=box width=0.35 height=0.06 '
                f'style=filled fillcolor=black label=""];'
            )
            edges.append(f"  c{c.id} -> c{c.id}_p{k} [arrowhead=none];")
            for label in pole:
                target = hyp_owner.get(label)
                if target is None:
                    pend.append(label)
                    edges.append(f'  c{c.id}_p{k} -> pend_{label} [label="{label}"];')
                else:
                    edges.append(f'  c{c.id}_p{k} -> c{target} [label="{label}"];')
    concl = {x for c in m.cells for x in c.conclusions}
    for h in sorted(hyp_labels(m) - concl):
        pend.append(h)
        edges.append(f'  pend_{h} -> c{hyp_owner[h]} [label="{h}"];')
    for label in sorted(set(pend)):
        lines.append(f'  pend_{label} [shape=point label=""];')
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cg_dot(g: ContractedGraph) -> str:
    lines = ["digraph contracted {", "  rankdir=BT;"]
    red = set(witness_blobs(g))
    pend = []
    edges = []
    for b in sorted(g.blobs, key=lambda b: b.id):
        color = "red" if b.id in red else "black"
        lines.append(
            f'  b{b.id} [shape=circle style=filled fillcolor={color} label="{b.id}"];'
        )
        for h in b.hyp_pending:
            pend.append(h)
            edges.append(f'  pend_{h} -> b{b.id} [label="{h}"];')
        for x in b.concl_pending:
            pend.append(x)
            edges.append(f'  b{b.id} -> pend_{x} [label="{x}"];')
    for p in sorted(g.poles, key=lambda p: p.id):
        lines.append(
            f'  p{p.id} [shape=box width=0.35 height=0.06 '
            f'style=filled fillcolor=black label=""];'
        )
        edges.append(f"  b{p.anchor} -> p{p.id} [arrowhead=none];")
        for label, target in p.ports:
            if target is None:
                pend.append(label)
                edges.append(f'  p{p.id} -> pend_{label} [label="{label}"];')
            else:
                edges.append(f'  p{p.id} -> b{target} [label="{label}"];')
    for u, v in sorted(g.bridges):
        edges.append(f"  b{u} -> b{v} [arrowhead=none style=bold];")
    for label in sorted(set(pend)):
        lines.append(f'  pend_{label} [shape=point label=""];')
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
