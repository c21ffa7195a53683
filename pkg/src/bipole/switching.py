"""Brute-force switching oracle.

A *switching* keeps, for every negative pole with at least one conclusion
port, exactly one of its ports; poles without conclusion ports have the one
trivial choice.  The switched graph has one vertex per positive pole (or
blob) and one per negative pole; it keeps every pole's anchor edge to its
own cell, every blob-blob bridge, and the chosen conclusion edge of each
pole -- provided the chosen port is linked (choosing a pending port simply
drops the edge, which can never create a cycle).

The oracle decides, by exhausting all switchings:

* acyclicity            -- no switched graph has a cycle;
* closed correctness    -- every switched graph of a closed module is a tree;
* connectability        -- every switched graph of the module extended with
  its full connector is connected (a closed module is judged on its own,
  since nothing can attach to an empty border).

Enumeration is exponential in the number of multi-port poles; this is the
ground truth the rewriting engines are measured against, not the fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Union

from .contraction import ContractedGraph, border_cg, compose_cg
from .errors import NotClosed
from .model import (
    Ebm,
    Module,
    border,
    compose,
    full_connector,
    is_closed,
)

Switchable = Union[Module, ContractedGraph]
Vertex = tuple
Switching = tuple[int, ...]


@dataclass(frozen=True)
class SwitchedGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Vertex, Vertex], ...]

    def is_acyclic(self) -> bool:
        uf = _UnionFind(self.vertices)
        for u, v in self.edges:
            if not uf.union(u, v):
                return False
        return True

    def is_connected(self) -> bool:
        uf = _UnionFind(self.vertices)
        for u, v in self.edges:
            uf.union(u, v)
        return uf.components() <= 1


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        """False when a and b were already joined (the edge closes a cycle)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def components(self) -> int:
        return sum(1 for x in self.parent if self.find(x) == x)


def switch_points(x: Switchable) -> tuple[tuple, ...]:
    """The poles that carry a real choice, in deterministic order, with
    their port counts."""
    if isinstance(x, Module):
        points = []
        for c in sorted(x.cells, key=lambda c: c.id):
            for k, pole in enumerate(c.poles):
                if pole:
                    points.append((c.id, k, len(pole)))
        return tuple(points)
    return tuple(
        (p.id, len(p.ports)) for p in sorted(x.poles, key=lambda p: p.id) if p.ports
    )


def switch_count(x: Switchable) -> int:
    return math.prod(point[-1] for point in switch_points(x))


def switchings(x: Switchable) -> Iterator[Switching]:
    """All switchings, enumerated in deterministic port order."""
    return product(*(range(point[-1]) for point in switch_points(x)))


def _module_skeleton(m: Module):
    vertices = []
    anchors = []
    hyp_owner = {h: c.id for c in m.cells for h in c.hyps}
    for c in sorted(m.cells, key=lambda c: c.id):
        vertices.append(("c", c.id))
        for k, _ in enumerate(c.poles):
            vertices.append(("p", c.id, k))
            anchors.append((("p", c.id, k), ("c", c.id)))
    return tuple(vertices), anchors, hyp_owner


def _cg_skeleton(g: ContractedGraph):
    vertices = []
    anchors = []
    hyp_owner = {}
    for b in sorted(g.blobs, key=lambda b: b.id):
        vertices.append(("b", b.id))
    for p in sorted(g.poles, key=lambda p: p.id):
        vertices.append(("p", p.id))
        anchors.append((("p", p.id), ("b", p.anchor)))
    for u, v in g.bridges:
        anchors.append((("b", u), ("b", v)))
    return tuple(vertices), anchors, hyp_owner


def switched_graph(x: Switchable, s: Switching) -> SwitchedGraph:
    points = switch_points(x)
    if len(s) != len(points):
        raise ValueError("switching does not match the graph")
    if isinstance(x, Module):
        vertices, edges, hyp_owner = _module_skeleton(x)
        edges = list(edges)
        for (cell_id, k, _n), choice in zip(points, s):
            label = x.cell(cell_id).poles[k][choice]
            target = hyp_owner.get(label)
            if target is not None:
                edges.append((("p", cell_id, k), ("c", target)))
        return SwitchedGraph(vertices, tuple(edges))
    vertices, edges, _ = _cg_skeleton(x)
    edges = list(edges)
    poles = {p.id: p for p in x.poles}
    for (pole_id, _n), choice in zip(points, s):
        _, target = poles[pole_id].ports[choice]
        if target is not None:
            edges.append((("p", pole_id), ("b", target)))
    return SwitchedGraph(vertices, tuple(edges))


def acyclic_oracle(x: Switchable) -> bool:
    """True iff every switched graph is acyclic."""
    return all(switched_graph(x, s).is_acyclic() for s in switchings(x))


def all_connected(x: Switchable) -> bool:
    """True iff every switched graph is connected (cycles ignored)."""
    return all(switched_graph(x, s).is_connected() for s in switchings(x))


def dr_correct(m: Module) -> bool:
    """Every switched graph of the closed module is a tree."""
    b = border(m)
    if b.labels:
        raise NotClosed(sorted(b.labels))
    for s in switchings(m):
        sg = switched_graph(m, s)
        if not sg.is_acyclic() or not sg.is_connected():
            return False
    return True


def connectable_oracle(x: Switchable) -> bool:
    """True iff some closure connects the structure, decided through the
    full connector; a structure with an empty border is judged as it
    stands, since no closure can attach to it."""
    if isinstance(x, Module):
        if is_closed(x):
            return all_connected(x)
        return all_connected(compose(x, full_connector(x)))
    b = border_cg(x)
    if not b.labels:
        return all_connected(x)
    hyps = tuple(sorted(b.conclusions))
    poles = tuple((h,) for h in sorted(b.hypotheses)) if b.hypotheses else ((),)
    return all_connected(compose_cg(x, Ebm(0, hyps, poles)))


def o_correct_oracle(m: Module) -> bool:
    return acyclic_oracle(m) and connectable_oracle(m)
