"""Incremental composition sessions.

A session caches, next to an open-correct module M, the pair of normal
forms that make re-checking cheap: ``nf`` is the big-step normal form of M
(border kept) and ``graph`` the weak-contraction normal form of its blob
embedding.  To test a proposed cell E the session reduces ``nf . E`` and
``graph . E`` instead of M . E:

* a notcc witness in the contracted result rejects as disconnectable;
* otherwise a failed acyclicity decision on the stripped big-step result
  rejects as cyclic;
* otherwise the proposal is acceptable and the reduced pair is exactly the
  cache for the extended session.

Verdicts agree with the brute-force oracle on the direct composition (the
test suite holds this over randomized sessions).  Sessions are immutable;
commits are serialized through a generation counter, so a candidate computed
against an older generation is refused instead of silently misapplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import bigstep, contraction
from .contraction import WC, ContractedGraph
from .errors import LabelClash, NotAccepted, NotOCorrect, StaleCandidate
from .model import Ebm, Module, border, compose, module_labels

ACCEPT = "accept"
REJECT_CYCLIC = "reject-cyclic"
REJECT_DISCONNECTABLE = "reject-disconnectable"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witnesses: tuple[int, ...] = ()
    trace: Optional[bigstep.ReductionTrace] = None

    @property
    def accepted(self) -> bool:
        return self.kind == ACCEPT


@dataclass(frozen=True)
class Candidate:
    generation: int
    ebm: Ebm
    verdict: Verdict
    nf: Optional[Module] = None
    graph: Optional[ContractedGraph] = None


@dataclass(frozen=True)
class Session:
    module: Module
    nf: Module
    graph: ContractedGraph
    generation: int = 0


def session_new(m: Module) -> Session:
    """Open a session; the module must be open-correct."""
    if not bigstep.acyclic_decide(m) or not contraction.connectable_decide(m, WC):
        raise NotOCorrect("module is not o-correct")
    return Session(
        module=m,
        nf=bigstep.bigstep_nf(m),
        graph=contraction.contract_nf(contraction.embed(m), WC),
        generation=0,
    )


def propose(s: Session, e: Ebm) -> Candidate:
    """Evaluate plugging ``e`` onto the session module.

    Label discipline is checked against the full module, not just the cached
    normal forms: reduction erases consumed interface labels, so the caches
    alone would under-detect clashes.
    """
    _check_labels(s.module, e)
    nf2 = bigstep.bigstep_nf(compose(s.nf, e))
    graph2 = contraction.contract_nf(contraction.compose_cg(s.graph, e), WC)

    witnesses = contraction.witness_blobs(graph2)
    if witnesses:
        verdict = Verdict(REJECT_DISCONNECTABLE, witnesses=witnesses)
        return Candidate(s.generation, e, verdict)
    acyclic = bigstep.decide_acyclic(nf2)
    if not acyclic.verdict:
        verdict = Verdict(REJECT_CYCLIC, trace=acyclic.trace)
        return Candidate(s.generation, e, verdict)
    return Candidate(s.generation, e, Verdict(ACCEPT), nf=nf2, graph=graph2)


def commit(s: Session, e: Ebm, candidate: Candidate) -> Session:
    if candidate.generation != s.generation or candidate.ebm != e:
        raise StaleCandidate("candidate was computed against another session state")
    if not candidate.verdict.accepted:
        raise NotAccepted(f"cannot commit a {candidate.verdict.kind} candidate")
    return Session(
        module=compose(s.module, e),
        nf=candidate.nf,
        graph=candidate.graph,
        generation=s.generation + 1,
    )


def footprint(s: Session, e: Ebm) -> frozenset[str]:
    """Conservative lock set for a proposal: the interface labels plus every
    label of a cached cell, pole or blob reachable from them through shared
    labels.  Proposals with disjoint footprints commute."""
    interface = e.labels() & border(s.module).labels
    groups: list[frozenset[str]] = []
    for c in s.nf.cells:
        groups.append(c.labels())
    for p in s.graph.poles:
        groups.append(frozenset(label for label, _ in p.ports))
    for b in s.graph.blobs:
        groups.append(frozenset(b.pending))
    reach = set(interface)
    changed = True
    while changed:
        changed = False
        for g in groups:
            if g & reach and not g <= reach:
                reach |= g
                changed = True
    return frozenset(reach)


def _check_labels(m: Module, e: Ebm) -> None:
    b = border(m)
    interface = (b.conclusions & frozenset(e.hyps)) | (
        b.hypotheses & frozenset(e.conclusions)
    )
    shared = module_labels(m) & e.labels()
    if shared != interface:
        raise LabelClash(sorted(shared - interface))
