"""Contraction of modules into blob graphs, deciding connectability.

A module embeds into a :class:`ContractedGraph`: one *blob* per cell (a
contracted node standing for an already-connected region) and one
:class:`CPole` per negative pole, anchored on its blob.  Pending hypothesis
ports sit on blobs, conclusion ports sit on poles (pending or linked to the
consuming blob).  Composition may also create transient blob-blob *bridges*.

Two rewriting systems shrink such a graph, differing in one rule:

* ``(2)``      two blobs joined by a bridge merge;
* ``(3)``      a pole whose conclusion ports are all linked and all reach
  one single blob merges, together with its anchor, into that blob -- the
  pole connects the two nodes under every switching, so nothing is lost;
* ``(4-deg)``  a pole with no conclusion ports at all folds into its anchor;
* ``(4-full)`` *completion*, only in system ``C``: a pole may merge with its
  anchor and every linked blob provided each linked blob still carries a
  pending port (a closing context can wire the pending side, so the blob
  can always be reached); the pole's own pending ports survive on the
  merged blob.

System ``WC`` uses (2), (3), (4-deg); system ``C`` additionally uses
(4-full).  Both terminate and are strongly confluent; both preserve the
border exactly.

Normal forms are classified by :func:`classify`: ``cc`` when only blobs
remain and every blob keeps a border port (a single blob is allowed to be
portless); a *witness* blob -- no pending ports, no anchored poles, in a
graph with at least two blobs -- can be cut off by a switching and makes the
graph, and every closure of it, disconnectable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterator, Optional

from .errors import LabelClash, NotNormalForm
from .model import Border, Ebm, Module, border as module_border

WC = "wc"
C = "c"


@dataclass(frozen=True)
class Blob:
    id: int
    hyp_pending: tuple[str, ...]
    concl_pending: tuple[str, ...]

    @property
    def pending(self) -> tuple[str, ...]:
        return self.hyp_pending + self.concl_pending


@dataclass(frozen=True)
class CPole:
    """A surviving negative pole: anchored on one blob, each conclusion
    port either pending (target ``None``) or linked to a blob."""

    id: int
    anchor: int
    ports: tuple[tuple[str, Optional[int]], ...]

    @property
    def pending_ports(self) -> tuple[str, ...]:
        return tuple(label for label, tgt in self.ports if tgt is None)

    @property
    def targets(self) -> tuple[int, ...]:
        """Distinct linked blobs, in port order."""
        seen: list[int] = []
        for _, tgt in self.ports:
            if tgt is not None and tgt not in seen:
                seen.append(tgt)
        return tuple(seen)


@dataclass(frozen=True)
class ContractedGraph:
    blobs: tuple[Blob, ...]
    poles: tuple[CPole, ...]
    bridges: tuple[tuple[int, int], ...] = ()

    def blob(self, blob_id: int) -> Blob:
        for b in self.blobs:
            if b.id == blob_id:
                return b
        raise KeyError(blob_id)

    def anchored(self, blob_id: int) -> tuple[CPole, ...]:
        return tuple(p for p in self.poles if p.anchor == blob_id)

    def feeders(self, blob_id: int) -> tuple[CPole, ...]:
        return tuple(p for p in self.poles if blob_id in p.targets)


@dataclass(frozen=True)
class Classification:
    kind: str  # "cc" | "notcc" | "incomplete"
    witnesses: tuple[int, ...] = ()


def embed(m: Module) -> ContractedGraph:
    """Mark every cell as a blob; poles keep their ports."""
    b = module_border(m)
    hyp_owner = {h: c.id for c in m.cells for h in c.hyps}
    blobs = tuple(
        Blob(
            c.id,
            tuple(sorted(h for h in c.hyps if h in b.hypotheses)),
            (),
        )
        for c in m.cells
    )
    poles = []
    pole_id = itertools.count()
    for c in sorted(m.cells, key=lambda c: c.id):
        for pole in c.poles:
            ports = tuple((x, hyp_owner.get(x)) for x in pole)
            poles.append(CPole(next(pole_id), c.id, ports))
    return ContractedGraph(blobs, tuple(poles))


def border_cg(g: ContractedGraph) -> Border:
    hyp = frozenset(h for b in g.blobs for h in b.hyp_pending)
    concl = frozenset(x for b in g.blobs for x in b.concl_pending)
    concl |= frozenset(x for p in g.poles for x in p.pending_ports)
    return Border(hypotheses=hyp, conclusions=concl)


def _merge(
    g: ContractedGraph,
    blob_ids: frozenset[int],
    absorbed: Optional[CPole] = None,
) -> ContractedGraph:
    """Collapse ``blob_ids`` into one blob (keeping the smallest id), absorb
    ``absorbed`` if given: the pole disappears and its pending ports become
    conclusion-side pendings of the merged blob."""
    new_id = min(blob_ids)

    def target(i: Optional[int]) -> Optional[int]:
        if i is None:
            return None
        return new_id if i in blob_ids else i

    hyp_pending: list[str] = []
    concl_pending: list[str] = []
    blobs: list[Blob] = []
    for b in g.blobs:
        if b.id in blob_ids:
            hyp_pending.extend(b.hyp_pending)
            concl_pending.extend(b.concl_pending)
        else:
            blobs.append(b)
    if absorbed is not None:
        concl_pending.extend(absorbed.pending_ports)
    merged = Blob(new_id, tuple(sorted(hyp_pending)), tuple(sorted(concl_pending)))
    blobs.append(merged)
    blobs.sort(key=lambda b: b.id)

    poles = tuple(
        CPole(
            p.id,
            target(p.anchor),
            tuple((label, target(tgt)) for label, tgt in p.ports),
        )
        for p in g.poles
        if absorbed is None or p.id != absorbed.id
    )
    bridges = tuple(
        (u2, v2)
        for u, v in g.bridges
        for u2, v2 in [(target(u), target(v))]
        if u2 != v2
    )
    return ContractedGraph(tuple(blobs), poles, bridges)


def _rule2_steps(g: ContractedGraph) -> Iterator[tuple[str, ContractedGraph]]:
    seen = set()
    for u, v in g.bridges:
        pair = frozenset((u, v))
        if len(pair) == 2 and pair not in seen:
            seen.add(pair)
            yield "2", _merge(g, pair)


def _rule3_steps(g: ContractedGraph) -> Iterator[tuple[str, ContractedGraph]]:
    for p in g.poles:
        if p.ports and not p.pending_ports and len(p.targets) == 1:
            yield "3", _merge(g, frozenset((p.anchor, p.targets[0])), absorbed=p)


def _rule4deg_steps(g: ContractedGraph) -> Iterator[tuple[str, ContractedGraph]]:
    for p in g.poles:
        if not p.ports:
            yield "4deg", _merge(g, frozenset((p.anchor,)), absorbed=p)


def _rule4full_steps(g: ContractedGraph) -> Iterator[tuple[str, ContractedGraph]]:
    for p in g.poles:
        if not p.ports:
            continue  # covered by 4deg
        if all(g.blob(t).pending for t in p.targets):
            yield "4full", _merge(g, frozenset((p.anchor,) + p.targets), absorbed=p)


def steps(g: ContractedGraph, system: str) -> list[tuple[str, ContractedGraph]]:
    """Every applicable one-step contraction, in deterministic rule order."""
    out = list(_rule2_steps(g))
    out.extend(_rule3_steps(g))
    out.extend(_rule4deg_steps(g))
    if system == C:
        out.extend(_rule4full_steps(g))
    return out


def contract_step(g: ContractedGraph, system: str) -> Optional[tuple[str, ContractedGraph]]:
    for step in steps(g, system):
        return step
    return None


def contract_trace(g: ContractedGraph, system: str) -> tuple[ContractedGraph, tuple[str, ...]]:
    applied: list[str] = []
    while True:
        step = contract_step(g, system)
        if step is None:
            return g, tuple(applied)
        rule, g = step
        applied.append(rule)


def contract_nf(g: ContractedGraph, system: str) -> ContractedGraph:
    return contract_trace(g, system)[0]


def witness_blobs(g: ContractedGraph) -> tuple[int, ...]:
    """Blobs that some switching strands away from the rest and from every
    closure, making the graph disconnectable.

    A blob set S strands exactly when: no S-blob carries a pending port (a
    blob pending is an unswitchable tie to any closure); every pole anchored
    in S owns a port back into S to hide in; every pole anchored outside S
    can choose a port avoiding S; and something exists outside S to be cut
    off (another blob, or a border the closure hooks).  The classic case --
    a fed blob with no pendings and no anchored poles -- is the singleton
    instance with no poles to hide.

    Returns every blob that strands on its own, or else the first smallest
    set that strands jointly (mutual hiding, which needs a feedback cycle).
    """
    pendingless = [b.id for b in g.blobs if not b.pending]
    if not pendingless:
        return ()
    anchored: dict[int, list[CPole]] = {b.id: [] for b in g.blobs}
    for p in g.poles:
        anchored[p.anchor].append(p)

    # greatest set satisfying "anchored poles can hide": every stranding set
    # is contained in it (the property is closed under union)
    candidates = set(pendingless)
    changed = True
    while changed:
        changed = False
        for b in list(candidates):
            if any(
                not any(t in candidates for t in p.targets) for p in anchored[b]
            ):
                candidates.discard(b)
                changed = True
    if not candidates:
        return ()

    border_nonempty = bool(border_cg(g).labels)

    def valid(s: set[int]) -> bool:
        if any(
            not any(t in s for t in p.targets) for b in s for p in anchored[b]
        ):
            return False
        if any(
            p.ports
            and not p.pending_ports
            and all(t in s for t in p.targets)
            for p in g.poles
            if p.anchor not in s
        ):
            return False
        return len(s) < len(g.blobs) or border_nonempty

    singles = [b for b in sorted(candidates) if valid({b})]
    if singles:
        return tuple(singles)
    # mutual hiding needs several blobs; sets are tiny in practice, search
    # sizes ascending and stop at the first strand
    pool = sorted(candidates)
    for size in range(2, len(pool) + 1):
        for combo in combinations(pool, size):
            if valid(set(combo)):
                return combo
    return ()


def classify(g: ContractedGraph) -> Classification:
    """Classify a normal form as cc / notcc / incomplete."""
    if g.bridges or any(True for _ in _rule2_steps(g)) or any(
        True for _ in _rule3_steps(g)
    ) or any(True for _ in _rule4deg_steps(g)):
        raise NotNormalForm("graph still has a contraction step")
    witnesses = witness_blobs(g)
    if witnesses:
        return Classification("notcc", witnesses)
    if not g.poles:
        return Classification("cc")
    return Classification("incomplete")


def connectable_decide(m: Module, system: str = WC) -> bool:
    """Connectability by contraction: system ``C`` must reach a cc form,
    system ``WC`` must merely avoid a notcc witness."""
    cls = classify(contract_nf(embed(m), system))
    if system == C:
        return cls.kind == "cc"
    return cls.kind != "notcc"


def compose_cg(g: ContractedGraph, e: Ebm) -> ContractedGraph:
    """Glue a fresh cell onto a contracted graph.

    The cell's hypotheses consume matching conclusion-side pendings (a pole
    port becomes a link; a blob pending becomes a bridge), its conclusion
    ports consume matching hypothesis-side blob pendings.  Any other shared
    label raises :class:`LabelClash`.
    """
    b = border_cg(g)
    e_hyps = frozenset(e.hyps)
    e_concl = frozenset(e.conclusions)
    interface = (b.conclusions & e_hyps) | (b.hypotheses & e_concl)
    g_labels = b.labels | frozenset(
        label for p in g.poles for label, tgt in p.ports if tgt is not None
    )
    shared = g_labels & e.labels()
    if shared != interface:
        raise LabelClash(sorted(shared - interface))

    new_blob_id = max(b.id for b in g.blobs) + 1 if g.blobs else 0
    hyp_owner = {h: b.id for b in g.blobs for h in b.hyp_pending}
    concl_on_blob = {x: b.id for b in g.blobs for x in b.concl_pending}

    bridges = list(g.bridges)
    blobs = {b.id: b for b in g.blobs}
    poles = list(g.poles)

    new_hyp_pending = []
    for h in e.hyps:
        if h in concl_on_blob:
            owner = blobs[concl_on_blob[h]]
            blobs[owner.id] = replace(
                owner, concl_pending=tuple(x for x in owner.concl_pending if x != h)
            )
            bridges.append((owner.id, new_blob_id))
        elif h in b.conclusions:
            poles = [
                CPole(
                    p.id,
                    p.anchor,
                    tuple(
                        (label, new_blob_id if label == h and tgt is None else tgt)
                        for label, tgt in p.ports
                    ),
                )
                for p in poles
            ]
        else:
            new_hyp_pending.append(h)

    next_pole_id = max((p.id for p in g.poles), default=-1) + 1
    for pole in e.poles:
        ports = []
        for x in pole:
            if x in hyp_owner:
                owner = blobs[hyp_owner[x]]
                blobs[owner.id] = replace(
                    owner, hyp_pending=tuple(h for h in owner.hyp_pending if h != x)
                )
                ports.append((x, hyp_owner[x]))
            else:
                ports.append((x, None))
        poles.append(CPole(next_pole_id, new_blob_id, tuple(ports)))
        next_pole_id += 1

    blobs[new_blob_id] = Blob(new_blob_id, tuple(sorted(new_hyp_pending)), ())
    return ContractedGraph(
        tuple(sorted(blobs.values(), key=lambda b: b.id)),
        tuple(poles),
        tuple(bridges),
    )
