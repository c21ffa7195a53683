"""Big-step rewriting on modules.

The relation fuses cells along fully-determined interfaces:

* ``R1`` -- a pole whose conclusion ports are all linked and all reach the
  same other cell fuses its cell with that target: the interface vanishes,
  the target's poles move onto the fused cell.
* ``R2`` -- a cell with one non-empty pole, whose hypotheses are all fed by
  one pole of another cell, is absorbed: the feeding pole keeps its
  remaining ports plus the absorbed pole's ports.
* ``NEUT`` -- an empty pole beside at least one sibling is dropped.

Links between the two cells beyond the interface fold into *self-links* of
the fused cell (a pole port feeding the cell's own positive pole).  A
self-link closes a switched cycle no matter what else happens, so it is
never treated as a redex.  Divergent fusion orders rejoin up to renaming of
internal links once parallel links are collapsed
(:func:`collapse_parallel_links`), since all parallel ports of one pole
denote the same switched edge.

The system terminates and a closed module is correct exactly when its
normal form is the single terminal cell.

For acyclicity the relation is widened on border-stripped modules by
``SPLIT``: a stuck pole whose ports reach several cells may be cut into one
pole per target cell (ports into a common cell must stay together).  A split
can only add switched edges, so reaching an all-terminal state certifies the
original acyclic; because an unlucky split can also manufacture a cycle, the
decision backtracks over the possible splits instead of fixing one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotClosed, StaleRedex
from .model import (
    Ebm,
    Module,
    border,
    canonical_cells,
    restrict,
)

R1 = "r1"
R2 = "r2"
NEUT = "neut"
SPLIT = "split"

_RANK = {R1: 0, R2: 1, NEUT: 2, SPLIT: 3}


@dataclass(frozen=True)
class Redex:
    """One applicable rewrite, addressed by cell id and pole index.

    For ``R2`` the address is the *feeding* pole and ``target`` the absorbed
    cell; for ``SPLIT``, ``groups`` partitions the pole's port indices by
    target cell, ordered by target id.
    """

    kind: str
    cell: int
    pole: int
    target: Optional[int] = None
    groups: tuple[tuple[int, ...], ...] = ()

    def sort_key(self):
        return (self.cell, self.pole, _RANK[self.kind], self.target or -1)


@dataclass(frozen=True)
class ReductionTrace:
    source: Module
    steps: tuple[Redex, ...]
    result: Module


def _hyp_owner(m: Module) -> dict[str, int]:
    return {h: c.id for c in m.cells for h in c.hyps}


def _pole_targets(pole, hyp_owner) -> Optional[list[int]]:
    """Distinct target cells of a fully-linked pole, None when a port is
    pending."""
    targets: list[int] = []
    for label in pole:
        owner = hyp_owner.get(label)
        if owner is None:
            return None
        if owner not in targets:
            targets.append(owner)
    return targets


def has_self_link(m: Module) -> bool:
    """Some pole conclusion feeds its own cell's positive pole."""
    hyp_owner = _hyp_owner(m)
    return any(
        hyp_owner.get(label) == c.id
        for c in m.cells
        for pole in c.poles
        for label in pole
    )


def find_redexes(m: Module, allow_split: bool = False) -> tuple[Redex, ...]:
    """All redexes, deterministically ordered by (cell, pole, kind).

    An ``R2`` whose feeding pole is also an ``R1`` onto the same cell is
    dropped: the two overlap and produce the same fusion.  ``SPLIT``
    candidates appear only when asked for and nothing else applies.
    """
    hyp_owner = _hyp_owner(m)
    concl_at: dict[str, tuple[int, int]] = {
        label: (c.id, k)
        for c in m.cells
        for k, pole in enumerate(c.poles)
        for label in pole
    }
    redexes: list[Redex] = []
    r1_pairs: set[tuple[int, int, int]] = set()

    for c in m.cells:
        for k, pole in enumerate(c.poles):
            if not pole:
                if len(c.poles) >= 2:
                    redexes.append(Redex(NEUT, c.id, k))
                continue
            targets = _pole_targets(pole, hyp_owner)
            if targets is not None and len(targets) == 1 and targets[0] != c.id:
                redexes.append(Redex(R1, c.id, k, target=targets[0]))
                r1_pairs.add((c.id, k, targets[0]))

    for b in m.cells:
        # the absorbed cell needs one non-empty pole: absorbing a bottom
        # pole would delete a component that a switching can strand
        if len(b.poles) != 1 or not b.poles[0] or not b.hyps:
            continue
        sources = {concl_at.get(h) for h in b.hyps}
        if None in sources or len(sources) != 1:
            continue
        (src_cell, src_pole) = next(iter(sources))
        if src_cell == b.id:
            continue
        if (src_cell, src_pole, b.id) in r1_pairs:
            continue
        redexes.append(Redex(R2, src_cell, src_pole, target=b.id))

    redexes.sort(key=Redex.sort_key)
    if allow_split and not redexes:
        redexes.extend(split_candidates(m))
    return tuple(redexes)


def split_candidates(m: Module) -> tuple[Redex, ...]:
    """Fully-linked poles whose ports reach at least two distinct cells,
    partitioned by target."""
    hyp_owner = _hyp_owner(m)
    out = []
    for c in sorted(m.cells, key=lambda c: c.id):
        for k, pole in enumerate(c.poles):
            if not pole:
                continue
            targets = _pole_targets(pole, hyp_owner)
            if targets is None or len(targets) < 2:
                continue
            groups = tuple(
                tuple(i for i, label in enumerate(pole) if hyp_owner[label] == t)
                for t in sorted(targets)
            )
            out.append(Redex(SPLIT, c.id, k, groups=groups))
    return tuple(out)


def _redex_valid(m: Module, r: Redex) -> bool:
    """Structural validity of ``r`` against ``m``, independent of the
    enumeration policy (so recorded steps replay on restricted modules)."""
    try:
        owner = m.cell(r.cell)
        owner.poles[r.pole]
    except (KeyError, IndexError):
        return False
    pole = owner.poles[r.pole]
    hyp_owner = _hyp_owner(m)
    if r.kind == NEUT:
        return not pole and len(owner.poles) >= 2
    if r.kind == R1:
        targets = _pole_targets(pole, hyp_owner) if pole else None
        return targets == [r.target] and r.target != owner.id
    if r.kind == R2:
        try:
            absorbed = m.cell(r.target)
        except KeyError:
            return False
        if len(absorbed.poles) != 1 or not absorbed.poles[0] or not absorbed.hyps:
            return False
        if absorbed.id == owner.id:
            return False
        concl_at = {
            label: (c.id, k)
            for c in m.cells
            for k, p in enumerate(c.poles)
            for label in p
        }
        return all(concl_at.get(h) == (r.cell, r.pole) for h in absorbed.hyps)
    if r.kind == SPLIT:
        targets = _pole_targets(pole, hyp_owner) if pole else None
        if targets is None or len(targets) < 2:
            return False
        groups = tuple(
            tuple(i for i, label in enumerate(pole) if hyp_owner[label] == t)
            for t in sorted(targets)
        )
        return groups == r.groups
    return False


def apply_redex(m: Module, r: Redex) -> Module:
    """Apply ``r``; raises :class:`StaleRedex` when it no longer matches."""
    if not _redex_valid(m, r):
        raise StaleRedex(f"{r} does not apply")
    owner = m.cell(r.cell)
    if r.kind == NEUT:
        new = Ebm(owner.id, owner.hyps, owner.poles[: r.pole] + owner.poles[r.pole + 1 :])
        return _swap(m, {owner.id: new})
    if r.kind == SPLIT:
        pole = owner.poles[r.pole]
        parts = tuple(tuple(pole[i] for i in group) for group in r.groups)
        new = Ebm(
            owner.id,
            owner.hyps,
            owner.poles[: r.pole] + parts + owner.poles[r.pole + 1 :],
        )
        return _swap(m, {owner.id: new})
    target = m.cell(r.target)
    if r.kind == R1:
        interface = set(owner.poles[r.pole])
        hyps = owner.hyps + tuple(h for h in target.hyps if h not in interface)
        poles = owner.poles[: r.pole] + owner.poles[r.pole + 1 :] + target.poles
    else:  # R2
        interface = set(target.hyps)
        merged = (
            tuple(x for x in owner.poles[r.pole] if x not in interface)
            + target.poles[0]
        )
        hyps = owner.hyps
        poles = owner.poles[: r.pole] + (merged,) + owner.poles[r.pole + 1 :]
    fused = Ebm(owner.id, hyps, poles)
    cells = tuple(c for c in m.cells if c.id != target.id)
    return _swap(Module(cells), {owner.id: fused})


def collapse_parallel_links(m: Module) -> Module:
    """Canonicalize by collapsing parallel links of each pole into one.

    Two linked ports of the same pole reaching the same cell (possibly the
    pole's own, a self-link) yield the same switched edge under every
    switching, so dropping the duplicates -- port and matching hypothesis
    together -- changes no switched graph.  Fusions create such duplicates
    and different reduction orders leave different arities behind, so
    normal-form comparisons go through this collapse (one link, and so any
    cycle witness, stays in place).  Pending ports are distinct border
    labels and are never touched."""
    hyp_owner = _hyp_owner(m)
    drop: set[str] = set()
    for c in m.cells:
        for pole in c.poles:
            seen: set[int] = set()
            for x in pole:
                owner = hyp_owner.get(x)
                if owner is None:
                    continue
                if owner in seen:
                    drop.add(x)
                else:
                    seen.add(owner)
    if not drop:
        return m
    return Module(
        tuple(
            Ebm(
                c.id,
                tuple(h for h in c.hyps if h not in drop),
                tuple(tuple(x for x in pole if x not in drop) for pole in c.poles),
            )
            for c in m.cells
        )
    )


def _swap(m: Module, new_cells: dict[int, Ebm]) -> Module:
    return Module(tuple(new_cells.get(c.id, c) for c in m.cells))


def bigstep_trace(m: Module) -> ReductionTrace:
    """Reduce to normal form with the lowest-(cell, pole) strategy."""
    steps: list[Redex] = []
    current = m
    while True:
        redexes = find_redexes(current)
        if not redexes:
            return ReductionTrace(m, tuple(steps), current)
        r = redexes[0]
        steps.append(r)
        current = apply_redex(current, r)


def bigstep_nf(m: Module) -> Module:
    return bigstep_trace(m).result


def replay(trace: ReductionTrace) -> Module:
    current = trace.source
    for r in trace.steps:
        current = apply_redex(current, r)
    return current


def is_terminal_module(m: Module) -> bool:
    return len(m.cells) == 1 and m.cells[0].is_terminal


def all_terminal(m: Module) -> bool:
    return all(c.is_terminal for c in m.cells)


def c_correct(m: Module) -> bool:
    """A closed module is correct iff it reduces to the one terminal cell."""
    b = border(m)
    if b.labels:
        raise NotClosed(sorted(b.labels))
    return is_terminal_module(bigstep_nf(m))


@dataclass(frozen=True)
class AcyclicResult:
    verdict: bool
    trace: ReductionTrace


def decide_acyclic(m: Module) -> AcyclicResult:
    """Decide switching-acyclicity by split-widened reduction of the
    border-stripped module.

    Reaching a state where every cell is terminal proves acyclicity: the
    fusion steps preserve it in both directions and a split only ever adds
    edges.  A self-link is a genuine cycle in the state where it appears, so
    the current branch is abandoned; other split choices may still succeed,
    hence the backtracking.  The module is cyclic exactly when no branch
    reaches an all-terminal state.
    """
    stripped = restrict(m, ())
    found = _search_acyclic(stripped, [])
    if found is not None:
        return AcyclicResult(True, ReductionTrace(stripped, tuple(found), _replay_from(stripped, found)))
    # rebuild the first failing branch for the witness trace
    steps: list[Redex] = []
    current = stripped
    while True:
        if has_self_link(current):
            break
        redexes = find_redexes(current)
        if not redexes:
            splits = split_candidates(current)
            if not splits:
                break
            redexes = splits[:1]
        steps.append(redexes[0])
        current = apply_redex(current, redexes[0])
    return AcyclicResult(False, ReductionTrace(stripped, tuple(steps), current))


def _replay_from(m: Module, steps) -> Module:
    for r in steps:
        m = apply_redex(m, r)
    return m


def _search_acyclic(m: Module, steps: list) -> Optional[list]:
    while True:
        if all_terminal(m):
            return steps
        if has_self_link(m):
            return None
        redexes = find_redexes(m)
        if redexes:
            steps = steps + [redexes[0]]
            m = apply_redex(m, redexes[0])
            continue
        for split in split_candidates(m):
            found = _search_acyclic(apply_redex(m, split), steps + [split])
            if found is not None:
                return found
        return None


def acyclic_decide(m: Module) -> bool:
    return decide_acyclic(m).verdict


def canonical(m: Module):
    return canonical_cells(m)
