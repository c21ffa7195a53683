"""Core data model for bipolar modules.

A *cell* (:class:`Ebm`) is the elementary unit: one positive pole carrying
an ordered tuple of hypothesis ports, below a non-empty ordered tuple of
negative poles, each carrying conclusion ports.  Ports are labelled and all
labels inside one cell are pairwise distinct.  A cell with no hypotheses is
*initial*, one whose poles are all empty is *final*; the terminal cell
``[-o ()]`` is both.

A :class:`Module` is a tuple of cells subject to a global label discipline:
across the whole module a label occurs at most once on the hypothesis side
and at most once on the conclusion side.  A label present on both sides *is*
a link between the two ports; a label present on one side only is a pending
port.  The pending ports form the border.  Links are therefore derived from
labels and never stored.

All values are immutable; every operation returns a fresh value and is safe
to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    DuplicateLabel,
    InvalidModule,
    LabelClash,
    NoPoles,
    NotPending,
)

Pole = tuple[str, ...]


@dataclass(frozen=True)
class Ebm:
    """One cell: hypothesis ports plus a tuple of negative poles.

    The ``id`` identifies the cell inside a module; it carries no meaning
    beyond that (fusion keeps the id of the surviving cell, composition
    assigns fresh ones).
    """

    id: int
    hyps: tuple[str, ...]
    poles: tuple[Pole, ...]

    @property
    def conclusions(self) -> tuple[str, ...]:
        return tuple(label for pole in self.poles for label in pole)

    def labels(self) -> frozenset[str]:
        return frozenset(self.hyps) | frozenset(self.conclusions)

    @property
    def is_initial(self) -> bool:
        return not self.hyps

    @property
    def is_final(self) -> bool:
        return not self.conclusions

    @property
    def is_terminal(self) -> bool:
        """True for the smallest initial-and-final cell ``[-o ()]``."""
        return not self.hyps and self.poles == ((),)


@dataclass(frozen=True)
class Module:
    cells: tuple[Ebm, ...]

    def cell(self, cell_id: int) -> Ebm:
        for c in self.cells:
            if c.id == cell_id:
                return c
        raise KeyError(cell_id)


@dataclass(frozen=True)
class Border:
    """Pending ports of a module, split by side.

    The two sets are disjoint: a label on both sides would be a link.
    """

    hypotheses: frozenset[str]
    conclusions: frozenset[str]

    @property
    def labels(self) -> frozenset[str]:
        return self.hypotheses | self.conclusions


def _check_label(label) -> str:
    if not isinstance(label, str) or not label:
        raise InvalidModule(f"labels must be non-empty strings, got {label!r}")
    return label


def make_ebm(
    hypotheses: Iterable[str],
    poles: Iterable[Iterable[str]],
    *,
    ident: int = 0,
) -> Ebm:
    """Build a cell, rejecting duplicate labels and empty pole tuples."""
    hyps = tuple(_check_label(h) for h in hypotheses)
    pole_tuple = tuple(tuple(_check_label(c) for c in pole) for pole in poles)
    if not pole_tuple:
        raise NoPoles()
    seen: set[str] = set()
    dups: list[str] = []
    for label in hyps + tuple(c for p in pole_tuple for c in p):
        if label in seen:
            dups.append(label)
        seen.add(label)
    if dups:
        raise DuplicateLabel(sorted(set(dups)))
    return Ebm(ident, hyps, pole_tuple)


def as_module(e: Ebm) -> Module:
    return Module((e,))


def hyp_labels(m: Module) -> frozenset[str]:
    return frozenset(h for c in m.cells for h in c.hyps)


def concl_labels(m: Module) -> frozenset[str]:
    return frozenset(x for c in m.cells for x in c.conclusions)


def module_labels(m: Module) -> frozenset[str]:
    return hyp_labels(m) | concl_labels(m)


def linked_labels(m: Module) -> frozenset[str]:
    return hyp_labels(m) & concl_labels(m)


def border(m: Module) -> Border:
    hyp = hyp_labels(m)
    concl = concl_labels(m)
    return Border(hypotheses=frozenset(hyp - concl), conclusions=frozenset(concl - hyp))


def is_closed(m: Module) -> bool:
    return not border(m).labels


def compose(m: Module, e: Ebm) -> Module:
    """Glue a cell onto a module along every label-matched pending pair.

    The interface is the set of labels that occur as a pending conclusion on
    one side and a hypothesis on the other (in either direction); exactly
    those become links.  Any other shared label would duplicate a hypothesis
    or a conclusion and raises :class:`LabelClash`.
    """
    b = border(m)
    e_hyps = frozenset(e.hyps)
    e_concl = frozenset(e.conclusions)
    interface = (b.conclusions & e_hyps) | (b.hypotheses & e_concl)
    shared = module_labels(m) & e.labels()
    if shared != interface:
        raise LabelClash(sorted(shared - interface))
    fresh = max(c.id for c in m.cells) + 1
    return Module(m.cells + (Ebm(fresh, e.hyps, e.poles),))


def compose_chain(items: Sequence[Union[Module, Ebm]]) -> Module:
    """Left fold of :func:`compose`; the first item may already be a module."""
    if not items:
        raise ValueError("compose_chain needs at least one item")
    head = items[0]
    acc = head if isinstance(head, Module) else as_module(head)
    for item in items[1:]:
        if isinstance(item, Module):
            raise TypeError("only the first chain item may be a module")
        acc = compose(acc, item)
    return acc


def restrict(m: Module, keep: Iterable[str]) -> Module:
    """Delete every pending port whose label is not in ``keep``.

    Links are untouched; the border of the result is exactly ``keep``.
    """
    keep_set = frozenset(keep)
    pending = border(m).labels
    if not keep_set <= pending:
        raise NotPending(sorted(keep_set - pending))
    linked = linked_labels(m)
    survive = linked | keep_set
    cells = tuple(
        Ebm(
            c.id,
            tuple(h for h in c.hyps if h in survive),
            tuple(tuple(x for x in pole if x in survive) for pole in c.poles),
        )
        for c in m.cells
    )
    return Module(cells)


def full_connector(m: Module) -> Ebm:
    """The cell that consumes every pending conclusion of ``m`` and, unless
    ``m`` has no pending hypothesis, feeds back one conclusion per pending
    hypothesis (a final cell otherwise).

    Each fed-back conclusion sits on its own pole: a single-port pole keeps
    its edge under every switching, so the connector attaches to everything
    a closure could possibly attach to.  Grouping them on one switched pole
    would let the connector feed only one hypothesis at a time and
    under-report connectability.
    """
    b = border(m)
    hyps = tuple(sorted(b.conclusions))
    if b.hypotheses:
        poles: tuple[Pole, ...] = tuple((h,) for h in sorted(b.hypotheses))
    else:
        poles = ((),)
    return Ebm(0, hyps, poles)


def _ebm_formula(e: Ebm) -> str:
    hyp_part = "*".join(e.hyps) if e.hyps else "1"
    pole_part = "|".join("(" + "*".join(pole) + ")" for pole in e.poles)
    return f"{hyp_part} -o ({pole_part})"


def type_formula(x: Union[Module, Ebm]) -> str:
    """Render the type: ``*`` for tensor, ``|`` between poles, ``-o`` for
    the implication; cells of a module are joined by ``*``."""
    if isinstance(x, Ebm):
        return _ebm_formula(x)
    if len(x.cells) == 1:
        return _ebm_formula(x.cells[0])
    return " * ".join("(" + _ebm_formula(c) + ")" for c in x.cells)


def validate_module(m: Module, *, allow_self_links: bool = False) -> None:
    """Raise :class:`InvalidModule` when ``m`` breaks the invariants.

    With ``allow_self_links`` a label may occur as a hypothesis and a
    conclusion of the *same* cell (rewriting fuses cells into such shapes);
    parsed or composed input never contains one.
    """
    if not m.cells:
        raise InvalidModule("a module needs at least one cell")
    ids = [c.id for c in m.cells]
    if len(set(ids)) != len(ids):
        raise InvalidModule("cell ids must be unique")
    hyp_seen: dict[str, int] = {}
    concl_seen: dict[str, int] = {}
    for c in m.cells:
        if not c.poles:
            raise InvalidModule(f"cell {c.id} has no poles")
        for h in c.hyps:
            _check_label(h)
            if h in hyp_seen:
                raise InvalidModule(f"label {h} occurs twice as a hypothesis")
            hyp_seen[h] = c.id
        for pole in c.poles:
            for x in pole:
                _check_label(x)
                if x in concl_seen:
                    raise InvalidModule(f"label {x} occurs twice as a conclusion")
                concl_seen[x] = c.id
    if not allow_self_links:
        for label, cell_id in hyp_seen.items():
            if concl_seen.get(label) == cell_id:
                raise InvalidModule(f"label {label} links cell {cell_id} to itself")


def canonical_cells(m: Module):
    """Shape of a module up to cell renaming and port reordering.

    Labels are globally unique, so sorting cells by sorted label content
    identifies modules exactly; cells without labels (terminal ones) are
    interchangeable anyway.
    """
    shapes = [
        (
            tuple(sorted(c.hyps)),
            tuple(sorted(tuple(sorted(pole)) for pole in c.poles)),
        )
        for c in m.cells
    ]
    return tuple(sorted(shapes))


def modules_equal(a: Module, b: Module) -> bool:
    return canonical_cells(a) == canonical_cells(b)
