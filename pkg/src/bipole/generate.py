"""Deterministic random module generation.

Modules are grown the way they are composed: cell by cell, new hypotheses
preferring to consume currently pending conclusions.  With ``transitory``
set, every cell keeps at least one hypothesis and every pole at least one
conclusion, and no closing cells are added -- the shape for which
open-correctness collapses to acyclicity.  Otherwise ``closure_prob``
decides, per remaining border port, whether a one-port closing cell is
appended; at probability 1.0 the result is closed.

Identical parameters yield identical modules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Ebm, Module, compose_chain, make_ebm

_LINK_BIAS = 0.75  # chance a hypothesis consumes a pending conclusion
_FEEDBACK_BIAS = 0.15  # chance a conclusion consumes a pending hypothesis


@dataclass(frozen=True)
class GenParams:
    seed: int
    cells: int = 4
    max_poles: int = 3
    max_concl: int = 3
    closure_prob: float = 0.0
    transitory: bool = False


def gen_cells(p: GenParams) -> tuple[Ebm, ...]:
    """The generated cells, in composition order."""
    rng = random.Random(p.seed)
    fresh = iter(f"x{i}" for i in range(10**6))
    pend_concl: list[str] = []
    pend_hyp: list[str] = []
    cells: list[Ebm] = []

    for _ in range(max(1, p.cells)):
        if p.transitory:
            n_hyps = 1 + rng.randrange(2)
        else:
            n_hyps = rng.randrange(4)
        hyps = []
        own_pending = []
        for _ in range(n_hyps):
            if pend_concl and rng.random() < _LINK_BIAS:
                hyps.append(pend_concl.pop(rng.randrange(len(pend_concl))))
            else:
                label = next(fresh)
                hyps.append(label)
                own_pending.append(label)
        poles = []
        n_poles = 1 + rng.randrange(max(1, p.max_poles))
        for _ in range(n_poles):
            if p.transitory:
                n_concl = 1 + rng.randrange(max(1, p.max_concl))
            else:
                n_concl = rng.choices(
                    range(p.max_concl + 1), weights=_concl_weights(p.max_concl)
                )[0]
            pole = []
            for _ in range(n_concl):
                if (
                    not p.transitory
                    and pend_hyp
                    and rng.random() < _FEEDBACK_BIAS
                ):
                    # feed an earlier dangling hypothesis instead of the border
                    pole.append(pend_hyp.pop(rng.randrange(len(pend_hyp))))
                else:
                    label = next(fresh)
                    pole.append(label)
                    pend_concl.append(label)
            poles.append(pole)
        pend_hyp.extend(own_pending)
        cells.append(make_ebm(hyps, poles))

    if not p.transitory and p.closure_prob > 0:
        close_concl = [x for x in pend_concl if rng.random() < p.closure_prob]
        close_hyp = [h for h in pend_hyp if rng.random() < p.closure_prob]
        # batch the closing cells so the module stays small: final cells
        # swallow up to three conclusions, initial cells feed up to three
        # hypotheses on single-port poles
        for i in range(0, len(close_concl), 3):
            cells.append(make_ebm(close_concl[i : i + 3], [[]]))
        for i in range(0, len(close_hyp), 3):
            cells.append(make_ebm([], [[h] for h in close_hyp[i : i + 3]]))
    return tuple(cells)


def _concl_weights(max_concl: int) -> list[int]:
    # skew towards small poles so oracle enumeration stays tractable
    base = [3, 9, 5] + [2] * max(0, max_concl - 2)
    return base[: max_concl + 1]


def gen_random(p: GenParams) -> Module:
    return compose_chain(gen_cells(p))
