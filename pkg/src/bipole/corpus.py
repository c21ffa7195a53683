"""Canonical example cells used throughout tests and demos.

Notation in comments: ``[h1 h2 -o (c1 c2)(c3)]`` declares hypotheses h1, h2
and two negative poles, the first with conclusions {c1, c2}, the second with
{c3}.  ``gamma`` and ``delta`` are shaped so that the four-cell chain
``alpha . beta . gamma . delta`` is an open-correct module with border
hypotheses {a} and conclusions {d, e, h, i, j}; the switching oracle
confirms this in the test suite.
"""

from __future__ import annotations

from .model import Ebm, Module, compose_chain, make_ebm


def alpha() -> Ebm:
    return make_ebm(["a"], [["b", "c"]])  # [a -o (b c)]


def beta() -> Ebm:
    return make_ebm(["b"], [["d"], ["e", "f"]])  # [b -o (d)(e f)]


def gamma() -> Ebm:
    return make_ebm(["f"], [["i"], ["g", "h"]])  # [f -o (i)(g h)]


def delta() -> Ebm:
    return make_ebm(["c", "g"], [["j"]])  # [c g -o (j)]


def eps() -> Ebm:
    return make_ebm(["d", "e"], [["k"]])  # [d e -o (k)]


def init(label: str) -> Ebm:
    return make_ebm([], [[label]])  # [-o (x)]


def fin(label: str) -> Ebm:
    return make_ebm([label], [[]])  # [x -o ()]


def tbot() -> Ebm:
    return make_ebm([], [[]])  # [-o ()], the terminal cell


def alpha_beta() -> Module:
    return compose_chain([alpha(), beta()])


def abgd() -> Module:
    return compose_chain([alpha(), beta(), gamma(), delta()])


def beta_eps() -> Module:
    return compose_chain([beta(), eps()])


def init_fin(label: str = "a") -> Module:
    return compose_chain([init(label), fin(label)])
