from pathlib import Path

import bipole as bp
from bipole import contraction as ct
from bipole import corpus
from bipole.dot import to_dot

from helpers import random_module

GOLDEN = Path(__file__).parent / "golden"


def test_tbot_golden():
    assert to_dot(corpus.tbot()) == (GOLDEN / "tbot.dot").read_text()


def test_abgd_golden():
    assert to_dot(corpus.abgd()) == (GOLDEN / "abgd.dot").read_text()


def test_notcc_golden_marks_witness():
    m = bp.compose_chain([bp.make_ebm([], [["a", "b"]]), corpus.fin("a")])
    nf = ct.contract_nf(ct.embed(m), ct.WC)
    text = to_dot(nf)
    assert text == (GOLDEN / "notcc.dot").read_text()
    assert "fillcolor=red" in text


def test_byte_stable_across_runs():
    for seed in range(25):
        m = random_module(seed)
        assert to_dot(m) == to_dot(m)
        g = ct.contract_nf(ct.embed(m), ct.WC)
        assert to_dot(g) == to_dot(g)


def test_pending_half_edges_present():
    text = to_dot(corpus.alpha())
    assert "pend_a" in text and "pend_b" in text and "pend_c" in text
    assert "shape=point" in text
