import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bipole as bp
from bipole import corpus
from bipole.errors import NotClosed
from bipole.switching import all_connected, switch_points

from helpers import random_module


def test_switch_counts():
    assert bp.switch_count(bp.as_module(corpus.alpha())) == 2
    assert bp.switch_count(bp.as_module(corpus.beta())) == 2
    assert bp.switch_count(bp.as_module(corpus.tbot())) == 1
    assert len(list(bp.switchings(bp.as_module(corpus.tbot())))) == 1


def test_switched_graph_init_fin_path():
    m = corpus.init_fin()
    (s,) = bp.switchings(m)
    sg = bp.switched_graph(m, s)
    assert len(sg.vertices) == 4
    assert len(sg.edges) == 3
    assert sg.is_connected() and sg.is_acyclic()


def test_switched_graph_pending_choice_drops_edge():
    m = bp.as_module(corpus.alpha())
    graphs = [bp.switched_graph(m, s) for s in bp.switchings(m)]
    # both choices are pending: only the anchor edge remains
    assert all(len(g.edges) == 1 for g in graphs)


def test_switched_graph_beta_eps_cycle():
    m = corpus.beta_eps()
    points = switch_points(m)
    cyclic = []
    for s in bp.switchings(m):
        sg = bp.switched_graph(m, s)
        cyclic.append(not sg.is_acyclic())
    # the switching sending pole {e,f} to e closes the d/e trip
    assert any(cyclic)


def test_acyclic_oracle():
    assert bp.acyclic_oracle(corpus.beta_eps()) is False
    assert bp.acyclic_oracle(bp.as_module(corpus.alpha())) is True
    for e in (corpus.alpha(), corpus.beta(), corpus.gamma(), corpus.tbot()):
        assert bp.acyclic_oracle(bp.as_module(e)) is True


def test_dr_correct():
    assert bp.dr_correct(corpus.init_fin()) is True
    m1 = bp.compose_chain(
        [bp.make_ebm([], [["a", "b"]]), corpus.fin("a"), corpus.fin("b")]
    )
    assert bp.dr_correct(m1) is False
    m2 = bp.compose_chain(
        [bp.make_ebm([], [["a"], ["b"]]), corpus.fin("a"), corpus.fin("b")]
    )
    assert bp.dr_correct(m2) is True


def test_dr_correct_requires_closed():
    with pytest.raises(NotClosed):
        bp.dr_correct(bp.as_module(corpus.alpha()))


def test_connectable_oracle():
    assert bp.connectable_oracle(bp.as_module(corpus.alpha())) is True
    m = bp.compose_chain([bp.make_ebm([], [["a", "b"]]), corpus.fin("a")])
    assert bp.connectable_oracle(m) is False
    assert bp.connectable_oracle(bp.as_module(corpus.tbot())) is True


def test_connectable_closed_judged_alone():
    two = bp.compose_chain(
        [corpus.init("a1"), corpus.fin("a1"), corpus.init("b1"), corpus.fin("b1")]
    )
    assert bp.connectable_oracle(two) is False


def test_connectable_two_finals():
    # the closure [-o (u)(v)] connects both, so this must hold
    m = bp.compose_chain([corpus.fin("u"), corpus.fin("v")])
    assert bp.connectable_oracle(m) is True


def test_o_correct_oracle():
    assert bp.o_correct_oracle(corpus.beta_eps()) is False
    assert bp.o_correct_oracle(corpus.abgd()) is True
    assert bp.o_correct_oracle(bp.as_module(corpus.tbot())) is True


def test_abgd_reconstruction_is_o_correct():
    """The reconstructed four-cell chain must pass the oracle with the
    border the worked example prescribes."""
    m = corpus.abgd()
    b = bp.border(m)
    assert b.hypotheses == {"a"}
    assert b.conclusions == {"d", "e", "h", "i", "j"}
    assert bp.acyclic_oracle(m) and bp.connectable_oracle(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_edge_count_invariant(seed):
    m = random_module(seed)
    linked = bp.module_labels(m) - bp.border(m).labels
    linked_hyps = {
        h for c in m.cells for h in c.hyps if h in linked
    }
    n_poles = sum(len(c.poles) for c in m.cells)
    for s in list(bp.switchings(m))[:16]:
        sg = bp.switched_graph(m, s)
        chosen_linked = sum(
            1
            for (cell_id, k, _n), choice in zip(switch_points(m), s)
            if m.cell(cell_id).poles[k][choice] in linked_hyps
        )
        assert len(sg.edges) == n_poles + chosen_linked
        assert len(sg.vertices) == len(m.cells) + n_poles


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_disjoint_cell_never_breaks_acyclicity(seed):
    m = random_module(seed)
    if not bp.acyclic_oracle(m):
        return
    extra = bp.make_ebm(["zz0"], [["zz1", "zz2"]])
    assert bp.acyclic_oracle(bp.compose(m, extra)) is True


def test_closed_connected_is_connectable():
    m = corpus.init_fin()
    assert all_connected(m) and bp.connectable_oracle(m)
