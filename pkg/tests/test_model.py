import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bipole as bp
from bipole import corpus
from bipole.errors import DuplicateLabel, LabelClash, NoPoles, NotPending
from bipole.model import canonical_cells, linked_labels, validate_module

from helpers import random_module


def test_make_ebm_alpha():
    a = corpus.alpha()
    assert a.hyps == ("a",)
    assert a.poles == (("b", "c"),)


def test_make_ebm_tbot_is_terminal():
    t = corpus.tbot()
    assert t.is_terminal and t.is_initial and t.is_final


def test_make_ebm_duplicate_label():
    with pytest.raises(DuplicateLabel):
        bp.make_ebm(["a", "a"], [["b"]])
    with pytest.raises(DuplicateLabel):
        bp.make_ebm(["a"], [["a"]])


def test_make_ebm_no_poles():
    with pytest.raises(NoPoles):
        bp.make_ebm(["a"], [])


def test_compose_alpha_beta():
    m = bp.compose(bp.as_module(corpus.alpha()), corpus.beta())
    b = bp.border(m)
    assert b.hypotheses == {"a"}
    assert b.conclusions == {"c", "d", "e", "f"}
    assert bp.module_labels(m) == {"a", "b", "c", "d", "e", "f"}


def test_compose_disjoint_union():
    m = bp.compose(bp.as_module(corpus.alpha()), corpus.eps())
    assert len(m.cells) == 2
    b = bp.border(m)
    assert b.hypotheses == {"a", "d", "e"}
    assert b.conclusions == {"b", "c", "k"}


def test_compose_beta_eps():
    m = corpus.beta_eps()
    b = bp.border(m)
    assert b.hypotheses == {"b"}
    assert b.conclusions == {"f", "k"}


def test_compose_feedback_direction():
    # a conclusion of the incoming cell may feed a pending hypothesis
    m = bp.compose(bp.as_module(corpus.fin("x")), corpus.init("x"))
    assert bp.is_closed(m)


def test_compose_label_clash():
    # b would occur twice as a conclusion
    with pytest.raises(LabelClash):
        bp.compose(bp.as_module(corpus.alpha()), bp.make_ebm([], [["b", "z"]]))
    # a would occur twice as a hypothesis
    with pytest.raises(LabelClash):
        bp.compose(bp.as_module(corpus.alpha()), bp.make_ebm(["a"], [["q"]]))


def test_compose_chain_singleton():
    m = bp.compose_chain([corpus.alpha()])
    assert len(m.cells) == 1


def test_compose_chain_init_fin():
    m = corpus.init_fin()
    assert bp.is_closed(m)
    assert len(m.cells) == 2


def test_restrict_to_empty():
    m = bp.restrict(bp.as_module(corpus.alpha()), ())
    assert canonical_cells(m) == canonical_cells(bp.as_module(corpus.tbot()))


def test_restrict_identity():
    m = corpus.alpha_beta()
    assert bp.restrict(m, bp.border(m).labels) == m


def test_restrict_beta_to_b():
    m = bp.restrict(bp.as_module(corpus.beta()), {"b"})
    assert m.cells[0].hyps == ("b",)
    assert m.cells[0].poles == ((), ())


def test_restrict_not_pending():
    with pytest.raises(NotPending):
        bp.restrict(corpus.alpha_beta(), {"b"})  # b is linked


def test_restrict_composition_law():
    m = corpus.abgd()
    keep_big = {"a", "d", "e"}
    keep_small = {"d"}
    lhs = bp.restrict(bp.restrict(m, keep_big), keep_small)
    assert lhs == bp.restrict(m, keep_small)


def test_full_connector_alpha():
    f = bp.full_connector(bp.as_module(corpus.alpha()))
    assert f.hyps == ("b", "c")
    assert f.poles == (("a",),)


def test_full_connector_init_fin_swap():
    assert bp.full_connector(bp.as_module(corpus.init("a"))).poles == ((),)
    assert bp.full_connector(bp.as_module(corpus.init("a"))).hyps == ("a",)
    f = bp.full_connector(bp.as_module(corpus.fin("x")))
    assert f.hyps == ()
    assert f.poles == (("x",),)


def test_full_connector_one_pole_per_hypothesis():
    m = bp.compose_chain([corpus.fin("u"), corpus.fin("v")])
    f = bp.full_connector(m)
    assert f.poles == (("u",), ("v",))


def test_type_formula():
    assert bp.type_formula(corpus.alpha()) == "a -o ((b*c))"
    assert bp.type_formula(corpus.beta()) == "b -o ((d)|(e*f))"
    assert bp.type_formula(corpus.tbot()) == "1 -o (())"
    two = bp.type_formula(corpus.alpha_beta())
    assert two == "(a -o ((b*c))) * (b -o ((d)|(e*f)))"


def test_border_tbot():
    b = bp.border(bp.as_module(corpus.tbot()))
    assert not b.labels


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_modules_validate(seed):
    validate_module(random_module(seed))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_compose_border_equation(seed, eseed):
    from bipole.generate import GenParams, gen_cells

    m = random_module(seed)
    e = gen_cells(GenParams(seed=eseed, cells=1, max_poles=2, max_concl=2))[0]
    b = bp.border(m)
    e_hyps, e_concl = set(e.hyps), set(e.conclusions)
    interface = (b.conclusions & e_hyps) | (b.hypotheses & e_concl)
    try:
        m2 = bp.compose(m, e)
    except LabelClash:
        assert (bp.module_labels(m) & e.labels()) != interface
        return
    assert bp.module_labels(m2) == bp.module_labels(m) | e.labels()
    assert linked_labels(m2) == linked_labels(m) | interface
    b2 = bp.border(m2)
    assert b2.labels == (b.labels | e.labels()) - linked_labels(m2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_full_connector_closes_everything(seed):
    m = random_module(seed)
    closed = bp.compose(m, bp.full_connector(m)) if not bp.is_closed(m) else m
    assert bp.is_closed(closed)
    validate_module(closed)
