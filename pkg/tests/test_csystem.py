import random

import pytest
from hypothesis import given, strategies as st

from lawvere_cs.csystem import check_csystem, mediator, term_csystem
from lawvere_cs.errors import DimensionError, PreconditionError
from lawvere_cs.models import Tab, clone
from lawvere_cs.report import ProbeSpec
from lawvere_cs.terms import App, Sub, Var, compose, identity_sub, random_sub
from mutants import DropLastQ
from oracles import as_dict, brute_mediator

x0, x1 = Var(0), Var(1)


def mm(a, b):
    return App("m", (a, b))


def test_closed_formulas(magma):
    C = term_csystem(magma)
    for n in range(1, 5):
        assert C.q(identity_sub(n - 1), n) == identity_sub(n)
    assert C.s(Sub(1, 1, (mm(x0, x0),))) == Sub(1, 2, (x0, mm(x0, x0)))
    assert C.terminal(1) == Sub(1, 0, ())
    assert C.terminal(0) == identity_sub(0)
    assert C.p(0) == identity_sub(0)
    assert C.p(3) == Sub(3, 2, (x0, x1))
    assert C.ft(0) == 0 and C.ft(3) == 2


def test_q_and_fstar_dimension_errors(magma):
    C = term_csystem(magma)
    with pytest.raises(DimensionError):
        C.q(identity_sub(2), 2)
    with pytest.raises(DimensionError):
        C.fstar(identity_sub(1), 3)
    with pytest.raises(DimensionError):
        C.s(Sub(1, 0, ()))


def test_mediator_of_the_square_itself(monoid):
    C = term_csystem(monoid)
    f = Sub(2, 1, (mm(x1, x0),))
    X = 2
    fX = C.fstar(f, X)
    h = mediator(C, C.p(fX), C.q(f, X), f, X)
    assert C.eq(h, C.identity(fX))


def test_mediator_over_terminal_appends_term(magma):
    C = term_csystem(magma)
    a = Sub(2, 3, (x1, x0, mm(x0, x1)))
    b = Sub(2, 1, (mm(x1, x1),))
    h = mediator(C, a, b, C.terminal(3), 1)
    assert h == Sub(2, 4, a.components + b.components)


def test_mediator_rejects_non_commuting_square():
    C = clone(2).csystem
    f = Tab(1, 1, (0, 0))
    a = Tab(1, 1, (0, 1))
    b = Tab(1, 2, (3, 3))  # b;p_2 sends everything to 1, a;f to 0
    with pytest.raises(PreconditionError, match="a;f") as exc:
        mediator(C, a, b, f, 2)
    assert "b;p_X" in str(exc.value)


def _clone2_squares():
    C = clone(2).csystem
    for Z in range(3):
        for Y in range(2):
            for X in (1, 2):
                for f in C.homs(Y, X - 1, ProbeSpec()):
                    for a in C.homs(Z, Y, ProbeSpec()):
                        for b in C.homs(Z, X, ProbeSpec()):
                            if C.eq(C.compose(a, f), C.compose(b, C.p(X))):
                                yield C, f, a, b, X


def test_clone_mediator_matches_brute_force():
    seen = 0
    for C, f, a, b, X in _clone2_squares():
        fd = as_dict(f, 2)
        sols = brute_mediator(2, as_dict(a, 2), as_dict(b, 2), lambda v: fd[v[:-1]] + v[-1:])
        assert len(sols) == 1
        assert as_dict(mediator(C, a, b, f, X), 2) == sols[0]
        seen += 1
    assert seen > 100


def test_term_csystem_passes(magma, monoid):
    for pres in (magma, monoid):
        rep = check_csystem(term_csystem(pres), ProbeSpec(max_n=3, depth=2))
        assert rep.ok, rep.lines()
        assert {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8.section"} <= rep.checks()


def test_clone2_passes_exhaustively():
    rep = check_csystem(clone(2).csystem, ProbeSpec(max_n=2))
    assert rep.ok, rep.lines()
    assert rep.cases("A8.bijection") > 0


def test_dropping_last_q_component_is_caught(magma):
    rep = check_csystem(DropLastQ(magma), ProbeSpec(max_n=2))
    failed = rep.failed_checks()
    assert failed & {"A5", "A8.section", "A8.unique", "A8.formula", "A8.exists"}
    assert all(e.witness for e in rep.failures())


@st.composite
def sub_into_positive(draw):
    m = draw(st.integers(0, 3))
    n = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 2**32 - 1))
    return m, n, seed


@given(sub_into_positive())
def test_section_laws(monoid, args):
    m, n, seed = args
    C = term_csystem(monoid)
    f = random_sub(monoid.signature, m, n, 2, random.Random(seed))
    s = C.s(f)
    g = compose(f, C.p(n))
    assert C.eq(compose(s, C.p(m + 1)), identity_sub(m))
    assert C.eq(compose(s, C.q(g, n)), f)


@pytest.mark.parametrize("m", range(5))
def test_terminal_factors_through_p(magma, m):
    C = term_csystem(magma)
    assert C.terminal(m + 1) == compose(C.p(m + 1), C.terminal(m))
