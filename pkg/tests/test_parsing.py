import pytest
from hypothesis import given, strategies as st
import random

from lawvere_cs.errors import ParseError
from lawvere_cs.parsing import parse_sub, parse_term, parse_theory
from lawvere_cs.terms import App, Equation, Signature, Sub, Var, random_sub, random_term


def test_magma_file():
    pres = parse_theory("theory Magma\nop m : 2")
    assert pres.name == "Magma"
    assert pres.signature == Signature((("m", 2),))
    assert pres.equations == () and pres.rewrites is None


def test_equation_line():
    pres = parse_theory("theory M\nop e : 0\nop m : 2\neq [1] m(e(),x0) = x0\n")
    assert pres.equations == (Equation(1, App("m", (App("e", ()), Var(0))), Var(0)),)


def test_whitespace_and_comments():
    text = "  # header comment\ntheory   T\nop m:2   # binary\n\neq[2]m( x0 , x1 )=m(x1,x0)\n"
    pres = parse_theory(text)
    assert pres.equations[0].rhs == App("m", (Var(1), Var(0)))


def test_rewrite_lines(monoid):
    assert len(monoid.rewrites.rules) == 3
    assert monoid.rewrites.budget == 10_000


def test_ops_may_be_declared_late():
    pres = parse_theory("theory T\neq [1] f(x0) = x0\nop f : 1\n")
    assert pres.signature.arity("f") == 1


@pytest.mark.parametrize("text,where,what", [
    ("theory M\nop m : 2\neq [1] m(x0,x1) = x0", "3:", "outside context"),
    ("theory M\nop m : 2\neq [1] n(x0) = x0", "3:", "unknown operation"),
    ("theory M\nop m : 2\neq [1] m(x0) = x0", "3:", "arity"),
    ("theory M\nop m : 2\nop m : 1", "3:", "duplicate"),
    ("op m : 2", "1:", "theory NAME"),
    ("theory M\nop m 2", "2:", "expected ':'"),
    ("theory M\nop m : 2\neq [1] m(x0,x0 = x0", "3:", "expected"),
    ("theory M\nop m : 2\nrw [2] m(x0,x0) -> x1", "3:", "absent on the left"),
    ("theory M\nop x3 : 0", "2:", "reserved"),
    ("theory M\nbogus", "2:", "unknown declaration"),
    ("theory M\nop m : 2 $", "2:", "unexpected character"),
    ("", "1:", "empty"),
])
def test_errors_report_position(text, where, what):
    with pytest.raises(ParseError) as exc:
        parse_theory(text)
    assert str(exc.value).startswith(where)
    assert what in str(exc.value)


def test_error_column():
    with pytest.raises(ParseError) as exc:
        parse_theory("theory M\nop m : 2\neq [1] m(x0, x7) = x0")
    assert (exc.value.line, exc.value.col) == (3, 14)


def test_parse_sub():
    sig = Signature((("m", 2),))
    assert parse_sub("[2] m(x0,x1), x0", sig) == Sub(2, 2, (App("m", (Var(0), Var(1))), Var(0)))
    assert parse_sub("[3]", sig) == Sub(3, 0, ())
    with pytest.raises(ParseError):
        parse_sub("[1] x1", sig)


SIG = Signature((("e", 0), ("m", 2), ("inv", 1)))


@given(st.integers(0, 2**32 - 1), st.integers(0, 3))
def test_printed_terms_reparse(seed, ctx):
    t = random_term(SIG, ctx, 3, random.Random(seed))
    assert parse_term(str(t), SIG, ctx) == t


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(0, 3))
def test_printed_subs_reparse(seed, m, n):
    f = random_sub(SIG, m, n, 2, random.Random(seed))
    assert parse_sub(str(f), SIG) == f
