"""Reader for theory files, terms and substitutions.

File grammar, one declaration per line, ``#`` starts a comment::

    theory NAME
    op NAME : ARITY
    eq [CTX] TERM = TERM
    rw [CTX] TERM -> TERM
    TERM := xK | NAME ( TERM, ... )

Operations may be used before they are declared.  Terms print back in
exactly this syntax, so anything in a report can be pasted into the CLI.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .terms import (
    DEFAULT_REWRITE_BUDGET,
    App,
    Equation,
    RewriteRule,
    RewriteSystem,
    Signature,
    Sub,
    TheoryPresentation,
    Var,
)

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[()\[\],=:]))")
_VAR = re.compile(r"x(\d+)$")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int  # 1-based


def _tokenize(s: str, line: int | None, offset: int = 0) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN.match(s, pos)
        if not m:
            col = pos + len(s[pos:]) - len(s[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {s[col - 1]!r}", line, col + offset)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind) + 1 + offset))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, toks: list[_Tok], line, end_col: int):
        self.toks, self.i, self.line, self.end_col = toks, 0, line, end_col

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def col(self):
        t = self.peek()
        return t.col if t else self.end_col

    def fail(self, msg):
        raise ParseError(msg, self.line, self.col())

    def take(self, text=None, kind=None) -> _Tok:
        t = self.peek()
        if t is None or (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            got = "end of line" if t is None else repr(t.text)
            self.fail(f"expected {want}, found {got}")
        self.i += 1
        return t

    def done(self):
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek().text!r}")


# raw terms keep positions until the signature is known
@dataclass(frozen=True)
class _RawVar:
    index: int
    col: int


@dataclass(frozen=True)
class _RawApp:
    op: str
    args: tuple
    col: int


def _raw_term(cur: _Cursor):
    t = cur.take(kind="name")
    m = _VAR.match(t.text)
    if m:
        if cur.peek() is not None and cur.peek().text == "(":
            cur.fail(f"variable {t.text} cannot be applied")
        return _RawVar(int(m.group(1)), t.col)
    cur.take("(")
    args = []
    if cur.peek() is not None and cur.peek().text == ")":
        cur.take(")")
        return _RawApp(t.text, (), t.col)
    while True:
        args.append(_raw_term(cur))
        nxt = cur.take(kind="punct")
        if nxt.text == ")":
            break
        if nxt.text != ",":
            raise ParseError(f"expected ',' or ')', found {nxt.text!r}", cur.line, nxt.col)
    return _RawApp(t.text, tuple(args), t.col)


def _cook(raw, sig: Signature | None, ctx: int | None, line) -> object:
    if isinstance(raw, _RawVar):
        if ctx is not None and raw.index >= ctx:
            raise ParseError(f"variable x{raw.index} is outside context {ctx}", line, raw.col)
        return Var(raw.index)
    if sig is not None:
        if raw.op not in sig:
            raise ParseError(f"unknown operation {raw.op!r}", line, raw.col)
        if sig.arity(raw.op) != len(raw.args):
            raise ParseError(
                f"{raw.op} has arity {sig.arity(raw.op)} but is applied to {len(raw.args)} arguments", line, raw.col
            )
    return App(raw.op, tuple(_cook(a, sig, ctx, line) for a in raw.args))


def _ctx(cur: _Cursor) -> int:
    cur.take("[")
    n = int(cur.take(kind="num").text)
    cur.take("]")
    return n


def parse_theory(text: str, rewrite_budget: int = DEFAULT_REWRITE_BUDGET) -> TheoryPresentation:
    name = None
    ops: list[tuple[str, int]] = []
    seen: dict[str, int] = {}
    pending = []  # (kind, line, ctx, lhs, rhs)
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        toks = _tokenize(body, lineno)
        if not toks:
            continue
        cur = _Cursor(toks, lineno, len(body.rstrip()) + 1)
        head = cur.take(kind="name")
        if name is None and head.text != "theory":
            raise ParseError("file must start with 'theory NAME'", lineno, head.col)
        if head.text == "theory":
            if name is not None:
                raise ParseError("second 'theory' header", lineno, head.col)
            name = cur.take(kind="name").text
        elif head.text == "op":
            op = cur.take(kind="name")
            if _VAR.match(op.text):
                raise ParseError(f"{op.text!r} is reserved for variables", lineno, op.col)
            if op.text in seen:
                raise ParseError(f"duplicate operation {op.text!r} (first declared on line {seen[op.text]})", lineno, op.col)
            cur.take(":")
            arity = int(cur.take(kind="num").text)
            seen[op.text] = lineno
            ops.append((op.text, arity))
        elif head.text in ("eq", "rw"):
            ctx = _ctx(cur)
            lhs = _raw_term(cur)
            cur.take("=" if head.text == "eq" else "->")
            rhs = _raw_term(cur)
            pending.append((head.text, lineno, ctx, lhs, rhs))
        else:
            raise ParseError(f"unknown declaration {head.text!r}", lineno, head.col)
        cur.done()
    if name is None:
        raise ParseError("empty theory file: expected 'theory NAME'", 1, 1)

    sig = Signature(tuple(ops))
    eqs, rules = [], []
    for kind, lineno, ctx, lraw, rraw in pending:
        lhs, rhs = _cook(lraw, sig, ctx, lineno), _cook(rraw, sig, ctx, lineno)
        if kind == "eq":
            eqs.append(Equation(ctx, lhs, rhs))
        else:
            if isinstance(lhs, Var):
                raise ParseError("rule left-hand side may not be a variable", lineno, lraw.col)
            extra = _vars(rhs) - _vars(lhs)
            if extra:
                raise ParseError(f"rule right-hand side uses x{min(extra)}, absent on the left", lineno, rraw.col)
            rules.append(RewriteRule(ctx, lhs, rhs))
    rws = RewriteSystem(tuple(rules), rewrite_budget) if rules else None
    return TheoryPresentation(sig, tuple(eqs), rws, name)


def _vars(t) -> set:
    if isinstance(t, Var):
        return {t.index}
    return set().union(*(_vars(a) for a in t.args)) if t.args else set()


def parse_term(text: str, sig: Signature | None = None, ctx: int | None = None):
    cur = _Cursor(_tokenize(text, None), None, len(text.rstrip()) + 1)
    raw = _raw_term(cur)
    cur.done()
    return _cook(raw, sig, ctx, None)


def parse_sub(text: str, sig: Signature | None = None) -> Sub:
    """``[M] t1, t2, ...``: a substitution out of context ``M``."""
    cur = _Cursor(_tokenize(text, None), None, len(text.rstrip()) + 1)
    dom = _ctx(cur)
    comps = []
    if cur.peek() is not None:
        while True:
            comps.append(_cook(_raw_term(cur), sig, dom, None))
            if cur.peek() is None:
                break
            cur.take(",")
    return Sub(dom, len(comps), tuple(comps))
