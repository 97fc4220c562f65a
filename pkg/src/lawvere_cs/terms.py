"""Terms over a single-sorted signature and substitutions between contexts.

Contexts are natural numbers.  Variables use level indexing: the variables
of context ``n`` are ``x0 .. x(n-1)`` and extending the context by one
appends ``xn`` without renumbering anything, so a term well-formed in ``n``
is literally the same value in ``n + 1``.

A :class:`Sub` with ``dom=m`` and ``cod=n`` is a tuple of ``n`` terms in
``m`` variables.  Read contravariantly it is a morphism ``n -> m`` of the
Lawvere theory; read covariantly it is a morphism ``m -> n`` of the
contextual category.  This module always uses the second reading, and
composition is written in diagrammatic order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import BudgetExceeded, DimensionError, MalformedTermError

DEFAULT_REWRITE_BUDGET = 10_000


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        return f"{self.op}({','.join(map(str, self.args))})"


Term = Union[Var, App]


@dataclass(frozen=True)
class Signature:
    ops: tuple[tuple[str, int], ...] = ()
    _arity: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ops = tuple((str(name), int(arity)) for name, arity in self.ops)
        object.__setattr__(self, "ops", ops)
        arity = {}
        for name, a in ops:
            if name in arity:
                raise ValueError(f"duplicate operation symbol {name!r}")
            if a < 0:
                raise ValueError(f"negative arity for {name!r}")
            arity[name] = a
        object.__setattr__(self, "_arity", arity)

    def arity(self, name: str) -> int:
        return self._arity[name]

    def __contains__(self, name):
        return name in self._arity

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.ops)


def max_var(t: Term) -> int:
    """Largest variable index occurring in ``t``, or -1 if it is closed."""
    if isinstance(t, Var):
        return t.index
    return max((max_var(a) for a in t.args), default=-1)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def nesting(t: Term) -> int:
    """App-nesting depth: how many applications sit inside another one.

    Variables, constants and applications to variables only all have
    nesting 0; ``m(x0, m(x0, x0))`` has nesting 1.
    """
    if isinstance(t, Var):
        return 0
    inner = [nesting(a) + 1 for a in t.args if isinstance(a, App)]
    return max(inner, default=0)


def wf_term(t: Term, sig: Signature, ctx: int) -> bool:
    if isinstance(t, Var):
        return 0 <= t.index < ctx
    if not isinstance(t, App) or t.op not in sig:
        return False
    if len(t.args) != sig.arity(t.op):
        return False
    return all(wf_term(a, sig, ctx) for a in t.args)


@dataclass(frozen=True)
class Sub:
    dom: int
    cod: int
    components: tuple = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if self.dom < 0 or self.cod < 0:
            raise DimensionError(f"negative context in Sub {self.dom}->{self.cod}")
        if len(comps) != self.cod:
            raise DimensionError(f"Sub {self.dom}->{self.cod} has {len(comps)} components")
        for c in comps:
            if max_var(c) >= self.dom:
                raise MalformedTermError(f"component {c} is not in context {self.dom}")

    def __str__(self):
        return f"[{self.dom}] " + ", ".join(map(str, self.components)) if self.cod else f"[{self.dom}]"


def identity_sub(n: int) -> Sub:
    return Sub(n, n, tuple(Var(i) for i in range(n)))


def _subst(t: Term, comps: tuple, n: int) -> Term:
    if isinstance(t, Var):
        if not 0 <= t.index < n:
            raise MalformedTermError(f"variable x{t.index} is outside context {n}")
        return comps[t.index]
    return App(t.op, tuple(_subst(a, comps, n) for a in t.args))


def apply_sub(t: Term, f: Sub) -> Term:
    """Replace ``x_j`` in ``t`` by ``f.components[j]``; ``t`` lives in ``f.cod``."""
    return _subst(t, f.components, f.cod)


def compose(f: Sub, g: Sub) -> Sub:
    """Diagrammatic composite ``f ; g`` of ``f: a -> b`` and ``g: b -> c``."""
    if f.cod != g.dom:
        raise DimensionError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    return Sub(f.dom, g.cod, tuple(_subst(t, f.components, f.cod) for t in g.components))


# -- rewriting ---------------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    ctx: int
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if isinstance(self.lhs, Var):
            raise MalformedTermError(f"rule lhs may not be a bare variable: {self.lhs}")
        if max(max_var(self.lhs), max_var(self.rhs)) >= self.ctx:
            raise MalformedTermError(f"rule {self} is not in context {self.ctx}")
        extra = variables(self.rhs) - variables(self.lhs)
        if extra:
            raise MalformedTermError(f"rhs of {self} uses variables absent from the lhs: {sorted(extra)}")

    def __str__(self):
        return f"[{self.ctx}] {self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class RewriteSystem:
    """Rewrite rules that the user asserts are terminating and confluent."""

    rules: tuple[RewriteRule, ...] = ()
    budget: int = DEFAULT_REWRITE_BUDGET
    # normal forms already computed; never part of equality or hashing
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __bool__(self):
        return bool(self.rules)


def _match(pattern: Term, t: Term, env: dict) -> bool:
    if isinstance(pattern, Var):
        bound = env.get(pattern.index)
        if bound is None:
            env[pattern.index] = t
            return True
        return bound == t
    if not isinstance(t, App) or t.op != pattern.op or len(t.args) != len(pattern.args):
        return False
    return all(_match(p, a, env) for p, a in zip(pattern.args, t.args))


def _instantiate(t: Term, env: dict) -> Term:
    if isinstance(t, Var):
        return env[t.index]
    return App(t.op, tuple(_instantiate(a, env) for a in t.args))


class _Steps:
    __slots__ = ("left", "origin")

    def __init__(self, budget, origin):
        self.left = budget
        self.origin = origin


def _norm(t: Term, rules, steps: _Steps) -> Term:
    if isinstance(t, Var):
        return t
    t = App(t.op, tuple(_norm(a, rules, steps) for a in t.args))
    for rule in rules:
        env: dict = {}
        if _match(rule.lhs, t, env):
            steps.left -= 1
            if steps.left < 0:
                raise BudgetExceeded(f"rewrite budget exhausted while normalizing {steps.origin}")
            return _norm(_instantiate(rule.rhs, env), rules, steps)
    return t


def normalize(t: Term, rws: Optional[RewriteSystem], budget: Optional[int] = None) -> Term:
    """Leftmost-innermost normal form of ``t``; rules are tried in order."""
    if not rws:
        return t
    if budget is None:
        nf = rws._memo.get(t)
        if nf is None:
            nf = rws._memo[t] = _norm(t, rws.rules, _Steps(rws.budget, t))
        return nf
    return _norm(t, rws.rules, _Steps(budget, t))


def normalize_sub(f: Sub, rws: Optional[RewriteSystem]) -> Sub:
    if not rws:
        return f
    return Sub(f.dom, f.cod, tuple(normalize(c, rws) for c in f.components))


def sub_eq(f: Sub, g: Sub, rws: Optional[RewriteSystem] = None) -> bool:
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise DimensionError(f"comparing {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    if f == g:
        return True
    return all(normalize(a, rws) == normalize(b, rws) for a, b in zip(f.components, g.components))


# -- presentations -------------------------------------------------------------


@dataclass(frozen=True)
class Equation:
    ctx: int
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"[{self.ctx}] {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class TheoryPresentation:
    signature: Signature
    equations: tuple[Equation, ...] = ()
    rewrites: Optional[RewriteSystem] = None
    name: str = "T"

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        self.validate()

    def validate(self):
        for eq in self.all_equations():
            for side in (eq.lhs, eq.rhs):
                if not wf_term(side, self.signature, eq.ctx):
                    raise MalformedTermError(f"equation {eq} is not well formed")

    def all_equations(self) -> tuple[Equation, ...]:
        """Declared equations followed by the equations underlying each rule, without repeats."""
        rules = self.rewrites.rules if self.rewrites else ()
        out = self.equations + tuple(Equation(r.ctx, r.lhs, r.rhs) for r in rules)
        return tuple(dict.fromkeys(out))


# -- enumeration and sampling --------------------------------------------------


def enumerate_terms(sig: Signature, ctx: int, depth: int) -> list[Term]:
    """All terms in context ``ctx`` with App-nesting at most ``depth``.

    Order: variables by index, then each operation in signature order with
    its argument tuples in lexicographic order of the previous level.
    """
    variables_ = [Var(i) for i in range(ctx)]
    level: list[Term] = variables_
    for _ in range(depth + 1):
        nxt = list(variables_)
        for name, arity in sig.ops:
            nxt.extend(App(name, args) for args in itertools.product(level, repeat=arity))
        level = nxt
    return level


def count_terms(sig: Signature, ctx: int, depth: int) -> int:
    n = ctx
    for _ in range(depth + 1):
        n = ctx + sum(n**a for _, a in sig.ops)
    return n


def random_term(sig: Signature, ctx: int, depth: int, rng: random.Random) -> Optional[Term]:
    """A random term with nesting at most ``depth``, or None if there is none."""
    closed = any(a == 0 for _, a in sig.ops)
    ops = [(n, a) for n, a in sig.ops if a == 0 or ctx > 0 or (depth > 0 and closed)]
    choices = ctx + len(ops)
    if choices == 0:
        return None
    k = rng.randrange(choices)
    if k < ctx:
        return Var(k)
    name, arity = ops[k - ctx]
    if depth > 0:
        args = tuple(random_term(sig, ctx, depth - 1, rng) for _ in range(arity))
    else:
        args = tuple(Var(rng.randrange(ctx)) for _ in range(arity))
    return App(name, args)


def random_sub(sig: Signature, dom: int, cod: int, depth: int, rng: random.Random) -> Optional[Sub]:
    comps = []
    for _ in range(cod):
        t = None
        for _attempt in range(20):
            t = random_term(sig, dom, depth, rng)
            if t is not None:
                break
        if t is None:
            return None
        comps.append(t)
    return Sub(dom, cod, tuple(comps))


def iter_subs(terms: list[Term], dom: int, cod: int) -> Iterator[Sub]:
    for comps in itertools.product(terms, repeat=cod):
        yield Sub(dom, cod, comps)


def subs_from_terms(rows: Iterable[Iterable[Term]], dom: int) -> list[Sub]:
    return [Sub(dom, len(tuple(r)), tuple(r)) for r in rows]
