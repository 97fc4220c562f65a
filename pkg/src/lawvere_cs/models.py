"""Finite semantic instances.

* ``clone(k)``: all functions between finite powers of ``U = {0..k-1}``,
  as a hom family, a Lawvere structure and an l-bijective C-system.
* interpretations of a presentation in a clone, and brute-force model
  enumeration.
* telescopes of dependent finite sets, a C-system in which many objects
  share each length.

Elements of ``U^n`` are coded as integers in base ``k`` with the first
coordinate most significant, so a morphism ``m -> n`` is a tuple of
``k^m`` codes.  Telescope morphisms index into the lexicographically
sorted total set of their codomain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .bridge import Functor
from .csystem import CSystem, LBCSystem
from .errors import BudgetExceeded, DimensionError, MalformedTermError
from .terms import Sub, Term, TheoryPresentation, Var
from .theory import HomFamily, LawvereStructure


@dataclass(frozen=True)
class Tab:
    """A morphism given by the value table of a function between finite sets."""

    dom: Any
    cod: Any
    table: tuple = ()

    def __str__(self):
        return f"{self.dom}->{self.cod}{list(self.table)}"


def encode(u: tuple, k: int) -> int:
    c = 0
    for x in u:
        c = c * k + x
    return c


def decode(c: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(n):
        c, x = divmod(c, k)
        out.append(x)
    return tuple(reversed(out))


# -- clones -----------------------------------------------------------------------


class CloneHom(HomFamily):
    complete = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("clone carrier must have at least one element")
        self.k = k
        self.name = f"clone({k})"

    def size(self, n: int) -> int:
        return self.k**n

    def identity(self, n):
        return Tab(n, n, tuple(range(self.size(n))))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise DimensionError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        return Tab(f.dom, g.cod, tuple(g.table[c] for c in f.table))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def hom_count(self, m, n):
        return self.size(n) ** self.size(m)

    def homs(self, m, n, probe):
        if self.hom_count(m, n) > probe.exhaust_limit:
            return None
        return [Tab(m, n, t) for t in itertools.product(range(self.size(n)), repeat=self.size(m))]

    def sample(self, m, n, rng, probe):
        return Tab(m, n, tuple(rng.randrange(self.size(n)) for _ in range(self.size(m))))

    def tabulate(self, m, n, fn) -> Tab:
        """The morphism ``m -> n`` sending each tuple ``u`` to ``fn(u)``."""
        k = self.k
        return Tab(m, n, tuple(encode(fn(decode(c, m, k)), k) for c in range(self.size(m))))


class CloneLawvere(LawvereStructure):
    def __init__(self, hom: CloneHom):
        self.hom = hom

    def mor_map(self, f):
        # reindex coordinates: u |-> (u[f(0)], ..., u[f(m-1)])
        return self.hom.tabulate(f.n, f.m, lambda u: tuple(u[j] for j in f.table))

    def merge(self, u, v):
        if u.dom != v.dom:
            raise DimensionError(f"merge of morphisms out of {u.dom} and {v.dom}")
        kn = self.hom.size(v.cod)
        return Tab(u.dom, u.cod + v.cod, tuple(a * kn + b for a, b in zip(u.table, v.table)))


class CloneCSystem(LBCSystem):
    def __init__(self, hom: CloneHom):
        super().__init__(hom)
        self.k = hom.k

    def p(self, n):
        if n == 0:
            return self.identity(0)
        return Tab(n, n - 1, tuple(c // self.k for c in range(self.hom.size(n))))

    def q(self, f, n):
        self._need_q(f, n)
        k = self.k
        return Tab(f.dom + 1, n, tuple(f.table[c // k] * k + c % k for c in range(self.hom.size(f.dom + 1))))

    def s(self, f):
        self._need_s(f)
        k = self.k
        return Tab(f.dom, f.dom + 1, tuple(c * k + f.table[c] % k for c in range(self.hom.size(f.dom))))

    def terminal(self, n):
        return Tab(n, 0, (0,) * self.hom.size(n))


@dataclass(frozen=True)
class CloneInstance:
    k: int
    hom: CloneHom
    lawvere: CloneLawvere
    csystem: CloneCSystem


def clone(k: int) -> CloneInstance:
    hom = CloneHom(k)
    return CloneInstance(k, hom, CloneLawvere(hom), CloneCSystem(hom))


# -- interpretations ------------------------------------------------------------


@dataclass(frozen=True)
class Interpretation:
    """Operation tables on ``U = {0..k-1}``; ``ops[name]`` is indexed by argument codes."""

    k: int
    ops: tuple = ()  # ((name, table), ...) in signature order

    def table(self, name):
        return dict(self.ops)[name]

    def __str__(self):
        return ", ".join(f"{n}={list(t)}" for n, t in self.ops)


def eval_term(t: Term, I: Interpretation, env: tuple) -> int:
    if isinstance(t, Var):
        if not 0 <= t.index < len(env):
            raise MalformedTermError(f"variable {t} outside an environment of size {len(env)}")
        return env[t.index]
    table = dict(I.ops).get(t.op)
    if table is None:
        raise MalformedTermError(f"operation {t.op} has no interpretation")
    args = tuple(eval_term(a, I, env) for a in t.args)
    if len(table) != I.k ** len(args):
        raise MalformedTermError(f"{t.op} applied to {len(args)} arguments")
    return table[encode(args, I.k)]


def check_model(pres: TheoryPresentation, I: Interpretation) -> bool:
    for eq in pres.all_equations():
        for env in itertools.product(range(I.k), repeat=eq.ctx):
            if eval_term(eq.lhs, I, env) != eval_term(eq.rhs, I, env):
                return False
    return True


def model_failure(pres: TheoryPresentation, I: Interpretation):
    """The first equation and environment refuting ``I``, or None."""
    for eq in pres.all_equations():
        for env in itertools.product(range(I.k), repeat=eq.ctx):
            if eval_term(eq.lhs, I, env) != eval_term(eq.rhs, I, env):
                return eq, env
    return None


def enumerate_models(pres: TheoryPresentation, k: int, budget: int = 10**6) -> list[Interpretation]:
    """Every interpretation on ``k`` elements satisfying all equations, by brute force."""
    if k < 1:
        raise ValueError("model carrier must have at least one element")
    ops = pres.signature.ops
    required = 1
    for _, a in ops:
        required *= k ** (k**a)
    if required > budget:
        raise BudgetExceeded(f"enumerating models on {k} elements needs {required} candidates, budget is {budget}")
    per_op = [list(itertools.product(range(k), repeat=k**a)) for _, a in ops]
    out = []
    for tables in itertools.product(*per_op):
        I = Interpretation(k, tuple(zip((n for n, _ in ops), tables)))
        if check_model(pres, I):
            out.append(I)
    return out


def interpretation_functor(pres: TheoryPresentation, I: Interpretation, target: CloneInstance | None = None) -> Functor:
    """The morphism mapper from substitutions to the clone induced by ``I``."""
    from .csystem import term_csystem

    target = clone(I.k) if target is None else target

    def mor(f: Sub) -> Tab:
        return target.hom.tabulate(f.dom, f.cod, lambda env: tuple(eval_term(t, I, env) for t in f.components))

    return Functor(term_csystem(pres), target.csystem, mor)


# -- telescopes -------------------------------------------------------------------


@dataclass(frozen=True)
class Telescope:
    """A tower of dependent finite sets.

    ``levels[i]`` lists a fiber size for each element of the i-th partial
    total set, in lexicographic order; the 0th partial total set is ``{()}``.
    """

    levels: tuple = ()

    def __post_init__(self):
        levels = tuple(tuple(int(x) for x in lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        width = 1
        for lv in levels:
            if len(lv) != width:
                raise DimensionError(f"telescope level {lv} should have {width} entries")
            if any(x < 0 for x in lv):
                raise DimensionError("fiber sizes must be >= 0")
            width = sum(lv)

    def __len__(self):
        return len(self.levels)

    def __str__(self):
        return "T[" + ";".join(",".join(map(str, lv)) for lv in self.levels) + "]"


@lru_cache(maxsize=None)
def total(X: Telescope) -> tuple:
    elems = [()]
    for lv in X.levels:
        elems = [t + (j,) for t, size in zip(elems, lv) for j in range(size)]
    return tuple(elems)


@lru_cache(maxsize=None)
def index(X: Telescope) -> dict:
    return {t: i for i, t in enumerate(total(X))}


def const_family(b: int, n: int) -> Telescope:
    return Telescope(tuple((b,) * b**i for i in range(n)))


class TelescopeCSystem(CSystem):
    complete_homs = True

    def __init__(self, max_fiber: int = 2, max_total: int = 64):
        self.max_fiber = max_fiber
        self.max_total = max_total
        self.name = f"telescope({max_fiber})"

    def _bounded(self, X: Telescope) -> Telescope:
        if len(total(X)) > self.max_total:
            raise BudgetExceeded(f"telescope {X} has {len(total(X))} elements, bound is {self.max_total}")
        return X

    def identity(self, X):
        return Tab(X, X, tuple(range(len(total(X)))))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise DimensionError(f"cannot compose {f} with {g}")
        return Tab(f.dom, g.cod, tuple(g.table[c] for c in f.table))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def homs(self, Y, X, probe):
        ny, nx = len(total(Y)), len(total(X))
        if nx**ny > probe.exhaust_limit:
            return None
        return [Tab(Y, X, t) for t in itertools.product(range(nx), repeat=ny)]

    def sample(self, Y, X, rng, probe):
        ny, nx = len(total(Y)), len(total(X))
        if nx == 0 and ny > 0:
            return None
        return Tab(Y, X, tuple(rng.randrange(nx) for _ in range(ny)))

    def show_obj(self, X):
        return str(X)

    def length(self, X):
        return len(X)

    @property
    def pt(self):
        return Telescope(())

    def ft(self, X):
        return Telescope(X.levels[:-1])

    def p(self, X):
        if len(X) == 0:
            return self.identity(X)
        F = self.ft(X)
        ix = index(F)
        return Tab(X, F, tuple(ix[t[:-1]] for t in total(X)))

    def fstar(self, f, X):
        if len(X) == 0 or f.cod != self.ft(X):
            raise DimensionError(f"f* needs f into ft({X}), got {f.cod}")
        last = X.levels[-1]
        return self._bounded(Telescope(f.dom.levels + (tuple(last[c] for c in f.table),)))

    def q(self, f, X):
        fX = self.fstar(f, X)
        Y, F = f.dom, f.cod
        iy, ix, tf = index(Y), index(X), total(F)
        return Tab(fX, X, tuple(ix[tf[f.table[iy[t[:-1]]]] + t[-1:]] for t in total(fX)))

    def s(self, f):
        Y, X = f.dom, f.cod
        if len(X) == 0:
            raise DimensionError("s_f needs f into a telescope of positive length")
        target = self.fstar(self.compose(f, self.p(X)), X)
        it, tx = index(target), total(X)
        return Tab(Y, target, tuple(it[y + tx[c][-1:]] for y, c in zip(total(Y), f.table)))

    def terminal(self, X):
        return Tab(X, self.pt, (0,) * len(total(X)))

    def objects(self, n: int) -> list[Telescope]:
        """All telescopes of length ``n`` with fibers of size at most ``max_fiber``."""
        out = [Telescope(())]
        for _ in range(n):
            nxt = []
            for X in out:
                width = len(total(X))
                for lv in itertools.product(range(self.max_fiber + 1), repeat=width):
                    Z = Telescope(X.levels + (lv,))
                    if len(total(Z)) <= self.max_total:
                        nxt.append(Z)
            out = nxt
        return out

    def probe_objects(self, probe):
        return [X for n in range(probe.max_n + 1) for X in self.objects(n)]


def telescope_csystem(max_fiber: int = 2, max_total: int = 64) -> TelescopeCSystem:
    return TelescopeCSystem(max_fiber, max_total)
