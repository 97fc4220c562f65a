"""The category F of finite sets and Lawvere theory structures L: F -> T.

Everything is stored in the orientation of the contextual category
``CC = T^op``: the image of a finite function ``f: m -> n`` is a morphism
``n -> m`` and composites are diagrammatic, so functoriality reads
``L(f ; g) = L(g) ; L(f)``.

The push-out condition is carried operationally by ``merge``: morphisms
``k -> m`` and ``k -> n`` pair up into a single ``k -> m + n``, and
``split`` (precomposition with the images of the two injections) undoes it.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator

from .errors import DimensionError
from .report import CheckReport, ProbeSpec, capped, pairs, probe_mors
from .terms import (
    Sub,
    TheoryPresentation,
    Var,
    compose,
    enumerate_terms,
    identity_sub,
    normalize,
    normalize_sub,
    random_sub,
)


@dataclass(frozen=True)
class FinFun:
    """A function stn(m) -> stn(n) given by its value table."""

    m: int
    n: int
    table: tuple = ()

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.m:
            raise DimensionError(f"FinFun {self.m}->{self.n} needs {self.m} values, got {len(table)}")
        if any(not 0 <= v < self.n for v in table):
            raise DimensionError(f"FinFun table {table} leaves stn({self.n})")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __str__(self):
        return f"{self.m}->{self.n}{list(self.table)}"


def fin_id(m: int) -> FinFun:
    return FinFun(m, m, tuple(range(m)))


def ii1(m: int, n: int) -> FinFun:
    return FinFun(m, m + n, tuple(range(m)))


def ii2(m: int, n: int) -> FinFun:
    return FinFun(n, m + n, tuple(m + j for j in range(n)))


def point(n: int, i: int) -> FinFun:
    """The function stn(1) -> stn(n) picking out ``i``."""
    return FinFun(1, n, (i,))


def finfun_compose(f: FinFun, g: FinFun) -> FinFun:
    if f.n != g.m:
        raise DimensionError(f"cannot compose {f} with {g}")
    return FinFun(f.m, g.n, tuple(g.table[v] for v in f.table))


def all_finfuns(m: int, n: int) -> Iterator[FinFun]:
    for table in itertools.product(range(n), repeat=m):
        yield FinFun(m, n, table)


# -- graded hom families --------------------------------------------------------


class HomFamily(ABC):
    """A category whose objects are the natural numbers."""

    name = "H"

    @abstractmethod
    def identity(self, n: int): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def dom(self, f) -> int: ...

    @abstractmethod
    def cod(self, f) -> int: ...

    def canon(self, f):
        return f

    def eq(self, f, g) -> bool:
        if (self.dom(f), self.cod(f)) != (self.dom(g), self.cod(g)):
            return False
        return self.canon(f) == self.canon(g)

    def homs(self, m: int, n: int, probe: ProbeSpec):
        """All of H(m, n) as a list, or None if it is infinite or too large."""
        return None

    def hom_count(self, m: int, n: int):
        return None

    def sample(self, m: int, n: int, rng, probe: ProbeSpec):
        hs = self.homs(m, n, probe)
        return rng.choice(hs) if hs else None

    def show(self, f) -> str:
        return str(f)


class TermHom(HomFamily):
    """Substitutions of a presented theory, compared modulo its rewrite rules."""

    def __init__(self, pres: TheoryPresentation):
        self.pres = pres
        self.rws = pres.rewrites
        self.name = pres.name
        self._terms: dict = {}

    def identity(self, n):
        return identity_sub(n)

    def compose(self, f, g):
        return compose(f, g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def canon(self, f):
        return normalize_sub(f, self.rws)

    def terms(self, ctx: int, depth: int) -> list:
        key = (ctx, depth)
        if key not in self._terms:
            ts = enumerate_terms(self.pres.signature, ctx, depth)
            if self.rws:
                ts = list(dict.fromkeys(normalize(t, self.rws) for t in ts))
            self._terms[key] = ts
        return self._terms[key]

    def homs(self, m, n, probe):
        ts = self.terms(m, probe.enum_depth)
        if len(ts) ** n > probe.exhaust_limit:
            return None
        return [Sub(m, n, comps) for comps in itertools.product(ts, repeat=n)]

    def sample(self, m, n, rng, probe):
        return random_sub(self.pres.signature, m, n, probe.depth, rng)


# -- Lawvere structures ---------------------------------------------------------


class LawvereStructure(ABC):
    """A functor F -> T that is the identity on objects, in CC orientation."""

    hom: HomFamily

    @abstractmethod
    def mor_map(self, f: FinFun):
        """The image of ``f: m -> n``, a morphism ``n -> m`` of CC."""

    @abstractmethod
    def merge(self, u, v):
        """Pair ``u: k -> m`` and ``v: k -> n`` into ``k -> m + n``."""

    def split(self, w, m: int, n: int):
        if self.hom.cod(w) != m + n:
            raise DimensionError(f"cannot split a morphism into {self.hom.cod(w)} as {m}+{n}")
        return (
            self.hom.compose(w, self.mor_map(ii1(m, n))),
            self.hom.compose(w, self.mor_map(ii2(m, n))),
        )

    def terminal(self, k: int):
        return self.mor_map(FinFun(0, k, ()))


class TermLawvere(LawvereStructure):
    def __init__(self, pres: TheoryPresentation):
        self.pres = pres
        self.hom = TermHom(pres)

    def mor_map(self, f):
        return Sub(f.n, f.m, tuple(Var(j) for j in f.table))

    def merge(self, u, v):
        if u.dom != v.dom:
            raise DimensionError(f"merge of {u.dom}->{u.cod} and {v.dom}->{v.cod}")
        return Sub(u.dom, u.cod + v.cod, u.components + v.components)


def term_lawvere(pres: TheoryPresentation) -> TermLawvere:
    pres.validate()
    return TermLawvere(pres)


def merge_by_points(L: LawvereStructure, u, v):
    """``merge(u, v)`` rebuilt from single-object merges, one point of ``v`` at a time."""
    hom = L.hom
    n = hom.cod(v)
    w = u
    for j in range(n):
        w = L.merge(w, hom.compose(v, L.mor_map(point(n, j))))
    return w


def verify_lawvere(L: LawvereStructure, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """Functor laws, initiality of 0 and the push-out (merge/split) laws on a probe."""
    hom = L.hom
    rep = CheckReport()
    show = hom.show
    N, M = probe.max_n, probe.max_fin

    for m in range(M + 1):
        rep.attempt(
            "L1.identity", f"m={m}",
            lambda: hom.eq(L.mor_map(fin_id(m)), hom.identity(m)),
            lambda: {"m": m, "image": show(L.mor_map(fin_id(m)))},
        )

    for k, m, n in itertools.product(range(M + 1), repeat=3):
        gs = list(all_finfuns(m, n))
        for f in all_finfuns(k, m):
            for g in gs:
                rep.attempt(
                    "L2.composition", f"k={k},m={m},n={n}",
                    lambda: hom.eq(L.mor_map(finfun_compose(f, g)), hom.compose(L.mor_map(g), L.mor_map(f))),
                    lambda: {
                        "f": str(f), "g": str(g),
                        "L(f;g)": show(L.mor_map(finfun_compose(f, g))),
                        "L(g);L(f)": show(hom.compose(L.mor_map(g), L.mor_map(f))),
                    },
                )

    rng = probe.rng("lawvere")
    for k in range(N + 1):
        t = L.terminal(k)
        rep.record("L3.initial", f"k={k}", (hom.dom(t), hom.cod(t)) == (k, 0), lambda: {"k": k, "image": show(t)})
        others, exhaustive = probe_mors(hom, k, 0, probe, rng)
        if exhaustive:
            classes = {hom.canon(x) for x in others}
            rep.record("L3.initial", f"k={k} count", len(classes) == 1, lambda: {"k": k, "count": len(classes)})
        for x in others:
            rep.record("L3.initial", f"k={k}", hom.eq(x, t), lambda: {"k": k, "other": show(x), "image": show(t)})

    for k in range(N + 1):
        for m in range(N + 1):
            for n in range(N + 1 - m):
                _check_pushout(L, k, m, n, probe, rng, rep)
    return rep


def _check_pushout(L, k, m, n, probe, rng, rep):
    hom, show = L.hom, L.hom.show
    grp = f"k={k},m={m},n={n}"
    us, ex_u = probe_mors(hom, k, m, probe, rng, cap=probe.exhaust_limit)
    vs, ex_v = probe_mors(hom, k, n, probe, rng, cap=probe.exhaust_limit)
    for u, v in pairs(us, vs, max(probe.samples, probe.exhaust_limit // 4), rng):
        def law():
            w = L.merge(u, v)
            a, b = L.split(w, m, n)
            return hom.eq(a, u) and hom.eq(b, v)

        rep.attempt("L4.split-merge", grp, law, lambda: {"u": show(u), "v": show(v)})
        rep.attempt(
            "L4.reduction", grp,
            lambda: hom.eq(L.merge(u, v), merge_by_points(L, u, v)),
            lambda: {"u": show(u), "v": show(v), "merge": show(L.merge(u, v)), "by-points": show(merge_by_points(L, u, v))},
        )

    ws, ex_w = probe_mors(hom, k, m + n, probe, rng, cap=probe.exhaust_limit)
    for w in capped(ws, probe, rng, cap=max(probe.samples, probe.exhaust_limit // 4)):
        rep.attempt(
            "L4.merge-split", grp,
            lambda: hom.eq(L.merge(*L.split(w, m, n)), w),
            lambda: {"w": show(w)},
        )

    if ex_w and ex_u and ex_v:
        # unique mediators: split is injective and hits every pair
        seen: dict = {}
        for w in {hom.canon(x): x for x in ws}.values():
            a, b = L.split(w, m, n)
            key = (hom.canon(a), hom.canon(b))
            if key in seen:
                rep.record("L4.unique", grp, False, {"w1": show(seen[key]), "w2": show(w)})
            seen[key] = w
        nu = len({hom.canon(x) for x in us})
        nv = len({hom.canon(x) for x in vs})
        rep.record("L4.unique", grp, len(seen) == nu * nv, lambda: {"mediators": len(seen), "pairs": nu * nv})
