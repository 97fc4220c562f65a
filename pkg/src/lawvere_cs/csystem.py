"""C-system structures (l, pt, ft, p, q, s) and their axiom checker.

:class:`CSystem` is the generic interface; objects may be anything hashable.
:class:`LBCSystem` specialises it to l-bijective systems whose objects are
the natural numbers, backed by a :class:`~lawvere_cs.theory.HomFamily`.

Axioms checked by :func:`check_csystem`:

A1  the only object of length 0 is pt
A2  l(ft X) = l(X) - 1 for l(X) > 0, and ft(pt) = pt
A3  pt is final
A4  p_X : X -> ft X, and p_pt = id
A5  for f: Y -> ft X, l(f*X) = l(Y) + 1, ft(f*X) = Y and q(f,X);p_X = p_{f*X};f
A6  id*X = X and q(id, X) = id
A7  (g;f)*X = g*(f*X) and q(g;f, X) = q(g, f*X);q(f, X)
A8  s_f is a section of p with s_f;q(f;p_X, X) = f, and the canonical
    squares are pullbacks (mediators exist and are unique)
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import defaultdict

from .errors import DimensionError, PreconditionError
from .report import CheckReport, ProbeSpec, capped, probe_mors
from .terms import Sub, TheoryPresentation, Var
from .theory import HomFamily, TermHom


class CSystem(ABC):
    name = "C"
    # True when homs() returns genuinely complete hom-sets
    complete_homs = False

    # category
    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def dom(self, f): ...

    @abstractmethod
    def cod(self, f): ...

    def canon(self, f):
        return f

    def eq(self, f, g) -> bool:
        if self.dom(f) != self.dom(g) or self.cod(f) != self.cod(g):
            return False
        return self.canon(f) == self.canon(g)

    def homs(self, Y, X, probe: ProbeSpec):
        return None

    def sample(self, Y, X, rng, probe: ProbeSpec):
        hs = self.homs(Y, X, probe)
        return rng.choice(hs) if hs else None

    def show(self, f) -> str:
        return str(f)

    def show_obj(self, X) -> str:
        return str(X)

    # structure
    @abstractmethod
    def length(self, X) -> int: ...

    @property
    @abstractmethod
    def pt(self): ...

    @abstractmethod
    def ft(self, X): ...

    @abstractmethod
    def p(self, X): ...

    @abstractmethod
    def fstar(self, f, X): ...

    @abstractmethod
    def q(self, f, X): ...

    @abstractmethod
    def s(self, f): ...

    @abstractmethod
    def terminal(self, X): ...

    @abstractmethod
    def probe_objects(self, probe: ProbeSpec) -> list: ...


class LBCSystem(CSystem):
    """An l-bijective C-system: object ``n`` is the unique object of length ``n``."""

    def __init__(self, hom: HomFamily):
        self.hom = hom
        self.name = getattr(hom, "name", "C")
        self.complete_homs = getattr(hom, "complete", False)

    def identity(self, X):
        return self.hom.identity(X)

    def compose(self, f, g):
        return self.hom.compose(f, g)

    def dom(self, f):
        return self.hom.dom(f)

    def cod(self, f):
        return self.hom.cod(f)

    def canon(self, f):
        return self.hom.canon(f)

    def eq(self, f, g):
        return self.hom.eq(f, g)

    def homs(self, Y, X, probe):
        return self.hom.homs(Y, X, probe)

    def sample(self, Y, X, rng, probe):
        return self.hom.sample(Y, X, rng, probe)

    def show(self, f):
        return self.hom.show(f)

    def length(self, X):
        return X

    @property
    def pt(self):
        return 0

    def ft(self, X):
        return max(X - 1, 0)

    def obj(self, n: int):
        return n

    def fstar(self, f, X):
        if X <= 0 or self.cod(f) != X - 1:
            raise DimensionError(f"f* needs f: Y -> ft({X}), got cod {self.cod(f)}")
        return self.dom(f) + 1

    def probe_objects(self, probe):
        return list(range(probe.max_n + 1))

    def _need_q(self, f, X):
        if X <= 0:
            raise DimensionError("q(f, X) needs l(X) > 0")
        if self.cod(f) != X - 1:
            raise DimensionError(f"q(f, {X}) needs f into {X - 1}, got {self.cod(f)}")

    def _need_s(self, f):
        if self.cod(f) <= 0:
            raise DimensionError("s_f needs f into an object of positive length")


class TermCSystem(LBCSystem):
    """The syntactic C-system of a presentation, by closed formulas."""

    def __init__(self, pres: TheoryPresentation):
        super().__init__(TermHom(pres))
        self.pres = pres

    def p(self, n):
        if n == 0:
            return self.identity(0)
        return Sub(n, n - 1, tuple(Var(i) for i in range(n - 1)))

    def q(self, f, n):
        self._need_q(f, n)
        return Sub(f.dom + 1, n, f.components + (Var(f.dom),))

    def s(self, f):
        self._need_s(f)
        m = f.dom
        return Sub(m, m + 1, tuple(Var(i) for i in range(m)) + (f.components[-1],))

    def terminal(self, n):
        return Sub(n, 0, ())


def term_csystem(pres: TheoryPresentation) -> TermCSystem:
    pres.validate()
    return TermCSystem(pres)


def mediator(C: CSystem, a, b, f, X):
    """The unique ``h: Z -> f*X`` with ``h;p_{f*X} = a`` and ``h;q(f,X) = b``.

    ``a: Z -> Y``, ``b: Z -> X`` and ``f: Y -> ft X`` must satisfy
    ``a;f = b;p_X``.  Computed as ``s_b ; q(a, f*X)``.
    """
    if C.length(X) == 0:
        raise PreconditionError("mediator needs l(X) > 0")
    left, right = C.compose(a, f), C.compose(b, C.p(X))
    if not C.eq(left, right):
        raise PreconditionError(
            f"square does not commute: a;f = {C.show(left)} but b;p_X = {C.show(right)}"
        )
    return C.compose(C.s(b), C.q(a, C.fstar(f, X)))


# -- the axiom checker ------------------------------------------------------------


def check_csystem(C: CSystem, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    rep = CheckReport()
    rng = probe.rng("csystem")
    objs = C.probe_objects(probe)
    pos = [X for X in objs if C.length(X) > 0]
    sh, so = C.show, C.show_obj

    # A1
    zero = [X for X in objs if C.length(X) == 0]
    rep.record("A1", "objects of length 0", zero == [C.pt] and C.length(C.pt) == 0,
               lambda: {"length-0 objects": [so(X) for X in zero]})

    for X in objs:
        g = f"X={so(X)}"
        # A2
        if C.length(X) > 0:
            rep.attempt("A2", g, lambda: C.length(C.ft(X)) == C.length(X) - 1)
        else:
            rep.attempt("A2", g, lambda: C.ft(X) == C.pt)
        # A3
        t = C.terminal(X)
        rep.record("A3", g, C.dom(t) == X and C.cod(t) == C.pt, lambda: {"X": so(X), "terminal": sh(t)})
        others, exhaustive = probe_mors(C, X, C.pt, probe, rng)
        if exhaustive:
            n = len({C.canon(h) for h in others})
            rep.record("A3", g, n == 1, lambda: {"X": so(X), "morphisms to pt": n})
        for h in others:
            rep.record("A3", g, C.eq(h, t), lambda: {"X": so(X), "other": sh(h), "terminal": sh(t)})
        # A4
        pX = C.p(X)
        rep.record("A4", g, C.dom(pX) == X and C.cod(pX) == C.ft(X), lambda: {"X": so(X), "p": sh(pX)})
        if C.length(X) == 0:
            rep.record("A4", g, C.eq(pX, C.identity(X)), lambda: {"p_pt": sh(pX)})

    # A5, A8.section
    yx = capped([(Y, X) for X in pos for Y in objs], probe, rng)
    for Y, X in yx:
        grp = f"Y={so(Y)},X={so(X)}"
        fs, _ = probe_mors(C, Y, C.ft(X), probe, rng)
        for f in fs:
            rep.attempt("A5", grp, lambda: _a5(C, f, X), lambda: {"f": sh(f), "X": so(X)})
        for f in probe_mors(C, Y, X, probe, rng)[0]:
            rep.attempt("A8.section", grp, lambda: _a8_section(C, f, X), lambda: {"f": sh(f), "X": so(X)})

    # A6
    for X in pos:
        i = C.identity(C.ft(X))
        rep.attempt("A6", f"X={so(X)}", lambda: C.fstar(i, X) == X and C.eq(C.q(i, X), C.identity(X)),
                    lambda: {"X": so(X), "q(id,X)": sh(C.q(i, X))})

    # A7 and A8.pullback range over triples Z -> Y -> ft X
    zyx = capped([(Z, Y, X) for X in pos for Y in objs for Z in objs], probe, rng)
    for Z, Y, X in zyx:
        grp = f"Z={so(Z)},Y={so(Y)},X={so(X)}"
        fs, ex = probe_mors(C, Y, C.ft(X), probe, rng)
        gs, _ = probe_mors(C, Z, Y, probe, rng)
        for g, f in _some_pairs(gs, fs, probe, rng):
            rep.attempt("A7", grp, lambda: _a7(C, g, f, X), lambda: {"g": sh(g), "f": sh(f), "X": so(X)})
        # every f on complete finite instances, a few per triple elsewhere
        if not (C.complete_homs and ex):
            fs = capped(fs, probe, rng, cap=max(2, probe.per_pair(len(zyx))))
        for f in fs:
            _a8_pullback(C, Z, Y, X, f, probe, rng, rep, grp)
    return rep


def _some_pairs(xs, ys, probe, rng):
    if len(xs) * len(ys) <= probe.samples:
        return [(x, y) for x in xs for y in ys]
    if not xs or not ys:
        return []
    return [(rng.choice(xs), rng.choice(ys)) for _ in range(probe.samples)]


def _a5(C, f, X):
    fX = C.fstar(f, X)
    Y = C.dom(f)
    q = C.q(f, X)
    return (
        C.length(fX) == C.length(Y) + 1
        and C.ft(fX) == Y
        and C.dom(q) == fX
        and C.cod(q) == X
        and C.eq(C.compose(q, C.p(X)), C.compose(C.p(fX), f))
    )


def _a7(C, g, f, X):
    gf = C.compose(g, f)
    fX = C.fstar(f, X)
    if C.fstar(gf, X) != C.fstar(g, fX):
        return False
    return C.eq(C.q(gf, X), C.compose(C.q(g, fX), C.q(f, X)))


def _a8_section(C, f, X):
    Y = C.dom(f)
    g = C.compose(f, C.p(X))
    target = C.fstar(g, X)
    sf = C.s(f)
    return (
        C.dom(sf) == Y
        and C.cod(sf) == target
        and C.eq(C.compose(sf, C.p(target)), C.identity(Y))
        and C.eq(C.compose(sf, C.q(g, X)), f)
        and C.eq(sf, mediator(C, C.identity(Y), f, g, X))
    )


def _a8_pullback(C, Z, Y, X, f, probe, rng, rep, grp):
    """Canonical square over ``f`` is a pullback, seen from ``Z``.

    With complete hom-sets: ``h -> (h;p, h;q)`` is injective on Hom(Z, f*X)
    and hits every commuting pair.  Otherwise: the mediator formula
    recovers each sampled ``h`` from its two legs.
    """
    sh = C.show
    try:
        fX = C.fstar(f, X)
        P, Q, pX = C.p(fX), C.q(f, X), C.p(X)
    except Exception as exc:
        rep.record("A8.pullback", grp, False, {"f": sh(f), "error": str(exc)})
        return
    limit = probe.exhaust_limit if C.complete_homs else probe.samples * 10
    hs, exhaustive = probe_mors(C, Z, fX, probe, rng, cap=limit)
    if not exhaustive:
        for h in hs[: probe.samples if C.complete_homs else 5]:
            rep.attempt(
                "A8.formula", grp,
                lambda: C.eq(mediator(C, C.compose(h, P), C.compose(h, Q), f, X), h),
                lambda: {"f": sh(f), "h": sh(h)},
            )
        return

    legs: dict = {}
    for h in {C.canon(h): h for h in hs}.values():
        key = (C.canon(C.compose(h, P)), C.canon(C.compose(h, Q)))
        if key in legs:
            rep.record("A8.unique", grp, False, {"f": sh(f), "h1": sh(legs[key]), "h2": sh(h)})
            continue
        legs[key] = h
    rep.record("A8.unique", grp, True)

    as_, ea = probe_mors(C, Z, Y, probe, rng, cap=limit)
    bs, eb = probe_mors(C, Z, X, probe, rng, cap=limit)
    if not (ea and eb):
        return
    by_leg = defaultdict(list)
    for b in {C.canon(b): b for b in bs}.values():
        by_leg[C.canon(C.compose(b, pX))].append(b)
    commuting = []
    for a in {C.canon(a): a for a in as_}.values():
        for b in by_leg.get(C.canon(C.compose(a, f)), ()):
            commuting.append((a, b))
    missing = [(a, b) for a, b in commuting if (C.canon(a), C.canon(b)) not in legs]
    rep.record("A8.exists", grp, not missing,
               lambda: {"f": sh(f), "a": sh(missing[0][0]), "b": sh(missing[0][1])})
    if C.complete_homs:
        rep.record("A8.bijection", grp, len(commuting) == len(legs),
                   lambda: {"f": sh(f), "commuting pairs": len(commuting), "mediators": len(legs)})
    for a, b in capped(commuting, probe, rng, cap=probe.samples if C.complete_homs else 5):
        def law():
            h = mediator(C, a, b, f, X)
            return C.eq(C.compose(h, P), a) and C.eq(C.compose(h, Q), b) and \
                C.canon(h) == C.canon(legs[(C.canon(a), C.canon(b))])

        rep.attempt("A8.formula", grp, law, lambda: {"a": sh(a), "b": sh(b), "f": sh(f)})
