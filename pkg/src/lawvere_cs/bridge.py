"""Translations between Lawvere structures and l-bijective C-systems.

``lc`` builds (l, pt, ft, p, q, s) out of a Lawvere structure using only
``mor_map`` and ``merge``.  ``cl`` goes the other way using only the
C-system operations: projections ``pi(n, i)`` are built from ``p`` and
``q``, and the image of a finite function is assembled one point at a time
with pullback mediators.  Neither direction peeks at terms, so comparing
``cl(lc(L))`` with ``L`` is a real test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .csystem import CSystem, LBCSystem, mediator, term_csystem
from .errors import DimensionError, PreconditionError
from .report import CheckReport, ProbeSpec, capped, pairs, probe_mors
from .terms import App, Sub, Term, TheoryPresentation, Var, _subst, normalize, wf_term
from .theory import (
    FinFun,
    HomFamily,
    LawvereStructure,
    all_finfuns,
    finfun_compose,
    ii1,
    ii2,
    term_lawvere,
)

# -- Lawvere structure -> C-system -------------------------------------------------


class LCSystem(LBCSystem):
    """The C-system of a Lawvere structure."""

    def __init__(self, L: LawvereStructure):
        super().__init__(L.hom)
        self.L = L

    # images of the two coproduct injections; a mutation hook for tests
    def inj1(self, m, n):
        return self.L.mor_map(ii1(m, n))

    def inj2(self, m, n):
        return self.L.mor_map(ii2(m, n))

    def p(self, n):
        if n == 0:
            return self.identity(0)
        return self.inj1(n - 1, 1)

    def q(self, f, n):
        self._need_q(f, n)
        m = self.dom(f)
        return self.L.merge(self.compose(self.p(m + 1), f), self.inj2(m, 1))

    def s(self, f):
        self._need_s(f)
        m, n = self.dom(f), self.cod(f)
        return self.L.merge(self.identity(m), self.compose(f, self.inj2(n - 1, 1)))

    def terminal(self, n):
        return self.L.terminal(n)


def lc(L: LawvereStructure) -> LCSystem:
    return LCSystem(L)


# -- C-system -> Lawvere structure -------------------------------------------------


def pi(C: CSystem, n: int, i: int):
    """The i-th projection ``n -> 1`` built from ``p`` and ``q``."""
    if not 0 <= i < n:
        raise DimensionError(f"projection index {i} out of range for {n}")
    if i == n - 1:
        if n == 1:
            return C.identity(1)
        return C.q(C.terminal(n - 1), 1)
    return C.compose(C.p(n), pi(C, n - 1, i))


def cl_mor(C: CSystem, f: FinFun, _cache: dict | None = None):
    """The morphism ``n -> m`` of ``C`` assigned to ``f: m -> n``."""
    cache = {} if _cache is None else _cache
    if f in cache:
        return cache[f]
    m, n = f.m, f.n
    if m == 0:
        h = C.terminal(n)
    elif m == 1:
        h = pi(C, n, f(0))
    else:
        a = cl_mor(C, finfun_compose(ii1(m - 1, 1), f), cache)
        b = cl_mor(C, finfun_compose(ii2(m - 1, 1), f), cache)
        h = mediator(C, a, b, C.terminal(m - 1), 1)
    cache[f] = h
    return h


class CSystemHom(HomFamily):
    """The underlying category of an l-bijective C-system."""

    def __init__(self, C: CSystem):
        self.C = C
        self.name = getattr(C, "name", "C")
        self.complete = C.complete_homs

    def identity(self, n):
        return self.C.identity(n)

    def compose(self, f, g):
        return self.C.compose(f, g)

    def dom(self, f):
        return self.C.dom(f)

    def cod(self, f):
        return self.C.cod(f)

    def canon(self, f):
        return self.C.canon(f)

    def eq(self, f, g):
        return self.C.eq(f, g)

    def homs(self, m, n, probe):
        return self.C.homs(m, n, probe)

    def sample(self, m, n, rng, probe):
        return self.C.sample(m, n, rng, probe)

    def show(self, f):
        return self.C.show(f)


class CLLawvere(LawvereStructure):
    """The Lawvere structure of an l-bijective C-system."""

    def __init__(self, C: CSystem):
        self.C = C
        self.hom = CSystemHom(C)
        self._mors: dict = {}

    def mor_map(self, f):
        return cl_mor(self.C, f, self._mors)

    def merge(self, u, v):
        C = self.C
        if C.dom(u) != C.dom(v):
            raise DimensionError(f"merge of morphisms out of {C.dom(u)} and {C.dom(v)}")
        m, n = C.cod(u), C.cod(v)
        w = u
        for j in range(n):
            w = mediator(C, w, C.compose(v, pi(C, n, j)), C.terminal(m + j), 1)
        return w


def cl(C: CSystem) -> CLLawvere:
    return CLLawvere(C)


# -- comparisons -------------------------------------------------------------------


def compare_lawvere(L1: LawvereStructure, L2: LawvereStructure, probe: ProbeSpec,
                    rep: CheckReport | None = None) -> CheckReport:
    """``L1`` and ``L2`` agree on every finite function and on sampled merges."""
    rep = CheckReport() if rep is None else rep
    hom, show = L1.hom, L1.hom.show
    M = probe.max_fin
    rep.note("RT.objects", f"n<={probe.max_n} identity on objects", "pass")
    for m in range(M + 1):
        for n in range(M + 1):
            for f in all_finfuns(m, n):
                rep.attempt(
                    "RT.mor_map", f"m={m},n={n}",
                    lambda: hom.eq(L1.mor_map(f), L2.mor_map(f)),
                    lambda: {"f": str(f), "left": show(L1.mor_map(f)), "right": show(L2.mor_map(f))},
                )
    rng = probe.rng("compare-lawvere")
    N = probe.max_n
    for k in range(N + 1):
        for m in range(N + 1):
            for n in range(N + 1 - m):
                us, _ = probe_mors(hom, k, m, probe, rng)
                vs, _ = probe_mors(hom, k, n, probe, rng)
                if not us or not vs:
                    continue
                for u, v in pairs(us, vs, probe.samples, rng):
                    rep.attempt(
                        "RT.merge", f"k={k},m={m},n={n}",
                        lambda: hom.eq(L1.merge(u, v), L2.merge(u, v)),
                        lambda: {"u": show(u), "v": show(v)},
                    )
    return rep


def compare_csystems(C1: CSystem, C2: CSystem, probe: ProbeSpec,
                     rep: CheckReport | None = None, prefix: str = "RT") -> CheckReport:
    """Field-by-field agreement of two C-system structures on one category."""
    rep = CheckReport() if rep is None else rep
    sh = C1.show
    objs = C1.probe_objects(probe)
    rep.record(f"{prefix}.pt", "pt", C1.pt == C2.pt, {"left": str(C1.pt), "right": str(C2.pt)})
    for X in objs:
        g = f"X={C1.show_obj(X)}"
        rep.attempt(f"{prefix}.length", g, lambda: C1.length(X) == C2.length(X))
        rep.attempt(f"{prefix}.ft", g, lambda: C1.ft(X) == C2.ft(X))
        rep.attempt(f"{prefix}.p", g, lambda: C1.eq(C1.p(X), C2.p(X)),
                    lambda: {"X": C1.show_obj(X), "left": sh(C1.p(X)), "right": sh(C2.p(X))})
        rep.attempt(f"{prefix}.terminal", g, lambda: C1.eq(C1.terminal(X), C2.terminal(X)))

    rng = probe.rng(f"compare-{prefix}")
    pos = [X for X in objs if C1.length(X) > 0]
    yx = [(Y, X) for X in pos for Y in objs]
    per = probe.per_pair(len(yx))
    for Y, X in yx:
        g = f"Y={C1.show_obj(Y)},X={C1.show_obj(X)}"
        fs, ex = probe_mors(C1, Y, C1.ft(X), probe, rng, cap=probe.exhaust_limit)
        for f in fs if ex else capped(fs, probe, rng, cap=per):
            rep.attempt(
                f"{prefix}.q", g,
                lambda: C1.fstar(f, X) == C2.fstar(f, X) and C1.eq(C1.q(f, X), C2.q(f, X)),
                lambda: {"f": sh(f), "X": C1.show_obj(X), "left": sh(C1.q(f, X)), "right": sh(C2.q(f, X))},
            )
        ss, ex = probe_mors(C1, Y, X, probe, rng, cap=probe.exhaust_limit)
        for f in ss if ex else capped(ss, probe, rng, cap=per):
            rep.attempt(
                f"{prefix}.s", g,
                lambda: C1.eq(C1.s(f), C2.s(f)),
                lambda: {"f": sh(f), "left": sh(C1.s(f)), "right": sh(C2.s(f))},
            )
    return rep


def roundtrip_lawvere(L: LawvereStructure, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    return compare_lawvere(L, cl(lc(L)), probe)


def roundtrip_csystem(C: CSystem, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    return compare_csystems(C, lc(cl(C)), probe)


def roundtrip(obj, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """Round trip a Lawvere structure, a C-system, or an assignment."""
    if isinstance(obj, LawvereStructure):
        return roundtrip_lawvere(obj, probe)
    if isinstance(obj, CSystem):
        return roundtrip_csystem(obj, probe)
    if isinstance(obj, OpAssignment):
        return roundtrip_assignment(obj, probe)
    raise TypeError(f"cannot round-trip {type(obj).__name__}")


def check_projections(C: CSystem, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """``cl_mor(f) ; pi(m, i) = pi(n, f(i))`` for every ``f: m -> n`` in bounds."""
    rep = CheckReport()
    cache: dict = {}
    M = probe.max_fin
    for n in range(1, M + 1):
        pis = [pi(C, n, j) for j in range(n)]
        for m in range(1, M + 1):
            for f in all_finfuns(m, n):
                for i in range(m):
                    rep.attempt(
                        "PI.projection", f"m={m},n={n}",
                        lambda: C.eq(C.compose(cl_mor(C, f, cache), pi(C, m, i)), pis[f(i)]),
                        lambda: {"f": str(f), "i": i, "L_f": C.show(cl_mor(C, f, cache))},
                    )
    return rep


def check_joint_monicity(C: CSystem, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """Morphisms into ``m`` are determined by their composites with the projections.

    Only hom-sets that enumerate completely are examined.
    """
    rep = CheckReport()
    M = probe.max_fin
    rng = probe.rng("monic")
    for m in range(M + 1):
        pis = [pi(C, m, i) for i in range(m)]
        for n in range(M + 1):
            hs, exhaustive = probe_mors(C, n, m, probe, rng, cap=probe.exhaust_limit)
            if not exhaustive:
                rep.note("PI.monic", f"n={n},m={m}", "skip", {"reason": "hom-set not enumerable"})
                continue
            seen: dict = {}
            for h in {C.canon(h): h for h in hs}.values():
                key = tuple(C.canon(C.compose(h, p)) for p in pis)
                other = seen.get(key)
                rep.record("PI.monic", f"n={n},m={m}", other is None,
                           lambda: {"f": C.show(other), "g": C.show(h)})
                seen.setdefault(key, h)
    return rep


# -- theory morphisms ------------------------------------------------------------


@dataclass(frozen=True)
class OpAssignment:
    """Each source operation of arity r sent to a target term in r variables."""

    source: TheoryPresentation
    target: TheoryPresentation
    images: dict = field(default_factory=dict)

    def term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return t
        args = tuple(self.term(a) for a in t.args)
        return _subst(self.images[t.op], args, len(args))

    def sub(self, f: Sub) -> Sub:
        return Sub(f.dom, f.cod, tuple(self.term(c) for c in f.components))


def identity_assignment(pres: TheoryPresentation) -> OpAssignment:
    return OpAssignment(pres, pres, {
        name: App(name, tuple(Var(i) for i in range(a))) for name, a in pres.signature.ops
    })


def compose_assignments(A: OpAssignment, B: OpAssignment) -> OpAssignment:
    """First ``A`` then ``B``."""
    return OpAssignment(A.source, B.target, {op: B.term(t) for op, t in A.images.items()})


def check_assignment(A: OpAssignment) -> CheckReport:
    rep = CheckReport()
    sig, tsig = A.source.signature, A.target.signature
    for name, a in sig.ops:
        img = A.images.get(name)
        rep.record("assign.arity", name, img is not None and wf_term(img, tsig, a),
                   lambda: {"op": name, "arity": a, "image": None if img is None else str(img)})
    if not rep.ok:
        return rep
    rws = A.target.rewrites
    for eq in A.source.all_equations():
        lhs, rhs = A.term(eq.lhs), A.term(eq.rhs)
        ok = normalize(lhs, rws) == normalize(rhs, rws)
        rep.record("assign.equation", str(eq), ok, lambda: {
            "equation": str(eq), "lhs": str(lhs), "rhs": str(rhs),
            "lhs normal form": str(normalize(lhs, rws)), "rhs normal form": str(normalize(rhs, rws)),
        })
    return rep


@dataclass(frozen=True)
class Functor:
    """Identity-on-lengths map between two categories with a morphism function."""

    source: Any
    target: Any
    mor: Callable
    obj: Callable = lambda n: n


def assignment_to_functor(A: OpAssignment, check: bool = True):
    """The theory morphism and the C-system homomorphism induced by ``A``.

    Both share one morphism function; only the source and target wrappers differ.
    """
    if check:
        rep = check_assignment(A)
        if not rep.ok:
            bad = rep.failures()[0]
            raise PreconditionError(f"assignment is not a theory morphism: {bad.witness}")
    theory_view = Functor(term_lawvere(A.source), term_lawvere(A.target), A.sub)
    cs_view = Functor(term_csystem(A.source), term_csystem(A.target), A.sub)
    return theory_view, cs_view


def check_lawvere_morphism(G: Functor, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """``G`` commutes with the two ``mor_map``s and with composition on probes."""
    L1, L2 = G.source, G.target
    rep = CheckReport()
    for m in range(probe.max_fin + 1):
        for n in range(probe.max_fin + 1):
            for f in all_finfuns(m, n):
                rep.attempt("G.preserves-L", f"m={m},n={n}",
                            lambda: L2.hom.eq(G.mor(L1.mor_map(f)), L2.mor_map(f)),
                            lambda: {"f": str(f)})
    _functor_laws(G, L1.hom, L2.hom, probe, rep, "G")
    return rep


def _functor_laws(H: Functor, c1, c2, probe, rep, tag):
    rng = probe.rng(f"{tag}-functor")
    N = probe.max_n
    for n in range(N + 1):
        rep.attempt(f"{tag}.identity", f"n={n}", lambda: c2.eq(H.mor(c1.identity(n)), c2.identity(H.obj(n))))
    for _ in range(probe.samples):
        a, b, c = (rng.randrange(N + 1) for _ in range(3))
        f = c1.sample(a, b, rng, probe)
        g = c1.sample(b, c, rng, probe)
        if f is None or g is None:
            continue
        rep.attempt(f"{tag}.composition", "sampled",
                    lambda: c2.eq(H.mor(c1.compose(f, g)), c2.compose(H.mor(f), H.mor(g))),
                    lambda: {"f": c1.show(f), "g": c1.show(g)})


def check_cs_homomorphism(H: Functor, C1: CSystem, C2: CSystem,
                          probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """Compatibility of ``H`` with l, pt, ft, p, q and the projections."""
    rep = CheckReport()
    objs = C1.probe_objects(probe)
    rep.record("H2.pt", "pt", H.obj(C1.pt) == C2.pt, {"H(pt)": str(H.obj(C1.pt))})
    for X in objs:
        g = f"X={C1.show_obj(X)}"
        HX = H.obj(X)
        rep.record("H1.length", g, C2.length(HX) == C1.length(X), lambda: {"X": C1.show_obj(X)})
        rep.attempt("H3.ft", g, lambda: H.obj(C1.ft(X)) == C2.ft(HX), lambda: {"X": C1.show_obj(X)})
        rep.attempt("H4.p", g, lambda: C2.eq(H.mor(C1.p(X)), C2.p(HX)),
                    lambda: {"X": C1.show_obj(X), "H(p_X)": C2.show(H.mor(C1.p(X))), "p_H(X)": C2.show(C2.p(HX))})

    rng = probe.rng("homomorphism")
    pos = [X for X in objs if C1.length(X) > 0]
    for _ in range(probe.samples):
        X, Y = rng.choice(pos), rng.choice(objs)
        f = C1.sample(Y, C1.ft(X), rng, probe)
        if f is None:
            continue
        rep.attempt(
            "H5.q", "sampled (f,X)",
            lambda: C2.fstar(H.mor(f), H.obj(X)) == H.obj(C1.fstar(f, X))
            and C2.eq(H.mor(C1.q(f, X)), C2.q(H.mor(f), H.obj(X))),
            lambda: {"f": C1.show(f), "X": C1.show_obj(X)},
        )

    if isinstance(C1, LBCSystem) and isinstance(C2, LBCSystem):
        for n in range(1, probe.max_n + 1):
            for i in range(n):
                rep.attempt("H.pi", f"n={n}", lambda: C2.eq(H.mor(pi(C1, n, i)), pi(C2, n, i)),
                            lambda: {"n": n, "i": i})
    _functor_laws(H, C1, C2, probe, rep, "H")
    return rep


def roundtrip_assignment(A: OpAssignment, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """Send ``A`` to the C-system side and read its operation images back."""
    rep = CheckReport()
    _, H = assignment_to_functor(A, check=False)
    for name, a in A.source.signature.ops:
        generic = Sub(a, 1, (App(name, tuple(Var(i) for i in range(a))),))
        back = H.mor(generic).components[0]
        rep.record("RT.assignment", name, back == A.images[name],
                   lambda: {"op": name, "image": str(A.images[name]), "recovered": str(back)})
    rep.extend(check_cs_homomorphism(H, H.source, H.target, probe))
    return rep
