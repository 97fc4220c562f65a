"""The l-bijective C-system generated by one object of length 1.

Given ``X`` with ``l(X) = 1`` in any C-system, the tower
``X^0 = pt``, ``X^(n+1) = (terminal of X^n)^* X`` is closed under ft and
pullback along morphisms between tower objects, so the full subcategory on
the tower is an l-bijective C-system indexed by n.
"""

from __future__ import annotations

from .csystem import CSystem, LBCSystem
from .errors import DimensionError
from .report import CheckReport, ProbeSpec, probe_mors
from .theory import HomFamily


class Tower:
    def __init__(self, base: CSystem, X):
        if base.length(X) != 1:
            raise DimensionError(f"tower base object must have length 1, got {base.length(X)}")
        self.base = base
        self.X = X
        self._objs = [base.pt, X]
        self._level = {base.pt: 0, X: 1}

    def __getitem__(self, n: int):
        while len(self._objs) <= n:
            prev = self._objs[-1]
            nxt = self.base.fstar(self.base.terminal(prev), self.X)
            self._level.setdefault(nxt, len(self._objs))
            self._objs.append(nxt)
        return self._objs[n]

    def level(self, obj) -> int:
        return self._level[obj]


def x_star(T: Tower, n: int):
    return T[n]


class TowerHom(HomFamily):
    """Base morphisms between tower objects, graded by tower level."""

    def __init__(self, T: Tower):
        self.T = T
        self.base = T.base
        self.name = f"{getattr(T.base, 'name', 'C')}_X"
        self.complete = T.base.complete_homs

    def identity(self, n):
        return self.base.identity(self.T[n])

    def compose(self, f, g):
        return self.base.compose(f, g)

    def dom(self, f):
        return self.T.level(self.base.dom(f))

    def cod(self, f):
        return self.T.level(self.base.cod(f))

    def canon(self, f):
        return self.base.canon(f)

    def homs(self, m, n, probe):
        return self.base.homs(self.T[m], self.T[n], probe)

    def hom_count(self, m, n):
        hs = self.base.homs(self.T[m], self.T[n], ProbeSpec(exhaust_limit=10**6))
        return None if hs is None else len({self.base.canon(h) for h in hs})

    def sample(self, m, n, rng, probe):
        return self.base.sample(self.T[m], self.T[n], rng, probe)

    def show(self, f):
        return self.base.show(f)


class SubsystemCSystem(LBCSystem):
    def __init__(self, T: Tower):
        super().__init__(TowerHom(T))
        self.tower = T
        self.base = T.base

    def p(self, n):
        return self.base.p(self.tower[n])

    def fstar(self, f, n):
        m = super().fstar(f, n)
        self.tower[m]
        return m

    def q(self, f, n):
        self._need_q(f, n)
        return self.base.q(f, self.tower[n])

    def s(self, f):
        self._need_s(f)
        return self.base.s(f)

    def terminal(self, n):
        return self.base.terminal(self.tower[n])


def generate_subsystem(T: Tower) -> SubsystemCSystem:
    return SubsystemCSystem(T)


def check_closure(T: Tower, probe: ProbeSpec = ProbeSpec()) -> CheckReport:
    """ft and pullback along tower morphisms stay inside the tower."""
    base = T.base
    rep = CheckReport()
    rng = probe.rng("closure")
    for n in range(probe.max_n + 1):
        rep.attempt("CX.length", f"n={n}", lambda: base.length(T[n]) == n)
        if n > 0:
            rep.attempt("CX.ft", f"n={n}", lambda: base.ft(T[n]) == T[n - 1],
                        lambda: {"ft": base.show_obj(base.ft(T[n])), "expected": base.show_obj(T[n - 1])})
        for m in range(probe.max_n + 1):
            if n == 0:
                continue
            fs, _ = probe_mors(base, T[m], T[n - 1], probe, rng)
            for f in fs[: probe.per_pair(probe.max_n + 1)]:
                rep.attempt("CX.fstar", f"m={m},n={n}", lambda: base.fstar(f, T[n]) == T[m + 1],
                            lambda: {"f": base.show(f), "f*X": base.show_obj(base.fstar(f, T[n]))})
    return rep
