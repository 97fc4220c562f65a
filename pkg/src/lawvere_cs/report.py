"""Probe bounds and check reports shared by every law suite."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from .errors import BudgetExceeded


@dataclass(frozen=True)
class ProbeSpec:
    """Finite bounds for a law-checking run.

    ``max_n`` bounds object lengths, ``max_fin`` bounds the sizes of finite
    functions, ``depth`` bounds the nesting of randomly drawn terms and
    ``enum_depth`` the nesting of enumerated ones.  Hom-sets larger than
    ``exhaust_limit`` are sampled rather than enumerated, and at most
    ``max_tuples`` object tuples are visited per check.
    """

    max_n: int = 3
    max_fin: int = 3
    depth: int = 2
    enum_depth: int = 0
    samples: int = 50
    seed: int = 0
    exhaust_limit: int = 5000
    max_tuples: int = 200
    budget: int = 10**6

    def __post_init__(self):
        for name, value in asdict(self).items():
            if name != "seed" and value < 0:
                raise ValueError(f"probe bound {name} must be >= 0, got {value}")

    def rng(self, salt: str = "") -> random.Random:
        # string seeds hash deterministically (sha512), unlike hash()
        return random.Random(f"{self.seed}:{salt}")

    def per_pair(self, npairs: int) -> int:
        if npairs == 0:
            return 0
        return max(1, math.ceil(self.samples / npairs))


@dataclass(frozen=True)
class CheckEntry:
    check: str
    instance: str
    status: str
    witness: Any = None

    def to_dict(self) -> dict:
        d = {"check": self.check, "instance": self.instance, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d

    def line(self) -> str:
        text = f"{self.status.upper():4} {self.check} {self.instance}"
        if self.witness is not None:
            text += f"  witness={self.witness}"
        return text


@dataclass
class _Group:
    cases: int = 0
    failures: list = field(default_factory=list)
    nfail: int = 0


class CheckReport:
    """Aggregated outcome of a law suite.

    Passing cases are counted per ``(check, group)``; failing cases are kept
    individually (up to ``keep`` per group) with their witness.
    """

    def __init__(self, keep: int = 5):
        self.keep = keep
        self._groups: dict[tuple[str, str], _Group] = {}
        self._extra: list[CheckEntry] = []

    def record(self, check: str, group: str, ok: bool, witness: Any = None) -> bool:
        g = self._groups.setdefault((check, group), _Group())
        g.cases += 1
        if not ok:
            g.nfail += 1
            if len(g.failures) < self.keep:
                if callable(witness):
                    witness = witness()
                g.failures.append(witness)
        return ok

    def attempt(self, check: str, group: str, thunk: Callable[[], Any], witness: Any = None) -> bool:
        """Record ``thunk()`` as the outcome; an exception counts as a failure.

        Budget exhaustion is not a verdict on the law and propagates.
        """
        try:
            ok = bool(thunk())
        except BudgetExceeded:
            raise
        except Exception as exc:  # a law that cannot even be evaluated has failed
            base = witness() if callable(witness) else witness
            return self.record(check, group, False, {"error": f"{type(exc).__name__}: {exc}", "case": base})
        return self.record(check, group, ok, witness)

    def note(self, check: str, instance: str, status: str = "pass", witness: Any = None):
        self._extra.append(CheckEntry(check, instance, status, witness))

    def extend(self, other: "CheckReport", prefix: str = ""):
        for (check, group), g in other._groups.items():
            mine = self._groups.setdefault((prefix + check, group), _Group())
            mine.cases += g.cases
            mine.nfail += g.nfail
            mine.failures.extend(g.failures[: max(0, self.keep - len(mine.failures))])
        for e in other._extra:
            self._extra.append(CheckEntry(prefix + e.check, e.instance, e.status, e.witness))
        return self

    @property
    def entries(self) -> list[CheckEntry]:
        out = list(self._extra)
        for (check, group), g in self._groups.items():
            if g.nfail:
                for i, w in enumerate(g.failures):
                    out.append(CheckEntry(check, f"{group} #{i} ({g.nfail}/{g.cases} failed)", "fail", w))
            else:
                out.append(CheckEntry(check, f"{group} [{g.cases} cases]", "pass"))
        out.sort(key=lambda e: (e.check, e.instance))
        return out

    @property
    def ok(self) -> bool:
        return all(g.nfail == 0 for g in self._groups.values()) and all(
            e.status != "fail" for e in self._extra
        )

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == "fail"]

    def failed_checks(self) -> set[str]:
        return {e.check for e in self.failures()}

    def cases(self, check: str | None = None) -> int:
        return sum(g.cases for (c, _), g in self._groups.items() if check is None or c == check)

    def checks(self) -> set[str]:
        return {c for c, _ in self._groups} | {e.check for e in self._extra}

    def to_dict(self, command: str, probe: ProbeSpec) -> dict:
        return {
            "command": command,
            "seed": probe.seed,
            "bounds": asdict(probe),
            "entries": [e.to_dict() for e in self.entries],
        }

    def lines(self) -> list[str]:
        return [e.line() for e in self.entries]

    def __repr__(self):
        nfail = sum(g.nfail for g in self._groups.values())
        return f"CheckReport(cases={self.cases()}, failures={nfail})"


def probe_mors(cat, a, b, probe: ProbeSpec, rng: random.Random, cap: int | None = None):
    """Morphisms ``a -> b`` to test with, and whether they are all of them.

    ``cat`` is anything with ``homs(a, b, probe)`` and ``sample(a, b, rng, probe)``.
    Enumerated hom-sets larger than ``cap`` are subsampled; hom-sets that
    cannot be enumerated contribute ``probe.samples`` random draws.
    """
    cap = probe.samples if cap is None else cap
    hs = cat.homs(a, b, probe)
    if hs is not None:
        if len(hs) <= cap:
            return list(hs), True
        return rng.sample(list(hs), cap), False
    out = []
    for _ in range(probe.samples):
        f = cat.sample(a, b, rng, probe)
        if f is None:
            break
        out.append(f)
    return out, False


def capped(items: list, probe: ProbeSpec, rng: random.Random, cap: int | None = None) -> list:
    cap = probe.max_tuples if cap is None else cap
    if len(items) <= cap:
        return items
    return rng.sample(items, cap)


def pairs(xs: list, ys: list, limit: int, rng: random.Random) -> list:
    """All of ``xs x ys`` if it has at most ``limit`` elements, else ``limit`` random pairs."""
    if not xs or not ys:
        return []
    if len(xs) * len(ys) <= limit:
        return [(x, y) for x in xs for y in ys]
    return [(rng.choice(xs), rng.choice(ys)) for _ in range(limit)]
