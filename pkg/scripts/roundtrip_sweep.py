"""Run both round trips over the shipped theories and small clones at growing bounds.

Prints one line per (instance, bound) with case counts and elapsed time.
"""

import argparse
import time
from pathlib import Path

from lawvere_cs.bridge import roundtrip_csystem, roundtrip_lawvere
from lawvere_cs.csystem import term_csystem
from lawvere_cs.models import clone
from lawvere_cs.parsing import parse_theory
from lawvere_cs.report import ProbeSpec
from lawvere_cs.theory import term_lawvere

THEORIES = Path(__file__).resolve().parent.parent / "theories"


def instances():
    for path in sorted(THEORIES.glob("*.th")):
        pres = parse_theory(path.read_text())
        yield path.stem, term_lawvere(pres), term_csystem(pres), range(2, 6)
    for k in (2, 3):
        c = clone(k)
        yield f"clone{k}", c.lawvere, c.csystem, range(1, 3)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    bad = 0
    for name, L, C, bounds in instances():
        for n in bounds:
            probe = ProbeSpec(max_n=n, max_fin=min(n, 4), samples=args.samples, seed=args.seed)
            t = time.perf_counter()
            rl, rc = roundtrip_lawvere(L, probe), roundtrip_csystem(C, probe)
            ok = rl.ok and rc.ok
            bad += not ok
            cases = rl.cases() + rc.cases()
            print(f"{name:8s} n<={n}  {'PASS' if ok else 'FAIL'}  {cases:6d} cases  "
                  f"{time.perf_counter() - t:6.2f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
