"""Count finite models of each shipped theory on carriers of size 1..K."""

import argparse
from pathlib import Path

from lawvere_cs.errors import BudgetExceeded
from lawvere_cs.models import enumerate_models
from lawvere_cs.parsing import parse_theory

THEORIES = Path(__file__).resolve().parent.parent / "theories"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--budget", type=int, default=10**6)
    args = ap.parse_args()

    for path in sorted(THEORIES.glob("*.th")):
        pres = parse_theory(path.read_text())
        row = []
        for k in range(1, args.max_size + 1):
            try:
                row.append(str(len(enumerate_models(pres, k, args.budget))))
            except BudgetExceeded:
                row.append("-")
        print(f"{pres.name:10s} " + " ".join(f"{c:>8s}" for c in row))


if __name__ == "__main__":
    main()
