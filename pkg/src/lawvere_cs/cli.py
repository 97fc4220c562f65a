"""Command line driver.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 a budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bridge import (
    check_joint_monicity,
    check_projections,
    cl,
    compare_csystems,
    compare_lawvere,
    lc,
    roundtrip_csystem,
    roundtrip_lawvere,
)
from .csystem import check_csystem, term_csystem
from .errors import BudgetExceeded, LawvereCSError, ParseError
from .models import clone, const_family, enumerate_models, telescope_csystem, total
from .parsing import parse_sub, parse_theory
from .report import CheckReport, ProbeSpec
from .subsystem import Tower, check_closure, generate_subsystem
from .terms import DEFAULT_REWRITE_BUDGET, compose, count_terms, normalize_sub
from .theory import all_finfuns, term_lawvere, verify_lawvere

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_theory(path: str, args):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_theory(text, rewrite_budget=args.rewrite_budget)
    except ParseError as exc:
        raise ParseError(f"{path}:{exc}") from exc


def _int_suffix(target: str, prefix: str) -> int:
    try:
        value = int(target[len(prefix):])
    except ValueError:
        raise UsageError(f"expected {prefix}N, got {target!r}") from None
    if value < 1:
        raise UsageError(f"{prefix}N needs N >= 1")
    return value


def resolve(target: str, args):
    """``(kind, thing)`` for a theory file, ``clone:K`` or ``telescope:B``."""
    if target.startswith("clone:"):
        return "clone", clone(_int_suffix(target, "clone:"))
    if target.startswith("telescope:"):
        return "telescope", telescope_csystem(_int_suffix(target, "telescope:"))
    return "theory", load_theory(target, args)


def make_probe(args, kind: str = "theory") -> ProbeSpec:
    max_n = args.max_n if args.max_n is not None else (3 if kind == "theory" else 2)
    max_fin = args.max_fin if args.max_fin is not None else min(max_n, 3)
    return ProbeSpec(max_n=max_n, max_fin=max_fin, depth=args.depth, samples=args.samples,
                     seed=args.seed, budget=args.budget)


# -- commands -----------------------------------------------------------------------


def cmd_check_theory(args):
    pres = load_theory(args.file, args)
    probe = make_probe(args)
    return verify_lawvere(term_lawvere(pres), probe), probe, None


def cmd_check_csystem(args):
    kind, obj = resolve(args.target, args)
    probe = make_probe(args, kind)
    C = {"theory": lambda: term_csystem(obj), "clone": lambda: obj.csystem, "telescope": lambda: obj}[kind]()
    return check_csystem(C, probe), probe, None


def cmd_lc(args):
    pres = load_theory(args.file, args)
    probe = make_probe(args)
    C = lc(term_lawvere(pres))
    rep = check_csystem(C, probe)
    compare_csystems(term_csystem(pres), C, probe, rep, prefix="LC")
    return rep, probe, None


def _lawvere_and_csystem(kind, obj):
    if kind == "theory":
        return term_lawvere(obj), term_csystem(obj)
    if kind == "clone":
        return obj.lawvere, obj.csystem
    raise UsageError("this command needs a theory file or clone:K")


def cmd_cl(args):
    kind, obj = resolve(args.target, args)
    probe = make_probe(args, kind)
    L, C = _lawvere_and_csystem(kind, obj)
    rep = verify_lawvere(cl(C), probe)
    compare_lawvere(L, cl(C), probe, rep)
    rep.extend(check_projections(C, probe))
    rep.extend(check_joint_monicity(C, probe))
    return rep, probe, None


def cmd_roundtrip(args):
    kind, obj = resolve(args.target, args)
    probe = make_probe(args, kind)
    L, C = _lawvere_and_csystem(kind, obj)
    rep = CheckReport()
    rep.extend(roundtrip_lawvere(L, probe), prefix="L.")
    rep.extend(roundtrip_csystem(C, probe), prefix="C.")
    compare_csystems(C, lc(L), probe, rep, prefix="LC")
    return rep, probe, None


def cmd_models(args):
    pres = load_theory(args.file, args)
    probe = make_probe(args)
    models = enumerate_models(pres, args.size, budget=args.budget)
    rep = CheckReport()
    rep.note("models", f"k={args.size}", "pass", {
        "count": len(models),
        "models": [{name: list(t) for name, t in I.ops} for I in models],
    })
    text = [f"{len(models)} models on {args.size} elements"]
    text += [f"  {I}" for I in models]
    return rep, probe, text


def cmd_subsystem(args):
    _, base = resolve(args.target, args)
    if not args.target.startswith("telescope:"):
        raise UsageError("subsystem needs a telescope:B base")
    b = args.fiber
    if not 1 <= b <= base.max_fiber:
        raise UsageError(f"--fiber must lie in 1..{base.max_fiber}")
    probe = make_probe(args, "telescope")
    T = Tower(base, const_family(b, 1))
    S = generate_subsystem(T)
    rep = check_csystem(S, probe)
    rep.extend(check_closure(T, probe))
    N = probe.max_n
    text = []
    for m in range(N + 1):
        for n in range(N + 1):
            got = S.hom.hom_count(m, n)
            want = (b**n) ** (b**m)
            rep.record("CX.count", f"m={m},n={n}", got == want, {"count": got, "expected": want})
            text.append(f"|C_X({m},{n})| = {got}")
    # the generated system's Lawvere structure against the clone on b elements
    ref = clone(b).lawvere
    L = cl(S)
    for m in range(probe.max_fin + 1):
        for n in range(probe.max_fin + 1):
            for f in all_finfuns(m, n):
                h = L.mor_map(f)
                rep.record("CX.cl-vs-clone", f"m={m},n={n}", h.table == ref.mor_map(f).table,
                           lambda: {"f": str(f), "subsystem": list(h.table), "clone": list(ref.mor_map(f).table)})
    return rep, probe, text


def cmd_homcount(args):
    kind, obj = resolve(args.target, args)
    probe = make_probe(args, kind)
    m, n = args.m, args.n
    if m < 0 or n < 0:
        raise UsageError("M and N must be >= 0")
    if kind == "clone":
        count, what = obj.hom.hom_count(m, n), f"|H({m},{n})|"
    elif kind == "telescope":
        b = obj.max_fiber
        ny, nx = len(total(const_family(b, m))), len(total(const_family(b, n)))
        count, what = nx**ny, f"|Hom(const_family({b},{m}), const_family({b},{n}))|"
    else:
        count = count_terms(obj.signature, m, probe.depth) ** n
        what = f"substitutions {m}->{n} with nesting <= {probe.depth} (before rewriting)"
    rep = CheckReport()
    rep.note("homcount", f"{args.target} {m} {n}", "pass", {"count": count})
    return rep, probe, [str(count), f"  {what}"]


def cmd_compose(args):
    pres = load_theory(args.file, args)
    probe = make_probe(args)
    try:
        f = parse_sub(args.sub1, pres.signature)
        g = parse_sub(args.sub2, pres.signature)
    except ParseError as exc:
        raise ParseError(f"substitution: {exc}") from exc
    h = normalize_sub(compose(f, g), pres.rewrites)
    rep = CheckReport()
    rep.note("compose", f"{f} ; {g}", "pass", {"result": str(h)})
    return rep, probe, [str(h)]


COMMANDS = {
    "check-theory": cmd_check_theory,
    "check-csystem": cmd_check_csystem,
    "lc": cmd_lc,
    "cl": cmd_cl,
    "roundtrip": cmd_roundtrip,
    "models": cmd_models,
    "subsystem": cmd_subsystem,
    "homcount": cmd_homcount,
    "compose": cmd_compose,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=int, default=None, help="largest object length probed")
    common.add_argument("--max-fin", type=int, default=None, help="largest finite-function size probed")
    common.add_argument("--depth", type=int, default=2, help="nesting bound for random terms")
    common.add_argument("--samples", type=int, default=50, help="random draws per check")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--budget", type=int, default=10**6, help="enumeration budget (candidates)")
    common.add_argument("--rewrite-budget", type=int, default=DEFAULT_REWRITE_BUDGET, help="rewrite steps per term")

    ap = argparse.ArgumentParser(prog="lawvere-cs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check-theory", parents=[common], help="check the Lawvere structure of a theory").add_argument("file")
    sub.add_parser("check-csystem", parents=[common], help="run the C-system axiom suite").add_argument("target", help="FILE, clone:K or telescope:B")
    sub.add_parser("lc", parents=[common], help="build the C-system of a theory and compare with the direct one").add_argument("file")
    sub.add_parser("cl", parents=[common], help="build the Lawvere structure of a C-system").add_argument("target", help="FILE or clone:K")
    sub.add_parser("roundtrip", parents=[common], help="check that both translations invert each other").add_argument("target", help="FILE or clone:K")
    p = sub.add_parser("models", parents=[common], help="enumerate finite models")
    p.add_argument("file")
    p.add_argument("--size", type=int, required=True)
    p = sub.add_parser("subsystem", parents=[common], help="build the subsystem generated by a length-1 object")
    p.add_argument("target", help="telescope:B")
    p.add_argument("--fiber", type=int, default=2)
    p = sub.add_parser("homcount", parents=[common], help="count morphisms m -> n")
    p.add_argument("target", help="FILE, clone:K or telescope:B")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = sub.add_parser("compose", parents=[common], help="compose two substitutions and normalize")
    p.add_argument("file")
    p.add_argument("sub1", help='e.g. "[2] m(x0,x1)"')
    p.add_argument("sub2")
    return ap


def _check_bounds(args):
    for name in ("max_n", "max_fin", "depth", "samples", "budget", "rewrite_budget"):
        v = getattr(args, name)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    if getattr(args, "size", 1) < 1:
        raise UsageError("--size must be >= 1")


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _check_bounds(args)
        rep, probe, text = COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    except LawvereCSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    if args.json:
        out.write(json.dumps(rep.to_dict(args.command, probe), indent=2) + "\n")
    else:
        for line in text or []:
            print(line, file=out)
        if text is None or not rep.ok:
            for line in rep.lines():
                print(line, file=out)
        nfail = len(rep.failures())
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status}: {rep.cases()} cases, {nfail} failing entries", file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
