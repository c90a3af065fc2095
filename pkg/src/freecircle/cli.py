"""Command-line interface: ``freecircle <subcommand> ...``.

Exit codes: 0 success, 1 verification failure or unrealizable target,
2 usage error (including inadmissible parameters).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import classification as cen
from .families import DEFAULT_EQUIVALENCE_BOUND, DEFAULT_MODULUS, FamilySpec, certify_family, member
from .invariants import InvariantError, chardata_cp2, chardata_direct, chardata_plumbing, s_invariants
from .search import (BudgetExhausted, NoFreeAction, SearchBox, coverage, enumerate_witnesses,
                     realize_target)
from .tables import CP2_HEADER, PLUMBING_HEADER, TABLES, TableError, data_dir, load_table, verify_table

FAMILY_ALIASES = {"plumbing": "plumbing", "cp2": "cp2-bundle", "cp2-bundle": "cp2-bundle",
                  "direct-nonspin": "direct-nonspin"}

PARAM_HEADERS = {
    "plumbing": PLUMBING_HEADER[:5],
    "cp2-bundle": CP2_HEADER[:3],
    "direct-nonspin": ["A", "u"],
}
CLASS_HEADER = ["s1_28", "s2_12", "s3t_2"]

# flags whose values may start with a minus sign
_VALUE_FLAGS = {"--alpha", "--euler", "--target", "--base", "--class",
                "--A", "--B", "--C", "--D", "--u", "--v"}


class UsageError(Exception):
    pass


def _ints(text: str, n: int | None = None) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} integers, got {len(vals)}")
    return vals


def _n_ints(n):
    return lambda text: _ints(text, n)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _print_invariants(cd, show: bool, out) -> None:
    s = s_invariants(cd)
    if show:
        print("A={} B={} C={} D={} u={} v={} spin={} det={}".format(
            *cd.astuple(), str(cd.spin).lower(), cd.det), file=out)
    print(f"s1 = {s.s1}  s2 = {s.s2}  s3t = {s.s3t}", file=out)
    print("class = ({},{},{})".format(*s.triple), file=out)


def cmd_invariants(args, out) -> int:
    try:
        if args.kind == "plumbing":
            cd = chardata_plumbing(args.alpha, args.euler)
        elif args.kind == "cp2":
            cd = chardata_cp2(args.alpha[0], args.euler)
        else:
            cd = chardata_direct(args.A, args.B, args.C, args.D, args.u, args.v, spin=args.spin)
        _print_invariants(cd, getattr(args, "show_chardata", True), out)
    except InvariantError as exc:
        raise UsageError(str(exc)) from None
    return 0


def _read_targets(spec: str) -> set[tuple[int, int, int]]:
    if spec == "all":
        return {c.triple for c in cen.all_classes()}
    targets = set()
    with open(spec, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or not rec[0].strip():
                continue
            try:
                t = tuple(int(x) for x in rec[:3])
            except ValueError:
                continue  # header
            targets.add(cen.DiffeoClass.reduce(*t).triple)
    return targets


def cmd_search(args, out) -> int:
    family = FAMILY_ALIASES[args.family]
    try:
        box = SearchBox(args.alpha_bound, args.euler_bound, family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    writer = csv.writer(out, lineterminator="\n")
    if args.targets is None:
        if args.emit == "csv":
            writer.writerow(PARAM_HEADERS[family] + CLASS_HEADER)
        for w in enumerate_witnesses(box, jobs=args.jobs):
            if args.emit == "csv":
                writer.writerow(w.row())
            else:
                print("{} -> ({},{},{})".format(w.params, *w.triple), file=out)
        return 0
    rep = coverage(box, _read_targets(args.targets), jobs=args.jobs, budget=args.budget)
    if args.emit == "csv":
        writer.writerow(CLASS_HEADER + PARAM_HEADERS[family])
        for row in rep.to_rows():
            writer.writerow(row)
    else:
        total = len(rep.hits) + len(rep.unhit)
        print(f"hit {len(rep.hits)} of {total} targets after {rep.nodes} nodes"
              + (" (budget exhausted)" if rep.budget_exhausted else ""), file=out)
        for t, w in rep.hits.items():
            print("({},{},{}) <- {}".format(*t, w.params), file=out)
        if rep.unhit:
            print("unhit: " + " ".join("({},{},{})".format(*t) for t in sorted(rep.unhit)), file=out)
    return 0


def cmd_realize(args, out) -> int:
    try:
        w = realize_target(args.target, budget=args.budget, jobs=args.jobs)
    except NoFreeAction as exc:
        print(f"provably no free action: {exc}", file=out)
        return 1
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=out)
        return 1
    print(f"family = {w.family}", file=out)
    print("params = " + ",".join(map(str, w.params)), file=out)
    _print_invariants(w.chardata, True, out)
    return 0


def cmd_family(args, out) -> int:
    family = FAMILY_ALIASES[args.family]
    n = 5 if family == "plumbing" else 3
    if len(args.base) != n:
        raise UsageError(f"--base needs {n} integers for the {args.family} family")
    try:
        spec = FamilySpec.from_params(family, args.base, args.modulus)
    except (InvariantError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.certify:
        rep = certify_family(spec, args.count, bound=args.bound)
        if args.format == "json":
            print(rep.to_json(), file=out)
        else:
            print(f"branch = {spec.branch}  modulus = {spec.modulus}", file=out)
            for name, ok in rep.checks.items():
                print(f"{name}: {'pass' if ok else 'FAIL'}", file=out)
            for msg in rep.failures:
                print(f"  {msg}", file=out)
            print("certified" if rep.ok else "NOT certified", file=out)
        return 0 if rep.ok else 1
    rows = [member(spec, m) for m in range(args.count)]
    if args.format == "json":
        print(json.dumps({"family": family, "branch": spec.branch, "modulus": spec.modulus,
                          "members": [[str(x) for x in r] for r in rows]}, indent=2), file=out)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["m"] + PARAM_HEADERS[family])
        for m, r in enumerate(rows):
            writer.writerow((m,) + r)
    return 0


def cmd_classify(args, out) -> int:
    if args.class_ is not None:
        c = cen.DiffeoClass.reduce(*args.class_)
        adm = cen.admits_free_action(c)
        attrs = cen.class_attributes(c)
        info = {
            "class": list(c.triple),
            "spin_quotient": adm.spin_quotient,
            "nonspin_quotient": adm.nonspin_quotient,
            "ricci": cen.ricci_status(c),
            "pi4": attrs.pi4,
            "homeo_id": list(attrs.homeo_id),
            "homotopy_id": list(attrs.homotopy_id),
            "reversed": list(attrs.reversed.triple),
        }
        if args.json:
            print(json.dumps(info, indent=2), file=out)
        else:
            for k, v in info.items():
                print(f"{k}: {v}", file=out)
        return 0
    rep = cen.census()
    print(rep.to_json() if args.json else rep.to_text(), file=out)
    return 0


def cmd_verify_tables(args, out) -> int:
    root = Path(args.data) if args.data else data_dir()
    ok = True
    for name in TABLES:
        try:
            table = load_table(root / f"{name}.csv")
        except (OSError, TableError) as exc:
            print(f"{name}: {exc}", file=out)
            ok = False
            continue
        rep = verify_table(table)
        print(rep.summary(), file=out)
        for r in rep.failures():
            print(f"  FAIL {r.params}: {r.message}", file=out)
        ok &= rep.ok
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freecircle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="s-invariants of one circle bundle")
    isub = inv.add_subparsers(dest="kind", required=True)
    pl = isub.add_parser("plumbing")
    pl.add_argument("--alpha", type=_n_ints(3), required=True, metavar="A1,A2,A3")
    pl.add_argument("--euler", type=_n_ints(2), required=True, metavar="L,M")
    pl.add_argument("--show-chardata", action="store_true")
    cp = isub.add_parser("cp2")
    cp.add_argument("--alpha", type=_n_ints(1), required=True, metavar="A")
    cp.add_argument("--euler", type=_n_ints(2), required=True, metavar="L,M")
    cp.add_argument("--show-chardata", action="store_true")
    di = isub.add_parser("direct")
    for name in "ABCDuv":
        di.add_argument(f"--{name}", type=int, required=True)
    g = di.add_mutually_exclusive_group(required=True)
    g.add_argument("--spin", dest="spin", action="store_true")
    g.add_argument("--nonspin", dest="spin", action="store_false")

    se = sub.add_parser("search", help="enumerate witnesses or cover target classes")
    se.add_argument("--family", choices=sorted(FAMILY_ALIASES), required=True)
    se.add_argument("--alpha-bound", type=_positive, required=True)
    se.add_argument("--euler-bound", type=_positive, required=True)
    se.add_argument("--targets", metavar="FILE|all")
    se.add_argument("--emit", choices=["text", "csv"], default="text")
    se.add_argument("--jobs", type=_positive, default=1)
    se.add_argument("--budget", type=_positive, help="max alpha triples examined (plumbing)")

    re_ = sub.add_parser("realize", help="first witness for a class (i,j,k)")
    re_.add_argument("--target", type=_n_ints(3), required=True, metavar="I,J,K")
    re_.add_argument("--budget", type=_positive, default=5_000_000)
    re_.add_argument("--jobs", type=_positive, default=1)

    fa = sub.add_parser("family", help="infinite family through a witness")
    fa.add_argument("--family", choices=["plumbing", "cp2"], required=True)
    fa.add_argument("--base", type=_ints, required=True, metavar="PARAMS")
    fa.add_argument("--modulus", type=_positive, default=DEFAULT_MODULUS)
    fa.add_argument("--count", type=_positive, required=True)
    fa.add_argument("--certify", action="store_true")
    fa.add_argument("--bound", type=_positive, default=DEFAULT_EQUIVALENCE_BOUND,
                    help="entry bound for the equivalence oracle")
    fa.add_argument("--format", choices=["csv", "json"], default="csv")

    cl = sub.add_parser("classify", help="census of the 672 classes")
    g = cl.add_mutually_exclusive_group(required=True)
    g.add_argument("--report", action="store_true")
    g.add_argument("--class", dest="class_", type=_n_ints(3), metavar="I,J,K")
    cl.add_argument("--json", action="store_true")

    vt = sub.add_parser("verify-tables", help="recompute the bundled golden tables")
    vt.add_argument("--data", metavar="DIR")
    return p


def _join_values(argv: list[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


COMMANDS = {
    "invariants": cmd_invariants,
    "search": cmd_search,
    "realize": cmd_realize,
    "family": cmd_family,
    "classify": cmd_classify,
    "verify-tables": cmd_verify_tables,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed early, e.g. ``| head``
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
