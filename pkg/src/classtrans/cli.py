"""``ct`` command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 a mathematical invariant
was violated (shape catalogue miss, order outside {1,2,3,4,6,12},
disagreement between methods), 1 resource limit or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import lcm

from . import graph, group, perm, search
from .errors import ClassTransError, ResourceLimit, ShapeViolation
from .residue import apply_sequence, parse_transposition

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3


def default_budget() -> int:
    raw = os.environ.get("CT_DEFAULT_BUDGET")
    if raw is None:
        return graph.DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"CT_DEFAULT_BUDGET must be an integer, got {raw!r}")
    return max(1, value)


def _fmt_lengths(lengths) -> str:
    return "{" + ", ".join(str(x) for x in lengths) + "}"


def cmd_order(args) -> int:
    t1, t2 = parse_transposition(args.t1), parse_transposition(args.t2)
    check = search.cross_checked_order(t1, t2, args.method, args.budget, args.window)
    report = check.primary
    if args.json:
        doc = report.to_json()
        doc["cross_check"] = {r.method: None if r.order is None else str(r.order) for r in check.others}
        print(json.dumps(doc, indent=1))
    else:
        order = "unknown" if report.order is None else report.order
        print(f"{t1} * {t2}: order {order} [{report.status}, method={report.method}]")
        for other in check.others:
            o = "unknown" if other.order is None else other.order
            print(f"  cross-check {other.method}: {o} [{other.status}]")
        if report.order is None and report.partial_lcm is not None:
            print(f"  lcm of closed cycles found: {report.partial_lcm} (budget {report.budget}, window {report.window})")
        for note in report.notes:
            print(f"  warning: discrepancy with published value: {note}", file=sys.stderr)
    if not check.agree:
        print("error: methods disagree: "
              + ", ".join(f"{r.method}={r.order}" for r in check.certified), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_components(args) -> int:
    t1, t2 = parse_transposition(args.t1), parse_transposition(args.t2)
    g = graph.ProductGraph(t1, t2)
    if g.is_horizontal:
        comps = g.enumerate_components_horizontal(args.budget)
        print(f"period {g.period}: {len(comps)} component(s) per period")
    else:
        report = g.product_order(args.budget, args.window)
        comps = report.components
        print(f"window [-{report.window}, {report.window}]: {len(comps)} component(s), status {report.status}")
    for c in comps:
        line = f"{c.kind.value:<9} n={c.size:<3} type1={c.type1_edge_count:<2}"
        if g.is_horizontal:
            m = graph.shape_match_horizontal(c)
            tag = f"shape {m.shape}" + (" (reflected)" if m.reflected else "")
            if not m.exact_geometry:
                tag += " (staircase variant)"
            line += f" {tag:<28}"
        try:
            line += f" cycles={_fmt_lengths(c.cycle_lengths)}"
        except ClassTransError:
            line += " cycles=?"
        print(line)
        print(f"    {c.describe()}")
    return EXIT_OK


def cmd_search(args) -> int:
    result = search.search_horizontal(args.max_modulus, jobs=args.jobs)
    text = search.records_csv(result.records) if args.format == "csv" else search.result_json(result)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    summary = result.summary()
    out = sys.stderr if args.out == "-" else sys.stdout
    print(f"transpositions: {summary['transpositions']}, ordered pairs: {summary['pairs']}", file=out)
    print(f"realized orders: {summary['realized_orders']}", file=out)
    for order, (a, b) in summary["witnesses"].items():
        print(f"  witness for {order}: {a} * {b}", file=out)
    for d in summary["discrepancies"]:
        print(f"  discrepancy: {d['t1']} * {d['t2']} computed {d['computed_order']}, "
              f"published {d['published_order']}", file=out)
    if result.violations:
        print(f"error: {len(result.violations)} order(s) outside {sorted(search.ALLOWED_ORDERS)}",
              file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_cycles(args) -> int:
    ts = [parse_transposition(t) for t in args.transpositions]
    p = perm.horizontal_product_perm(ts)
    print(perm.lift_cycles(p))
    print(f"order {p.order()}")
    return EXIT_OK


def cmd_refine(args) -> int:
    t = parse_transposition(args.t)
    parts = t.refine(args.n)
    m = lcm(*t.moduli)
    bound = 3 * args.n * m * max(t.moduli)
    ok = all(apply_sequence(parts, x) == t(x) for x in range(-bound, bound + 1))
    print("  ".join(str(p) for p in parts) + ("  [verified]" if ok else "  [MISMATCH]"))
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_embed(args) -> int:
    sigma = perm.FinitePermutation.parse(args.perm, args.m)
    f = perm.embed_phi(args.m, sigma)
    if args.at is not None:
        print(f(args.at))
        return EXIT_OK
    for line in f.describe():
        print(line)
    return EXIT_OK


def _print_group(gens: group.GeneratorSet, show_fixed: bool) -> None:
    chain = group.bsgs_build(gens)
    print(f"degree {gens.degree}, {len(gens)} generator(s)")
    print(f"order {chain.order()}")
    if show_fixed:
        fixed = sorted(group.fixed_points(gens))
        print("no fixed points" if not fixed else f"fixed points: {fixed}")


def cmd_group(args) -> int:
    if args.what == "table":
        failed = 0
        for ks, degree, expected in group.TABLE:
            got = group.bsgs_build(group.ctk_generators(ks, degree)).order()
            status = "PASS" if got == expected else "FAIL"
            failed += got != expected
            name = ", ".join(f"CT_{k}" for k in ks)
            print(f"{status} |<{name}>| = {got} (expected {expected}, degree {degree})")
        return EXIT_INVARIANT if failed else EXIT_OK
    if args.what == "ctk":
        ks = [int(x) for x in args.arg.split(",") if x.strip()]
        degree = args.degree if args.degree is not None else lcm(*ks)
        _print_group(group.ctk_generators(ks, degree, full=args.full), args.fixed_points)
        return EXIT_OK
    _print_group(group.load_generators(args.arg), args.fixed_points)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    report = group.conjecture_check(args.k, max_degree=args.max_degree)
    print(json.dumps(report.to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    budget = default_budget()
    parser = argparse.ArgumentParser(prog="ct", description="Exact computation with class transpositions of Z.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="order of the product T1 * T2")
    p.add_argument("t1")
    p.add_argument("t2")
    p.add_argument("--method", choices=search.METHODS)
    p.add_argument("--budget", type=int, default=budget)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--json", action="store_true", help="print the full order report as JSON")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("components", help="dump the components of the product graph")
    p.add_argument("t1")
    p.add_argument("t2")
    p.add_argument("--budget", type=int, default=budget)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("search", help="exhaustive order search over horizontal pairs")
    p.add_argument("--max-modulus", type=int, default=12)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cycles", help="lifted cycle families of a horizontal product")
    p.add_argument("transpositions", nargs="+")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("refine", help="split T into N transpositions")
    p.add_argument("t")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("embed", help="image of a permutation of {0..M-1} in CT(Z)")
    p.add_argument("m", type=int)
    p.add_argument("perm")
    p.add_argument("--at", type=int, default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("group", help="group orders via stabilizer chains")
    p.add_argument("what", choices=("table", "ctk", "file"))
    p.add_argument("arg", nargs="?", help="k-list for ctk (e.g. 2,3) or a generators JSON path")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--fixed-points", action="store_true")
    p.add_argument("--full", action="store_true", help="use every pair of classes, not just adjacent ones")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("conjecture", help="compare |<CT_2..CT_k>| with N!")
    p.add_argument("k", type=int)
    p.add_argument("--max-degree", type=int, default=group.DEFAULT_MAX_DEGREE)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "group" and args.what != "table" and args.arg is None:
        parser.error(f"group {args.what} needs an argument")
    try:
        return args.func(args)
    except ShapeViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ResourceLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ClassTransError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
