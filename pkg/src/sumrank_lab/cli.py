"""Command-line entry point: ``sumrank-lab <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from pathlib import Path

from .bounds import FAMILIES, corollary_bound
from .designs import DesignParams, definition10_max, design_check, design_list_size, phi_code_to_system, theorem19_verify
from .errors import IndexOutOfRange, PreconditionViolation, SumRankLabError
from .field import field_make, find_primitive_poly, parse_field, parse_poly, poly_is_primitive
from .groups import g1_for, g2_for, group_report
from .matrix import companion_matrix, companion_property_check
from .pipeline import family_code, render_table1, table1_rows, verify_all
from .rankcodes import (
    choice_invariance_check,
    construct_C1_family,
    construct_C2_family,
    gabidulin_code,
    rank_code_report,
)
from .report import Report, assert_golden, canonical_json, golden_store
from .scan import DEFAULT_BUDGET
from .sumrank import construct_C1bar, construct_C2bar, construct_C3bar, construct_C4bar, sumrank_report, verify_construction1

EXIT_OK, EXIT_CLAIM, EXIT_ERROR, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# --------------------------------------------------------------------------------------
# subcommand bodies; each fills rep.results / checks / findings


def cmd_field(args, rep: Report) -> None:
    F = parse_field(args.field) if args.field else field_make(args.q)
    base = F if F.base is None else F.base
    n = args.n if args.field is None else F.ext_degree
    f = parse_poly(args.poly, base) if args.poly else find_primitive_poly(base, n, args.f_index)
    rep.results["field"] = {"p": F.p, "order": F.order, "modulus": None if F.modulus is None else str(F.modulus)}
    rep.results["polynomial"] = {"text": str(f), "coeffs": f.to_list_text(), "primitive": poly_is_primitive(f)}
    if n >= 1 and poly_is_primitive(f):
        props = companion_property_check(companion_matrix(f), f)
        rep.results["companion"] = props.as_dict()
        rep.check("companion-properties", f"properties (1)-(5) of the companion matrix of {f}", props.all_hold)
        for fd in props.findings:
            rep.find(fd["kind"], fd["id"], fd["detail"])


def cmd_group(args, rep: Report) -> None:
    F = field_make(args.q)
    if args.kind == "G1":
        G = g1_for(F, args.n, args.variant, args.f_index)
        claimed = args.q**args.n - 1
    else:
        g = args.g_index
        if g is None:  # next primitive polynomial, or the same one when only one exists
            g = args.f_index + 1 if _has_index(F, args.n, args.f_index + 1) else args.f_index
        G = g2_for(F, args.n, args.trailing, args.f_index, g, allow_equal=args.allow_equal)
        claimed = (args.q**args.n - 1) ** 2
    r = group_report(G, args.q, args.n)
    rep.results["group"] = r
    rep.check(f"{args.kind}-order", f"{args.kind} has order {claimed}", r["order"] == claimed)
    rep.check(f"{args.kind}-orthogonal", f"{args.kind} preserves its form", r["orthogonality"])


def _has_index(F, n: int, index: int) -> bool:
    try:
        find_primitive_poly(F, n, index)
        return True
    except IndexOutOfRange:
        return False


def _rank_code(args):
    if args.family == "C1":
        return construct_C1_family(args.q, args.n, args.variant or "2n", args.f_index)
    if args.family == "C2":
        return construct_C2_family(args.q, args.n, args.variant or "4n", args.f_index, args.g_index)
    if args.k is None:
        raise PreconditionViolation("--k is required for the gabidulin family")
    return gabidulin_code(args.q, args.n, args.k)


def cmd_rankcode(args, rep: Report) -> None:
    if args.check == "invariance":
        same = choice_invariance_check(args.q, args.n)
        rep.results["invariance"] = {"q": args.q, "n": args.n, "f_indices": [0, 1], "identical": same}
        rep.check("choice-invariance", "parameters do not depend on the primitive polynomial", same)
        return
    C = _rank_code(args)
    t0 = time.perf_counter()
    r = rank_code_report(C, args.budget, args.threads)
    r["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3) if args.timings else None
    rep.results["code"] = r
    if args.family in ("C1", "C2") and (args.variant or "") in ("", "2n", "4n"):
        rep.check("mrd", f"{C.name} is MRD", r["is_mrd"])
    if args.family == "gabidulin":
        rep.check("mrd", "Gabidulin code is MRD", r["is_mrd"] and r["min_distance"] == args.n - args.k + 1)


def _sumrank_code(args):
    if args.construction == 1:
        mlist = args.mlist
        if args.w == 4:
            return construct_C1bar(args.q, args.t if mlist is None else len(mlist) + 1, mlist, args.f_index)
        if args.w == 8:
            return construct_C2bar(args.q, args.t if mlist is None else len(mlist) + 1, mlist, args.f_index, args.g_index)
        raise PreconditionViolation("--w must be 4 or 8 for construction 1")
    if args.w in (None, 2):
        return construct_C3bar(args.q, args.n, args.t, args.f_index)
    if args.w == 4:
        return construct_C4bar(args.q, args.n, args.t, args.f_index, args.g_index)
    raise PreconditionViolation("--w must be 2 or 4 for construction 2")


def cmd_sumrank(args, rep: Report) -> None:
    if args.construction == 1 and args.w is None:
        args.w = 4
    C = _sumrank_code(args)
    r = sumrank_report(C, args.budget, with_covering=args.covering)
    if args.construction == 1 and r["scan_mode"] != "exhaustive":
        v = verify_construction1(C, args.budget, seed=args.seed)
        r["construction1_check"] = v
    rep.results["code"] = r
    if args.construction == 1:
        rep.check("construction1", f"{C.name} has d = 2 and is MSRD", r["d"] == 2 and r["is_msrd"])
    else:
        claimed = args.t * (args.n - 1) + 1 if C.name.startswith("C3") else args.t * (args.n - 3) + 3
        rep.check("construction2", f"{C.name} has d = {claimed}", r["d"] == claimed, d=r["d"])


def cmd_bounds(args, rep: Report) -> None:
    b = corollary_bound(args.family, args.q, args.n, args.t, args.tau, strict=True)
    out = b.as_dict()
    out["selected_variant"] = args.variant
    out["selected_bound"] = b.theorem14_bound if args.variant == "paper" else b.gamma_corrected_bound
    rep.results["bound"] = out
    if b.discrepancy:
        rep.find("paper_discrepancy", f"{args.family}-closed-form", b.discrepancy)


def cmd_design(args, rep: Report) -> None:
    C = family_code(args.from_code, args.q, args.n, args.t)
    H = phi_code_to_system(C)
    d = C.min_distance
    base = {"k": H.k, "m": H.m, "shape": [list(H.shape.rows), list(H.shape.cols)], "N": H.N, "d": d,
            "design_bound": design_list_size(C, family=args.from_code, n=args.n, t=args.t)["design_bound"]}
    if args.check == "def10":
        r = definition10_max(H, args.budget)
        base.update(max_sum=r["max_sum"], verdict=r["max_sum"] == H.N - d, hyperplanes=r["hyperplanes"])
        rep.check("definition10", "max over hyperplanes equals N - d", base["verdict"])
    elif args.check == "theorem19":
        r = theorem19_verify(C, args.budget, d=d)
        base.update(r)
        base.update(max_sum=r["design_max_sum"], verdict=r["consistent"])
        rep.check("theorem19", "the system is a (k-1, N-d) subspace design with equality", r["consistent"])
    elif args.check == "listsize":
        r = design_list_size(C, family=args.from_code, n=args.n, t=args.t)
        base.update(r)
        base["verdict"] = r["matches"]
        rep.check("design-list-size", "q^{N-d} equals the family closed form", r["matches"])
    else:
        s = H.k - 1 if args.s is None else args.s
        A = H.N - d if args.A is None else args.A
        r = design_check(H, DesignParams(s, A), args.budget)
        base.update(max_sum=r["max_sum"], verdict=r["verdict"], witness_basis=r["witness_basis"], s=s, A=A)
    rep.results["design"] = base


def cmd_table1(args, rep: Report) -> None:
    rep.results["rows"] = table1_rows(args.q, args.n, args.t, args.budget)
    for row in rep.results["rows"]:
        if row["discrepancy"]:
            rep.find("paper_discrepancy", f"{row['family']}-closed-form", row["discrepancy"])
        if row["status"] == "design bound exceeded":
            rep.find("paper_discrepancy", f"{row['family']}-design-list-size",
                     "brute-force list size at tau = t exceeds the design bound",
                     L=row["brute_force_L"], design_bound=row["design_bound"])
        if row["status"] == "general bound exceeded":
            rep.find("claim_violation", f"{row['family']}-general-bound",
                     "brute-force list size exceeds the general list-size bound", L=row["brute_force_L"])


def cmd_verify_all(args, rep: Report) -> None:
    full = verify_all(args.q, args.n, args.t, args.budget)
    rep.results, rep.checks, rep.findings = full.results, full.checks, full.findings


COMMANDS = {
    "field": cmd_field,
    "group": cmd_group,
    "rankcode": cmd_rankcode,
    "sumrank": cmd_sumrank,
    "bounds": cmd_bounds,
    "design": cmd_design,
    "table1": cmd_table1,
    "verify-all": cmd_verify_all,
}


# --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=_positive, default=None, help="worker threads (default SUMRANK_LAB_THREADS or 1)")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="max enumerated objects per check")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte determinism)")
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--golden-store", type=Path, default=None, metavar="PATH")
    common.add_argument("--golden-compare", type=Path, default=None, metavar="PATH")
    common.add_argument("--q", type=int, default=3)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--f-index", type=int, default=0)
    common.add_argument("--g-index", type=int, default=None)

    parser = _Parser(prog="sumrank-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="field construction and companion-matrix properties")
    p.add_argument("--field", default=None, help='field text such as "9" or "3^2"')
    p.add_argument("--poly", default=None, help='polynomial as "a0,a1,..." or "x^2+x+2"')

    p = sub.add_parser("group", parents=[common], help="orthogonal groups G1 and G2")
    p.add_argument("--kind", choices=("G1", "G2"), default="G1")
    p.add_argument("--variant", choices=("A1", "A2", "A3"), default="A1")
    p.add_argument("--trailing", type=int, choices=(0, 1, 2), default=0)
    p.add_argument("--allow-equal", action="store_true")

    p = sub.add_parser("rankcode", parents=[common], help="orbit rank-metric codes and Gabidulin codes")
    p.add_argument("--family", choices=("C1", "C2", "gabidulin"), default="C1")
    p.add_argument("--variant", default=None, help="2n, 2n+1, 2n+2 for C1; 4n, 4n+1, 4n+2 for C2")
    p.add_argument("--k", type=int, default=None, help="Gabidulin dimension")
    p.add_argument("--check", choices=("distance", "mrd", "invariance"), default="mrd")

    p = sub.add_parser("sumrank", parents=[common], help="sum-rank constructions 1 and 2")
    p.add_argument("--construction", type=int, choices=(1, 2), default=1)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--mlist", type=_int_list, default=None, help="rows of the free blocks, e.g. 2,1")
    p.add_argument("--w", type=int, default=None, help="first-block width (4 or 8) or tail multiple (2 or 4)")
    p.add_argument("--covering", action="store_true", help="also compute the covering radius")

    p = sub.add_parser("bounds", parents=[common], help="list-size bounds for one family")
    p.add_argument("--family", choices=FAMILIES, default="C3bar")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--variant", choices=("paper", "gamma_corrected"), default="paper")

    p = sub.add_parser("design", parents=[common], help="systems and subspace designs of a code")
    p.add_argument("--from-code", choices=FAMILIES, default="C3bar")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--A", type=int, default=None)
    p.add_argument("--check", choices=("def10", "theorem19", "listsize", "design"), default="design")

    p = sub.add_parser("table1", parents=[common], help="regenerate the list-size comparison table")
    p.add_argument("--t", type=int, default=2)

    p = sub.add_parser("verify-all", parents=[common], help="run every instance check")
    p.add_argument("--t", type=int, default=2)
    return parser


def _config(args) -> dict:
    skip = {"command", "output", "golden_store", "golden_compare", "timings", "format", "threads"}
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k not in skip:
            cfg[k] = v
    return cfg


def _flat_rows(results: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows = []
    for k, v in results.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows.extend(_flat_rows(v, key + "."))
        else:
            rows.append((key, v))
    return rows


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(rep)
    if rep.command == "table1":
        return render_table1(rep.results["rows"], fmt)
    rows = _flat_rows(rep.results) + [(f"check.{c['id']}", c["passed"]) for c in rep.checks]
    rows.append(("status", rep.status))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| key | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in rows]
    return "\n".join(lines) + "\n"


def run_command(argv: list[str] | None = None, stdout=None) -> tuple[int, Report | None]:
    """Parse, run, write; returns the exit code and the report (None on usage errors)."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE, None
    except SystemExit as exc:  # --help
        return (EXIT_OK if exc.code in (0, None) else EXIT_USAGE), None
    if args.threads is not None:
        os.environ["SUMRANK_LAB_THREADS"] = str(args.threads)
    rep = Report(args.command, _config(args))
    t0 = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except SumRankLabError as exc:
        rep.results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        rep.aborted = True
        print(f"sumrank-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
    if args.timings:
        rep.timings = {"total_ms": round((time.perf_counter() - t0) * 1000, 3)}
    text = render(rep, "json" if rep.aborted else args.format)
    if args.output is not None:
        args.output.write_text(text, encoding="ascii")
    else:
        stdout.write(text)
    try:
        if args.golden_store is not None:
            golden_store(rep, args.golden_store)
        if args.golden_compare is not None:
            assert_golden(rep, args.golden_compare)
    except (OSError, SumRankLabError) as exc:
        print(f"sumrank-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR, rep
    return rep.exit_code(), rep


def main(argv: list[str] | None = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
