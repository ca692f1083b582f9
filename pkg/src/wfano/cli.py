"""Command-line interface.

Subcommands: enumerate, census, report, check-tables, order, search.
Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import golden, report as report_mod
from .blowup import BlowupContext, divisor_multiplicity
from .census import census as compute_census
from .census import EdgeContained, NonTerminal
from .exactmath import NoEliminatingMonomial, OVERCUTOFF, parse_poly
from .golden import NoMatchingRow, UnknownVariantFlag, parse_variant
from .wps import (COORDS, Family, anticanonical_degree, enumerate_families,
                  general_quasismooth, generic_member, is_wellformed,
                  special_member)

USAGE_ERROR = 2
MISMATCH = 1


class UsageError(ValueError):
    pass


def _dataset(args):
    if getattr(args, "golden", None):
        return golden.load(Path(args.golden))
    return golden.data()


def _resolve_family(selector: str, dataset) -> Family:
    if selector.isdigit():
        no = int(selector)
        if not 1 <= no <= len(dataset.families):
            raise UsageError(f"family number {no} out of range")
        return dataset.family(no).family
    try:
        parts = [int(x) for x in selector.split(",")]
    except ValueError:
        raise UsageError(f"selector must be an entry number or "
                         f"a1,a2,a3,a4, got {selector!r}") from None
    if len(parts) == 5 and parts[0] == 1:
        parts = parts[1:]
    if len(parts) != 4:
        raise UsageError(f"selector must be an entry number or "
                         f"a1,a2,a3,a4, got {selector!r}")
    for rec in dataset.families:
        if rec.family.w[1:] == tuple(parts):
            return rec.family
    raise UsageError(f"no family with weights {tuple(parts)}")


# ------------------------------------------------------------- subcommands

def cmd_enumerate(args) -> int:
    dataset = _dataset(args)
    families = enumerate_families(args.max_weight)
    expected = [rec.family for rec in dataset.families]
    ok = ([(f.d, f.w) for f in families] == [(f.d, f.w) for f in expected])
    if args.json:
        payload = [
            {"no": f.entry_no, "degree": f.d, "weights": list(f.w)}
            for f in families
        ]
        print(report_mod.to_json(payload))
    else:
        for f in families:
            w = ",".join(str(x) for x in f.w)
            print(f"No. {f.entry_no:02d}  X_{f.d} in P({w})  "
                  f"A^3 = {anticanonical_degree(f)}")
    if args.diff_paper:
        for rec in dataset.families:
            if rec.list_typo:
                print(f"list correction: No. {rec.family.entry_no} printed "
                      f"as P{rec.printed_weights}, actual "
                      f"P{rec.family.w}", file=sys.stderr)
    if not ok:
        print(f"error: enumeration returned {len(families)} families and "
              f"diverges from the embedded list", file=sys.stderr)
        return MISMATCH
    return 0


def cmd_census(args) -> int:
    dataset = _dataset(args)
    f = _resolve_family(args.family, dataset)
    cens = compute_census(f)
    if args.json:
        payload = [
            {"point": e.point_id(), "count": e.count, "r": e.r,
             "type": list(e.type_),
             "local_params": [COORDS[i] for i in e.local_params],
             "eliminated": (COORDS[e.eliminated]
                            if e.eliminated is not None else None)}
            for e in cens.entries
        ]
        print(report_mod.to_json(payload))
    else:
        print(f)
        if not cens.entries:
            print("  smooth: no singular points")
        for e in cens.entries:
            print(f"  {e}")
    return 0


def cmd_report(args) -> int:
    dataset = _dataset(args)
    f = _resolve_family(args.family, dataset)
    try:
        variant = parse_variant(args.variant or "")
        rep = report_mod.build_report(f.entry_no, variant, dataset)
    except (UnknownVariantFlag, NoMatchingRow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        print(report_mod.to_json(rep))
    else:
        print(report_mod.render_text(rep))
    return 0 if not rep["discrepancies"] else MISMATCH


def cmd_check_tables(args) -> int:
    dataset = _dataset(args)
    result = report_mod.check_tables(dataset, family_filter=args.family)
    if args.json:
        print(report_mod.to_json({
            "summary": result.summary(),
            "discrepancies": result.discrepancies,
            "documented": result.documented,
        }))
    else:
        print(result.summary())
        for d in result.documented:
            tag = "defect" if d["kind"] == "defect" else "correction"
            print(f"  documented {tag}: No. {d['family']} {d['point']}: "
                  f"{d['note']}")
        for d in result.discrepancies:
            print(f"  DISCREPANCY No. {d['family']} {d['point']} "
                  f"[{d.get('condition', '')}]: {d['reason']}")
    return 0 if result.clean else MISMATCH


def cmd_order(args) -> int:
    dataset = _dataset(args)
    f = _resolve_family(args.family, dataset)
    try:
        variant = parse_variant(args.variant or "")
    except UnknownVariantFlag as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    point = args.point
    if not (len(point) == 2 and point[0] == "O" and point[1] in "yztw"):
        print(f"error: --point must be one of Oy, Oz, Ot, Ow",
              file=sys.stderr)
        return USAGE_ERROR
    try:
        g = parse_poly(args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    from .census import vertex_singularity
    idx = COORDS.index(point[1])
    if "special" in variant:
        member = special_member(f, "special")
        eliminated = None
        if f.entry_no == 23 and point == "Oz":
            eliminated = 1  # the z^4 y monomial solves for y
        sing = vertex_singularity(f, idx, eliminated=eliminated)
    else:
        member = generic_member(f, seed=args.seed)
        sing = vertex_singularity(f, idx)
    if sing is None:
        print(f"error: the general member has no quotient point at {point}",
              file=sys.stderr)
        return USAGE_ERROR
    ctx = BlowupContext(f, sing)
    try:
        order = divisor_multiplicity(ctx, g, member, cutoff=args.cutoff)
    except NoEliminatingMonomial as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MISMATCH
    if order is OVERCUTOFF:
        print(f"every term cancels below the cutoff; raise --cutoff "
              f"(used {args.cutoff or 4 * sing.r})", file=sys.stderr)
        return MISMATCH
    print(order)
    return 0


def cmd_search(args) -> int:
    parts = [int(x) for x in args.weights.split(",")]
    if len(parts) == 5 and parts[0] == 1:
        parts = parts[1:]
    if len(parts) != 4 or sorted(parts) != parts:
        print("error: give nondecreasing weights a1,a2,a3,a4",
              file=sys.stderr)
        return USAGE_ERROR
    f = Family.of(*parts)
    info = {
        "weights": list(f.w), "degree": f.d,
        "anticanonical_degree": str(anticanonical_degree(f)),
        "wellformed": is_wellformed(f.weights),
    }
    qs = general_quasismooth(f)
    info["quasismooth"] = qs.ok
    if not qs.ok:
        info["quasismooth_failure"] = qs.detail
    if qs.ok:
        from .census import is_terminal_family
        info["terminal"] = is_terminal_family(f)
        if info["terminal"]:
            cens = compute_census(f)
            info["census"] = [
                {"point": e.point_id(), "count": e.count, "r": e.r,
                 "type": list(e.type_)}
                for e in cens.entries
            ]
            dataset = _dataset(args)
            match = next((rec.family.entry_no for rec in dataset.families
                          if rec.family.w == f.w), None)
            info["entry_no"] = match
    if args.json:
        print(report_mod.to_json(info))
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wfano",
        description="Arithmetic certificate checker for the 95 weighted "
                    "Fano threefold hypersurface families")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, golden_flag=True):
        sp.add_argument("--json", action="store_true",
                        help="emit JSON instead of text")
        if golden_flag:
            sp.add_argument("--golden", metavar="PATH",
                            help="directory overriding the packaged dataset")

    sp = sub.add_parser("enumerate", help="rediscover the 95 families")
    sp.add_argument("--max-weight", type=int, default=33)
    sp.add_argument("--diff-paper", action="store_true",
                    help="show the documented source-list corrections")
    add_common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("census", help="singular points of a family")
    sp.add_argument("family", help="entry number or a1,a2,a3,a4")
    add_common(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("report", help="full certificate report")
    sp.add_argument("family", help="entry number or a1,a2,a3,a4")
    sp.add_argument("--variant", help="condition flags, e.g. a1=0,c=0")
    add_common(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("check-tables", help="run the consistency suite")
    sp.add_argument("--family", type=int, help="restrict to one family")
    add_common(sp)
    sp.set_defaults(func=cmd_check_tables)

    sp = sub.add_parser("order", help="vanishing order at a vertex point")
    sp.add_argument("family", help="entry number or a1,a2,a3,a4")
    sp.add_argument("--point", required=True, help="Oy, Oz, Ot or Ow")
    sp.add_argument("--poly", required=True,
                    help="polynomial, e.g. 'y*z+x*t'")
    sp.add_argument("--variant", help="member variant, e.g. special")
    sp.add_argument("--cutoff", type=int,
                    help="series cutoff (default 4r)")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for the generic member coefficients")
    add_common(sp)
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("search", help="probe a raw weight quadruple")
    sp.add_argument("weights", help="a1,a2,a3,a4")
    add_common(sp)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (NonTerminal, EdgeContained) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MISMATCH


if __name__ == "__main__":
    sys.exit(main())
