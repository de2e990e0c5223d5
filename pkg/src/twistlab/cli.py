"""Command-line interface: info | twist | growth | heegner | verify.

Curve literals are `[a1,a2,a3,a4,a6]` with integer or p/q entries.  Exit
codes: 0 success, 1 theorem violation, 2 malformed input.  Flags win
over TWISTLAB_* environment variables, which win over defaults.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .corpus import fixture_corpus, load_corpus
from .curve import WeierstrassCurve, invariants, minimal_model, parse_curve, quadratic_twist
from .errors import TwistlabError, Violation
from .localdata import conductor, reduction_summary, tamagawa_product
from .quadfield import heegner_check, make_field
from .quadtorsion import growth_report
from .sweep import SweepConfig, run_sweep
from .theorems import check_heegner_corollary, run_all
from .torsion import torsion_subgroup

_INPUT_ERROR = 2
_VIOLATION = 1


def _rat(x: Fraction):
    """JSON-friendly exact rational: int when integral, 'p/q' otherwise."""
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _point_json(pt):
    if pt.is_identity():
        return {"x": None, "y": None, "order": 1}
    return {"x": _rat(pt.x), "y": _rat(pt.y), "order": pt.order}


def _torsion_json(group):
    return {
        "structure": group.structure,
        "order": group.order,
        "invariant_factors": list(group.invariant_factors),
        "generators": [_point_json(g) for g in group.generators],
    }


def _reduction_json(E: WeierstrassCurve) -> dict:
    return {
        "conductor": conductor(E),
        "tamagawa_product": tamagawa_product(E),
        "local": [
            {
                "p": rd.p,
                "kodaira": rd.kodaira.label,
                "f_p": rd.f_p,
                "c_p": rd.c_p,
                "reduction_class": rd.reduction_class.value,
            }
            for rd in reduction_summary(E)
        ],
    }


def _curve_json(E: WeierstrassCurve) -> dict:
    Em, _ = minimal_model(E)
    return {
        "literal": E.literal(),
        "ainvs": [_rat(a) for a in E.ainvs],
        "minimal_model": Em.literal(),
    }


def _invariants_json(E: WeierstrassCurve) -> dict:
    inv = invariants(E)
    return {
        "b2": _rat(inv.b2),
        "b4": _rat(inv.b4),
        "b6": _rat(inv.b6),
        "b8": _rat(inv.b8),
        "c4": _rat(inv.c4),
        "c6": _rat(inv.c6),
        "disc": _rat(inv.disc),
        "j": _rat(inv.j),
    }


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _print_reduction_text(E: WeierstrassCurve) -> None:
    red = _reduction_json(E)
    print(f"conductor        {red['conductor']}")
    print(f"tamagawa product {red['tamagawa_product']}")
    for row in red["local"]:
        print(
            f"  p={row['p']:<6} {row['kodaira']:<5} f={row['f_p']}  c={row['c_p']}  "
            f"{row['reduction_class']}"
        )


def cmd_info(args) -> int:
    E = parse_curve(args.curve)
    inv = invariants(E)
    doc = {
        "curve": _curve_json(E),
        "invariants": _invariants_json(E),
        "reduction": _reduction_json(E),
        "torsion": _torsion_json(torsion_subgroup(E)),
    }
    if args.json:
        sys.stdout.write(_dump(doc))
        return 0
    print(f"curve            {E.literal()}")
    print(f"minimal model    {doc['curve']['minimal_model']}")
    print(f"c4               {_rat(inv.c4)}")
    print(f"c6               {_rat(inv.c6)}")
    print(f"disc             {_rat(inv.disc)}")
    print(f"j                {_rat(inv.j)}")
    _print_reduction_text(E)
    tors = doc["torsion"]
    print(f"torsion          {tors['structure']} (order {tors['order']})")
    for g in tors["generators"]:
        print(f"  generator ({g['x']}, {g['y']}) of order {g['order']}")
    return 0


def cmd_twist(args) -> int:
    E = parse_curve(args.curve)
    tw = quadratic_twist(E, args.d)
    tw_min, _ = minimal_model(tw)
    doc = {
        "curve": _curve_json(E),
        "d": args.d,
        "twist": {
            "short_model": tw.literal(),
            "minimal_model": tw_min.literal(),
        },
        "invariants": _invariants_json(tw_min),
        "reduction": _reduction_json(tw_min),
        "torsion": _torsion_json(torsion_subgroup(tw_min)),
    }
    if args.json:
        sys.stdout.write(_dump(doc))
        return 0
    print(f"curve            {E.literal()}")
    print(f"twist by         {args.d}")
    print(f"twist (short)    {tw.literal()}")
    print(f"twist (minimal)  {tw_min.literal()}")
    _print_reduction_text(tw_min)
    print(f"torsion          {doc['torsion']['structure']}")
    return 0


def cmd_growth(args) -> int:
    E = parse_curve(args.curve)
    report = growth_report(E, args.d, run_ell_oracle=args.ell_oracle)
    violation = None
    try:
        verdicts = run_all(E, args.d)
    except Violation as exc:
        verdicts = list(exc.verdicts)
        violation = str(exc)
    doc = {
        "curve": _curve_json(E),
        "invariants": _invariants_json(E),
        "reduction": _reduction_json(E),
        "torsion": {
            "base": _torsion_json(report.base_torsion),
            "twist": _torsion_json(report.twist_torsion),
        },
        "growth": {
            "d": report.d,
            "twist_minimal_model": minimal_model(quadratic_twist(E, report.d))[0].literal(),
            "odd_L_torsion": str(report.odd_L_torsion),
            "two_torsion_L": str(report.two_torsion_L),
            "growth_primes": sorted(report.growth_primes),
            "quotient_odd_part": report.quotient_odd_part,
            "oracle_checked": report.oracle_checked,
        },
        "verdicts": [v.to_json() for v in verdicts],
    }
    if violation is not None:
        doc["violation"] = violation
    if args.json:
        sys.stdout.write(_dump(doc))
        return _VIOLATION if violation else 0
    g = doc["growth"]
    print(f"curve            {E.literal()}")
    print(f"d (squarefree)   {g['d']}")
    print(f"base torsion     {doc['torsion']['base']['structure']}")
    print(f"twist torsion    {doc['torsion']['twist']['structure']}  on {g['twist_minimal_model']}")
    print(f"odd E(L)_tors    {g['odd_L_torsion']}")
    print(f"E(L)[2]          {g['two_torsion_L']}")
    print(f"growth primes    {g['growth_primes']}")
    print(f"odd quotient     {g['quotient_odd_part']}")
    for v in doc["verdicts"]:
        state = (
            "hypotheses not met"
            if not v["hypotheses_hold"]
            else ("verified" if v["conclusion_holds"] else "FAILED")
        )
        print(f"  {v['theorem']:<28} {state}")
    if violation:
        print(f"VIOLATION: {violation}")
        return _VIOLATION
    return 0


def cmd_heegner(args) -> int:
    E = parse_curve(args.curve)
    field = make_field(args.d)
    N = conductor(E)
    check = heegner_check(field, N)
    verdict = check_heegner_corollary(E, args.d)
    doc = {
        "curve": _curve_json(E),
        "d": field.d,
        "conductor": N,
        "field": {
            "discriminant": field.discriminant,
            "imaginary": field.imaginary,
            "u_L": field.u,
            "ramified_primes": sorted(field.ramified_primes),
        },
        "splittings": {str(p): s.value for p, s in check.splittings},
        "heegner": check.holds,
        "reason": check.reason,
        "tamagawa_product": tamagawa_product(E),
        "verdict": verdict.to_json(),
    }
    if args.json:
        sys.stdout.write(_dump(doc))
        return 0
    print(f"curve            {E.literal()}   N = {N}")
    print(f"field            Q(sqrt({field.d}))   disc {field.discriminant}   u_L = {field.u}")
    for p, s in check.splittings:
        print(f"  p={p:<6} {s.value}")
    print(f"heegner          {check.holds}" + (f"   ({check.reason})" if check.reason else ""))
    print(f"c(E/Q)           {doc['tamagawa_product']}")
    v = doc["verdict"]
    state = (
        "hypotheses not met"
        if not v["hypotheses_hold"]
        else ("verified" if v["conclusion_holds"] else "FAILED")
    )
    print(f"corollary        {state}")
    return 0


def _write_pairs_csv(report: dict, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "label",
                "d",
                "base_torsion",
                "twist_torsion",
                "odd_L_torsion",
                "two_torsion_L",
                "quotient_odd_part",
                "growth_primes",
                "violation",
            ]
        )
        for row in report["pairs"]:
            writer.writerow(
                [
                    row["label"],
                    row["d"],
                    row["base_torsion"],
                    row["twist_torsion"],
                    row["odd_L_torsion"],
                    row["two_torsion_L"],
                    row["quotient_odd_part"],
                    ";".join(str(p) for p in row["growth_primes"]),
                    "yes" if row["violation"] else "",
                ]
            )


def cmd_verify(args) -> int:
    entries = load_corpus(args.corpus) if args.corpus else fixture_corpus()
    config = SweepConfig(
        d_min=args.d_min,
        d_max=args.d_max,
        ell_oracle=args.ell_oracle,
        primes_for_bounds=args.bound_primes,
        parallelism=args.parallelism,
    )
    report = run_sweep(entries, config)
    summary = {
        "curves": report["curves"],
        "pairs_checked": report["pairs_checked"],
        "verdicts_by_theorem": report["verdicts_by_theorem"],
        "violations": report["violations"],
    }
    print(f"curves           {len(report['curves'])} ({', '.join(report['curves'])})")
    print(f"d range          [{args.d_min}, {args.d_max}] squarefree, excluding 0 and 1")
    print(f"pairs checked    {report['pairs_checked']}")
    for tid, counts in report["verdicts_by_theorem"].items():
        print(
            f"  {tid:<28} verified {counts['verified']:>4}   vacuous {counts['vacuous']:>4}"
        )
    if args.json_out:
        Path(args.json_out).write_text(_dump(report))
        print(f"report written   {args.json_out}")
    if args.csv_out:
        _write_pairs_csv(report, Path(args.csv_out))
        print(f"pairs written    {args.csv_out}")
    if args.figures_dir:
        from .figures import render_sweep_figures

        for path in render_sweep_figures(report, args.figures_dir):
            print(f"figure written   {path}")
    if report["violations"]:
        print(f"VIOLATIONS: {len(report['violations'])}")
        for v in report["violations"]:
            print(f"  {v['label']} d={v['d']}: {v['message']}")
        return _VIOLATION
    print("violations       none")
    return 0


def _env_default(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise TwistlabError(f"environment variable {name}={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistlab",
        description="Quadratic twists, reduction data, and torsion growth over Q(sqrt(d)).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_curve_cmd(name, func, help_text, with_d=True, growth_flags=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("curve", help="curve literal [a1,a2,a3,a4,a6]")
        if with_d:
            p.add_argument("-d", type=int, required=True, help="twist parameter")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if growth_flags:
            p.add_argument(
                "--ell-oracle",
                action="store_true",
                help="also run the direct division-polynomial oracle over L",
            )
        p.set_defaults(func=func)
        return p

    add_curve_cmd("info", cmd_info, "invariants, reduction data and torsion", with_d=False)
    add_curve_cmd("twist", cmd_twist, "quadratic twist and its reduction data")
    add_curve_cmd("growth", cmd_growth, "torsion growth report and theorem verdicts", growth_flags=True)
    add_curve_cmd("heegner", cmd_heegner, "Heegner hypothesis test and corollary verdict")

    v = sub.add_parser("verify", help="sweep a corpus over squarefree d and check every theorem")
    v.add_argument("corpus", nargs="?", default=None, help="corpus CSV (default: bundled fixtures)")
    v.add_argument("--d-min", type=int, default=_env_default("TWISTLAB_D_MIN", -20))
    v.add_argument("--d-max", type=int, default=_env_default("TWISTLAB_D_MAX", 20))
    v.add_argument("--ell-oracle", action="store_true")
    v.add_argument(
        "--bound-primes",
        type=int,
        default=5,
        help="odd good primes feeding each torsion reduction bound",
    )
    v.add_argument(
        "--parallelism",
        type=int,
        default=_env_default("TWISTLAB_PARALLELISM", 1),
        help="worker processes (default 1; env TWISTLAB_PARALLELISM)",
    )
    v.add_argument("--json-out", default=None, help="write the full JSON report here")
    v.add_argument("--csv-out", default=None, help="write per-pair rows as CSV here")
    v.add_argument("--figures-dir", default=None, help="render summary figures into this directory")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Violation as exc:
        print(f"VIOLATION: {exc}", file=sys.stderr)
        return _VIOLATION
    except TwistlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
