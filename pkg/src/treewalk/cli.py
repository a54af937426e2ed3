"""Command-line front end.

Subcommands: analyze | gen | audit | sweep | simulate. All flags are
long-form. Exact values cross the process boundary as integer pairs with
an advisory 12-significant-digit decimal rendering; identical inputs and
seeds produce byte-identical output once --no-timing is passed.

Exit codes: 0 success/verified, 1 usage or input error, 2 audit
discrepancy or refutation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from decimal import Decimal, getcontext
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import audit as audit_mod
from .enumeration import DEFAULT_CAP, tree_classes
from .errors import TreewalkError, UnknownClaim
from .families import (
    FamilySpec,
    balanced_double_broom,
    balanced_lever,
    bestmeet_dbroom_case,
    broom_tree,
    closed_form,
    generate,
    jmin_dbroom_case,
    jmin_lever_case,
)
from .simulate import simulate_hitting
from .trees import Tree, canonical_form, diameter_and_geodesic, format_edge_list, parse_edge_list
from .walkstats import (
    barycenter,
    joining_all,
    kemeny,
    t_bestmeet,
    t_meet,
)


def _decimal_str(fr: Fraction) -> str:
    getcontext().prec = 12
    return str(Decimal(fr.numerator) / Decimal(fr.denominator))


def _exact(fr: Fraction) -> dict:
    return {"num": fr.numerator, "den": fr.denominator, "decimal": _decimal_str(fr)}


def _digest(data: str) -> str:
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


def _envelope(args: argparse.Namespace, payload: dict, digest: str, started: float) -> dict:
    env = {
        "command": args.command_echo,
        "input_digest": digest,
        "results": payload,
    }
    if not args.no_timing:
        env["timing_ms"] = round(1000 * (time.time() - started), 3)
    return env


def _emit(env: dict) -> None:
    print(json.dumps(env, sort_keys=True, indent=2))


def _load_tree(path: str) -> Tree:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def _dot(t: Tree) -> str:
    lines = ["graph tree {"]
    lines += [f"  {u} -- {v};" for u, v in t.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _cmd_analyze(args: argparse.Namespace) -> int:
    started = time.time()
    text = Path(args.input).read_text(encoding="utf-8")
    t = parse_edge_list(text)
    if args.targets == "all":
        targets = list(range(t.n))
    else:
        targets = sorted({int(x) for x in args.targets.split(",")})
        for v in targets:
            if not 0 <= v < t.n:
                raise TreewalkError(f"target vertex {v} outside 0..{t.n - 1}")
    js = joining_all(t)
    d, geo = diameter_and_geodesic(t)
    bc = barycenter(t)
    tm, tm_at = t_meet(t)
    tb, tb_at = t_bestmeet(t)
    payload = {
        "n": t.n,
        "diameter": d,
        "geodesic": geo,
        "barycenter": list(bc.centers),
        "per_vertex": {
            str(v): {
                "joining_time": js[v],
                "meeting_time": _exact(Fraction(js[v], 2 * (t.n - 1))),
            }
            for v in targets
        },
        "t_meet": _exact(tm) | {"argmax": tm_at},
        "t_bestmeet": _exact(tb) | {"argmin": tb_at},
        "kemeny": _exact(kemeny(t)),
    }
    if args.dot:
        Path(args.dot).write_text(_dot(t), encoding="utf-8")
        payload["dot_file"] = args.dot
    _emit(_envelope(args, payload, _digest(text), started))
    return 0


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

_FAMILY_FLAG = {
    "path": "path",
    "star": "star",
    "lever": "lever",
    "balanced-lever": "lever",
    "broom": "broom",
    "double-broom": "double_broom",
    "balanced-double-broom": "double_broom",
}


def _gen_tree(args: argparse.Namespace) -> tuple[Tree, FamilySpec]:
    family = _FAMILY_FLAG.get(args.family)
    if family is None:
        raise TreewalkError(f"unknown family {args.family!r}")
    n = args.n
    if family not in ("path", "star") and args.d is None:
        raise TreewalkError(f"family {args.family!r} needs --d")
    if args.family == "balanced-lever":
        t = balanced_lever(n, args.d)
        spec = FamilySpec("lever", n, args.d, k=args.d // 2 if args.d < n - 1 else max(1, (n - 1) // 2))
        return t, spec
    if args.family == "balanced-double-broom":
        t = balanced_double_broom(n, args.d)
        extra = n - args.d - 1
        spec = FamilySpec("double_broom", n, args.d, left_leaves=extra // 2 + 1, right_leaves=(extra + 1) // 2 + 1)
        return t, spec
    if family == "path":
        spec = FamilySpec("path", n, n - 1)
    elif family == "star":
        spec = FamilySpec("star", n, 2)
    elif family == "lever":
        spec = FamilySpec("lever", n, args.d, k=args.k)
    elif family == "broom":
        spec = FamilySpec("broom", n, args.d)
    else:
        spec = FamilySpec("double_broom", n, args.d, left_leaves=args.left, right_leaves=args.right)
    return generate(spec), spec


def _predictions(spec: FamilySpec) -> dict:
    """Ledger values applicable to this instance, evaluated exactly."""
    n, d = spec.n, spec.d
    out: dict[str, dict] = {}

    def put(fid: str, needs_d: bool = True) -> None:
        try:
            out[fid] = _exact(closed_form(fid, n, d if needs_d else None))
        except TreewalkError:
            pass

    if spec.family == "path":
        put("jmax_path", needs_d=False)
        put("jmin_path_odd" if n % 2 else "jmin_path_even", needs_d=False)
        put("tmeet_path", needs_d=False)
        put("bestmeet_pn", needs_d=False)
    elif spec.family == "star":
        put("tmeet_star", needs_d=False)
        put("jmax_star_corrected", needs_d=False)
        put("jmax_star_printed", needs_d=False)
    elif spec.family == "lever" and spec.k == d // 2:
        put(jmin_lever_case(d))
        put("bestmeet_lever")
    elif spec.family == "broom":
        put("jmax_broom")
    elif spec.family == "double_broom":
        extra = n - d - 1
        if (spec.left_leaves, spec.right_leaves) == (extra // 2 + 1, (extra + 1) // 2 + 1):
            put(jmin_dbroom_case(n, d))
            put(bestmeet_dbroom_case(n, d))
    return out


def _cmd_gen(args: argparse.Namespace) -> int:
    started = time.time()
    t, spec = _gen_tree(args)
    text = format_edge_list(t)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    payload = {
        "family": spec.family,
        "n": spec.n,
        "d": spec.d,
        "canonical": canonical_form(t).decode("ascii"),
        "predicted": _predictions(spec),
    }
    if args.output:
        payload["output"] = args.output
    if args.dot:
        Path(args.dot).write_text(_dot(t), encoding="utf-8")
        payload["dot_file"] = args.dot
    _emit(_envelope(args, payload, _digest(text), started))
    return 0


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def _parse_range(spec: str) -> tuple[int, int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return int(lo), int(hi)
    v = int(spec)
    return v, v


def _cmd_audit(args: argparse.Namespace) -> int:
    started = time.time()
    claim = args.claim
    if claim == "thm-min":
        report = audit_mod.audit_theorem_min(args.n_single, args.d_single, cap=args.cap)
    elif claim == "thm-max":
        report = audit_mod.audit_theorem_max(args.n_single, args.d_single, cap=args.cap)
    elif claim == "thm-global":
        report = audit_mod.audit_theorem_global(args.n_single, cap=args.cap)
    elif claim == "prop-barycenter":
        report = audit_mod.audit_proposition_barycenter(args.n_single, cap=args.cap)
    elif claim == "formula":
        n_lo, n_hi = _parse_range(args.n_range)
        d_lo = d_hi = None
        if args.d_range:
            d_lo, d_hi = _parse_range(args.d_range)
        report = audit_mod.audit_formula(args.formula_id, n_lo, n_hi, d_lo, d_hi)
    else:
        raise UnknownClaim(f"unknown claim {claim!r}")
    digest = _digest(json.dumps(report.params, sort_keys=True))
    _emit(_envelope(args, report.as_dict(), digest, started))
    return 0 if report.status == audit_mod.VERIFIED else 2


def _audit_args(args: argparse.Namespace) -> None:
    claim = args.claim
    if claim in ("thm-min", "thm-max"):
        if args.n is None or args.d is None:
            raise TreewalkError(f"{claim} needs --n and --d")
        args.n_single, args.d_single = int(args.n), int(args.d)
    elif claim in ("thm-global", "prop-barycenter"):
        if args.n is None:
            raise TreewalkError(f"{claim} needs --n")
        args.n_single = int(args.n)
    elif claim == "formula":
        if args.formula_id is None or args.n is None:
            raise TreewalkError("formula audits need a formula id and --n range")
        args.n_range = args.n
        args.d_range = args.d


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_FAMILIES = {
    "balanced-lever": balanced_lever,
    "balanced-double-broom": balanced_double_broom,
    "broom": broom_tree,
}


def _sweep_quantity(t: Tree, quantity: str) -> Fraction:
    if quantity == "t_bestmeet":
        return t_bestmeet(t)[0]
    if quantity == "t_meet":
        return t_meet(t)[0]
    if quantity == "kemeny":
        return kemeny(t)
    js = joining_all(t)
    if quantity == "j_min":
        return Fraction(min(js))
    if quantity == "j_max":
        return Fraction(max(js))
    raise TreewalkError(f"unknown quantity {quantity!r}")


def _cmd_sweep(args: argparse.Namespace) -> int:
    started = time.time()
    rows: list[tuple[int, int, str, int, int]] = []
    if args.enumerated:
        n = args.n
        for t in tree_classes(n, max(DEFAULT_CAP, n)):
            q = _sweep_quantity(t, args.quantity)
            d, _ = diameter_and_geodesic(t)
            rows.append((n, d, canonical_form(t).decode("ascii"), q.numerator, q.denominator))
        rows.sort(key=lambda r: (r[0], r[1], r[2]))
    else:
        if args.family not in _SWEEP_FAMILIES:
            raise TreewalkError(
                f"sweep family must be one of {sorted(_SWEEP_FAMILIES)}, got {args.family!r}"
            )
        build = _SWEEP_FAMILIES[args.family]
        n = args.n
        d_lo, d_hi = _parse_range(args.d) if args.d else (2, n - 1)
        for d in range(d_lo, d_hi + 1):
            if args.family == "broom" and not 3 <= d < n:
                continue
            if not 2 <= d <= n - 1:
                continue
            t = build(n, d)
            q = _sweep_quantity(t, args.quantity)
            rows.append((n, d, args.family, q.numerator, q.denominator))
    header = "n,d,family,quantity_num,quantity_den"
    lines = [header] + [f"{r[0]},{r[1]},{r[2]},{r[3]},{r[4]}" for r in rows]
    csv_text = "\n".join(lines) + "\n"
    if args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        payload = {
            "quantity": args.quantity,
            "rows": [
                {"n": r[0], "d": r[1], "family": r[2], "num": r[3], "den": r[4]}
                for r in rows
            ],
        }
        _emit(_envelope(args, payload, _digest(csv_text), started))
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args: argparse.Namespace) -> int:
    started = time.time()
    text = Path(args.input).read_text(encoding="utf-8")
    t = parse_edge_list(text)
    sample = simulate_hitting(t, args.u, args.w, args.walks, args.seed)
    payload = sample.as_dict()
    payload["u"] = args.u
    payload["w"] = args.w
    _emit(_envelope(args, payload, _digest(text), started))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="treewalk",
        description="Exact random-walk statistics, extremal families and audits on trees",
    )
    p.add_argument("--no-timing", action="store_true", help="omit the timing field for byte-identical output")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="walk statistics for an edge-list file")
    pa.add_argument("--input", required=True)
    pa.add_argument("--targets", default="all", help="'all' or comma-separated vertex ids")
    pa.add_argument("--dot", default=None, help="also write a DOT rendering here")
    pa.set_defaults(func=_cmd_analyze)

    pg = sub.add_parser("gen", help="generate a named family instance")
    pg.add_argument("--family", required=True, choices=sorted(_FAMILY_FLAG))
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--d", type=int, default=None)
    pg.add_argument("--k", type=int, default=None, help="lever fulcrum index")
    pg.add_argument("--left", type=int, default=None, help="double-broom left cluster size")
    pg.add_argument("--right", type=int, default=None, help="double-broom right cluster size")
    pg.add_argument("--output", default=None, help="edge-list destination (stdout when omitted)")
    pg.add_argument("--dot", default=None)
    pg.set_defaults(func=_cmd_gen)

    pd = sub.add_parser("audit", help="run one adjudication")
    pd.add_argument("claim", choices=["thm-min", "thm-max", "thm-global", "prop-barycenter", "formula"])
    pd.add_argument("formula_id", nargs="?", default=None)
    pd.add_argument("--n", default=None, help="integer or lo..hi range for formula audits")
    pd.add_argument("--d", default=None)
    pd.add_argument("--cap", type=int, default=DEFAULT_CAP)
    pd.add_argument("--threads", type=int, default=None, help="enumeration worker processes")
    pd.set_defaults(func=_cmd_audit)

    ps = sub.add_parser("sweep", help="tabulate a quantity over families or enumerated classes")
    ps.add_argument("--family", default=None)
    ps.add_argument("--enumerated", action="store_true")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--d", default=None, help="diameter or lo..hi range")
    ps.add_argument(
        "--quantity",
        default="t_bestmeet",
        choices=["t_bestmeet", "t_meet", "kemeny", "j_min", "j_max"],
    )
    ps.add_argument("--format", default="csv", choices=["csv", "json"])
    ps.set_defaults(func=_cmd_sweep)

    pm = sub.add_parser("simulate", help="seeded Monte Carlo hitting-time estimate")
    pm.add_argument("--input", required=True)
    pm.add_argument("--u", type=int, required=True)
    pm.add_argument("--w", type=int, required=True)
    pm.add_argument("--walks", type=int, required=True)
    pm.add_argument("--seed", type=int, required=True)
    pm.set_defaults(func=_cmd_simulate)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    args.command_echo = ["treewalk"] + argv
    try:
        if args.command == "audit":
            if args.threads is not None:
                import os

                os.environ["TREEWALK_THREADS"] = str(args.threads)
            _audit_args(args)
        return args.func(args)
    except TreewalkError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
