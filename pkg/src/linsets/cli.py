"""Command-line entry point.  Every command prints JSON (or a table with --pretty).

Exit status: 0 success / verified, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import paperverify as pv
from .geometry import load_subspace
from .gf import FieldSpec, load_field, make_field_tower
from .linset import certificate
from .rankmetric import (
    LinearizedPoly,
    gabidulin,
    is_mrd,
    is_scattered_poly,
    load_code,
    min_distance_geometric,
)


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("common options")
    g.add_argument("--field", help="field spec JSON file (overrides --p/--h/--m)")
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--h", type=int, default=1)
    g.add_argument("--m", type=int, default=4)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    g.add_argument("--output", "-o", help="write JSON here instead of stdout")
    g.add_argument("--pretty", action="store_true", help="human-readable table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linsets", description=__doc__)
    top = parser.add_subparsers(dest="group", required=True)

    field = top.add_parser("field").add_subparsers(dest="cmd", required=True)
    mk = field.add_parser("make", help="build and validate a field tower")
    _common(mk)
    mk.add_argument("--irr-q", help="comma-separated coefficients, low degree first")
    mk.add_argument("--irr-qm", help="comma-separated coefficients, low degree first")

    linset = top.add_parser("linset").add_subparsers(dest="cmd", required=True)
    la = linset.add_parser("analyze", help="weights, spectrum, scatteredness, saturation")
    _common(la)
    la.add_argument("subspace")

    code = top.add_parser("code").add_subparsers(dest="cmd", required=True)
    ca = code.add_parser("analyze", help="minimum distance, MRD, weight distribution")
    _common(ca)
    ca.add_argument("code")
    cg = code.add_parser("gabidulin", help="generalized Gabidulin code")
    _common(cg)
    cg.add_argument("--n", type=int, required=True)
    cg.add_argument("--k", type=int, required=True)
    cg.add_argument("--s", type=int, default=1)
    cg.add_argument("--v", help="comma-separated evaluation points (default 1, y, y^2, ...)")

    poly = top.add_parser("poly").add_subparsers(dest="cmd", required=True)
    ps = poly.add_parser("scattered", help="is sum_i c_i x^(q^i) scattered")
    _common(ps)
    ps.add_argument("--coeffs", required=True, help="comma-separated a_0,a_1,...")

    verify = top.add_parser("verify").add_subparsers(dest="cmd", required=True)
    vb = verify.add_parser("bounds", help="lower bound table for (m, k) = (4, 3)")
    _common(vb)
    vm = verify.add_parser("main", help="rank-4 candidates fail, rank-5 example saturates")
    _common(vm)
    vm.add_argument("--q", type=int, required=True)
    v5 = verify.add_parser("rank5", help="random rank-5 size census")
    _common(v5)
    v5.add_argument("--q", type=int, required=True)
    v5.add_argument("--trials", type=int, default=500)
    v4 = verify.add_parser("random4", help="random rank-4 subspaces never saturate")
    _common(v4)
    v4.add_argument("--q", type=int, required=True)
    v4.add_argument("--trials", type=int, default=1000)
    vi = verify.add_parser("identities", help="counting identities on random subspaces")
    _common(vi)
    vi.add_argument("--q", type=int, required=True)
    vi.add_argument("--k", type=int, required=True)
    vi.add_argument("--trials", type=int, default=500)
    return parser


def _ints(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _field(args) -> FieldSpec:
    if args.field:
        return load_field(args.field)
    return make_field_tower(args.p, args.h, args.m)


def _bounds() -> tuple[dict, bool]:
    expected = [(3, 2, 4), (2, 2, 3), (2, 1, 9)]
    rows = []
    for q, rho, want in expected:
        got = pv.s_lower_bound(pv.BoundQuery(q, 4, 3, rho))
        rows.append({"q": q, "m": 4, "k": 3, "rho": rho, "bound": got, "expected": want,
                     "ok": got == want})
    ok = all(r["ok"] for r in rows)
    return {"ok": ok, "entries": rows}, ok


def run(args) -> tuple[dict, int]:
    cmd = (args.group, args.cmd)
    if cmd == ("field", "make"):
        spec = make_field_tower(args.p, args.h, args.m, _ints(args.irr_q), _ints(args.irr_qm))
        return spec.to_json(), 0
    if cmd == ("verify", "bounds"):
        out, ok = _bounds()
        return out, 0 if ok else 1
    if cmd == ("verify", "main"):
        report = pv.verify_theorem_main(args.q, threads=args.threads)
        return report.to_json(), 0 if report.conclusion else 1
    if cmd == ("verify", "rank5"):
        rep = pv.rank5_size_census(args.q, args.trials, args.seed)
        return rep.to_json(), 0 if rep.ok else 1
    if cmd == ("verify", "random4"):
        rep = pv.random_rank4_never_saturating(args.q, args.trials, args.seed)
        return rep.to_json(), 0 if rep.ok else 1
    if cmd == ("verify", "identities"):
        rep = pv.verify_identities(args.q, args.k, args.trials, args.seed)
        return rep.to_json(), 0 if rep.ok else 1

    spec = _field(args)
    if cmd == ("linset", "analyze"):
        return certificate(load_subspace(spec, args.subspace)), 0
    if cmd == ("code", "analyze"):
        C = load_code(spec, args.code)
        out = {"n": C.n, "k": C.k, "d": C.d, "mrd": is_mrd(C),
               "nondegenerate": bool(C.nondegenerate)}
        if C.nondegenerate and C.k >= 2:
            out["d_geometric"] = min_distance_geometric(C)
        out["histogram"] = {str(w): c for w, c in C.weight_distribution().items()}
        return out, 0
    if cmd == ("code", "gabidulin"):
        v = _ints(args.v)
        if v is None:
            v = [spec.q ** i for i in range(args.n)]
        if len(v) != args.n:
            raise UsageError("--v must have n entries")
        return gabidulin(spec, v, args.k, args.s).to_json(), 0
    if cmd == ("poly", "scattered"):
        coeffs = tuple(_ints(args.coeffs))
        return {"coeffs": list(coeffs),
                "scattered": is_scattered_poly(LinearizedPoly(spec, coeffs))}, 0
    raise UsageError(f"unknown command {' '.join(cmd)}")


def _pretty(obj, indent: str = "") -> str:
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_pretty(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}: [{len(val)} entries]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = run(args)
    except pv.DeskScaleError as exc:
        print(f"error: desk-scale limit: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, KeyError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _pretty(out) if args.pretty else json.dumps(out, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
