"""Command-line surface: single values, table regeneration, identity reports,
polytope export, and simulations.

Exit codes: 0 success, 1 compute error, 2 usage error.  Output is
byte-stable for fixed inputs, flags, and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import geometry, montecarlo, volumes

_TABLE_SECTIONS = ("m1", "m2", "m3", "kmax")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


# -- vk / prob ----------------------------------------------------------------


def _cmd_vk(args) -> str:
    value = volumes.vk_value(args.m, args.n, args.k, args.method, args.tol)
    if args.format == "json":
        return _json_dumps({"m": args.m, "n": args.n, "k": args.k,
                            "method": args.method, "tol": args.tol, "value": value})
    return repr(value)


def _cmd_prob(args) -> str:
    value = volumes.radon_probability(args.d, args.m, args.n, args.tol)
    if args.format == "json":
        return _json_dumps({"d": args.d, "m": args.m, "n": args.n,
                            "tol": args.tol, "p": value})
    return repr(value)


# -- tables ----------------------------------------------------------------


def table_cells(section: str, max_n: int, tol: float = 1e-9):
    """(row, col, value) triples for one appendix-style table.

    m1/m2/m3 tables are keyed (k, n) with n from the side size upward; the
    kmax table is keyed (m, n) for m <= n with k = m + n - 1.  Structural
    zeros are omitted.
    """
    cells = []
    if section == "kmax":
        for m in range(1, max_n + 1):
            for n in range(max(2, m), max_n + 1):
                cells.append((m, n, volumes.vk_value(m, n, m + n - 1, "kmax", tol)))
        return cells
    side = int(section[1])
    for n in range(side, max_n + 1):
        for k in range(0, n + side):
            cells.append((k, n, volumes.vk_value(side, n, k, section if k else "auto", tol)))
    return cells


def _cmd_tables(args) -> str:
    section = args.section
    max_n = args.max_n if args.max_n is not None else (10 if section == "kmax" else 9)
    cells = table_cells(section, max_n, args.tol)
    if args.format == "json":
        key_row = "m" if section == "kmax" else "k"
        return _json_dumps({
            "section": section,
            "max_n": max_n,
            "values": [{key_row: r, "n": c, "value": v} for r, c, v in cells],
        })
    by_pos = {(r, c): v for r, c, v in cells}
    rows = sorted({r for r, _, _ in cells})
    cols = sorted({c for _, c, _ in cells})
    head = "m" if section == "kmax" else "k"
    lines = [",".join([head] + [f"n={c}" for c in cols])]
    for r in rows:
        line = [str(r)]
        for c in cols:
            v = by_pos.get((r, c))
            line.append("" if v is None else f"{v:.4g}")
        lines.append(",".join(line))
    return "\n".join(lines) + "\n"


# -- identities ----------------------------------------------------------------


def _cmd_identities(args) -> str:
    reports = {"gauss_bonnet": [], "symmetry": [], "conjecture_probe": []}
    for total in range(2, args.max_total + 1):
        for m in range(1, total // 2 + 1):
            n = total - m
            reports["gauss_bonnet"].append(volumes.check_gauss_bonnet(m, n, args.tol).to_dict())
            reports["symmetry"].append(volumes.check_symmetry(m, n, args.tol).to_dict())
    if args.conjecture:
        for d in (1, 2, 3):
            for total in range(d + 2, args.max_total + 1):
                reports["conjecture_probe"].append(volumes.balanced_probe(total, d).to_dict())
    ok = all(r["ok"] for r in reports["gauss_bonnet"] + reports["symmetry"])
    if args.format == "json":
        return _json_dumps({"max_total": args.max_total, "tol": args.tol,
                            "all_ok": ok, "reports": reports})
    lines = []
    for r in reports["gauss_bonnet"]:
        lines.append(
            f"gauss-bonnet m={r['m']} n={r['n']} "
            f"residuals=({r['residual_even']:.2e},{r['residual_odd']:.2e}) "
            f"{'ok' if r['ok'] else 'FAIL'}"
        )
    for r in reports["symmetry"]:
        lines.append(f"symmetry m={r['m']} n={r['n']} max_diff={r['max_diff']:.2e} "
                     f"{'ok' if r['ok'] else 'FAIL'}")
    for r in reports["conjecture_probe"]:
        lines.append(f"balance-probe N={r['N']} d={r['d']} "
                     f"monotone={'yes' if r['monotone'] else 'no'}")
    lines.append("all ok" if ok else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"


# -- polytope ----------------------------------------------------------------


def _polytope_config(args):
    sources = [args.points is not None, args.line is not None,
               args.circle is not None, args.pentagon_center]
    if sum(sources) != 1:
        raise ValueError("exactly one of --points/--line/--circle/--pentagon-center")
    if args.points is not None:
        return geometry.load_points_csv(args.points)
    if args.line is not None:
        return geometry.line_points(args.line)
    if args.circle is not None:
        return geometry.circle_points(args.circle)
    return geometry.pentagon_center_points()


def _cmd_polytope(args) -> str:
    cfg = _polytope_config(args)
    lattice = geometry.face_lattice(cfg)
    if args.format == "dot":
        return geometry.export_lattice(lattice, "dot")
    doc = json.loads(geometry.export_lattice(lattice, "json"))
    doc["schema"] = "radonpoly.polytope.v1"
    doc["tolerant_partitions"] = [p.label() for p in geometry.tolerant_partitions(cfg)]
    return _json_dumps(doc)


# -- simulate ----------------------------------------------------------------


def _resolve_seed(args, parser: argparse.ArgumentParser) -> int:
    if args.seed is not None:
        return args.seed
    if args.strict:
        parser.error("--strict requires an explicit --seed for randomized commands")
    seed = int(np.random.SeedSequence().entropy % (1 << 63))
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _cmd_simulate(args, parser) -> str:
    seed = _resolve_seed(args, parser)
    if args.kind == "radon":
        if args.m is None or args.n is None:
            parser.error("simulate radon requires --m and --n")
        est = montecarlo.estimate_partition_probability(
            args.d, args.m, args.n, args.samples, seed, args.workers)
    elif args.kind == "reay":
        if args.n_points is None:
            parser.error("simulate reay requires --n-points")
        est = montecarlo.estimate_reay_probability(
            args.n_points, args.d, args.samples, seed, args.workers)
    else:
        if args.n_points is None:
            parser.error("simulate tolerance requires --n-points")
        est = montecarlo.estimate_tolerance_probability(
            args.n_points, args.d, args.samples, seed, args.workers)
    return _json_dumps(est.to_dict())


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radonpoly",
        description="Conic intrinsic volumes of partition cones, Radon partition "
                    "probabilities, and Radon polytopes of explicit configurations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vk", help="one intrinsic volume v_k(m, n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--method", default="auto",
                   choices=["auto", "m1", "m2", "m3", "kmax", "general"])
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out")

    p = sub.add_parser("prob", help="Radon probability P_d(m, n)")
    p.add_argument("d", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out")

    p = sub.add_parser("tables", help="regenerate an intrinsic-volume table")
    p.add_argument("section", choices=list(_TABLE_SECTIONS))
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--out")

    p = sub.add_parser("identities", help="Gauss-Bonnet / symmetry / balance reports")
    p.add_argument("--max-total", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--conjecture", action="store_true",
                   help="also probe the balanced-partition ordering")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out")

    p = sub.add_parser("polytope", help="face lattice of a point configuration")
    p.add_argument("--points", help="CSV file, one point per row")
    p.add_argument("--line", type=int, help="x_i = i on the line")
    p.add_argument("--circle", type=int, help="n-th roots of unity")
    p.add_argument("--pentagon-center", action="store_true",
                   help="regular pentagon plus center")
    p.add_argument("--format", default="json", choices=["json", "dot"])
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="Monte Carlo estimates")
    p.add_argument("kind", choices=["radon", "reay", "tolerance"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--n-points", type=int)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true",
                   help="refuse to run randomized commands without --seed")
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "vk":
            text = _cmd_vk(args)
        elif args.command == "prob":
            text = _cmd_prob(args)
        elif args.command == "tables":
            text = _cmd_tables(args)
        elif args.command == "identities":
            text = _cmd_identities(args)
        elif args.command == "polytope":
            text = _cmd_polytope(args)
        else:
            text = _cmd_simulate(args, parser)
    except SystemExit:
        raise
    except Exception as exc:  # compute error -> exit 1
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
