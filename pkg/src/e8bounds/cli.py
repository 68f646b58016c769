"""Command-line front end.

Every subcommand is deterministic for fixed arguments, prints exact decimal
integers only, and exits with 0 on success, 2 when invariant consistency
checks fail, and 1 on usage, parse, or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import invariants as inv
from . import lattice, search
from .errors import E8BoundsError
from .graph import StarGraph, deserialize, gram_matrix, serialize, to_dot
from .moves import blow_down, boundary_brieskorn, normalize_to_star
from .seifert import BrieskornSpec, read_seifert, resolution

ENV_OUTDIR = "E8BOUNDS_OUTDIR"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load_config(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise E8BoundsError(f"cannot read graph file {path}: {exc}") from exc
    return deserialize(text)


def _spec_from_args(values: list[int]) -> BrieskornSpec:
    if len(values) < 3:
        raise E8BoundsError("need at least three multiplicities")
    return BrieskornSpec(tuple(values))


def _star_payload(star: StarGraph) -> dict:
    return {
        "central_weight": star.central_weight,
        "branches": [list(b) for b in star.branches],
        "seifert": read_seifert(star).as_dict(),
    }


def _emit_star(star: StarGraph, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_star_payload(star), sort_keys=True) + "\n"
    if fmt == "dot":
        return to_dot(star.to_configuration())
    return serialize(star.to_configuration())


def _outdir(args) -> Path | None:
    chosen = getattr(args, "outdir", None) or os.environ.get(ENV_OUTDIR)
    if chosen is None:
        return None
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


# -- subcommand bodies --------------------------------------------------------


def _cmd_resolve(args) -> int:
    star = resolution(_spec_from_args(args.multiplicities))
    sys.stdout.write(_emit_star(star, args.format))
    return 0


def _cmd_invariants(args) -> int:
    report = inv.invariant_report(_spec_from_args(args.multiplicities))
    sys.stdout.write(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
    violations = inv.consistency_checks(report)
    for v in violations:
        sys.stderr.write(f"violation: {v}\n")
    return 2 if violations else 0


def _cmd_form(args) -> int:
    m = gram_matrix(_load_config(args.graph))
    cert = lattice.recognize_negative_e8(m)
    payload = {
        "rank": m.n,
        "determinant": lattice.determinant(m),
        "negative_definite": lattice.is_negative_definite(m),
        "even": lattice.is_even(m),
        "unimodular": lattice.is_unimodular(m),
        "signature": lattice.signature(m),
        "negative_e8": cert.as_dict(),
    }
    if args.format == "text":
        for key in sorted(payload):
            if key == "negative_e8":
                sys.stdout.write(f"negative_e8: {cert.is_negative_e8} ({cert.reason})\n")
            else:
                sys.stdout.write(f"{key}: {payload[key]}\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_blowdown(args) -> int:
    out = blow_down(_load_config(args.graph), args.vertex)
    sys.stdout.write(serialize(out))
    return 0


def _cmd_normalize(args) -> int:
    star, trace = normalize_to_star(_load_config(args.graph))
    sys.stdout.write(_emit_star(star, args.format))
    if args.trace:
        Path(args.trace).write_text(trace.to_jsonl(), encoding="utf-8")
    return 0


def _cmd_boundary(args) -> int:
    spec = boundary_brieskorn(_load_config(args.graph))
    if args.format == "json":
        sys.stdout.write(json.dumps({"multiplicities": list(spec.multiplicities)}) + "\n")
    else:
        sys.stdout.write(" ".join(str(a) for a in spec.multiplicities) + "\n")
    return 0


def _cmd_search(args) -> int:
    sols = search.solve_family(args.family, args.a_max, args.b_max)
    if args.coprime_only:
        sols = [s for s in sols if s.gcd_ok]
    if args.format == "json":
        payload = [
            {"family": s.family, "a": s.a, "b": s.b, "c": s.c, "coprime": s.gcd_ok} for s in sols
        ]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        rows = [[s.family, s.a, s.b, s.c, int(s.gcd_ok)] for s in sols]
        sys.stdout.write(_csv_text(["family", "a", "b", "c", "coprime"], rows))
    return 0


def _cmd_classify(args) -> int:
    if args.kind == "rank8":
        results = search.classify_star_rank8_even(args.bound)
        payload = {
            "-".join(map(str, t)): [
                {
                    "central_weight": sol.star.central_weight,
                    "branches": [list(b) for b in sol.star.branches],
                    "sphere": list(sol.sphere.multiplicities),
                    "shell_clean": sol.shell_clean,
                }
                for sol in sols
            ]
            for t, sols in results.items()
        }
    else:
        sols = search.classify_2221(args.bound)
        parity = search.partition_parity_check(draws=args.draws)
        payload = {
            "solutions": [
                {
                    "central_weight": sol.star.central_weight,
                    "branches": [list(b) for b in sol.star.branches],
                    "sphere": list(sol.sphere.multiplicities),
                    "shell_clean": sol.shell_clean,
                }
                for sol in sols
            ],
            "other_partitions_all_even_determinant": {
                "-".join(map(str, p)): ok for p, ok in parity.items()
            },
        }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _table1_csv(kmax: int) -> str:
    rows = []
    for idx in range(len(search.TABLE1_ROWS)):
        for k in range(-kmax, kmax + 1):
            for l in range(-kmax, kmax + 1):
                for sign in (1, -1):
                    ins = search.table1_generate(idx, k, l, sign)
                    if ins.positive:
                        rows.append([ins.family, ins.a, ins.b, ins.c, ins.k, ins.l, ins.sign])
    rows.sort()
    return _csv_text(["G", "a", "b", "c", "k", "l", "sign"], rows)


def _table2_csv(i_max: int) -> str:
    report = search.table2_reproduce(i_max)
    rows = []
    for entry in report.matches + report.findings + report.mismatches:
        p, q, r = (list(entry.triple) + [0, 0, 0])[:3]
        rows.append(
            [
                p,
                q,
                r,
                entry.match[0] if entry.match else -1,
                entry.match[1] if entry.match else -1,
                entry.a,
                entry.b,
                entry.c,
                entry.match_kind,
            ]
        )
    rows.sort(key=lambda row: row[:8])
    return _csv_text(
        ["p", "q", "r", "row", "i", "source_a", "source_b", "source_c", "matched"], rows
    )


def _table3_csv(b_max: int) -> str:
    report = search.table3_reproduce(b_max)
    rows = sorted([a, b, c, row, i] for a, b, c, row, i in report.entries)
    return _csv_text(["a", "b", "c", "row", "i"], rows)


def _cmd_tables(args) -> int:
    if args.table == 1:
        text = _table1_csv(args.kmax)
    elif args.table == 2:
        text = _table2_csv(args.imax)
    else:
        text = _table3_csv(args.bmax)
    outdir = _outdir(args)
    if outdir is None:
        sys.stdout.write(text)
        return 0
    target = outdir / f"table{args.table}.csv"
    target.write_text(text, encoding="utf-8")
    from .plot import save_configuration_png  # deferred: keeps matplotlib optional here

    figure = outdir / f"table{args.table}_example.png"
    if args.table == 2:
        cfg = resolution(BrieskornSpec.of(7, 8, 45)).to_configuration()
        save_configuration_png(cfg, str(figure), "Resolution of Sigma(7,8,45)")
    else:
        cfg = search.family_configuration(1, 1, 2, 5)
        save_configuration_png(cfg, str(figure), "Family (1) configuration at (1,2,5)")
    sys.stdout.write(f"wrote {target}\nwrote {figure}\n")
    return 0


def _cmd_report(args) -> int:
    outdir = _outdir(args)
    if outdir is None:
        raise E8BoundsError(f"report needs --outdir or ${ENV_OUTDIR}")
    from .plot import save_configuration_png

    files = []
    for name, text in (
        ("table1.csv", _table1_csv(args.kmax)),
        ("table2.csv", _table2_csv(args.imax)),
        ("table3.csv", _table3_csv(args.bmax)),
    ):
        (outdir / name).write_text(text, encoding="utf-8")
        files.append(name)
    rows = []
    for k in range(0, args.kmax_families + 1):
        for label, third in (("Y-odd", 12 * k + 5), ("Y+odd", 12 * k + 1)):
            if third < 1:
                continue
            spec = BrieskornSpec.of(2, 3, third)
            report = inv.invariant_report(spec)
            rows.append(
                [
                    label,
                    k,
                    2,
                    3,
                    third,
                    report.mu,
                    report.mu_bar,
                    report.d,
                    " ".join(map(str, report.feasible_b2_negdef)),
                    "unknown" if report.epsilon_hint is None else report.epsilon_hint,
                ]
            )
    text = _csv_text(
        ["family", "k", "p", "q", "r", "mu", "mu_bar", "d", "feasible_b2_negdef", "epsilon_hint"],
        rows,
    )
    (outdir / "invariants_families.csv").write_text(text, encoding="utf-8")
    files.append("invariants_families.csv")
    figures = {
        "resolution_2_3_5.png": resolution(BrieskornSpec.of(2, 3, 5)).to_configuration(),
        "resolution_3_4_7.png": resolution(BrieskornSpec.of(3, 4, 7)).to_configuration(),
        "resolution_2_3_17.png": resolution(BrieskornSpec.of(2, 3, 17)).to_configuration(),
        "config_family1_1_2_5.png": search.family_configuration(1, 1, 2, 5),
    }
    for name, cfg in figures.items():
        save_configuration_png(cfg, str(outdir / name), name.rsplit(".", 1)[0])
        files.append(name)
    (outdir / "report_manifest.json").write_text(
        json.dumps({"files": sorted(files)}, indent=2) + "\n", encoding="utf-8"
    )
    sys.stdout.write("\n".join(f"wrote {outdir / f}" for f in sorted(files) + ["report_manifest.json"]) + "\n")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="e8bounds",
        description="Blow-down calculus, lattice invariants, and bounding searches "
        "for Brieskorn homology 3-spheres.",
    )
    parser.add_argument("--jobs", type=int, default=1, help="reserved; execution is serial")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="minimal resolution graph of a Brieskorn sphere")
    p.add_argument("multiplicities", type=int, nargs="+")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("invariants", help="invariant report (JSON) for a Brieskorn sphere")
    p.add_argument("multiplicities", type=int, nargs="+")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("form", help="lattice predicates of a graph file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=_cmd_form)

    p = sub.add_parser("blowdown", help="blow down a (-1)-vertex of a graph file")
    p.add_argument("graph")
    p.add_argument("vertex")
    p.set_defaults(func=_cmd_blowdown)

    p = sub.add_parser("normalize", help="Euclidean normalization to a star graph")
    p.add_argument("graph")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--trace", help="write the move trace as JSON lines to this file")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("boundary", help="Brieskorn boundary of a configuration file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("search", help="positive solutions of one quadratic family")
    p.add_argument("family", type=int, choices=sorted(search.FAMILIES))
    p.add_argument("a_max", type=int)
    p.add_argument("b_max", type=int)
    p.add_argument("--coprime-only", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("classify", help="bounded exhaustive star-graph classifications")
    p.add_argument("kind", choices=("rank8", "2221"))
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--draws", type=int, default=100)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("tables", help="reproduce a catalog table (CSV)")
    p.add_argument("table", type=int, choices=(1, 2, 3))
    p.add_argument("--kmax", type=int, default=3, help="parameter grid radius for table 1")
    p.add_argument("--imax", type=int, default=3, help="progression depth for table 2")
    p.add_argument("--bmax", type=int, default=300, help="b bound for table 3")
    p.add_argument("--outdir", help=f"write CSV plus a figure here (default ${ENV_OUTDIR})")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("report", help="write all tables, an invariant sweep, and figures")
    p.add_argument("--outdir", help=f"output directory (default ${ENV_OUTDIR})")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--bmax", type=int, default=300)
    p.add_argument("--kmax-families", type=int, default=4, dest="kmax_families")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if args.jobs < 1:
        sys.stderr.write("error: --jobs must be positive\n")
        return 1
    try:
        return args.func(args)
    except E8BoundsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
