"""Command-line surface: every operation behind one subcommand binary.

Output contract: JSON with --json, CSV with --csv, a human-readable
rendering otherwise; every form carries the fully resolved invocation
(a "# invocation:" comment for text/CSV, an "invocation" object in
JSON) so any result file names the exact run that produced it.  Exit
codes: 0 success, 2 usage or input error, 3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import chains as chains_mod
from . import cube, experiments, formulas, graphs, width
from .backend import BACKEND
from .graphs import DEFAULT_SEED, Graph, ResourceBudgetError

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Invocation:
    """The resolved configuration of one run (defaults filled in)."""

    subcommand: str
    flags: dict
    inputs: tuple[str, ...]
    output: str | None
    seed: int | None

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "flags": {k: self.flags[k] for k in sorted(self.flags)},
            "inputs": list(self.inputs),
            "output": self.output,
            "seed": self.seed,
        }

    def header_line(self) -> str:
        parts = [self.subcommand]
        for k in sorted(self.flags):
            v = self.flags[k]
            if v is None or v is False:
                continue
            flag = "--" + k.replace("_", "-")
            parts.append(flag if v is True else f"{flag} {v}")
        return "# invocation: indcube " + " ".join(parts)


def _invocation(args: argparse.Namespace) -> Invocation:
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "subcommand") and v is not None
    }
    inputs = (args.infile,) if getattr(args, "infile", None) else ()
    return Invocation(
        subcommand=args.subcommand,
        flags=flags,
        inputs=inputs,
        output=getattr(args, "out", None),
        seed=getattr(args, "seed", None),
    )


# ------------------------------------------------------------- shared flags

def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    sp.add_argument("--out", metavar="FILE", help="write output to FILE")
    sp.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker budget hint (current solvers are single-threaded; "
        "output is identical for any value)",
    )


def _add_graph_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--graph",
        choices=["path", "cycle", "edgeless", "multipartite", "gnp", "file"],
        default="path",
        help="host graph family",
    )
    sp.add_argument("--n", type=int, help="vertex count")
    sp.add_argument("--parts", help="comma-separated part sizes (multipartite)")
    sp.add_argument("--p", type=float, help="edge probability (gnp)")
    sp.add_argument(
        "--c-over-n",
        dest="c_over_n",
        type=float,
        help="edge probability as c/n (gnp alternative to --p)",
    )
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help=f"PRNG seed (default {DEFAULT_SEED})")
    sp.add_argument("--in", dest="infile", metavar="FILE",
                    help="edge-list file (with --graph file)")


def _graph_from_args(args: argparse.Namespace) -> Graph:
    kind = args.graph
    if kind == "file":
        if not args.infile:
            raise ValueError("--graph file requires --in FILE")
        return graphs.parse_edge_list(Path(args.infile).read_text())
    if args.n is None:
        raise ValueError(f"--graph {kind} requires --n")
    if kind == "path":
        return graphs.path(args.n)
    if kind == "cycle":
        return graphs.cycle(args.n)
    if kind == "edgeless":
        return graphs.edgeless(args.n)
    if kind == "multipartite":
        if not args.parts:
            raise ValueError("--graph multipartite requires --parts a,b,c")
        sizes = tuple(int(s) for s in args.parts.split(","))
        return graphs.complete_multipartite(graphs.PartSpec(sizes))
    if kind == "gnp":
        if args.p is not None:
            p = args.p
        elif args.c_over_n is not None:
            p = args.c_over_n / args.n
        else:
            raise ValueError("--graph gnp requires --p or --c-over-n")
        return graphs.erdos_renyi(args.n, p, args.seed)
    raise ValueError(f"unknown graph kind {kind!r}")


# ----------------------------------------------------------------- emitters

def _emit(args: argparse.Namespace, inv: Invocation, payload: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(args: argparse.Namespace, inv: Invocation, result) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "invocation": inv.to_dict(),
        "result": result,
    }
    _emit(args, inv, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _emit_text(args: argparse.Namespace, inv: Invocation, body: str) -> None:
    if not body.endswith("\n"):
        body += "\n"
    _emit(args, inv, inv.header_line() + "\n" + body)


def _quote_csv(cell: str) -> str:
    if any(ch in cell for ch in ",\"\n"):
        return '"' + cell.replace('"', '""') + '"'
    return cell


# --------------------------------------------------------------- subcommands

def _cmd_graph(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    if args.json:
        _emit_json(args, inv, {"n": g.n, "m": g.edge_count(),
                               "edges": [list(e) for e in g.edges()]})
    elif args.csv:
        rows = ["u,v"] + [f"{u},{v}" for u, v in g.edges()]
        _emit_text(args, inv, "\n".join(rows))
    else:
        _emit_text(args, inv, graphs.serialize_edge_list(g))
    return 0


def _cmd_enumerate(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    masks = list(cube.enumerate_all(g))
    if args.json:
        _emit_json(args, inv, {"count": len(masks),
                               "sets": [cube.render_set(m) for m in masks]})
    elif args.csv:
        rows = ["index,set"]
        rows.extend(
            f"{i},{';'.join(str(v) for v in cube.set_to_vertices(m))}"
            for i, m in enumerate(masks)
        )
        _emit_text(args, inv, "\n".join(rows))
    else:
        _emit_text(args, inv, "\n".join(cube.render_set(m) for m in masks))
    return 0


def _cmd_layers(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    counts = cube.layer_counts(g)
    peak = max(counts)
    if args.json:
        _emit_json(args, inv, {"counts": counts, "max_layer": peak,
                               "argmax": [r for r, c in enumerate(counts) if c == peak]})
    elif args.csv:
        rows = ["r,count"] + [f"{r},{c}" for r, c in enumerate(counts)]
        _emit_text(args, inv, "\n".join(rows))
    else:
        body = "\n".join(f"r={r}  count={c}" for r, c in enumerate(counts))
        _emit_text(args, inv, body + f"\nmax_layer: {peak}")
    return 0


def _cmd_outdeg(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    if args.r is None:
        raise ValueError("outdeg requires --r")
    hist = cube.outdegree_histogram(g, args.r)
    items = sorted(hist.items())
    if args.json:
        _emit_json(args, inv, {"r": args.r,
                               "histogram": {str(d): c for d, c in items}})
    elif args.csv:
        rows = ["d,count"] + [f"{d},{c}" for d, c in items]
        _emit_text(args, inv, "\n".join(rows))
    else:
        _emit_text(args, inv, "\n".join(f"d={d}  count={c}" for d, c in items))
    return 0


def _cmd_formulas(args: argparse.Namespace, inv: Invocation) -> int:
    if args.n is None:
        raise ValueError("formulas requires --n")
    n = args.n
    rs = formulas.r_star(n)
    result = {
        "n": n,
        "cube_size": formulas.cube_size_pn(n),
        "r_star_values": list(rs.values),
        "r_star_peak": rs.peak,
    }
    if args.r is not None:
        result["r"] = args.r
        result["layer_size"] = formulas.layer_size_pn(n, args.r)
        ds = formulas.d_star(n, args.r)
        result["d_star_values"] = list(ds.values)
        result["d_star_peak"] = ds.peak
    if args.json:
        _emit_json(args, inv, result)
    elif args.csv:
        rows = ["key,value"]
        rows.extend(
            f"{k},{_quote_csv(str(v))}" for k, v in result.items()
        )
        _emit_text(args, inv, "\n".join(rows))
    else:
        _emit_text(args, inv,
                   "\n".join(f"{k}: {v}" for k, v in result.items()))
    return 0


def _width_output(args: argparse.Namespace, inv: Invocation,
                  rep: width.WidthReport) -> int:
    if args.json:
        _emit_json(args, inv, rep.to_dict())
    elif args.csv:
        rows = [
            "width,max_layer,ratio,certificate_ok",
            f"{rep.width},{rep.max_layer},{rep.ratio:.12g},"
            f"{'true' if rep.certificate_ok else 'false'}",
        ]
        _emit_text(args, inv, "\n".join(rows))
    else:
        _emit_text(args, inv, rep.to_text())
    return 0


def _cmd_width(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    return _width_output(args, inv, width.max_antichain_band(g, 0, g.n))


def _cmd_band_width(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    if args.r_lo is None or args.r_hi is None:
        raise ValueError("band-width requires --r-lo and --r-hi")
    return _width_output(
        args, inv, width.max_antichain_band(g, args.r_lo, args.r_hi)
    )


def _parse_set_line(line: str) -> int:
    body = line.strip().strip("{}").replace(",", " ")
    verts = [int(t) for t in body.split()]
    return cube.vertices_to_set(verts)


def _cmd_shadow_push(args: argparse.Namespace, inv: Invocation) -> int:
    g = _graph_from_args(args)
    if args.r is not None:
        fam = cube.enumerate_layer(g, args.r)
    elif args.infile:
        masks = []
        for line in Path(args.infile).read_text().splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            masks.append(_parse_set_line(line))
        fam = cube.Family(g, tuple(masks))
    else:
        raise ValueError("shadow-push requires --r LAYER or --in FILE")
    pushed = width.shadow_push(g, fam)
    if args.json:
        _emit_json(args, inv, {
            "input_size": len(fam),
            "output_size": len(pushed),
            "sets": [cube.render_set(m) for m in pushed],
        })
    elif args.csv:
        rows = ["set"]
        rows.extend(";".join(str(v) for v in cube.set_to_vertices(m))
                    for m in pushed)
        _emit_text(args, inv, "\n".join(rows))
    else:
        body = "\n".join(cube.render_set(m) for m in pushed)
        _emit_text(args, inv,
                   f"input_size: {len(fam)}\noutput_size: {len(pushed)}\n" + body)
    return 0


def _cmd_chains(args: argparse.Namespace, inv: Invocation) -> int:
    if args.n is None:
        raise ValueError("chains requires --n")
    part = chains_mod.build_partition(args.n)
    if args.repair:
        part = chains_mod.repair_n8(part)
    report = chains_mod.validate_partition(args.n, part)
    rep_dict = {
        "is_partition": report.is_partition,
        "chains_valid": report.chains_valid,
        "chains_missing_largest_layer": report.chains_missing_largest_layer,
        "chain_count": report.chain_count,
    }
    if args.json:
        _emit_json(args, inv, {
            "report": rep_dict,
            "chains": [
                {"kind": ch.kind,
                 "sets": [cube.render_set(m) for m in ch.sets]}
                for ch in part.chains
            ],
        })
    elif args.csv:
        rows = ["kind,chain"]
        for ch in part.chains:
            text = " < ".join(cube.render_set(m) for m in ch.sets)
            rows.append(f"{ch.kind},{_quote_csv(text)}")
        _emit_text(args, inv, "\n".join(rows))
    else:
        head = "\n".join(f"{k}: {v}" for k, v in rep_dict.items())
        _emit_text(args, inv, head + "\n" + chains_mod.dump_partition(part))
    return 0


def _cmd_conjecture(args: argparse.Namespace, inv: Invocation) -> int:
    if args.n is None:
        raise ValueError("conjecture requires --n (the largest size)")
    if args.graph == "path":
        rows = experiments.conjecture_check_pn(args.n)
    elif args.graph == "cycle":
        rows = experiments.conjecture_check_cn(args.n)
    else:
        raise ValueError("conjecture supports --graph path or --graph cycle")
    if args.json:
        _emit_json(args, inv, [r.to_dict() for r in rows])
    elif args.csv:
        _emit_text(args, inv, experiments.conjecture_csv(rows))
    else:
        lines = [f"{'n':>3} {'width':>12} {'max_layer':>12} {'ratio':>10} ok"]
        for r in rows:
            lines.append(
                f"{r.n:>3} {r.width:>12} {r.max_layer:>12} "
                f"{r.ratio:>10.6f} {'y' if r.certificate_ok else 'N'}"
            )
        _emit_text(args, inv, "\n".join(lines))
    return 0


def _cmd_gnp(args: argparse.Namespace, inv: Invocation) -> int:
    if args.n is None:
        raise ValueError("gnp requires --n")
    if args.c_over_n is not None:
        c = args.c_over_n
    elif args.p is not None:
        c = args.p * args.n
    else:
        raise ValueError("gnp requires --c-over-n or --p")
    seeds = list(range(args.seed, args.seed + args.trials))
    rows = experiments.gnp_experiment(args.n, c, seeds)
    if args.json:
        _emit_json(args, inv, [r.to_dict() for r in rows])
    elif args.csv:
        _emit_text(args, inv, experiments.gnp_csv(rows))
    else:
        lines = [f"{'seed':>6} {'|Q|':>9} {'width':>9} {'max_layer':>9} ratio"]
        for r in rows:
            lines.append(
                f"{r.seed:>6} {sum(r.layer_counts):>9} {r.width:>9} "
                f"{r.max_layer:>9} {r.ratio:.6f}"
            )
        _emit_text(args, inv, "\n".join(lines))
    return 0


def _cmd_decay_audit(args: argparse.Namespace, inv: Invocation) -> int:
    if args.n is None:
        raise ValueError("decay-audit requires --n")
    if args.kind == "layers":
        rows = experiments.decay_audit_layers(args.n)
    elif args.kind == "outdeg":
        rows = experiments.decay_audit_outdeg(args.n, args.r)
    else:
        report = experiments.tail_mass_audit(args.n, args.window)
        if args.json:
            _emit_json(args, inv, report)
        elif args.csv:
            _emit_text(args, inv, experiments.tail_csv(report))
        else:
            _emit_text(args, inv,
                       "\n".join(f"{k}: {v}" for k, v in report.items()))
        return 0
    if args.json:
        _emit_json(args, inv, [r.to_dict() for r in rows])
    elif args.csv:
        _emit_text(args, inv, experiments.decay_csv(rows))
    else:
        lines = [f"{'c':>5} {'offset':>7} {'exact':>14} {'predicted':>14} rel_error"]
        for r in rows:
            lines.append(
                f"{r.c:>5.2f} {r.offset:>7} {r.exact_log_ratio:>14.6f} "
                f"{r.predicted:>14.6f} {r.rel_error:.6f}"
            )
        _emit_text(args, inv, "\n".join(lines))
    return 0


def _cmd_open_case_11(args: argparse.Namespace, inv: Invocation) -> int:
    rep = experiments.open_case_n11()
    ground = formulas.layer_size_pn(11, 3) + formulas.layer_size_pn(11, 4)
    if args.json:
        _emit_json(args, inv, {
            "ground_set": ground,
            "widths_equal": True,
            "full_width": rep.width,
            "band": rep.to_dict(),
        })
    elif args.csv:
        rows = [
            "ground_set,width,max_layer,ratio,certificate_ok,widths_equal",
            f"{ground},{rep.width},{rep.max_layer},{rep.ratio:.12g},"
            f"{'true' if rep.certificate_ok else 'false'},true",
        ]
        _emit_text(args, inv, "\n".join(rows))
    else:
        body = (
            f"ground_set: {ground}\n"
            f"widths_equal: True\n" + rep.to_text()
        )
        _emit_text(args, inv, body)
    return 0


# ------------------------------------------------------------------ dispatch

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indcube",
        description="Exact computations on independence cubes "
        f"(backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    specs = [
        ("graph", _cmd_graph, True, "build a host graph and print its edge list"),
        ("enumerate", _cmd_enumerate, True, "list all independent sets"),
        ("layers", _cmd_layers, True, "independent-set counts by size"),
        ("outdeg", _cmd_outdeg, True, "out-degree histogram of one layer"),
        ("formulas", _cmd_formulas, False, "closed-form values for the n-path"),
        ("width", _cmd_width, True, "maximum antichain with certificate"),
        ("band-width", _cmd_band_width, True,
         "maximum antichain inside a layer band"),
        ("shadow-push", _cmd_shadow_push, True,
         "push an antichain into the middle band"),
        ("chains", _cmd_chains, False, "tagged chain partition of a path cube"),
        ("conjecture", _cmd_conjecture, True,
         "width vs largest layer across a family"),
        ("gnp", _cmd_gnp, False, "random-graph width/layer trials"),
        ("decay-audit", _cmd_decay_audit, False,
         "exact decay vs reference quadratics"),
        ("open-case-11", _cmd_open_case_11, False,
         "settle the 11-path width (band and full solves)"),
    ]
    for name, func, wants_graph, help_text in specs:
        sp = sub.add_parser(name, help=help_text)
        if wants_graph:
            _add_graph_flags(sp)
        else:
            sp.add_argument("--n", type=int, help="dimension")
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                            help="base PRNG seed" if name == "gnp"
                            else argparse.SUPPRESS)
        sp.add_argument("--r", type=int, help="layer index")
        if name == "band-width":
            sp.add_argument("--r-lo", dest="r_lo", type=int)
            sp.add_argument("--r-hi", dest="r_hi", type=int)
        if name == "shadow-push" and wants_graph:
            pass  # --in already provided by the graph flags
        if name == "chains":
            sp.add_argument("--repair", action="store_true",
                            help="apply the n=8 splice")
        if name == "gnp":
            sp.add_argument("--p", type=float, help="edge probability")
            sp.add_argument("--c-over-n", dest="c_over_n", type=float,
                            help="edge probability as c/n")
            sp.add_argument("--trials", type=int, default=1,
                            help="number of consecutive seeds")
        if name == "decay-audit":
            sp.add_argument("--kind", choices=["layers", "outdeg", "tail"],
                            default="layers")
            sp.add_argument("--window", type=int,
                            help="override the tail window")
        _add_output_flags(sp)
        sp.set_defaults(func=func)
    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    inv = _invocation(args)
    try:
        return args.func(args, inv)
    except ResourceBudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
