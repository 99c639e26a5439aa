"""Command-line interface: reproducible SAW experiments from spec files.

Every run resolves its configuration, writes the requested table (CSV or
JSON), and drops a manifest next to the output echoing the full resolved
configuration; `sawlab replay --manifest <file>` reruns it bit-exactly.
Exit codes: 0 success, 1 runtime error, 2 configuration error; errors are
emitted as JSON on standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    InvalidParameter,
    SawLabError,
    SpecInvalid,
    SpecNotFound,
)
from .patterns import BRegime, EventKind, count_b, count_restricted, validate_cutset
from .sampler import dimerize, estimate_speed
from .saw import (
    count_walks,
    count_walks_parallel,
    displacement_stats,
    fit_displacement_exponent,
    mu_bounds,
)
from .specs import load_cutset_spec, load_graph_spec
from .surgery import (
    plan_detour_cylinder,
    plan_detour_free_product,
    single_surgery,
)

CSV_SCHEMA = "sawlab-csv v1"
CONFIG_ERRORS = (SpecNotFound, SpecInvalid, InvalidParameter)


def _write_rows(out: Path, fmt: str, command: str, header: list[str], rows: list[list]):
    if fmt == "csv":
        lines = [f"# {CSV_SCHEMA} command={command}"]
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(str(x) for x in row))
        out.write_text("\n".join(lines) + "\n")
    else:
        payload = {
            "schema_version": 1,
            "artifact_version": __version__,
            "command": command,
            "columns": header,
            "rows": rows,
        }
        out.write_text(json.dumps(payload, indent=2) + "\n")


def _write_manifest(out: Path, config: dict, results: dict | None = None):
    manifest = {
        "artifact_version": __version__,
        "schema_version": 1,
        "config": config,
        "results": results or {},
    }
    Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"cannot parse fraction {text!r}") from exc


def cmd_count(args, config) -> int:
    handle = load_graph_spec(args.graph)
    out = Path(args.out)
    if args.workers > 1:
        table = count_walks_parallel(handle.oracle, handle.origin, args.n_max, args.workers)
    else:
        table = count_walks(handle.oracle, handle.origin, args.n_max)
    rows = [[n, table[n]] for n in range(args.n_max + 1)]
    _write_rows(out, args.format, "count", ["n", "count"], rows)
    _write_manifest(out, config)
    return 0


def cmd_mu(args, config) -> int:
    handle = load_graph_spec(args.graph)
    out = Path(args.out)
    table = (
        count_walks_parallel(handle.oracle, handle.origin, args.n_max, args.workers)
        if args.workers > 1
        else count_walks(handle.oracle, handle.origin, args.n_max)
    )
    bounds = mu_bounds(table)
    running = dict(bounds.running_min)
    rows = [
        [n, table[n], f"{root:.10f}", f"{running[n]:.10f}"]
        for n, root in bounds.raw_roots
    ]
    _write_rows(out, args.format, "mu", ["n", "count", "root", "running_min"], rows)
    _write_manifest(out, config, {"upper_bound": bounds.upper, "upper_n": bounds.upper_n})
    print(f"mu upper bound {bounds.upper:.8f} attained at n={bounds.upper_n}")
    return 0


def cmd_displacement(args, config) -> int:
    handle = load_graph_spec(args.graph)
    out = Path(args.out)
    thresholds = [
        _fraction(t) for t in (args.thresholds.split(",") if args.thresholds else [])
    ]
    all_stats = []
    header = ["n", "count", "mean_square"] + [f"tail_ge_{a}" for a in thresholds]
    rows = []
    for n in range(1, args.n_max + 1):
        st = displacement_stats(handle.oracle, handle.origin, n, thresholds)
        all_stats.append(st)
        rows.append(
            [n, st.total, str(st.mean_square)] + [st.tail_counts[a] for a in thresholds]
        )
    nu_info = {}
    if len(all_stats) >= 2:
        nu, window = fit_displacement_exponent(all_stats)
        nu_info = {"fitted_nu": nu, "nu_window": list(window)}
        print(f"fitted nu estimate {nu:.4f} over n in {window}")
    _write_rows(out, args.format, "displacement", header, rows)
    _write_manifest(out, config, nu_info)
    return 0


def cmd_patterns(args, config) -> int:
    handle = load_graph_spec(args.graph)
    if not args.cutset:
        raise SpecInvalid("patterns needs --cutset")
    cs = load_cutset_spec(args.cutset, handle)
    out = Path(args.out)
    if args.event == "b":
        a = _fraction(args.a) if args.a else Fraction(1, 4)
        rows = []
        branches = ["lt", "eq"] if args.branch == "both" else [args.branch]
        for branch in branches:
            regime = BRegime(
                branch=branch,
                a=a,
                m=args.m or 2,
                k=args.k if branch == "eq" else None,
            )
            est = count_b(
                handle.oracle,
                handle.origin,
                args.n_max,
                cs,
                regime,
                r=args.r if args.a_prime is None else None,
                a_prime=_fraction(args.a_prime) if args.a_prime else None,
            )
            roots = dict(est.lambda_roots)
            for n in range(args.n_max + 1):
                rows.append(
                    [branch, n, est.table[n], f"{roots.get(n, 0.0):.8f}"]
                )
        # label the regime switch by the finite-n root comparison
        base = count_walks(handle.oracle, handle.origin, args.n_max)
        estar = count_restricted(
            handle.oracle, handle.origin, args.n_max, cs,
            EventKind(tag="estar"), r=0,
        )
        nn = max(n for n in range(1, args.n_max + 1) if base[n] > 0)
        c_root = base[nn] ** (1.0 / nn)
        e_root = dict(estar.lambda_roots).get(nn, 0.0)
        suggestion = "lt" if e_root < 0.99 * c_root else "eq"
        _write_rows(out, args.format, "patterns-b", ["branch", "n", "count", "root"], rows)
        _write_manifest(
            out,
            config,
            {
                "regime_suggestion": suggestion,
                "estar_root": e_root,
                "c_root": c_root,
            },
        )
        print(f"finite-n comparison suggests branch '{suggestion}'")
        return 0
    kind = EventKind(
        tag=args.event,
        k=args.k,
        m=args.m,
    )
    est = count_restricted(
        handle.oracle, handle.origin, args.n_max, cs, kind, r=args.r, m=args.m
    )
    roots = dict(est.lambda_roots)
    rows = [
        [n, est.table[n], f"{roots.get(n, 0.0):.8f}"] for n in range(args.n_max + 1)
    ]
    _write_rows(out, args.format, "patterns", ["n", "count", "root"], rows)
    _write_manifest(out, config, {"label": est.label})
    return 0


def cmd_sample(args, config) -> int:
    handle = load_graph_spec(args.graph)
    out = Path(args.out)
    n_list = [int(x) for x in args.n_list.split(",")]
    runs = estimate_speed(
        handle.oracle,
        handle.origin,
        n_list,
        _fraction(args.alpha),
        args.samples,
        args.seed,
    )
    rows = [
        [
            r.n,
            r.samples,
            r.hits,
            r.successes,
            r.failures,
            f"{r.estimate:.8f}",
            f"{r.ci_halfwidth:.8f}",
        ]
        for r in runs
    ]
    _write_rows(
        out,
        args.format,
        "sample",
        ["n", "samples", "hits", "successes", "failures", "estimate", "ci"],
        rows,
    )
    _write_manifest(out, config)
    return 0


def cmd_surgery_demo(args, config) -> int:
    from .freeprod import FreeProductGraph
    from .lattices import Cylinder

    handle = load_graph_spec(args.graph)
    g = handle.oracle
    out = Path(args.out)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    demos = []
    produced = 0
    attempts = 0
    while produced < args.samples and attempts < 50 * args.samples:
        attempts += 1
        walk = dimerize(g, handle.origin, args.n, rng)
        if walk is None:
            continue
        if isinstance(g, Cylinder):
            step = plan_detour_cylinder(g, walk)
        elif isinstance(g, FreeProductGraph):
            step = plan_detour_free_product(g, walk, rng)
            if step is None:
                continue
        else:
            raise SpecInvalid("surgery-demo supports cylinder and free_product graphs")
        res = single_surgery(g, walk, step)
        demos.append(
            {
                "before": [v.decode() for v in walk.vertices],
                "after": [v.decode() for v in res.walk.vertices],
                "copy": sorted(v.decode() for v in step.copy_vertices),
                "split_index": step.split_index,
                "automorphism": step.automorphism.name,
                "growth": res.growth,
                "approach": res.approach_length,
                "bridge": res.bridge_length,
            }
        )
        produced += 1
    payload = {
        "schema_version": 1,
        "artifact_version": __version__,
        "command": "surgery-demo",
        "demos": demos,
    }
    out.write_text(json.dumps(payload, indent=2) + "\n")
    _write_manifest(out, config)
    print(f"produced {produced} verified surgeries")
    return 0


def cmd_validate(args, config) -> int:
    handle = load_graph_spec(args.graph)
    if not args.cutset:
        raise SpecInvalid("validate needs --cutset")
    cs = load_cutset_spec(args.cutset, handle)
    report = validate_cutset(handle.oracle, cs, radius=args.radius)
    out = Path(args.out) if args.out else None
    payload = {
        "schema_version": 1,
        "artifact_version": __version__,
        "command": "validate",
        "report": report.to_json(),
        "all_passed": report.all_passed,
    }
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        out.write_text(text)
        _write_manifest(out, config)
    sys.stdout.write(text)
    return 0


def cmd_replay(args, _config) -> int:
    p = Path(args.manifest)
    if not p.exists():
        raise SpecNotFound(f"manifest {p} not found")
    manifest = json.loads(p.read_text())
    stored = manifest["config"]
    argv = [stored["command"]]
    for key, value in stored.items():
        if key == "command" or value is None:
            continue
        argv.append("--" + key.replace("_", "-"))
        argv.append(str(value))
    return main(argv)


COMMANDS = {
    "count": cmd_count,
    "mu": cmd_mu,
    "displacement": cmd_displacement,
    "patterns": cmd_patterns,
    "sample": cmd_sample,
    "surgery-demo": cmd_surgery_demo,
    "validate": cmd_validate,
    "replay": cmd_replay,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawlab",
        description="Exact and Monte Carlo self-avoiding-walk experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cutset=False, out_required=True):
        p.add_argument("--graph", required=True, help="graph spec JSON file")
        if cutset:
            p.add_argument("--cutset", help="cut-set spec JSON file")
        p.add_argument("--out", required=out_required, help="output file")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("count", help="exact SAW count table")
    common(p)
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("mu", help="count table with connective-constant roots")
    common(p)
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("displacement", help="exact displacement statistics")
    common(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--thresholds", default="", help="comma-separated fractions in (0,1]")

    p = sub.add_parser("patterns", help="restricted pattern-event count tables")
    common(p, cutset=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--event",
        choices=["estar", "ek", "ektilde", "calek", "calektilde", "b"],
        default="estar",
    )
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--a", help="quota fraction for the b tables")
    p.add_argument("--a-prime", dest="a_prime", help="scaling F cap for the b tables")
    p.add_argument("--branch", choices=["lt", "eq", "both"], default="both")

    p = sub.add_parser("sample", help="Monte Carlo displacement tail estimates")
    common(p)
    p.add_argument("--n-list", required=True, help="comma-separated walk lengths")
    p.add_argument("--alpha", required=True, help="tail threshold fraction in (0,1)")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("surgery-demo", help="randomized verified surgeries")
    common(p)
    p.add_argument("--n", type=int, default=12, help="base walk length")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="check cut-set assumptions")
    common(p, cutset=True, out_required=False)
    p.add_argument("--radius", type=int, default=8)

    p = sub.add_parser("replay", help="rerun a manifest bit-exactly")
    p.add_argument("--manifest", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
    }
    try:
        return COMMANDS[args.command](args, config)
    except CONFIG_ERRORS as exc:
        sys.stderr.write(
            json.dumps({"error": exc.code, "message": str(exc)}) + "\n"
        )
        return 2
    except SawLabError as exc:
        sys.stderr.write(
            json.dumps({"error": exc.code, "message": str(exc)}) + "\n"
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
