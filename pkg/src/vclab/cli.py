"""Command-line front end ``vc-lab``.

Every command prints a JSON certificate (or a short text summary with
``--output text``). The exit status is nonzero iff the certificate status
is ``FAILED`` or an input could not be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import graphs as gr
from .certificate import Certificate, RunConfig, aggregate_status, graph_digest
from .graphio import GraphFormatError, read_graph
from .product import (
    convex_decompose,
    corollary_pipeline,
    necessary_conditions,
    rank_accounting,
    verify_hedetniemi,
)
from .sdp import SolverError
from .structure import neighborliness_report, second_coloring, uvc_check
from .vectorcoloring import VectorColoring, chi_sv, chi_v, skeleton_report, strict_complementarity

__all__ = ["COMMANDS", "main", "run_command", "run_manifest", "read_coloring"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class InputError(Exception):
    """An input file could not be read or parsed."""


def _edges(G) -> list:
    return [list(e) for e in G.edge_list]


def read_coloring(path) -> dict:
    """Read ``{"gram": [[...]], "t": optional float}`` from JSON."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read coloring {path}: {exc}") from exc
    if not isinstance(obj, dict) or "gram" not in obj:
        raise InputError("coloring file must be an object with key 'gram'")
    gram = np.asarray(obj["gram"], dtype=float)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise InputError("gram must be a square matrix")
    return {"gram": gram, "t": obj.get("t")}


# ---- commands ----------------------------------------------------------------


def _cmd_chi(graphs, opts, tol):
    (G,) = graphs
    res = chi_v(G, tol)
    sc = strict_complementarity(res.coloring, res.dual, tol.rank)
    rep = skeleton_report(G, tol)
    out = {
        "t": res.t,
        "rank": res.coloring.rank,
        "dual_rank": sc.rank_dual,
        "dual_corank": res.dual.corank,
        "dual_objective": res.dual.objective,
        "strictly_complementary": sc.strictly_complementary,
        "skeleton_edges": _edges(rep.skeleton),
        "skeleton_consistent": rep.consistent,
        "iterations": res.solution.iterations if res.solution else 0,
        "polished": res.polished,
    }
    if opts.get("strict"):
        out["t_strict"] = chi_sv(G, tol)
    status = "OK" if rep.consistent else "INCONCLUSIVE"
    return out, status


def _cmd_uvc(graphs, opts, tol):
    (G,) = graphs
    r = uvc_check(G, tol)
    out = {
        "verdict": r.verdict,
        "stage": r.stage,
        "kernel_dimension": r.kernel_dimension,
        "lp_minima": [[list(e), v] for e, v in sorted(r.lp_minima.items())],
        "marginal": r.marginal,
        "rank": r.coloring.rank,
        "t": r.coloring.t,
    }
    if r.certificate is not None:
        c = r.certificate
        vc2 = second_coloring(r.coloring, c, tol)
        out["certificate"] = {
            "R": c.R,
            "equality_residual": c.equality_residual,
            "epsilon_max": c.epsilon_max,
            "tight_edge_values": [[list(e), v] for e, v in sorted(c.tight_edge_values.items())],
            "second_coloring_distance": float(np.linalg.norm(vc2.gram - r.coloring.gram)),
            "second_coloring_feasible": vc2.is_feasible(),
        }
    return out, ("INCONCLUSIVE" if r.marginal else "OK")


def _cmd_skeleton(graphs, opts, tol):
    (G,) = graphs
    rep = skeleton_report(G, tol)
    comps = gr.connected_components(rep.skeleton)
    out = {
        "edges": _edges(rep.skeleton),
        "dual_support": _edges(rep.dual_support),
        "consistent": rep.consistent,
        "components": [sorted(c) for c in comps],
        "isolated": gr.isolated_vertices(rep.skeleton),
    }
    return out, ("OK" if rep.consistent else "INCONCLUSIVE")


def _cmd_neighborly(graphs, opts, tol):
    (G,) = graphs
    vc = chi_v(G, tol).coloring
    rows = []
    marginal = False
    for i in range(G.n):
        rep = neighborliness_report(vc, i, tol.tight)
        marginal = marginal or rep.marginal
        row = {"vertex": i, "neighborly": rep.neighborly, "residual": rep.residual, "marginal": rep.marginal}
        if rep.witness is not None:
            row["coefficients"] = [[j, a] for j, a in sorted(rep.witness.coefficients.items())]
        rows.append(row)
    out = {
        "vertices": rows,
        "non_neighborly": [r["vertex"] for r in rows if not r["neighborly"]],
        "t": vc.t,
    }
    return out, ("INCONCLUSIVE" if marginal else "OK")


def _cmd_product(graphs, opts, tol):
    G, H = graphs
    statuses = []
    out: dict = {"tolerances": tol.as_dict()}
    flags = ("verify_hedetniemi", "rank_accounting", "corollary", "decompose")
    if not any(opts.get(f) for f in flags):
        opts = dict(opts, verify_hedetniemi=True)
    rg, rh = chi_v(G, tol), chi_v(H, tol)
    out["chi"] = {"g": rg.t, "h": rh.t}
    if opts.get("verify_hedetniemi"):
        rep = verify_hedetniemi(G, H, strict=bool(opts.get("strict")), tol=tol)
        cert = rep.certificate
        out["chi"]["product"] = rep.chi_product
        out["hedetniemi"] = {
            "minimum": rep.minimum,
            "identity_error": rep.identity_error,
            "certificate_lambda_min": cert.lambda_min,
            "certificate_value": cert.value,
            "certificate_ratio_value": cert.ratio_value,
            "certificate_error": rep.certificate_error,
            "strict": rep.strict,
            "result": "PASS" if rep.passed else "FAIL",
        }
        statuses.append("OK" if rep.passed else "FAILED")
    analysis = None
    if opts.get("rank_accounting"):
        analysis = rank_accounting(G, H, tol)
        out["chi"]["product"] = analysis.chi_product
        out["case"] = analysis.case
        out["verdict"] = analysis.verdict
        out["swapped"] = analysis.swapped
        rk = {"g": analysis.rk_g, "h": analysis.rk_h, "product": analysis.rk_product}
        if not analysis.rank_exact:
            rk["bracket"] = {k: list(v) for k, v in analysis.brackets.items()}
        out["rk"] = rk
        out["rank_lower_bound_holds"] = analysis.lower_bound_holds
        out["residuals"] = analysis.residuals
        statuses.append("OK" if analysis.rank_exact else "INCONCLUSIVE")
        if not analysis.lower_bound_holds:
            statuses.append("FAILED")
    if opts.get("corollary"):
        cp = corollary_pipeline(G, H, tol)
        out["case"] = cp.case
        out["hypothesis_checks"] = cp.hypothesis_checks
        out["construction_trace"] = cp.construction_trace
        out["corollary"] = {
            "status": cp.status,
            "corank": cp.corank,
            "expected_corank": cp.expected_corank,
        }
        nc = necessary_conditions(G, H, tol, analysis)
        out["necessary_conditions"] = {
            "non_neighborly_g": nc.non_neighborly_g,
            "non_neighborly_h": nc.non_neighborly_h,
            "skeleton_connected_g": nc.skeleton_connected_g,
            "skeleton_connected_h": nc.skeleton_connected_h,
            "conditions_hold": nc.conditions_hold,
            "contradiction": nc.contradiction,
        }
        if analysis is not None and cp.certified:
            expected = "all_induced_by_G" if cp.case == "less_than" else "all_convex_combinations"
            out["corollary"]["matches_rank_accounting"] = analysis.verdict == expected
            if analysis.verdict != expected:
                statuses.append("FAILED")
        if cp.status in ("construction failed",) or nc.contradiction:
            statuses.append("FAILED")
        elif cp.status == "not certified":
            statuses.append("INCONCLUSIVE")
        else:
            statuses.append("OK")
    if opts.get("decompose"):
        col = opts["decompose_data"]
        W = VectorColoring.from_gram(gr.categorical_product(G, H), col["gram"], col["t"], tol)
        d = convex_decompose(W, (G.n, H.n), tol=tol.rank, G=G, H=H)
        if d is None:
            out["decomposition"] = {"decomposable": False}
            statuses.append("INCONCLUSIVE")
        else:
            out["decomposition"] = {
                "decomposable": True,
                "alpha": d.alpha,
                "shift": d.shift,
                "shift_interval": list(d.shift_interval),
                "fit_residual": d.fit_residual,
                "M_part": d.M_part,
                "N_part": d.N_part,
                "parts_feasible": d.parts_feasible,
            }
            statuses.append("OK" if all(d.parts_feasible.values()) else "INCONCLUSIVE")
    return out, aggregate_status(statuses)


COMMANDS = {
    "chi": (_cmd_chi, 1),
    "uvc": (_cmd_uvc, 1),
    "skeleton": (_cmd_skeleton, 1),
    "neighborly": (_cmd_neighborly, 1),
    "product": (_cmd_product, 2),
}


def run_command(command: str, paths, options: dict | None, config: RunConfig, base: Path | None = None) -> Certificate:
    """Run one command and wrap the outcome in a certificate.

    Input and solver errors produce a ``FAILED`` certificate instead of an
    exception. ``paths`` are resolved against ``base`` when relative and
    are echoed as given.
    """
    options = dict(options or {})
    inputs: list = []
    cfg = config.as_dict()
    if command not in COMMANDS:
        return Certificate(command, inputs, cfg, {}, "FAILED", __version__, [f"unknown command {command!r}"])
    fn, arity = COMMANDS[command]
    paths = list(paths)
    if len(paths) != arity:
        return Certificate(command, inputs, cfg, {}, "FAILED", __version__, [f"{command} needs {arity} graph file(s)"])
    graphs = []
    errors = []
    for p in paths:
        full = Path(p) if base is None or Path(p).is_absolute() else base / p
        try:
            G = read_graph(full)
        except GraphFormatError as exc:
            inputs.append({"name": str(p), "error": str(exc)})
            errors.append(str(exc))
            continue
        graphs.append(G)
        inputs.append({"name": str(p), "sha256": graph_digest(G), "n": G.n, "m": G.m})
    if options.get("decompose") and not errors:
        dp = Path(options["decompose"])
        full = dp if base is None or dp.is_absolute() else base / dp
        try:
            options["decompose_data"] = read_coloring(full)
        except InputError as exc:
            errors.append(str(exc))
    if errors:
        return Certificate(command, inputs, cfg, {}, "FAILED", __version__, errors)
    try:
        results, status = fn(graphs, options, config.tolerances())
    except (SolverError, ValueError, np.linalg.LinAlgError) as exc:
        return Certificate(command, inputs, cfg, {}, "FAILED", __version__, [f"{type(exc).__name__}: {exc}"])
    return Certificate(command, inputs, cfg, results, status, __version__)


def _run_entry(args):
    command, paths, options, cfg_dict, base = args
    return run_command(command, paths, options, RunConfig.from_dict(cfg_dict), Path(base)).to_dict()


def _load_manifest(path: Path) -> list:
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read manifest {path}: {exc}") from exc
    entries = obj.get("entries") if isinstance(obj, dict) else None
    if not isinstance(entries, list):
        raise InputError("manifest must be an object with an 'entries' list")
    return entries


def run_manifest(path, config: RunConfig, parallel: bool | None = None) -> Certificate:
    """Run every manifest entry; entries are isolated from each other's failures."""
    path = Path(path)
    entries = _load_manifest(path)
    base = str(path.parent.resolve())
    cfg = config.as_dict()
    jobs = []
    for e in entries:
        if not isinstance(e, dict):
            e = {}
        jobs.append((str(e.get("command", "")), list(e.get("graphs", [])), dict(e.get("options", {})), cfg, base))
    use_pool = config.parallel if parallel is None else parallel
    if use_pool and len(jobs) > 1:
        with ProcessPoolExecutor() as ex:
            certs = list(ex.map(_run_entry, jobs))
    else:
        certs = [_run_entry(j) for j in jobs]
    statuses = [c["status"] for c in certs]
    counts = {s: statuses.count(s) for s in ("OK", "INCONCLUSIVE", "FAILED")}
    results = {"entries": certs, "counts": counts, "total": len(certs)}
    inputs = [{"name": path.name}]
    return Certificate("batch", inputs, cfg, results, aggregate_status(statuses), __version__)


# ---- text rendering ------------------------------------------------------------


def _short(v) -> bool:
    if isinstance(v, (str, bool, int, float)) or v is None:
        return True
    return isinstance(v, list) and len(v) <= 12 and all(isinstance(x, (int, float)) for x in v)


def render_text(cert: Certificate) -> str:
    """Lossy one-screen summary of a certificate."""
    lines = [f"{cert.command}: {cert.status}"]
    for inp in cert.inputs:
        if "sha256" in inp:
            lines.append(f"  input {inp['name']} (n={inp['n']}, m={inp['m']})")
        else:
            lines.append(f"  input {inp['name']}")
    for err in cert.errors:
        lines.append(f"  error: {err}")
    r = cert.results
    if cert.command == "batch":
        for e in r.get("entries", []):
            names = " ".join(i["name"] for i in e["inputs"])
            lines.append(f"  [{e['status']}] {e['command']} {names}")
        lines.append(f"  counts: {r.get('counts')}")
        return "\n".join(lines) + "\n"
    for key in sorted(r):
        val = r[key]
        if isinstance(val, float):
            lines.append(f"  {key}: {val:.10g}")
        elif isinstance(val, (str, bool, int)) or val is None:
            lines.append(f"  {key}: {val}")
        elif isinstance(val, dict):
            shown = [(k, v) for k, v in sorted(val.items()) if _short(v)]
            inner = ", ".join(f"{k}={v:.10g}" if isinstance(v, float) else f"{k}={v}" for k, v in shown)
            lines.append(f"  {key}: {inner}")
        elif isinstance(val, list) and len(val) <= 40 and all(not isinstance(v, dict) for v in val):
            lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"


# ---- argument parsing ----------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--solve-tol", type=float, dest="solve_tol")
    common.add_argument("--rank-tol", type=float, dest="rank_tol")
    common.add_argument("--tight-tol", type=float, dest="tight_tol")
    common.add_argument("--max-iters", type=int, dest="max_iters")
    common.add_argument("--output", choices=("json", "text"))
    common.add_argument("--out", type=Path, help="write the certificate here instead of stdout")

    p = argparse.ArgumentParser(prog="vc-lab", description="Vector chromatic number analysis.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chi", parents=[common], help="vector chromatic number and optimal pair")
    c.add_argument("graph")
    c.add_argument("--strict", action="store_true", help="also compute the strict variant")
    for name, text in (
        ("uvc", "unique vector colorability"),
        ("skeleton", "edges tight in every optimal coloring"),
        ("neighborly", "neighborliness of every vertex"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("graph")

    pr = sub.add_parser("product", parents=[common], help="categorical product analyses")
    pr.add_argument("graph_g")
    pr.add_argument("graph_h")
    pr.add_argument("--verify-hedetniemi", action="store_true", dest="verify_hedetniemi")
    pr.add_argument("--rank-accounting", action="store_true", dest="rank_accounting")
    pr.add_argument("--corollary", action="store_true")
    pr.add_argument("--strict", action="store_true")
    pr.add_argument("--decompose", metavar="COLORING", help="JSON file with a product Gram matrix")

    b = sub.add_parser("batch", parents=[common], help="run a manifest of commands")
    b.add_argument("manifest")
    b.add_argument("--parallel", action="store_true", default=None)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    overrides = {
        "solve_tol": args.solve_tol,
        "rank_tol": args.rank_tol,
        "tight_tol": args.tight_tol,
        "max_iters": args.max_iters,
        "output": args.output,
    }
    if args.command == "batch":
        overrides["parallel"] = args.parallel
    try:
        config = RunConfig.from_env(overrides)
    except (OSError, ValueError, TypeError) as exc:
        print(f"vc-lab: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "batch":
        try:
            cert = run_manifest(args.manifest, config)
        except InputError as exc:
            print(f"vc-lab: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        if args.command == "product":
            paths = [args.graph_g, args.graph_h]
            options = {
                "verify_hedetniemi": args.verify_hedetniemi,
                "rank_accounting": args.rank_accounting,
                "corollary": args.corollary,
                "strict": args.strict,
                "decompose": args.decompose,
            }
        else:
            paths = [args.graph]
            options = {"strict": getattr(args, "strict", False)}
        cert = run_command(args.command, paths, options, config)
        if any("error" in i for i in cert.inputs):
            for err in cert.errors:
                print(f"vc-lab: {err}", file=sys.stderr)

    text = cert.to_json() if config.output == "json" else render_text(cert)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    if cert.failed:
        parse_error = any("error" in i for i in cert.inputs)
        return EXIT_USAGE if parse_error else EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
