"""Command line front end: generate, align, mine, evaluate, score, experiment.

Results and tables go to files or stdout; logs and the resolved
configuration go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from statistics import mean

from . import formats
from .alignment import AlignmentConfig, SeedPairs, build_alignment_graph
from .errors import ConfigError, DualDenseError
from .evaluation import evaluate
from .graph import subset_density
from .iwds import MiningConfig, iwds_mine, objective_from_parts
from .synth import BACKGROUNDS, SynthConfig, generate

log = logging.getLogger("dualdense")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

JOBS_ENV = "DUALDENSE_JOBS"
SUITES = {
    "synthetic1": (0.0,),
    "synthetic2": (0.05, 0.10),
}


def _echo(command, **conf):
    log.info("config %s", json.dumps({"command": command, **conf}, sort_keys=True, default=str))


def _unit_interval(text):
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return x


def _positive_int(text):
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return x


def _alpha_list(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text}") from None
    if not vals or any(not 0 < a <= 1 for a in vals):
        raise argparse.ArgumentTypeError(f"alphas must lie in (0, 1]: {text}")
    return vals


def _default_jobs():
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# ---- subcommands --------------------------------------------------------------

def cmd_generate(args):
    cfg = SynthConfig(background=args.background, noise=args.noise, rng_seed=args.seed)
    _echo("generate", **vars(cfg), out=args.out)
    inst = generate(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats.save_weighted(inst.graph, out / "graph.tsv")
    formats.save_truth(inst.truth, out / "truth.tsv")
    meta = {"config": {k: v for k, v in vars(cfg).items()},
            "nodes": inst.graph.num_nodes, "edges": inst.graph.num_edges}
    (out / "instance.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    log.info("wrote %s (%d nodes, %d edges)", out, inst.graph.num_nodes, inst.graph.num_edges)
    return EXIT_OK


def cmd_align(args):
    _echo("align", conceptual=args.conceptual, physical=args.physical, delta=args.delta,
          seeds=args.seeds, out=args.out)
    cfg = AlignmentConfig(args.delta)
    dn = formats.load_dual(args.conceptual, args.physical)
    seeds = None
    if args.seeds:
        nmap = formats.NodeMap.from_graph(dn.conceptual)
        seeds = SeedPairs(formats.load_seed_pairs(args.seeds, nmap))
    ga = build_alignment_graph(dn, seeds, cfg)
    formats.save_weighted(ga, args.out)
    log.info("alignment graph: %d nodes, %d edges -> %s", ga.num_nodes, ga.num_edges, args.out)
    return EXIT_OK


def cmd_mine(args):
    cfg = MiningConfig(k=args.k, lam=args.lam, alpha=args.alpha, f=args.f)
    _echo("mine", graph=args.graph, physical=args.physical, out=args.out, delta=args.delta,
          k=cfg.k, lam=cfg.lam, alpha=cfg.alpha, f=cfg.f, tie_seed=cfg.tie_seed)
    dn = None
    if args.physical:
        dn = formats.load_dual(args.graph, args.physical)
        g = dn.conceptual
    else:
        g = formats.load_weighted(args.graph)
    t0 = time.perf_counter()
    x = iwds_mine(g, cfg, dn)
    elapsed = time.perf_counter() - t0
    formats.save_result(x, cfg, args.out, delta=args.delta, labels=g.labels)
    timing = {"wall_clock_s": round(elapsed, 3), "nodes": g.num_nodes, "edges": g.num_edges}
    Path(str(args.out) + ".timing.json").write_text(json.dumps(timing) + "\n", encoding="utf-8")
    if g.labels is not None:
        formats.save_labels(g.labels, str(args.out) + ".labels.tsv")
    if x.exhausted:
        log.warning("only %d of %d subgraphs could be mined", len(x), cfg.k)
    bad = [i for i, ok in enumerate(x.physical_connected) if ok is False]
    if bad:
        log.warning("subgraphs not connected in the physical graph: %s", bad)
    log.info("mined %d subgraphs, objective %.6f, %.3f s", len(x), x.objective, elapsed)
    return EXIT_OK


def _truth_nmap(args):
    if not args.graph:
        return None
    g = formats.load_weighted(args.graph)
    return None if g.labels is None else formats.NodeMap.from_graph(g)


def cmd_evaluate(args):
    _echo("evaluate", truth=args.truth, result=args.result, graph=args.graph)
    truth = formats.load_truth(args.truth, _truth_nmap(args))
    x, _ = formats.load_result(args.result)
    if not truth:
        raise DualDenseError(f"{args.truth}: no truth sets")
    rep = evaluate(truth, x.subgraphs)
    print(rep.line())
    return EXIT_OK


def cmd_score(args):
    _echo("score", result=args.result, graph=args.graph)
    x, _ = formats.load_result(args.result)
    g = formats.load_weighted(args.graph)
    problems = []
    dens = []
    for i, (nodes, stored) in enumerate(zip(x.subgraphs, x.densities)):
        rho = subset_density(g, nodes)
        dens.append(rho)
        if abs(rho - stored) > args.tol:
            problems.append(f"subgraph {i}: stored density {stored!r} != recomputed {rho!r}")
    obj = objective_from_parts(dens, x.subgraphs, x.lam)
    if abs(obj - x.objective) > args.tol:
        problems.append(f"stored objective {x.objective!r} != recomputed {obj!r}")
    for p in problems:
        log.error(p)
    status = "FAIL" if problems else "OK"
    print(f"objective={obj:.6f} stored={x.objective:.6f} {status}")
    return EXIT_VERIFY if problems else EXIT_OK


def run_instance(task):
    """One synthetic instance mined at every alpha; returns plain dicts (picklable)."""
    background, noise, seed, alphas, k, lam, f = task
    inst = generate(SynthConfig(background=background, noise=noise, rng_seed=seed))
    rows = []
    for alpha in alphas:
        x = iwds_mine(inst.graph, MiningConfig(k=k, lam=lam, alpha=alpha, f=f))
        rep = evaluate(inst.truth, x.subgraphs)
        rows.append({
            "background": background, "noise": noise, "seed": seed, "alpha": alpha,
            "f1_td": rep.f1_truth_to_detected, "f1_dt": rep.f1_detected_to_truth,
            "objective": x.objective,
        })
    return rows


def run_experiment(suite, alphas, seeds, jobs=1, k=5, lam=1.0, f=0.5,
                   backgrounds=tuple(BACKGROUNDS), base_seed=0):
    tasks = [(b, noise, base_seed + s, tuple(alphas), k, lam, f)
             for noise in SUITES[suite] for b in backgrounds for s in range(seeds)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(run_instance, tasks))
    else:
        chunks = [run_instance(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["noise"], r["background"], r["alpha"], r["seed"]))
    return rows


def summarize(rows):
    """Mean F1 per (noise, alpha) and per (noise, background, alpha)."""
    cells = {}
    for r in rows:
        for key in ((r["noise"], "all", r["alpha"]), (r["noise"], r["background"], r["alpha"])):
            cells.setdefault(key, []).append(r)
    return {key: {"f1_td": mean(r["f1_td"] for r in rs), "f1_dt": mean(r["f1_dt"] for r in rs),
                  "n": len(rs)}
            for key, rs in sorted(cells.items())}


def format_table(summary, alphas):
    noises = sorted({key[0] for key in summary})
    head = "noise\tmetric\t" + "\t".join(f"alpha={a:g}" for a in alphas)
    lines = [head]
    for noise in noises:
        for metric, name in (("f1_td", "F1[t/d]"), ("f1_dt", "F1[d/t]")):
            vals = [f"{summary[(noise, 'all', a)][metric]:.2f}" for a in alphas]
            lines.append(f"{noise:g}\t{name}\t" + "\t".join(vals))
    return "\n".join(lines) + "\n"


def cmd_experiment(args):
    jobs = args.jobs or _default_jobs()
    _echo("experiment", suite=args.suite, alphas=args.alphas, seeds=args.seeds, out=args.out,
          jobs=jobs, k=args.k, lam=args.lam, f=args.f, base_seed=args.base_seed)
    rows = run_experiment(args.suite, args.alphas, args.seeds, jobs, args.k, args.lam, args.f,
                          base_seed=args.base_seed)
    summary = summarize(rows)
    table = format_table(summary, args.alphas)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "runs.jsonl", "w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(json.dumps(r) + "\n")
    cells = [{"noise": n, "background": b, "alpha": a,
              "f1_td": round(v["f1_td"], 4), "f1_dt": round(v["f1_dt"], 4), "runs": v["n"]}
             for (n, b, a), v in summary.items()]
    (out / "summary.json").write_text(json.dumps(cells, indent=2) + "\n", encoding="utf-8")
    (out / "table.tsv").write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    return EXIT_OK


# ---- parser -----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="dualdense", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", help="write a planted-clique benchmark instance")
    s.add_argument("--background", choices=sorted(BACKGROUNDS), default="er01")
    s.add_argument("--noise", type=_unit_interval, default=0.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("align", help="build the alignment graph of a dual network")
    s.add_argument("--conceptual", required=True)
    s.add_argument("--physical", required=True)
    s.add_argument("--delta", type=_positive_int, default=1)
    s.add_argument("--seeds", help="seed pairs file (default: identity)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_align)

    s = sub.add_parser("mine", help="run IWDS on a weighted graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--alpha", type=float, default=0.1)
    s.add_argument("--f", type=float, default=0.5)
    s.add_argument("--physical", help="physical layer; enables per-subgraph connectivity checks")
    s.add_argument("--delta", type=_positive_int, help="delta used for alignment (echoed only)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_mine)

    s = sub.add_parser("evaluate", help="F1 of a result against ground truth")
    s.add_argument("--truth", required=True)
    s.add_argument("--result", required=True)
    s.add_argument("--graph", help="graph file, needed when nodes carry string labels")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("score", help="recompute and verify a result's objective")
    s.add_argument("--result", required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_score)

    s = sub.add_parser("experiment", help="synthetic benchmark sweep")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--alphas", type=_alpha_list, default=[0.05, 0.1, 0.25])
    s.add_argument("--seeds", type=_positive_int, default=20, help="instances per background")
    s.add_argument("--base-seed", type=int, default=0)
    s.add_argument("--k", type=_positive_int, default=5)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--f", type=float, default=0.5)
    s.add_argument("--jobs", type=_positive_int, default=None,
                   help=f"worker processes (default: ${JOBS_ENV} or CPU count)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as e:
        log.error("invalid configuration: %s", e)
        return EXIT_USAGE
    except (DualDenseError, OSError) as e:
        log.error("%s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
