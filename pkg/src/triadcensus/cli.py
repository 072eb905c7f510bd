"""Command-line front end.

``triad-census`` runs a census over a graph file; ``triad-census-gen`` writes
a seeded synthetic edge list.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time

from .errors import (CensusOverflowError, EmptyGraphError, ParseError, PipelineError,
                     TriadCensusError)
from .graph import degree_stats
from .parallel import ATOMIC, LOCAL, ExecConfig, TimingBreakdown, timed_pipeline
from .partition import NONUNIFORM, UNIFORM
from .synthetic import generate_synthetic
from .triads import ISO16, NONISO64, census_bruteforce, census_sequential, derive_classifier
from .ingest import finalize_phases, parse_file

log = logging.getLogger("triadcensus")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_OVERFLOW = 2
EXIT_VERIFY = 3


def build_parser():
    p = argparse.ArgumentParser(prog="triad-census",
                                description="Triad census of a sparse directed graph.")
    p.add_argument("--input", "-i", required=True, help="graph file (Pajek .net or edge list)")
    p.add_argument("--format", choices=("auto", "pajek", "edgelist"), default="auto")
    p.add_argument("--index-base", type=int, choices=(0, 1), default=None,
                   help="override edge-list id base detection")
    p.add_argument("--mode", choices=(ISO16, NONISO64), default=ISO16)
    p.add_argument("--exec", dest="execution", choices=("seq", "par"), default="seq")
    p.add_argument("--strategy", choices=(UNIFORM, NONUNIFORM), default=UNIFORM)
    p.add_argument("--workers", type=int, default=1)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--queues", type=int, default=None,
                       help="target number of task queues (default 16 * workers)")
    group.add_argument("--max-nset-size", type=int, default=None,
                       help="explicit per-queue workload threshold")
    p.add_argument("--merge", choices=(LOCAL, ATOMIC), default=LOCAL)
    p.add_argument("--output", choices=("table", "csv", "json"), default="table")
    p.add_argument("--verify", action="store_true",
                   help="check against the brute-force census when n <= --verify-limit")
    p.add_argument("--verify-limit", type=int, default=200)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _run_sequential(args, classifier):
    timing = TimingBreakdown()
    start = time.perf_counter()
    t0 = time.perf_counter()
    try:
        doc = parse_file(args.input, args.format, args.index_base)
        build_out, build_nb = finalize_phases(doc)
        out = build_out()
    except (OSError, TriadCensusError, ValueError) as exc:
        raise PipelineError("read_graph", exc) from exc
    timing.read_graph = time.perf_counter() - t0
    t0 = time.perf_counter()
    g = build_nb(out)
    timing.build_neighbour_sets = time.perf_counter() - t0
    t0 = time.perf_counter()
    try:
        census = census_sequential(g, classifier, args.mode)
    except TriadCensusError as exc:
        raise PipelineError("census_execution", exc) from exc
    timing.census_execution = time.perf_counter() - t0
    timing.total = time.perf_counter() - start
    return g, census, timing, None


def _run_parallel(args, classifier):
    cfg = ExecConfig(args.workers, args.merge, args.mode)
    res = timed_pipeline(args.input, cfg, fmt=args.format, index_base=args.index_base,
                         strategy=args.strategy, queues=args.queues,
                         max_nset_size=args.max_nset_size, classifier=classifier)
    return res.graph, res.census, res.timing, res.plan


def render_rows(census, classifier):
    labels = census.labels(classifier)
    return [(i + 1, labels[i], int(c)) for i, c in enumerate(census.counts)]


def render(report, fmt):
    rows = report["rows"]
    if fmt == "json":
        doc = {k: v for k, v in report.items() if k != "rows"}
        doc["census"] = [{"index": i, "label": lbl, "count": c} for i, lbl, c in rows]
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("index", "label", "count"))
        w.writerows(rows)
        return buf.getvalue()
    width = max(len(str(c)) for _, _, c in rows)
    lines = [f"n={report['n']} m={report['m']} delta={report['delta']} "
             f"mode={report['mode']}"]
    lines += [f"{i:>3}  {lbl:<5} {c:>{width}}" for i, lbl, c in rows]
    if report["plan"] is not None:
        plan = report["plan"]
        lines.append(f"plan: strategy={report['strategy']} tasks={plan['tasks']} "
                     f"queues={plan['queues']} total_workload={plan['total_workload']}")
    lines.append("timing (s): " + " ".join(f"{k}={v:.6f}" for k, v in report["timing"].items()))
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None):
    """Run the census CLI; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return _run(args, stdout, stderr)
    finally:
        log.removeHandler(handler)


def _run(args, stdout, stderr):
    if args.execution == "seq" and (args.workers != 1 or args.merge != LOCAL
                                    or args.strategy != UNIFORM or args.queues
                                    or args.max_nset_size):
        log.warning("--exec seq ignores --strategy/--workers/--queues/--merge")
    if args.workers < 1:
        print("error: --workers must be >= 1", file=stderr)
        return EXIT_INPUT

    classifier = derive_classifier()
    try:
        runner = _run_sequential if args.execution == "seq" else _run_parallel
        g, census, timing, plan = runner(args, classifier)
    except PipelineError as exc:
        cause = exc.cause
        print(f"error: {exc}", file=stderr)
        if isinstance(cause, CensusOverflowError):
            return EXIT_OVERFLOW
        return EXIT_INPUT

    if g.dropped_loops or g.dropped_duplicates:
        log.warning("dropped %d self-loops and %d duplicate arcs",
                    g.dropped_loops, g.dropped_duplicates)

    if args.verify:
        if g.n <= args.verify_limit:
            oracle = census_bruteforce(g, classifier, args.mode)
            if oracle != census:
                print("error: census disagrees with brute-force oracle", file=stderr)
                return EXIT_VERIFY
            log.info("verified against brute force")
        else:
            log.warning("n=%d exceeds --verify-limit %d; verification skipped",
                        g.n, args.verify_limit)

    delta, _, m = degree_stats(g)
    parallel = args.execution == "par"
    report = {
        "n": g.n,
        "m": m,
        "delta": delta,
        "mode": args.mode,
        "strategy": args.strategy if parallel else None,
        "workers": args.workers if parallel else 1,
        "queues": plan.n_queues if plan is not None else None,
        "rows": render_rows(census, classifier),
        "timing": timing.as_dict(),
        "plan": plan.summary() if plan is not None else None,
    }
    stdout.write(render(report, args.output))
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


def build_gen_parser():
    p = argparse.ArgumentParser(prog="triad-census-gen",
                                description="Write a seeded synthetic edge list.")
    p.add_argument("-n", type=int, required=True, help="vertex count")
    p.add_argument("--model", choices=("uniform", "powerlaw"), default="uniform")
    p.add_argument("-p", type=float, default=0.01, help="arc probability (uniform)")
    p.add_argument("--exponent", type=float, default=2.5, help="degree exponent (powerlaw)")
    p.add_argument("--avg-degree", type=float, default=8.0, help="mean degree (powerlaw)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o", default="-", help="output path, '-' for stdout")
    return p


def generate_main(argv=None):
    args = build_gen_parser().parse_args(argv)
    try:
        if args.out == "-":
            generate_synthetic(args.n, args.model, p=args.p, exponent=args.exponent,
                               avg_degree=args.avg_degree, seed=args.seed, stream=sys.stdout)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                generate_synthetic(args.n, args.model, p=args.p, exponent=args.exponent,
                                   avg_degree=args.avg_degree, seed=args.seed, stream=fh)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
