# cli/main.py
"""
Command-line entry point.

    python -m cli.main detect --input fg.json --factor phi [--algorithm decor|naive] [--verify] [--explain]
    python -m cli.main bench --n 2,4,6,8 --k 0,2,half,log2,n-1,n --reps 3 --out results.csv
    python -m cli.main lift --input fg.json --out groups.json
    python -m cli.main compress --input fg.json --factor phi --subset R2,R3
    python -m cli.main register --csv results.csv
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from loguru import logger

from config import configure_logging, settings
from detection.antichain import max_candidate, sort_key
from detection.deadline import Deadline, Status
from detection.decor import decor, decor_trace
from detection.naive import naive_max_commutative
from factor_graph.commutativity import is_commutative
from factor_graph.crv import compress_to_crv
from factor_graph.errors import FactorGraphError, UnknownNameError
from factor_graph.io import load_factor_graph
from factor_graph.models import Factor
from factor_graph.potentials import format_potential
from factor_graph.schemas import CandidateSchema, DetectionSchema
from lifting.colour_passing import DETECTORS, run_cpr

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_TIMEOUT = 3


def _split(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _candidate(factor: Factor, positions) -> CandidateSchema:
    ordered = sorted(positions)
    return CandidateSchema(positions=ordered, arguments=[factor.arg_names[p] for p in ordered])


def _emit(payload: Dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        print(text)


def _trace_records(factor: Factor) -> List[Dict]:
    records = []
    for step in decor_trace(factor):
        records.append(
            {
                "positions": list(step.positions),
                "bucket": list(step.bucket.counts),
                "complement": list(step.complement) if step.complement is not None else None,
                "potentials": [format_potential(p) for p in step.potentials],
                "groups": [[list(assignment) for assignment, _ in group] for group in step.groups],
                "local_candidates": [list(c) for c in step.local],
                "candidates": [list(c) for c in step.candidates],
                "skipped": step.skipped,
            }
        )
    return records


def cmd_detect(args) -> int:
    graph = load_factor_graph(args.input)
    factor = graph.factor(args.factor)
    deadline = Deadline.after_ms(args.timeout_ms)
    logger.info(f"Detecting commutative arguments of {factor.name} with {args.algorithm}")

    stats: Dict[str, int] = {}
    if args.algorithm == "decor":
        result = decor(factor, deadline)
        status = result.status
        found = sorted(result.candidates, key=sort_key)
        stats = result.stats.to_dict()
    else:
        result = naive_max_commutative(factor, deadline)
        status = result.status
        found = [result.subset] if result.subset else []
        stats = {"subsets_tested": result.subsets_tested, "subsets_rejected": result.subsets_rejected}

    best = max_candidate(found)
    payload = DetectionSchema(
        factor=factor.name,
        algorithm=args.algorithm,
        status=status.value,
        candidates=[_candidate(factor, c) for c in found],
        max_candidate=_candidate(factor, best) if best else None,
        verified=all(is_commutative(factor, c) for c in found) if args.verify else None,
        stats=stats,
    ).dict()
    if args.explain:
        payload["trace"] = _trace_records(factor)
    _emit(payload, args.out)

    if status is Status.TIMEOUT:
        logger.warning(f"Detection on {factor.name} timed out after {args.timeout_ms} ms")
        return EXIT_TIMEOUT
    if args.verify and not payload["verified"]:
        logger.error(f"A reported subset of {factor.name} failed verification")
        return EXIT_INPUT_ERROR
    return EXIT_OK


def cmd_bench(args) -> int:
    from bench.results import summarize
    from bench.runner import BenchConfig, bench_suite

    config = BenchConfig(
        n_list=[int(n) for n in _split(args.n)],
        k_spec=_split(args.k),
        range_size=args.range,
        reps=args.reps,
        timeout_ms=args.timeout_ms,
        seed=args.seed,
        parallel=args.parallel,
        algorithms=tuple(_split(args.algorithms)),
    )
    measurements = bench_suite(config, out=args.out)
    summary = summarize(measurements)
    if args.summary:
        summary.to_csv(args.summary, index=False)
        logger.info(f"Wrote summary to {args.summary}")
    if not args.out:
        print(summary.to_string(index=False))

    if args.register is not None:
        from bench.run_registry import BenchRunTracker
        from database.config import create_tables

        create_tables()
        name = BenchRunTracker().register_run(
            measurements, config=config.to_dict(), run_name=args.register or None, description=args.description
        )
        print(f"Registered run {name}")
    return EXIT_OK


def _parse_evidence(value: Optional[str]) -> Dict[str, str]:
    evidence = {}
    for item in _split(value or ""):
        name, sep, observed = item.partition("=")
        if not sep or not name or not observed:
            raise FactorGraphError(f"evidence must look like NAME=VALUE, got {item!r}")
        evidence[name.strip()] = observed.strip()
    return evidence


def cmd_lift(args) -> int:
    graph = load_factor_graph(args.input)
    grouping = run_cpr(graph, _parse_evidence(args.evidence), args.arity_limit, args.detector)
    _emit(grouping.to_dict(), args.out)
    return EXIT_OK


def cmd_compress(args) -> int:
    graph = load_factor_graph(args.input)
    factor = graph.factor(args.factor)
    positions = []
    for name in _split(args.subset):
        if name not in factor.arg_names:
            raise UnknownNameError(f"{name} is not an argument of factor {factor.name}")
        positions.append(factor.arg_names.index(name))
    frame = compress_to_crv(factor, positions).to_frame()
    if args.out:
        frame.to_csv(args.out, index=False)
        logger.info(f"Wrote {len(frame)} compressed rows to {args.out}")
    else:
        print(frame.to_string(index=False))
    return EXIT_OK


def cmd_register(args) -> int:
    from database.config import create_tables
    from database.populate_database import import_results

    create_tables()
    name = import_results(args.csv, run_name=args.name, description=args.description)
    print(f"Registered run {name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="decor", description="Commutative factor detection and colour passing")
    parser.add_argument("--log-level", default=None, help="loguru level (default from DECOR_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="find commutative argument subsets of one factor")
    detect.add_argument("--input", required=True)
    detect.add_argument("--factor", required=True)
    detect.add_argument("--algorithm", choices=DETECTORS, default="decor")
    detect.add_argument("--timeout-ms", type=int, default=settings.default_timeout_ms)
    detect.add_argument("--verify", action="store_true", help="check every reported subset against the table")
    detect.add_argument("--explain", action="store_true", help="include the bucket-by-bucket DECOR trace")
    detect.add_argument("--out", default=None)
    detect.set_defaults(handler=cmd_detect)

    bench = sub.add_parser("bench", help="run the DECOR vs naive benchmark grid")
    bench.add_argument("--n", default="2,4,6,8,10,12,14,16")
    bench.add_argument("--k", default="0,2,half,log2,n-1,n")
    bench.add_argument("--range", type=int, default=2)
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--timeout-ms", type=int, default=settings.default_timeout_ms)
    bench.add_argument("--seed", type=int, default=settings.bench_seed)
    bench.add_argument("--parallel", type=int, default=settings.bench_parallel)
    bench.add_argument("--algorithms", default="decor,naive")
    bench.add_argument("--out", default=None, help="results file (.csv or .parquet)")
    bench.add_argument("--summary", default=None, help="per (algorithm, n, k) summary CSV")
    bench.add_argument("--register", nargs="?", const="", default=None, metavar="RUN_NAME",
                       help="record the run in the benchmark database")
    bench.add_argument("--description", default=None)
    bench.set_defaults(handler=cmd_bench)

    lift = sub.add_parser("lift", help="group symmetric variables and factors by colour passing")
    lift.add_argument("--input", required=True)
    lift.add_argument("--out", default=None)
    lift.add_argument("--evidence", default=None, help="NAME=VALUE pairs, comma separated")
    lift.add_argument("--arity-limit", type=int, default=settings.arity_limit)
    lift.add_argument("--detector", choices=DETECTORS, default="decor")
    lift.set_defaults(handler=cmd_lift)

    compress = sub.add_parser("compress", help="print a factor in counting representation")
    compress.add_argument("--input", required=True)
    compress.add_argument("--factor", required=True)
    compress.add_argument("--subset", required=True, help="commutative argument names, comma separated")
    compress.add_argument("--out", default=None)
    compress.set_defaults(handler=cmd_compress)

    register = sub.add_parser("register", help="record an existing results file as a benchmark run")
    register.add_argument("--csv", required=True)
    register.add_argument("--name", default=None)
    register.add_argument("--description", default=None)
    register.set_defaults(handler=cmd_register)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except (FactorGraphError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
