"""``opinionpool`` command line.

Exit codes: 0 success, 2 bad input or configuration, 3 failure writing output.
The root seed is ``--seed`` if given, then the ``seed`` of a sweep config file,
then ``OPINIONPOOL_SEED``, else 0.
"""
import argparse
import json
import logging
import sys

from .algorithms import estimate_alpha_divergence, holder_normalize
from .algorithms._random import as_seed_sequence
from .algorithms.pooling.density import PooledDensity
from .config import config
from .exceptions import InvalidParameter, OpinionPoolException
from .experiments import preset, run_sweep
from .interface import POOL_METHODS, get_aggregator
from .io import (
    RunManifest,
    load_json,
    parse_expert_set,
    parse_sweep_config,
    read_expert_set,
    write_aggregate,
    write_manifest,
    write_sweep,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def _setup_logging(verbosity):
    from rich.console import Console
    from rich.logging import RichHandler

    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _root_seed(seed):
    if seed is None:
        config.refresh()
        seed = config.get("seed")
    as_seed_sequence(seed)
    return int(seed)


def cmd_pool(args):
    data = load_json(args.config)
    experts = parse_expert_set(data, weights=args.weights, source=args.config)
    if args.format == "csv" and args.method == "holder05":
        raise InvalidParameter("holder05 output is an unnormalized density; use --format json")
    seed = _root_seed(args.seed)
    aggregate = get_aggregator(args.method)(experts)
    normalization = None
    if isinstance(aggregate, PooledDensity):
        if aggregate.kind == "holder":
            normalization = holder_normalize(experts, aggregate.alpha, args.samples, seed)
        aggregate = aggregate.source
    digest_input = {"input": data, "method": args.method, "weights": args.weights}
    manifest = RunManifest.create("pool", digest_input, seed)
    try:
        write_aggregate(args.output, args.method, aggregate, args.format, normalization)
        write_manifest(args.output, manifest)
    except OSError as exc:
        return _io_error(exc)
    return EXIT_OK


def cmd_experiment(args):
    if args.preset is not None:
        seed = _root_seed(args.seed)
        grid = preset(args.preset, n_samples=args.samples, seed=seed)
        digest_input = {"preset": args.preset, "samples": grid[0].n_samples, "seed": seed}
    else:
        data = load_json(args.config)
        seed = args.seed
        if seed is None and isinstance(data, dict):
            seed = data.get("seed")
        seed = _root_seed(seed)
        grid = parse_sweep_config(data, n_samples=args.samples, seed=seed, source=args.config)
        digest_input = {"config": data, "samples": args.samples, "seed": seed}
    result = run_sweep(grid, args.jobs)
    manifest = RunManifest.create("experiment", digest_input, seed)
    try:
        write_sweep(args.output, result, args.format)
        write_manifest(args.output, manifest)
    except OSError as exc:
        return _io_error(exc)
    return EXIT_OK


def cmd_divergence(args):
    experts = read_expert_set(args.config)
    if len(experts) != 2:
        raise InvalidParameter(f"divergence needs exactly two experts; got {len(experts)}")
    seed = _root_seed(args.seed)
    p, phi = experts
    estimate = estimate_alpha_divergence(p, phi, args.alpha, args.samples, seed)
    payload = {
        "alpha": args.alpha,
        "estimate": estimate.value,
        "std_err": estimate.std_err,
        "n_samples": args.samples if args.samples is not None else config.get("metrics.n_samples"),
        "seed": seed,
    }
    print(json.dumps(payload))
    return EXIT_OK


def _io_error(exc):
    print(f"opinionpool: error: could not write output: {exc}", file=sys.stderr)
    return EXIT_IO


def get_parser():
    parser = argparse.ArgumentParser(
        prog="opinionpool", description="Aggregate Gaussian expert opinions and run pooling studies"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log progress (repeat for debug output)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    pool = subparsers.add_parser("pool", help="Aggregate the experts in a config file")
    pool.add_argument("config", help="Expert-set JSON file")
    pool.add_argument(
        "-m", "--method", required=True, help=f"One of: {', '.join(POOL_METHODS)}"
    )
    pool.add_argument("--weights", type=float, nargs="+", help="Expert weights (sum to 1)")
    pool.add_argument("-o", "--output", required=True, help="Output path")
    pool.add_argument("--format", choices=["json", "csv"], default="json")
    pool.add_argument("--samples", type=int, help="Draws for the holder05 normalizer")
    pool.add_argument("--seed", type=int)
    pool.set_defaults(func=cmd_pool)

    experiment = subparsers.add_parser("experiment", help="Run a synthetic good/bad expert sweep")
    source = experiment.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", help="One of: figure1, figure2, figure7")
    source.add_argument("--config", help="Sweep config JSON file")
    experiment.add_argument("-o", "--output", required=True, help="Output path")
    experiment.add_argument("--format", choices=["csv", "json"], default="csv")
    experiment.add_argument("--seed", type=int)
    experiment.add_argument("--samples", type=int, help="Monte-Carlo draws per metric")
    experiment.add_argument("--jobs", type=int, help="Parallel cells (default: all cores)")
    experiment.set_defaults(func=cmd_experiment)

    divergence = subparsers.add_parser(
        "divergence", help="Estimate D_alpha(first || second) for a two-expert config"
    )
    divergence.add_argument("config", help="Expert-set JSON file with two experts")
    divergence.add_argument("--alpha", type=float, required=True)
    divergence.add_argument("--samples", type=int)
    divergence.add_argument("--seed", type=int)
    divergence.set_defaults(func=cmd_divergence)
    return parser


def main(argv=None):
    args = get_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except OpinionPoolException as exc:
        print(f"opinionpool: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
