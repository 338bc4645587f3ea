"""Command-line front end: run, discretize, trie-dump, bench.

Exit codes: 0 success, 1 usage/I-O/parse errors, 2 when no pattern
reaches the acceptance threshold. Machine-readable JSON goes to stdout,
human summaries to stderr, file artifacts under --out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .dataset import UcrFormatError, load_ucr, znormalize_dataset
from .discretizer import SaxParams, discretize, dump_text
from .pattern_index import PatternIndex
from .pipeline import (
    NoPatternsError,
    PipelineConfig,
    build_report,
    fit_transform,
    run_experiment,
)
from .sampler_trie import fit_sampler
from .synthgen import SynthSpec, generate

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_PATTERNS = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, but this tool
    # reserves 2 for the no-patterns outcome; remap usage errors to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    items = [tok for tok in text.split(",") if tok.strip()]
    try:
        return [int(tok) for tok in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _resolve_threads(value) -> int:
    if value is not None:
        if value < 1:
            raise ValueError(f"--threads must be >= 1, got {value}")
        return value
    env = os.environ.get("PS2C_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"PS2C_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise ValueError(f"PS2C_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def _load(path: str):
    return load_ucr(path)


def _config_from(args) -> PipelineConfig:
    return PipelineConfig(
        alphas=tuple(args.alphas),
        omegas=tuple(args.omegas),
        l_max=args.lmax,
        s_min=args.smin,
        tau=args.tau,
        k=args.k,
        seed=args.seed,
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alphas", type=_int_list, default=[2, 3, 4, 5, 6, 7, 8],
                        metavar="LIST", help="alphabet sizes, comma-separated")
    parser.add_argument("--omegas", type=_int_list, default=[2, 3, 4, 5, 6],
                        metavar="LIST", help="window sizes, comma-separated")
    parser.add_argument("--lmax", type=int, default=20, help="longest pattern length")
    parser.add_argument("--smin", type=float, default=0.05, help="minimum normalized chi-square")
    parser.add_argument("--tau", type=float, default=0.5, help="temperature for weight scaling")
    parser.add_argument("--k", type=int, default=4, help="patterns sampled per grid cell")
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")


def cmd_run(args) -> int:
    try:
        threads = _resolve_threads(args.threads)
        config = _config_from(args)
        train = _load(args.train)
        test = _load(args.test)
    except (OSError, UcrFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def emit(i, split, merged):
        if not args.emit_features:
            return
        merged.train.to_csv(out_dir / f"features_train_{i}.csv", labels=split.train.labels)
        merged.test.to_csv(out_dir / f"features_test_{i}.csv", labels=split.test.labels)

    try:
        result = run_experiment(
            train, test, config, args.resamples, n_threads=threads, on_resample=emit
        )
    except NoPatternsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PATTERNS

    report = build_report(config, result, args.resamples)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    (out_dir / "report.json").write_text(text)

    # Wall times vary run to run, so they live in a separate artifact
    # and the report above stays byte-stable for a given invocation.
    timings = dict(result.timings)
    timings["total_seconds"] = result.total_seconds
    (out_dir / "timings.json").write_text(json.dumps(timings, indent=2, sort_keys=True) + "\n")

    print(
        f"accuracy {result.mean_accuracy:.4f} +/- {result.std_accuracy:.4f} "
        f"over {args.resamples} resample(s)",
        file=sys.stderr,
    )
    for phase, seconds in timings.items():
        print(f"  {phase}: {seconds:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_discretize(args) -> int:
    try:
        params = SaxParams(args.alpha, args.omega)
        dataset = znormalize_dataset(_load(args.train))
        discretized = discretize(dataset, params)
    except (OSError, UcrFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(dump_text(discretized, dataset.labels) + "\n")
    return EXIT_OK


def cmd_trie_dump(args) -> int:
    try:
        params = SaxParams(args.alpha, args.omega)
        dataset = znormalize_dataset(_load(args.train))
        discretized = discretize(dataset, params)
        index = PatternIndex.build(discretized, args.lmax)
        trie = fit_sampler(
            discretized, index, dataset.labels, args.lmax, args.smin, args.tau
        )
    except (OSError, UcrFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if trie.is_empty:
        print("error: no discriminative patterns found", file=sys.stderr)
        return EXIT_NO_PATTERNS
    sys.stdout.write(trie.to_text() + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        threads = _resolve_threads(args.threads)
        sizes = args.sizes
        lengths = args.lengths
        if not sizes:
            raise ValueError("--sizes must list at least one dataset size")
        if not lengths:
            raise ValueError("--lengths must list at least one series length")
        for n in sizes:
            if n < 4:
                raise ValueError(f"dataset size must be >= 4, got {n}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    config = PipelineConfig(seed=args.seed)
    rows = []
    for length in lengths:
        for size in sizes:
            per_class = size // 2
            train = generate(SynthSpec(n_per_class=per_class, length=length, seed=args.seed))
            test = generate(SynthSpec(n_per_class=per_class, length=length, seed=args.seed + 1))
            t0 = time.perf_counter()
            try:
                merged = fit_transform(train, test, config, n_threads=threads)
            except NoPatternsError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_NO_PATTERNS
            total = time.perf_counter() - t0
            fit_seconds = merged.timings["discretize"] + merged.timings["fit_sampler"]
            rows.append(
                {
                    "n_instances": 2 * per_class,
                    "length": length,
                    "fit_seconds": fit_seconds,
                    "transform_seconds": merged.timings["transform"],
                    "total_seconds": total,
                }
            )
            print(
                f"N={2 * per_class:6d} n={length:6d} fit={fit_seconds:8.3f}s "
                f"transform={merged.timings['transform']:8.3f}s total={total:8.3f}s",
                file=sys.stderr,
            )

    sys.stdout.write(json.dumps({"rows": rows}, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ps2c",
        description="Pattern-sampled shapelet classification over symbolic grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser(
        "run",
        help="run the full pipeline on a train/test pair",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_run.add_argument("train", help="training split file")
    p_run.add_argument("test", help="test split file")
    _add_config_flags(p_run)
    p_run.add_argument("--resamples", type=int, default=1,
                       help="number of shuffled train/test resamples (0 keeps the original split)")
    p_run.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: PS2C_THREADS or all cores)")
    p_run.add_argument("--out", default="ps2c_out", help="artifact output directory")
    p_run.add_argument("--emit-features", action="store_true",
                       help="also write per-resample feature CSVs")
    p_run.set_defaults(func=cmd_run)

    p_disc = sub.add_parser(
        "discretize",
        help="print one symbolic string per instance",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_disc.add_argument("train", help="dataset file")
    p_disc.add_argument("--alpha", type=int, required=True, help="alphabet size")
    p_disc.add_argument("--omega", type=int, required=True, help="window size")
    p_disc.set_defaults(func=cmd_discretize)

    p_trie = sub.add_parser(
        "trie-dump",
        help="fit one grid cell's sampler and print the weighted trie",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_trie.add_argument("train", help="dataset file")
    p_trie.add_argument("--alpha", type=int, required=True, help="alphabet size")
    p_trie.add_argument("--omega", type=int, required=True, help="window size")
    p_trie.add_argument("--lmax", type=int, default=20, help="longest pattern length")
    p_trie.add_argument("--smin", type=float, default=0.05, help="minimum normalized chi-square")
    p_trie.add_argument("--tau", type=float, default=0.5, help="temperature for weight scaling")
    p_trie.set_defaults(func=cmd_trie_dump)

    p_bench = sub.add_parser(
        "bench",
        help="time fit+transform on planted synthetic datasets",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_bench.add_argument("--sizes", type=_int_list, required=True, metavar="LIST",
                         help="total training instances per run, comma-separated")
    p_bench.add_argument("--lengths", type=_int_list, default=[128], metavar="LIST",
                         help="series lengths per run, comma-separated")
    p_bench.add_argument("--seed", type=int, default=0, help="generator seed")
    p_bench.add_argument("--threads", type=int, default=1,
                         help="worker threads (timings are cleanest single-threaded)")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
