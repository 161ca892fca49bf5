"""Command-line surface.

Subcommands: ``twed`` (single pair), ``batch`` (all-pairs matrix over
directories of series), ``lcs`` (subsequence length of two text
sequences), ``bench`` (timing harness) and ``selftest``. Exit codes are
a stable contract: 0 success, 1 internal error, 2 usage or validation
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, band, engine, io, reference, report
from .core import InvalidInputError, TimeSeries, TwedParams


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twedband",
        description="Time warp edit distance via a linear-memory diagonal band.",
    )
    parser.add_argument("--version", action="version", version=f"twedband {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--nu", type=float, default=1.0, help="temporal stiffness (default 1)")
    params.add_argument("--lambda", dest="lam", type=float, default=0.0,
                        help="deletion penalty (default 0)")
    params.add_argument("--degree", type=int, default=2, help="lp-norm degree (default 2)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON run report")

    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument("--workers", default=None,
                         help=f"worker count (default: ${engine.WORKERS_ENV} or CPU count)")

    cmd = commands.add_parser("twed", parents=[params, workers, common],
                              help="distance between two series files")
    cmd.add_argument("file_a", type=Path)
    cmd.add_argument("file_b", type=Path)
    cmd.set_defaults(func=cmd_twed)

    cmd = commands.add_parser("batch", parents=[params, workers, common],
                              help="all-pairs distance matrix over series directories")
    cmd.add_argument("dir_a", type=Path)
    cmd.add_argument("dir_b", type=Path, nargs="?")
    cmd.add_argument("--self", dest="self_batch", action="store_true",
                     help="pair the directory against itself")
    cmd.add_argument("--symmetric", action="store_true",
                     help="with --self: compute the upper triangle and mirror it")
    cmd.add_argument("--out", type=Path, required=True, help="matrix CSV output path")
    cmd.add_argument("--plot", action="store_true",
                     help="also render a heatmap next to the matrix")
    cmd.set_defaults(func=cmd_batch)

    cmd = commands.add_parser("lcs", parents=[common],
                              help="longest-common-subsequence length of two sequence files")
    cmd.add_argument("file_a", type=Path)
    cmd.add_argument("file_b", type=Path)
    cmd.set_defaults(func=cmd_lcs)

    cmd = commands.add_parser("bench", parents=[params, workers, common],
                              help="time the band solver against the quadratic reference")
    cmd.add_argument("--sizes", default="1024,2048,4096",
                     help="comma-separated series lengths (default 1024,2048,4096)")
    cmd.add_argument("--trials", type=int, default=3,
                     help="timed runs per solver, minimum kept (default 3)")
    cmd.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    cmd.add_argument("--cutoff", type=int, default=engine.DEFAULT_REFERENCE_CUTOFF,
                     help="skip the reference above this size "
                          f"(default {engine.DEFAULT_REFERENCE_CUTOFF})")
    cmd.add_argument("--out", type=Path, help="write the table as CSV here")
    cmd.add_argument("--no-plot", action="store_true",
                     help="with --out: skip the walltime/speedup figures")
    cmd.set_defaults(func=cmd_bench)

    cmd = commands.add_parser("selftest", parents=[common],
                              help="quick internal consistency checks")
    cmd.set_defaults(func=cmd_selftest)

    return parser


def _params(args) -> TwedParams:
    return TwedParams(nu=args.nu, lam=args.lam, degree=args.degree)


def cmd_twed(args) -> report.RunReport:
    start = time.perf_counter()
    series_a = io.read_series_file(args.file_a)
    series_b = io.read_series_file(args.file_b)
    params = _params(args)
    workers = engine.resolve_workers(args.workers)
    distance = engine.twed_parallel(series_a, series_b, params, workers)
    elapsed = (time.perf_counter() - start) * 1000
    if not args.json:
        print(f"distance = {distance!r}")
    return report.RunReport(
        command="twed",
        inputs={
            "file_a": str(args.file_a), "file_b": str(args.file_b),
            "n_a": series_a.n, "n_b": series_b.n, "d": series_a.d,
            "workers": workers,
        },
        params=report.params_payload(params),
        result={"distance": distance},
        elapsed_ms=elapsed,
    )


def cmd_batch(args) -> report.RunReport:
    start = time.perf_counter()
    if args.self_batch and args.dir_b is not None:
        raise InvalidInputError("--self takes a single directory")
    if not args.self_batch and args.dir_b is None:
        raise InvalidInputError("need a second directory or --self")
    if args.symmetric and not args.self_batch:
        raise InvalidInputError("--symmetric requires --self")

    params = _params(args)
    names_a, list_a = io.load_series_dir(args.dir_a)
    if args.self_batch:
        names_b, list_b = names_a, list_a
    else:
        names_b, list_b = io.load_series_dir(args.dir_b)

    dim = list_a[0].d
    for name, series in zip(names_a + names_b, list_a + list_b):
        if series.d != dim:
            raise InvalidInputError(
                f"{name}: dimension {series.d} differs from {dim} of {names_a[0]}"
            )

    if args.self_batch:
        spec = engine.BatchSpec.self_batch(list_a, params, symmetric=args.symmetric,
                                           workers=args.workers)
    else:
        spec = engine.BatchSpec(list_a, list_b, params, workers=args.workers)

    matrix = engine.twed_batch(spec)
    io.write_matrix_csv(args.out, names_a, names_b, matrix.entries)
    figures = []
    if args.plot:
        figures.append(str(report.render_matrix_heatmap(
            matrix.entries, names_a, names_b, args.out.with_suffix(".png"))))
    elapsed = (time.perf_counter() - start) * 1000

    if not args.json:
        print(f"wrote {matrix.rows}x{matrix.cols} matrix to {args.out}")
        for figure in figures:
            print(f"wrote {figure}")
    return report.RunReport(
        command="batch",
        inputs={
            "dir_a": str(args.dir_a),
            "dir_b": str(args.dir_b) if args.dir_b else str(args.dir_a),
            "self": args.self_batch, "symmetric": args.symmetric,
            "series_a": len(list_a), "series_b": len(list_b),
        },
        params=report.params_payload(params),
        result={"matrix_path": str(args.out), "rows": matrix.rows, "cols": matrix.cols,
                "figures": figures},
        elapsed_ms=elapsed,
    )


def cmd_lcs(args) -> report.RunReport:
    start = time.perf_counter()
    seq_a = io.read_sequence_file(args.file_a)
    seq_b = io.read_sequence_file(args.file_b)
    length = band.lcs_band(seq_a, seq_b)
    elapsed = (time.perf_counter() - start) * 1000
    if not args.json:
        print(f"length = {length}")
    return report.RunReport(
        command="lcs",
        inputs={"file_a": str(args.file_a), "file_b": str(args.file_b),
                "len_a": len(seq_a), "len_b": len(seq_b)},
        params=None,
        result={"length": length},
        elapsed_ms=elapsed,
    )


def cmd_bench(args) -> report.RunReport:
    start = time.perf_counter()
    try:
        sizes = [int(s) for s in str(args.sizes).split(",") if s.strip()]
    except ValueError:
        raise InvalidInputError(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    params = _params(args)
    workers = engine.resolve_workers(args.workers)
    records = engine.bench(sizes, params, workers=workers, trials=args.trials,
                           cutoff=args.cutoff, seed=args.seed)
    outputs = []
    if args.out is not None:
        report.write_bench_csv(records, args.out)
        outputs.append(str(args.out))
        if not args.no_plot:
            stem = args.out.with_suffix("")
            outputs.extend(str(p) for p in report.render_bench_figures(records, stem))
    elapsed = (time.perf_counter() - start) * 1000

    if not args.json:
        print(report.format_bench_table(records))
        for path in outputs:
            print(f"wrote {path}")
    return report.RunReport(
        command="bench",
        inputs={"sizes": sizes, "trials": args.trials, "seed": args.seed,
                "cutoff": args.cutoff, "workers": workers},
        params=report.params_payload(params),
        result={"records": report.bench_payload(records), "outputs": outputs},
        elapsed_ms=elapsed,
    )


def cmd_selftest(args) -> report.RunReport:
    start = time.perf_counter()
    checks = []

    def check(name, ok):
        checks.append({"name": name, "ok": bool(ok)})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")

    ok = all(
        band.row_col(band.ortho_diag(r, c)) == (r, c)
        for r in range(65) for c in range(65)
    )
    check("ortho-diagonal maps round-trip (indices <= 64)", ok)

    rng = np.random.default_rng(7)
    params_grid = [TwedParams(1.0, 0.0, 2), TwedParams(0.1, 0.5, 1)]
    ok = True
    for k in range(20):
        n_a, n_b = rng.integers(1, 40, size=2)
        dim = int(rng.integers(1, 4))
        a = TimeSeries(rng.random((n_a, dim)))
        b = TimeSeries(rng.random((n_b, dim)))
        p = params_grid[k % len(params_grid)]
        got = band.twed_band(a, b, p)
        want = reference.twed_reference(a, b, p)
        if not engine._parity(got, want):
            ok = False
    check("band solver matches quadratic reference (20 random pairs)", ok)

    ok = True
    for _ in range(20):
        s = "".join(rng.choice(list("ACGT"), size=rng.integers(0, 64)))
        t = "".join(rng.choice(list("ACGT"), size=rng.integers(0, 64)))
        if band.lcs_band(s, t) != reference.lcs_reference(s, t):
            ok = False
    check("LCS band matches quadratic reference (20 random pairs)", ok)

    series = [TimeSeries(rng.random((12, 2))) for _ in range(4)]
    plain = engine.twed_batch(engine.BatchSpec.self_batch(series, params_grid[0], workers=1))
    mirrored = engine.twed_batch(engine.BatchSpec.self_batch(
        series, params_grid[0], symmetric=True, workers=1))
    check("symmetric batch equals full batch (4x4)",
          np.array_equal(plain.entries, mirrored.entries))

    passed = all(c["ok"] for c in checks)
    elapsed = (time.perf_counter() - start) * 1000
    if not args.json:
        print("selftest " + ("passed" if passed else "FAILED"))
    return report.RunReport(
        command="selftest",
        inputs={},
        params=None,
        result={"passed": passed, "checks": checks},
        elapsed_ms=elapsed,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse already reported usage problems
        return int(exit_.code or 0)
    try:
        run_report = args.func(args)
    except InvalidInputError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except FileNotFoundError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except Exception as error:  # noqa: BLE001 - contract: internal errors exit 1
        print(f"internal error: {error}", file=sys.stderr)
        return 1
    if args.json:
        print(run_report.to_json())
    if run_report.command == "selftest" and not run_report.result["passed"]:
        return 1
    return 0


def run() -> None:
    raise SystemExit(main())
