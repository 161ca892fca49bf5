"""Parallel execution and batch all-pairs distance matrices.

Two grains of parallelism are used, switched by series length: large
pairs parallelise across the entries of each diagonal, while batches of
short series parallelise across pairs (one solve per worker thread, the
compiled kernels release the GIL). Both paths produce values that are
bit-identical to the single-worker band solve.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from . import _kernels, instrument
from .band import _acquire_buffer
from .core import (
    InvalidInputError,
    PreparedSeries,
    TimeSeries,
    TwedParams,
    prepare_series,
)
from .reference import twed_reference

WORKERS_ENV = "WARPBAND_WORKERS"

# Below this many samples per series, per-diagonal work is too small to
# amortise a parallel region; such solves run on one worker and batches
# of them parallelise across pairs instead.
PARALLEL_MIN_LENGTH = 512

# Largest series the quadratic reference is benchmarked at by default.
DEFAULT_REFERENCE_CUTOFF = 8192


def resolve_workers(workers=None) -> int:
    """Turn a worker request into a concrete count.

    None or "auto" falls back to the WARPBAND_WORKERS environment
    variable and then to the CPU count.
    """
    if workers in (None, "auto"):
        env = os.environ.get(WORKERS_ENV)
        if env is not None:
            workers = env
        else:
            return os.cpu_count() or 1
    try:
        if int(workers) != float(workers):
            raise ValueError
        workers = int(workers)
    except (TypeError, ValueError):
        raise InvalidInputError(f"workers must be an integer or 'auto', got {workers!r}")
    if workers < 1:
        raise InvalidInputError(f"workers must be >= 1, got {workers}")
    return workers


def _band_buffers(na: int, nb: int):
    length = (na + 1) + (nb + 1)
    z = _acquire_buffer(length, np.inf, np.float64)
    z1 = _acquire_buffer(length, np.inf, np.float64)
    z2 = _acquire_buffer(length, np.inf, np.float64)
    z[0] = 0.0
    return z, z1, z2


def _solve_serial(pa: PreparedSeries, pb: PreparedSeries, params: TwedParams) -> float:
    instrument.note_solve()
    z, z1, z2 = _band_buffers(pa.n, pb.n)
    return float(_kernels.twed_band_serial(
        z, z1, z2,
        pa.values, pa.times, pa.deletion_costs,
        pb.values, pb.times, pb.deletion_costs,
        params.nu, params.degree,
    ))


def _solve_parallel(pa: PreparedSeries, pb: PreparedSeries, params: TwedParams, workers: int) -> float:
    instrument.note_solve()
    z, z1, z2 = _band_buffers(pa.n, pb.n)
    previous = numba.get_num_threads()
    numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    try:
        return float(_kernels.twed_band_parallel(
            z, z1, z2,
            pa.values, pa.times, pa.deletion_costs,
            pb.values, pb.times, pb.deletion_costs,
            params.nu, params.degree,
        ))
    finally:
        numba.set_num_threads(previous)


def twed_parallel(a: TimeSeries, b: TimeSeries, params: TwedParams, workers: int = 1) -> float:
    """Band solve with a chosen worker count.

    The result is bit-identical for every worker count: entries within
    a diagonal are independent, each is written by exactly one worker,
    and diagonals are separated by a barrier. For short series (or a
    single worker) the solve runs on one worker outright.
    """
    workers = resolve_workers(workers)
    if a.d != b.d:
        raise InvalidInputError(f"series dimensions differ: {a.d} vs {b.d}")
    wide = min(a.n, b.n) >= PARALLEL_MIN_LENGTH
    if workers > 1 and wide:
        # The two consecutive-distance passes are independent; overlap
        # them while the pool is warm.
        with ThreadPoolExecutor(max_workers=2) as pool:
            fa = pool.submit(prepare_series, a, params)
            fb = pool.submit(prepare_series, b, params)
            pa, pb = fa.result(), fb.result()
        return _solve_parallel(pa, pb, params, workers)
    return _solve_serial(prepare_series(a, params), prepare_series(b, params), params)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs TWED values between two collections of series."""

    entries: np.ndarray
    symmetric: bool = False

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True, eq=False)
class BatchSpec:
    """Configuration of one all-pairs computation.

    ``symmetric=True`` is only meaningful when both lists are the same
    collection; the solver then computes the upper triangle and mirrors
    it, halving the work with identical output.
    """

    list_a: tuple
    list_b: tuple
    params: TwedParams
    symmetric: bool = False
    workers: object = "auto"

    def __post_init__(self):
        object.__setattr__(self, "list_a", tuple(self.list_a))
        object.__setattr__(self, "list_b", tuple(self.list_b))
        if not self.list_a or not self.list_b:
            raise InvalidInputError("batch lists must be nonempty")
        dim = self.list_a[0].d
        for series in (*self.list_a, *self.list_b):
            if series.d != dim:
                raise InvalidInputError(
                    f"batch series dimensions differ: {series.d} vs {dim}"
                )
        if self.symmetric and not self.is_self_batch:
            raise InvalidInputError(
                "symmetric=True requires both lists to be the same collection"
            )

    @property
    def is_self_batch(self) -> bool:
        return len(self.list_a) == len(self.list_b) and all(
            x is y for x, y in zip(self.list_a, self.list_b)
        )

    @classmethod
    def self_batch(cls, series, params, symmetric=False, workers="auto") -> "BatchSpec":
        series = tuple(series)
        return cls(series, series, params, symmetric=symmetric, workers=workers)


def twed_batch(spec: BatchSpec) -> DistanceMatrix:
    """All-pairs distance matrix between two lists of series.

    Entry (i, j) equals the band solve of (list_a[i], list_b[j]); in
    symmetric mode only pairs with i <= j are solved and the transpose
    is mirrored.
    """
    workers = resolve_workers(spec.workers)
    params = spec.params

    prepared_a = [prepare_series(s, params) for s in spec.list_a]
    if spec.is_self_batch:
        prepared_b = prepared_a
    else:
        prepared_b = [prepare_series(s, params) for s in spec.list_b]

    out = np.zeros((len(prepared_a), len(prepared_b)))
    if spec.symmetric:
        pairs = [(i, j) for i in range(len(prepared_a)) for j in range(i, len(prepared_b))]
    else:
        pairs = [(i, j) for i in range(len(prepared_a)) for j in range(len(prepared_b))]

    longest = max(max(p.n for p in prepared_a), max(p.n for p in prepared_b))
    if longest >= PARALLEL_MIN_LENGTH or workers == 1 or len(pairs) == 1:
        # Few large solves: give each one all the workers.
        for i, j in pairs:
            out[i, j] = (
                _solve_parallel(prepared_a[i], prepared_b[j], params, workers)
                if workers > 1 and min(prepared_a[i].n, prepared_b[j].n) >= PARALLEL_MIN_LENGTH
                else _solve_serial(prepared_a[i], prepared_b[j], params)
            )
    else:
        # Many small solves: one pair per worker thread.
        def solve(pair):
            i, j = pair
            out[i, j] = _solve_serial(prepared_a[i], prepared_b[j], params)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(solve, pairs))

    if spec.symmetric:
        upper = np.triu_indices(out.shape[0], k=1)
        out[(upper[1], upper[0])] = out[upper]
    return DistanceMatrix(entries=out, symmetric=spec.symmetric)


@dataclass(frozen=True)
class BenchRecord:
    """One row of the benchmark table."""

    size: int
    band_seconds: float
    reference_seconds: float | None
    speedup: float | None
    parity: bool | None
    workers: int


def _parity(x: float, y: float, rel: float = 1e-12) -> bool:
    scale = max(abs(x), abs(y), 1.0)
    return abs(x - y) <= rel * scale


def bench(
    sizes,
    params: TwedParams = TwedParams(),
    workers: int = 1,
    trials: int = 3,
    cutoff: int = DEFAULT_REFERENCE_CUTOFF,
    seed: int = 42,
) -> list[BenchRecord]:
    """Time the band solver against the quadratic reference.

    For each size a seeded random pair (values uniform in [0, 1),
    unit-spaced timestamps) is solved ``trials`` times by each solver
    and the minimum wall time kept. The reference is skipped above
    ``cutoff``, where full matrices stop being reasonable; parity of the
    two values is recorded whenever both solvers ran.
    """
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise InvalidInputError("bench needs at least one size")
    if any(s < 1 for s in sizes):
        raise InvalidInputError("bench sizes must be positive")
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    workers = resolve_workers(workers)

    # Warm both solver paths once so records reflect steady state, not
    # JIT compilation or cache loading. Data generation for the records
    # stays tied to `seed`.
    warm_rng = np.random.default_rng(2**32 - 1)
    warm_small = TimeSeries(warm_rng.random((8, 1))), TimeSeries(warm_rng.random((8, 1)))
    twed_parallel(*warm_small, params, 1)
    if workers > 1 and max(sizes) >= PARALLEL_MIN_LENGTH:
        warm_wide = (
            TimeSeries(warm_rng.random((PARALLEL_MIN_LENGTH, 1))),
            TimeSeries(warm_rng.random((PARALLEL_MIN_LENGTH, 1))),
        )
        twed_parallel(*warm_wide, params, workers)
    if any(size <= cutoff for size in sizes):
        twed_reference(*warm_small, params)

    rng = np.random.default_rng(seed)
    records = []
    for size in sizes:
        a = TimeSeries(rng.random((size, 1)))
        b = TimeSeries(rng.random((size, 1)))

        band_value = None
        band_time = np.inf
        for _ in range(trials):
            start = time.perf_counter()
            band_value = twed_parallel(a, b, params, workers)
            band_time = min(band_time, time.perf_counter() - start)

        reference_time = None
        speedup = None
        parity = None
        if size <= cutoff:
            reference_time = np.inf
            for _ in range(trials):
                start = time.perf_counter()
                reference_value = twed_reference(a, b, params)
                reference_time = min(reference_time, time.perf_counter() - start)
            parity = _parity(band_value, reference_value)
            speedup = reference_time / band_time if band_time > 0 else None

        records.append(BenchRecord(
            size=size,
            band_seconds=band_time,
            reference_seconds=reference_time,
            speedup=speedup,
            parity=parity,
            workers=workers,
        ))
    return records
