"""Domain types and local-cost primitives shared by every solver.

A :class:`TimeSeries` couples d-dimensional samples with strictly
increasing timestamps. All solvers use the virtual-prefix convention:
the sample before the first one is the zero vector at time zero, so
local costs and time penalties are defined from the very first sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


class InvalidInputError(ValueError):
    """Raised when an input violates a documented precondition."""


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A timestamped sequence of real vectors.

    Parameters
    ----------
    values : array-like, shape (n,) or (n, d)
        Sample values; a 1-D array is treated as n samples in R^1.
    timestamps : array-like, shape (n,), optional
        Strictly increasing sample times. Defaults to 0, 1, ..., n-1.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise InvalidInputError(
                f"values must be 1-D or 2-D, got {values.ndim} dimensions"
            )
        if values.shape[0] < 1:
            raise InvalidInputError("a time series needs at least one sample")
        if values.shape[1] < 1:
            raise InvalidInputError("samples need at least one component")

        if self.timestamps is None:
            timestamps = np.arange(values.shape[0], dtype=np.float64)
        else:
            timestamps = np.asarray(self.timestamps, dtype=np.float64)
        if timestamps.ndim != 1 or timestamps.shape[0] != values.shape[0]:
            raise InvalidInputError(
                f"expected {values.shape[0]} timestamps, got shape {timestamps.shape}"
            )
        if timestamps.shape[0] > 1 and not np.all(np.diff(timestamps) > 0):
            raise InvalidInputError("timestamps must be strictly increasing")

        object.__setattr__(self, "values", values)
        object.__setattr__(self, "timestamps", timestamps)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class TwedParams:
    """Tuning parameters of the time warp edit distance.

    nu is the temporal stiffness (cost per unit of time difference),
    lam the constant deletion penalty, and degree the exponent of the
    lp norm used for local distances between samples.
    """

    nu: float = 1.0
    lam: float = 0.0
    degree: int = 2

    def __post_init__(self):
        if self.nu < 0:
            raise InvalidInputError(f"nu must be >= 0, got {self.nu}")
        if self.lam < 0:
            raise InvalidInputError(f"lam must be >= 0, got {self.lam}")
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvalidInputError(f"degree must be a positive integer, got {self.degree}")
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def is_metric(self) -> bool:
        """True when the distance is a proper metric (nu > 0, lam >= 0)."""
        return self.nu > 0 and self.lam >= 0


@dataclass(frozen=True, eq=False)
class LocalCosts:
    """Per-series consecutive-sample distances for one pair of series."""

    da: np.ndarray
    db: np.ndarray

    @classmethod
    def of_pair(cls, a: TimeSeries, b: TimeSeries, degree: int) -> "LocalCosts":
        return cls(local_costs(a, degree), local_costs(b, degree))


def lp_norm(x, p: int) -> float:
    """Return the lp norm (sum of |x_i|^p) ** (1/p) of a vector.

    For a single-component vector this is exactly |x_0| for any p.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] == 0:
        raise InvalidInputError("lp_norm needs at least one component")
    if int(p) != p or p < 1:
        raise InvalidInputError(f"norm degree must be a positive integer, got {p}")
    return float(_kernels.lp_dist(x, np.zeros_like(x), int(p)))


def local_costs(series: TimeSeries, degree: int) -> np.ndarray:
    """Distances between consecutive samples, zero-vector prefix included.

    Entry i is the lp distance between sample i and sample i-1, where
    sample -1 is the zero vector; entry 0 is therefore the norm of the
    first sample itself.
    """
    if int(degree) != degree or degree < 1:
        raise InvalidInputError(f"norm degree must be a positive integer, got {degree}")
    extended = extend_values(series)
    return _kernels.consecutive_costs(extended, int(degree))


def _encode_symbols(s, t) -> tuple[np.ndarray, np.ndarray]:
    """Map two symbol sequences onto int64 code arrays for the kernels.

    Strings use code points directly; other hashable symbols share one
    arbitrary-but-consistent code table across both sequences.
    """
    if isinstance(s, str) and isinstance(t, str):
        return (
            np.array([ord(c) for c in s], dtype=np.int64),
            np.array([ord(c) for c in t], dtype=np.int64),
        )
    codes: dict = {}

    def encode(seq):
        out = np.empty(len(seq), dtype=np.int64)
        for i, sym in enumerate(seq):
            out[i] = codes.setdefault(sym, len(codes))
        return out

    return encode(list(s)), encode(list(t))


def extend_values(series: TimeSeries) -> np.ndarray:
    """Values with the virtual zero sample prepended at index 0."""
    out = np.zeros((series.n + 1, series.d))
    out[1:] = series.values
    return out


def extend_timestamps(series: TimeSeries) -> np.ndarray:
    """Timestamps with the virtual time 0 prepended at index 0."""
    out = np.zeros(series.n + 1)
    out[1:] = series.timestamps
    return out


@dataclass(frozen=True, eq=False)
class PreparedSeries:
    """Solver-ready arrays for one series under fixed parameters.

    Carries the zero-prefixed values and timestamps plus the per-index
    deletion cost (local distance + stiffness * time gap + penalty), so
    every solver consumes bit-identical inputs and batch mode prepares
    each series once instead of once per pair.
    """

    values: np.ndarray
    times: np.ndarray
    deletion_costs: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class PreparedPair:
    """A dimension-checked pair of prepared series plus parameters."""

    a: PreparedSeries
    b: PreparedSeries
    nu: float
    degree: int

    @property
    def na(self) -> int:
        return self.a.n

    @property
    def nb(self) -> int:
        return self.b.n


def prepare_series(
    series: TimeSeries,
    params: TwedParams,
    costs: np.ndarray | None = None,
) -> PreparedSeries:
    """Precompute the solver arrays for one series.

    ``costs`` may carry the output of :func:`local_costs` when it is
    already available; otherwise it is computed here.
    """
    if costs is None:
        costs = local_costs(series, params.degree)
    times = extend_timestamps(series)
    deletion = np.empty(times.shape[0])
    deletion[0] = np.inf  # index 0 is the virtual sample, never deleted
    deletion[1:] = (costs + params.nu * np.abs(np.diff(times))) + params.lam
    return PreparedSeries(extend_values(series), times, deletion)


def prepare_pair(
    a: TimeSeries,
    b: TimeSeries,
    params: TwedParams,
    local: LocalCosts | None = None,
) -> PreparedPair:
    """Validate a pair and precompute the solver input arrays."""
    if a.d != b.d:
        raise InvalidInputError(f"series dimensions differ: {a.d} vs {b.d}")
    if local is None:
        local = LocalCosts.of_pair(a, b, params.degree)
    return PreparedPair(
        a=prepare_series(a, params, np.asarray(local.da)),
        b=prepare_series(b, params, np.asarray(local.db)),
        nu=params.nu,
        degree=params.degree,
    )
