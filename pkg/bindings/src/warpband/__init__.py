"""Array-in, number-out bindings for the twedband solvers.

The functions here only validate and marshal: beyond shape checks they
add no logic, so the underlying library's test suite remains the source
of truth for values. Conforming float64 arrays are passed through as
views (no copy); the compiled solvers release the GIL while running.
"""

from __future__ import annotations

import numpy as np

import twedband
from twedband import BatchSpec, TimeSeries, TwedParams
from twedband.engine import twed_batch as _twed_batch
from twedband.engine import twed_parallel as _twed_parallel

__version__ = twedband.__version__

__all__ = ["twed", "twed_batch", "lcs_length", "__version__"]


def _as_series(values, times, label: str) -> TimeSeries:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim not in (1, 2):
        raise ValueError(
            f"{label}: values must be 1-D or 2-D (n samples by d components), "
            f"got {values.ndim} dimensions {values.shape}"
        )
    n = values.shape[0]
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1:
        raise ValueError(
            f"{label}: timestamps must be 1-D, got {times.ndim} dimensions"
        )
    if times.shape[0] != n:
        raise ValueError(
            f"{label}: {times.shape[0]} timestamps for {n} samples"
        )
    return TimeSeries(values, times)


def twed(values_a, times_a, values_b, times_b, nu=1.0, lam=0.0, degree=2) -> float:
    """Time warp edit distance between two timestamped arrays.

    ``values_*`` have shape (n,) or (n, d) with matching d; ``times_*``
    have shape (n,) and must be strictly increasing.
    """
    a = _as_series(values_a, times_a, "series A")
    b = _as_series(values_b, times_b, "series B")
    if a.d != b.d:
        raise ValueError(f"series dimensions differ: A has d={a.d}, B has d={b.d}")
    return _twed_parallel(a, b, TwedParams(nu=nu, lam=lam, degree=degree), 1)


def _as_series_list(items, label: str) -> list[TimeSeries]:
    out = []
    for k, item in enumerate(items):
        if isinstance(item, TimeSeries):
            out.append(item)
        elif isinstance(item, tuple) and len(item) == 2:
            out.append(_as_series(item[0], item[1], f"{label}[{k}]"))
        else:
            values = np.asarray(item, dtype=np.float64)
            out.append(_as_series(values, np.arange(values.shape[0], dtype=np.float64),
                                  f"{label}[{k}]"))
    return out


def twed_batch(series_a, series_b=None, *, nu=1.0, lam=0.0, degree=2,
               symmetric=False, workers="auto") -> np.ndarray:
    """All-pairs distance matrix.

    Each list entry is a (values, times) tuple, a bare values array
    (timestamps default to 0, 1, ...) or a TimeSeries. With
    ``series_b=None`` the list is paired against itself, which is the
    only mode where ``symmetric=True`` is allowed.
    """
    params = TwedParams(nu=nu, lam=lam, degree=degree)
    list_a = _as_series_list(series_a, "series_a")
    if series_b is None:
        spec = BatchSpec.self_batch(list_a, params, symmetric=symmetric, workers=workers)
    else:
        list_b = _as_series_list(series_b, "series_b")
        spec = BatchSpec(list_a, list_b, params, symmetric=symmetric, workers=workers)
    return _twed_batch(spec).entries


def lcs_length(s, t) -> int:
    """Longest-common-subsequence length of two strings."""
    return twedband.lcs_band(s, t)
