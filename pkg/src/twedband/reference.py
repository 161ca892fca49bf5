"""Quadratic-memory oracle solvers.

Deliberately the dumb, obviously-correct versions: a full cost matrix
for the time warp edit distance and the classic table for LCS length.
They exist to verify the band solvers and to serve as benchmark
baselines, so no memory tricks are played here.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import TimeSeries, TwedParams, _encode_symbols, prepare_pair


def twed_reference_matrix(a: TimeSeries, b: TimeSeries, params: TwedParams) -> np.ndarray:
    """Full (na+1) x (nb+1) cost matrix of the TWED dynamic program.

    Cell [0, 0] is 0, the rest of row 0 and column 0 are +inf, and each
    interior cell [i, j] is the cheapest of

    - deleting sample i of A: cell [i-1, j] plus the local distance
      between samples i and i-1 of A, the stiffness-weighted time gap,
      and the deletion penalty;
    - deleting sample j of B, symmetrically from cell [i, j-1];
    - matching the two samples: cell [i-1, j-1] plus the distances
      between the current and between the previous samples of A and B
      and the stiffness-weighted timestamp differences.

    Sample index 0 is the virtual zero vector at time zero.
    """
    prep = prepare_pair(a, b, params)
    dp = np.full((prep.na + 1, prep.nb + 1), np.inf)
    dp[0, 0] = 0.0
    _kernels.twed_fill_matrix(
        dp, prep.a.values, prep.a.times, prep.a.deletion_costs,
        prep.b.values, prep.b.times, prep.b.deletion_costs,
        prep.nu, prep.degree,
    )
    return dp


def twed_reference(a: TimeSeries, b: TimeSeries, params: TwedParams) -> float:
    """Time warp edit distance via the full-matrix dynamic program."""
    return float(twed_reference_matrix(a, b, params)[a.n, b.n])


def lcs_reference(s, t) -> int:
    """Longest-common-subsequence length via the classic quadratic table."""
    s_codes, t_codes = _encode_symbols(s, t)
    table = np.zeros((s_codes.shape[0] + 1, t_codes.shape[0] + 1), dtype=np.int64)
    _kernels.lcs_fill_matrix(table, s_codes, t_codes)
    return int(table[s_codes.shape[0], t_codes.shape[0]])
