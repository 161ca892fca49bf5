"""Compiled inner loops for the reference and band solvers.

Every solver funnels its per-cell arithmetic through ``interior_cost``
so the quadratic reference, the stepped band, the fused serial band and
the fused parallel band produce bit-identical values. None of the
kernels uses fastmath: reassociation would break the cross-solver and
cross-worker-count equality the test suite asserts.
"""

import os

# Allow more logical workers than cores so determinism across worker
# counts {1,2,4,8} is testable on small hosts. Must precede the first
# numba import anywhere in the process to take effect.
os.environ.setdefault("NUMBA_NUM_THREADS", str(max(8, os.cpu_count() or 1)))
os.environ.setdefault("NUMBA_THREADING_LAYER_PRIORITY", "omp tbb workqueue")

import numpy as np
from numba import njit, prange

INF = np.inf


@njit(cache=True, nogil=True, inline="always")
def lp_dist(x, y, p):
    """lp distance between two equal-length vectors.

    Single-component vectors short-circuit to |x0 - y0| so the result
    is exact for any degree.
    """
    m = x.shape[0]
    if m == 1:
        return abs(x[0] - y[0])
    if p == 1:
        acc = 0.0
        for k in range(m):
            acc += abs(x[k] - y[k])
        return acc
    if p == 2:
        acc = 0.0
        for k in range(m):
            diff = x[k] - y[k]
            acc += diff * diff
        return np.sqrt(acc)
    acc = 0.0
    for k in range(m):
        acc += abs(x[k] - y[k]) ** p
    return acc ** (1.0 / p)


@njit(cache=True, nogil=True)
def consecutive_costs(extended, p):
    """Distances between consecutive rows of a zero-prefixed value array."""
    n = extended.shape[0] - 1
    out = np.empty(n)
    for i in range(n):
        out[i] = lp_dist(extended[i + 1], extended[i], p)
    return out


@njit(cache=True, nogil=True, inline="always")
def interior_cost(z_up, z_left, z_diag, del_a, del_b, va, ta, vb, tb, i, j, nu, p):
    """Cost of interior cell (i, j) given its three solved neighbours.

    z_up/z_left/z_diag are the cells one row up, one column left and
    one of each away; del_a/del_b are the precomputed deletion costs of
    sample i of A and sample j of B.
    """
    d_now = lp_dist(va[i], vb[j], p)
    d_prev = lp_dist(va[i - 1], vb[j - 1], p)
    t_gap = abs(ta[i] - tb[j]) + abs(ta[i - 1] - tb[j - 1])
    delete_a = z_up + del_a
    delete_b = z_left + del_b
    match = z_diag + d_now + d_prev + nu * t_gap
    best = delete_a
    if delete_b < best:
        best = delete_b
    if match < best:
        best = match
    return best


@njit(cache=True, nogil=True)
def twed_fill_matrix(dp, va, ta, del_a, vb, tb, del_b, nu, p):
    """Fill the full cost matrix in row-major order.

    ``dp`` arrives boundary-initialised: dp[0, 0] = 0 and the rest of
    row 0 and column 0 hold +inf.
    """
    na = va.shape[0] - 1
    nb = vb.shape[0] - 1
    for i in range(1, na + 1):
        for j in range(1, nb + 1):
            dp[i, j] = interior_cost(
                dp[i - 1, j], dp[i, j - 1], dp[i - 1, j - 1],
                del_a[i], del_b[j], va, ta, vb, tb, i, j, nu, p,
            )


@njit(cache=True, nogil=True)
def twed_diagonal(z, z1, z2, d, va, ta, del_a, vb, tb, del_b, nu, p):
    """Compute diagonal d of the band from the two preceding diagonals.

    Cell (row, col) with row + col = d lives at z[col]; its neighbours
    sit at constant offsets z1[col], z1[col - 1] and z2[col - 1]. The
    two possible boundary cells (col 0 / row 0) are peeled off so the
    interior loop is branch-free and each index is written exactly once.
    """
    na = va.shape[0] - 1
    nb = vb.shape[0] - 1
    lo = 0 if d <= na else d - na
    hi = d if d < nb else nb
    if lo == 0:
        z[0] = INF
        lo = 1
    if hi == d:
        z[d] = INF
        hi = d - 1
    for idx in range(lo, hi + 1):
        row = d - idx
        z[idx] = interior_cost(
            z1[idx], z1[idx - 1], z2[idx - 1],
            del_a[row], del_b[idx], va, ta, vb, tb, row, idx, nu, p,
        )


@njit(cache=True, nogil=True)
def twed_band_serial(z, z1, z2, va, ta, del_a, vb, tb, del_b, nu, p):
    """March the three-buffer band across all diagonals, single worker.

    ``z`` arrives holding diagonal 0 (z[0] = 0, rest +inf); the buffers
    rotate in place, so no allocation happens inside the solve.
    """
    na = va.shape[0] - 1
    nb = vb.shape[0] - 1
    for d in range(1, na + nb + 1):
        tmp = z2
        z2 = z1
        z1 = z
        z = tmp
        twed_diagonal(z, z1, z2, d, va, ta, del_a, vb, tb, del_b, nu, p)
    return z[nb]


@njit(cache=True, parallel=True)
def twed_band_parallel(z, z1, z2, va, ta, del_a, vb, tb, del_b, nu, p):
    """Band march with every diagonal entry computed by parallel workers.

    Entries within one diagonal are independent, so the split across
    workers cannot change any value; the loop end is the barrier
    between consecutive diagonals.
    """
    na = va.shape[0] - 1
    nb = vb.shape[0] - 1
    for d in range(1, na + nb + 1):
        tmp = z2
        z2 = z1
        z1 = z
        z = tmp
        lo = 0 if d <= na else d - na
        hi = d if d < nb else nb
        if lo == 0:
            z[0] = INF
            lo = 1
        if hi == d:
            z[d] = INF
            hi = d - 1
        for idx in prange(lo, hi + 1):
            row = d - idx
            z[idx] = interior_cost(
                z1[idx], z1[idx - 1], z2[idx - 1],
                del_a[row], del_b[idx], va, ta, vb, tb, row, idx, nu, p,
            )
    return z[nb]


@njit(cache=True, nogil=True)
def lcs_fill_matrix(table, s, t):
    """Classic quadratic longest-common-subsequence length table."""
    ns = s.shape[0]
    nt = t.shape[0]
    for i in range(1, ns + 1):
        for j in range(1, nt + 1):
            if s[i - 1] == t[j - 1]:
                table[i, j] = table[i - 1, j - 1] + 1
            else:
                up = table[i - 1, j]
                left = table[i, j - 1]
                table[i, j] = up if up >= left else left


@njit(cache=True, nogil=True)
def lcs_band_solve(z, z1, z2, s, t):
    """LCS length on the three-buffer band.

    The match branch reads the twice-lagged diagonal, the two skip
    branches the once-lagged one; boundary cells are zero. Buffers
    arrive zero-filled with z holding diagonal 0.
    """
    ns = s.shape[0]
    nt = t.shape[0]
    for d in range(1, ns + nt + 1):
        tmp = z2
        z2 = z1
        z1 = z
        z = tmp
        lo = 0 if d <= ns else d - ns
        hi = d if d < nt else nt
        for idx in range(lo, hi + 1):
            row = d - idx
            if row == 0 or idx == 0:
                z[idx] = 0
            elif s[row - 1] == t[idx - 1]:
                z[idx] = z2[idx - 1] + 1
            else:
                up = z1[idx]
                left = z1[idx - 1]
                z[idx] = up if up >= left else left
    return z[nt]
