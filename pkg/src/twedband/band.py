"""Linear-memory diagonal-band solvers.

The full cost matrix is never materialised: the wavefront of
ortho-diagonals (cells of constant row + col) is swept from the origin
to the opposite corner while only the current and two lagged diagonals
are kept. Entries within one diagonal depend only on the lagged
buffers, which is what makes them independently computable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels, instrument
from .core import (
    InvalidInputError,
    LocalCosts,
    PreparedPair,
    TimeSeries,
    TwedParams,
    _encode_symbols,
    prepare_pair,
)


class BandStateError(RuntimeError):
    """Raised when a band is stepped out of order or before warm-up."""


class DiagonalCoord(NamedTuple):
    """Position of a matrix cell in diagonal storage."""

    orthodiag: int
    idx: int


def ortho_diag(row: int, col: int) -> DiagonalCoord:
    """Map matrix indices to (diagonal, position-within-diagonal).

    The diagonal index is row + col; the position within the diagonal
    is simply the column.
    """
    if row < 0 or col < 0:
        raise InvalidInputError(f"matrix indices must be >= 0, got ({row}, {col})")
    return DiagonalCoord(row + col, col)


def row_col(coord: DiagonalCoord) -> tuple[int, int]:
    """Exact inverse of :func:`ortho_diag`."""
    orthodiag, idx = coord
    if orthodiag < 0 or idx < 0:
        raise InvalidInputError(f"diagonal coordinates must be >= 0, got {coord}")
    if idx > orthodiag:
        raise InvalidInputError(
            f"idx {idx} exceeds diagonal {orthodiag}; no such cell"
        )
    return orthodiag - idx, idx


def diagonal_count(na: int, nb: int) -> int:
    """Number of ortho-diagonals covering the (na+1) x (nb+1) matrix.

    Rows + columns - 1 of them visit every cell exactly once; series
    lengths of at least one sample are assumed (enforced upstream by
    :class:`~twedband.core.TimeSeries`).
    """
    return na + nb + 1


def _acquire_buffer(length: int, fill, dtype) -> np.ndarray:
    instrument.note_buffer(length)
    return np.full(length, fill, dtype=dtype)


@dataclass(eq=False)
class DiagonalBand:
    """The rotating three-buffer state of a band solve.

    ``z`` holds diagonal ``d``; the lagged buffers hold the two
    diagonals before it. Exactly three buffers of length
    (na+1) + (nb+1) exist for the whole solve.
    """

    z: np.ndarray
    z_lag1: np.ndarray
    z_lag2: np.ndarray
    d: int = 0
    # Solver arrays cached by the first step; keyed so a band is never
    # silently stepped with inputs other than the ones it was prepared for.
    _prep: PreparedPair | None = field(default=None, repr=False, compare=False)
    _prep_key: tuple | None = field(default=None, repr=False, compare=False)

    @classmethod
    def for_pair(cls, a: TimeSeries, b: TimeSeries) -> "DiagonalBand":
        """Allocate and warm up a band: diagonal 0 is the single cell 0."""
        length = (a.n + 1) + (b.n + 1)
        band = cls(
            z=_acquire_buffer(length, np.inf, np.float64),
            z_lag1=_acquire_buffer(length, np.inf, np.float64),
            z_lag2=_acquire_buffer(length, np.inf, np.float64),
        )
        band.z[0] = 0.0
        return band

    @property
    def length(self) -> int:
        return self.z.shape[0]


def cycle_buffers(band: DiagonalBand) -> DiagonalBand:
    """Rotate buffer roles without allocating or releasing anything.

    The current diagonal becomes the once-lagged one, the once-lagged
    becomes twice-lagged, and the stale twice-lagged buffer is handed
    back as the next write target.
    """
    band.z, band.z_lag1, band.z_lag2 = band.z_lag2, band.z, band.z_lag1
    return band


def band_step(
    d: int,
    band: DiagonalBand,
    a: TimeSeries,
    b: TimeSeries,
    local: LocalCosts,
    params: TwedParams,
) -> DiagonalBand:
    """Fill diagonal d of the band from the two lagged diagonals.

    The caller must have rotated the buffers since diagonal d - 1 was
    produced, so that z_lag1 and z_lag2 hold diagonals d - 1 and d - 2.
    Boundary cells (row 0 or column 0) receive +inf; interior cells take
    the minimum of the two deletion moves and the match move. Every
    valid position of the diagonal is written exactly once.
    """
    if d < 1:
        raise BandStateError(f"band not warmed up for diagonal {d}; steps start at 1")
    if d != band.d + 1:
        raise BandStateError(
            f"band holds diagonal {band.d}; cannot step to {d}"
        )
    key = (id(a), id(b), params)
    if band._prep is None or band._prep_key != key:
        band._prep = prepare_pair(a, b, params, local)
        band._prep_key = key
    prep = band._prep
    if d > prep.na + prep.nb:
        raise BandStateError(
            f"diagonal {d} is outside the matrix; last diagonal is {prep.na + prep.nb}"
        )
    _kernels.twed_diagonal(
        band.z, band.z_lag1, band.z_lag2, d,
        prep.a.values, prep.a.times, prep.a.deletion_costs,
        prep.b.values, prep.b.times, prep.b.deletion_costs,
        prep.nu, prep.degree,
    )
    band.d = d
    instrument.note_diagonal_step()
    return band


def twed_band(a: TimeSeries, b: TimeSeries, params: TwedParams) -> float:
    """Time warp edit distance in linear memory.

    Sweeps diagonals 1 .. na+nb with :func:`band_step`, rotating the
    three buffers between steps; the result sits at position nb of the
    final diagonal.
    """
    instrument.note_solve()
    local = LocalCosts.of_pair(a, b, params.degree)
    prep = prepare_pair(a, b, params, local)  # validates the pair up front
    band = DiagonalBand.for_pair(a, b)
    band._prep = prep
    band._prep_key = (id(a), id(b), params)
    for d in range(1, a.n + b.n + 1):
        cycle_buffers(band)
        band_step(d, band, a, b, local, params)
    return float(band.z[b.n])


def lcs_band(s, t) -> int:
    """Longest-common-subsequence length on the three-buffer band.

    Accepts strings or sequences of hashable symbols; empty inputs are
    fine. Peak working state is three integer buffers of length
    len(s) + len(t) + 2.
    """
    s_codes, t_codes = _encode_symbols(s, t)
    length = (s_codes.shape[0] + 1) + (t_codes.shape[0] + 1)
    z = _acquire_buffer(length, 0, np.int64)
    z1 = _acquire_buffer(length, 0, np.int64)
    z2 = _acquire_buffer(length, 0, np.int64)
    return int(_kernels.lcs_band_solve(z, z1, z2, s_codes, t_codes))
