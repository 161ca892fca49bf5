"""Time warp edit distance on a linear-memory diagonal band.

The package pairs every fast path with a slow, obviously-correct
oracle: a three-buffer band solver against a full-matrix reference for
TWED, and a banded against a classic table for LCS length. Batch mode
builds all-pairs distance matrices; the CLI adds file formats, a
benchmark harness and figures.
"""

from .band import (
    BandStateError,
    DiagonalBand,
    DiagonalCoord,
    band_step,
    cycle_buffers,
    diagonal_count,
    lcs_band,
    ortho_diag,
    row_col,
    twed_band,
)
from .core import (
    InvalidInputError,
    LocalCosts,
    TimeSeries,
    TwedParams,
    local_costs,
    lp_norm,
)
from .engine import (
    BatchSpec,
    BenchRecord,
    DistanceMatrix,
    bench,
    resolve_workers,
    twed_batch,
    twed_parallel,
)
from .reference import lcs_reference, twed_reference, twed_reference_matrix

__version__ = "0.1.0"

__all__ = [
    "BandStateError",
    "BatchSpec",
    "BenchRecord",
    "DiagonalBand",
    "DiagonalCoord",
    "DistanceMatrix",
    "InvalidInputError",
    "LocalCosts",
    "TimeSeries",
    "TwedParams",
    "band_step",
    "bench",
    "cycle_buffers",
    "diagonal_count",
    "lcs_band",
    "lcs_reference",
    "local_costs",
    "lp_norm",
    "ortho_diag",
    "resolve_workers",
    "row_col",
    "twed_band",
    "twed_batch",
    "twed_parallel",
    "twed_reference",
    "twed_reference_matrix",
    "__version__",
]
