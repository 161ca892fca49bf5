import numpy as np
import pytest

from twedband import (
    BandStateError,
    DiagonalBand,
    DiagonalCoord,
    InvalidInputError,
    LocalCosts,
    TimeSeries,
    TwedParams,
    band_step,
    cycle_buffers,
    diagonal_count,
    lcs_band,
    lcs_reference,
    ortho_diag,
    row_col,
    twed_band,
    twed_reference,
    twed_reference_matrix,
)
from twedband import _kernels, instrument
from twedband.core import prepare_pair

from conftest import params_grid, random_series


class TestDiagonalMaps:
    def test_origin(self):
        assert ortho_diag(0, 0) == DiagonalCoord(0, 0)

    def test_row_one_col_two(self):
        assert ortho_diag(1, 2) == DiagonalCoord(3, 2)

    def test_column_zero_edge(self):
        assert ortho_diag(5, 0) == DiagonalCoord(5, 0)

    def test_negative_indices_rejected(self):
        with pytest.raises(InvalidInputError):
            ortho_diag(-1, 0)
        with pytest.raises(InvalidInputError):
            ortho_diag(0, -2)

    def test_row_col_inverse_examples(self):
        assert row_col(DiagonalCoord(3, 2)) == (1, 2)
        assert row_col(DiagonalCoord(0, 0)) == (0, 0)

    def test_position_beyond_diagonal_rejected(self):
        with pytest.raises(InvalidInputError):
            row_col(DiagonalCoord(2, 3))

    def test_round_trip_exhaustive(self):
        for row in range(65):
            for col in range(65):
                assert row_col(ortho_diag(row, col)) == (row, col)

    def test_diagonal_count_formula(self):
        assert diagonal_count(1, 1) == 3
        assert diagonal_count(3, 2) == 6

    def test_lagged_read_offsets_constant_within_each_diagonal(self):
        # Reads of the previous diagonals sit at fixed offsets from the
        # write position: 0 for the row-above cell, -1 for the others.
        for na, nb in [(4, 7), (9, 3), (5, 5)]:
            for d in range(2, na + nb + 1):
                for idx in range(max(1, d - na), min(d, nb - 1) + 1):
                    row, col = d - idx, idx
                    if row < 1:
                        continue
                    assert ortho_diag(row - 1, col).idx - idx == 0
                    assert ortho_diag(row, col - 1).idx - idx == -1
                    assert ortho_diag(row - 1, col - 1).idx - idx == -1


class TestCycleBuffers:
    def test_single_rotation(self):
        p, q, r = np.zeros(3), np.ones(3), np.full(3, 2.0)
        band = DiagonalBand(z=p, z_lag1=q, z_lag2=r)
        cycle_buffers(band)
        assert band.z is r and band.z_lag1 is p and band.z_lag2 is q

    def test_two_rotations(self):
        p, q, r = np.zeros(3), np.ones(3), np.full(3, 2.0)
        band = DiagonalBand(z=p, z_lag1=q, z_lag2=r)
        cycle_buffers(cycle_buffers(band))
        assert band.z is q and band.z_lag1 is r and band.z_lag2 is p

    def test_three_rotations_are_identity(self):
        p, q, r = np.zeros(3), np.ones(3), np.full(3, 2.0)
        band = DiagonalBand(z=p, z_lag1=q, z_lag2=r)
        for _ in range(3):
            cycle_buffers(band)
        assert band.z is p and band.z_lag1 is q and band.z_lag2 is r


def _stepped_solve(a, b, params):
    """Drive the public per-diagonal interface, yielding each diagonal."""
    local = LocalCosts.of_pair(a, b, params.degree)
    band = DiagonalBand.for_pair(a, b)
    yield 0, band
    for d in range(1, a.n + b.n + 1):
        cycle_buffers(band)
        band_step(d, band, a, b, local, params)
        yield d, band


class TestBandStep:
    def test_warmup_state(self, rng):
        a = random_series(rng, n=3)
        b = random_series(rng, n=2, d=a.d)
        band = DiagonalBand.for_pair(a, b)
        assert band.d == 0
        assert band.length == a.n + b.n + 2
        assert band.z[0] == 0.0
        assert np.all(band.z[1:] == np.inf)

    def test_first_diagonal_is_boundary(self, rng):
        a = random_series(rng, n=4)
        b = random_series(rng, n=4, d=a.d)
        for d, band in _stepped_solve(a, b, TwedParams()):
            if d == 1:
                assert band.z[0] == np.inf
                assert band.z[1] == np.inf

    def test_identity_match_cell(self):
        series = TimeSeries([[4.0]], [2.0])
        for d, band in _stepped_solve(series, series, TwedParams()):
            if d == 2:
                assert band.z[1] == 0.0

    def test_not_warmed_up_rejected(self, rng):
        a = random_series(rng, n=2)
        b = random_series(rng, n=2, d=a.d)
        band = DiagonalBand.for_pair(a, b)
        local = LocalCosts.of_pair(a, b, 2)
        with pytest.raises(BandStateError):
            band_step(0, band, a, b, local, TwedParams())

    def test_out_of_order_step_rejected(self, rng):
        a = random_series(rng, n=2)
        b = random_series(rng, n=2, d=a.d)
        band = DiagonalBand.for_pair(a, b)
        local = LocalCosts.of_pair(a, b, 2)
        with pytest.raises(BandStateError):
            band_step(2, band, a, b, local, TwedParams())

    def test_step_past_last_diagonal_rejected(self, rng):
        a = random_series(rng, n=1)
        b = random_series(rng, n=1, d=a.d)
        params = TwedParams()
        local = LocalCosts.of_pair(a, b, params.degree)
        band = DiagonalBand.for_pair(a, b)
        for d in range(1, 3):
            cycle_buffers(band)
            band_step(d, band, a, b, local, params)
        cycle_buffers(band)
        with pytest.raises(BandStateError):
            band_step(3, band, a, b, local, params)

    def test_every_diagonal_matches_reference_antidiagonal(self, rng):
        # The band must reproduce the full matrix, not just its corner.
        for k in range(8):
            params = params_grid()[k % 12]
            a = random_series(rng, n=int(rng.integers(1, 14)))
            b = random_series(rng, n=int(rng.integers(1, 14)), d=a.d)
            matrix = twed_reference_matrix(a, b, params)
            for d, band in _stepped_solve(a, b, params):
                lo = max(0, d - a.n)
                hi = min(d, b.n)
                for idx in range(lo, hi + 1):
                    assert band.z[idx] == matrix[d - idx, idx], (d, idx)


class TestTwedBand:
    def test_identical_series(self, rng):
        series = random_series(rng)
        assert twed_band(series, series, TwedParams(0.1, 0.5, 2)) == 0.0

    def test_single_element_forced_value(self):
        a = TimeSeries([[2.0]], [1.0])
        b = TimeSeries([[5.0]], [1.0])
        assert twed_band(a, b, TwedParams(nu=1.0, lam=0.0, degree=1)) == 3.0

    def test_matches_reference_on_random_pairs(self, rng):
        for k in range(60):
            params = params_grid()[k % 12]
            a = random_series(rng, n=int(rng.integers(2, 60)))
            b = random_series(rng, n=int(rng.integers(2, 60)), d=a.d)
            got = twed_band(a, b, params)
            want = twed_reference(a, b, params)
            assert got == pytest.approx(want, rel=1e-12)

    def test_symmetry_is_exact(self, rng):
        for k in range(20):
            params = params_grid()[k % 12]
            a = random_series(rng)
            b = random_series(rng, d=a.d)
            assert twed_band(a, b, params) == twed_band(b, a, params)

    def test_dimension_mismatch_rejected(self, rng):
        with pytest.raises(InvalidInputError):
            twed_band(random_series(rng, d=1), random_series(rng, d=2), TwedParams())

    def test_exactly_three_band_buffers(self, rng):
        a = random_series(rng, n=50)
        b = random_series(rng, n=30, d=a.d)
        with instrument.audit() as audit:
            twed_band(a, b, TwedParams())
        assert audit.buffer_lengths == [82, 82, 82]
        assert audit.diagonal_steps == a.n + b.n

    def test_memory_stays_linear(self, rng):
        import tracemalloc

        a = random_series(rng, n=256, d=1)
        b = random_series(rng, n=256, d=1)
        params = TwedParams()
        twed_band(a, b, params)  # warm compile caches outside the trace
        tracemalloc.start()
        twed_band(a, b, params)
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        quadratic = (a.n + 1) * (b.n + 1) * 8
        assert peak < quadratic / 4  # nowhere near a full matrix


class _WriteCountingArray(np.ndarray):
    """Array overlay that counts element writes by index."""

    def __new__(cls, base):
        obj = np.asarray(base).view(cls)
        obj.write_counts = {}
        return obj

    def __setitem__(self, key, value):
        self.write_counts[key] = self.write_counts.get(key, 0) + 1
        super().__setitem__(key, value)


class TestWriteDiscipline:
    def test_each_cell_written_exactly_once(self, rng):
        # Run the undecorated kernel with a counting overlay on z.
        for _ in range(4):
            params = TwedParams(0.5, 0.25, 2)
            a = random_series(rng, n=int(rng.integers(1, 10)))
            b = random_series(rng, n=int(rng.integers(1, 10)), d=a.d)
            prep = prepare_pair(a, b, params)
            length = a.n + b.n + 2
            buffers = [np.full(length, np.inf) for _ in range(3)]
            buffers[0][0] = 0.0
            z, z1, z2 = buffers
            total_writes = 0
            for d in range(1, a.n + b.n + 1):
                z, z1, z2 = z2, z, z1
                overlay = _WriteCountingArray(z)
                _kernels.twed_diagonal.py_func(
                    overlay, z1, z2, d,
                    prep.a.values, prep.a.times, prep.a.deletion_costs,
                    prep.b.values, prep.b.times, prep.b.deletion_costs,
                    prep.nu, prep.degree,
                )
                valid = set(range(max(0, d - a.n), min(d, b.n) + 1))
                assert set(overlay.write_counts) == valid, d
                assert all(count == 1 for count in overlay.write_counts.values())
                # Every write lands on the current diagonal: row+col == d.
                assert all(0 <= d - idx <= a.n for idx in overlay.write_counts)
                total_writes += len(overlay.write_counts)
            assert total_writes == (a.n + 1) * (b.n + 1) - 1


class TestLcsBand:
    def test_empty_inputs(self):
        assert lcs_band("", "") == 0
        assert lcs_band("", "XYZ") == 0
        assert lcs_band("XYZ", "") == 0

    def test_identical_sequences(self):
        assert lcs_band("GATTACA", "GATTACA") == 7

    def test_textbook_pair(self):
        assert lcs_band("ABCBDAB", "BDCABA") == 4

    def test_matches_reference_on_random_pairs(self, rng):
        alphabet = np.array(list("ACGT"))
        for _ in range(80):
            s = "".join(rng.choice(alphabet, size=int(rng.integers(0, 120))))
            t = "".join(rng.choice(alphabet, size=int(rng.integers(0, 120))))
            assert lcs_band(s, t) == lcs_reference(s, t)

    def test_three_integer_buffers(self):
        with instrument.audit() as audit:
            lcs_band("ACGTACGT", "TGCA")
        assert audit.buffer_lengths == [14, 14, 14]

    def test_generic_symbol_sequences(self):
        assert lcs_band([1, "x", (2, 3), 4], ["x", (2, 3), 9]) == 2
