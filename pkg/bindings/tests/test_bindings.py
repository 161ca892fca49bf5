import json
import subprocess
import sys
import tracemalloc
from pathlib import Path

import numpy as np
import pytest

import warpband
import twedband
from twedband.io import read_series_file

# Fixtures shared with the core library's suite.
FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"


class TestTwed:
    def test_identical_arrays(self):
        values = np.array([[1.0, 2.0], [3.0, 4.0]])
        times = np.array([0.5, 1.5])
        assert warpband.twed(values, times, values, times) == 0.0

    def test_single_sample_forced_value(self):
        assert warpband.twed([2.0], [1.0], [5.0], [1.0], nu=1.0, lam=0.0, degree=1) == 3.0

    def test_matches_cli_bit_for_bit(self):
        file_a = FIXTURES / "pair_a.csv"
        file_b = FIXTURES / "pair_b.csv"
        result = subprocess.run(
            [sys.executable, "-m", "twedband", "twed", str(file_a), str(file_b), "--json"],
            capture_output=True, text=True, check=True,
        )
        cli_distance = json.loads(result.stdout)["result"]["distance"]
        a = read_series_file(file_a)
        b = read_series_file(file_b)
        bound = warpband.twed(a.values, a.timestamps, b.values, b.timestamps)
        assert bound == cli_distance

    def test_matches_library_on_random_arrays(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n_a, n_b = rng.integers(1, 40, size=2)
            d = int(rng.integers(1, 4))
            values_a = rng.standard_normal((n_a, d))
            values_b = rng.standard_normal((n_b, d))
            times_a = np.cumsum(rng.uniform(0.1, 1.0, n_a))
            times_b = np.cumsum(rng.uniform(0.1, 1.0, n_b))
            params = twedband.TwedParams(0.5, 0.25, 2)
            want = twedband.twed_band(
                twedband.TimeSeries(values_a, times_a),
                twedband.TimeSeries(values_b, times_b),
                params,
            )
            got = warpband.twed(values_a, times_a, values_b, times_b,
                                nu=0.5, lam=0.25, degree=2)
            assert got == want

    def test_timestamp_length_mismatch_names_dimension(self):
        with pytest.raises(ValueError, match="3 timestamps for 2 samples"):
            warpband.twed([[1.0], [2.0]], [0.0, 1.0, 2.0], [1.0], [0.0])

    def test_values_rank_checked(self):
        with pytest.raises(ValueError, match="3 dimensions"):
            warpband.twed(np.zeros((2, 2, 2)), [0.0, 1.0], [1.0], [0.0])

    def test_series_dimension_mismatch_named(self):
        with pytest.raises(ValueError, match="A has d=2, B has d=1"):
            warpband.twed([[1.0, 2.0]], [0.0], [1.0], [0.0])

    def test_validation_does_not_copy_conforming_arrays(self):
        n = 200_000
        values = np.ascontiguousarray(np.random.default_rng(0).random((n, 8)))
        times = np.arange(n, dtype=np.float64)
        big = values.nbytes  # 12.8 MB
        tracemalloc.start()
        series = warpband._as_series(values, times, "series A")
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        assert np.shares_memory(series.values, values)
        assert peak < big / 4  # only O(n) validation scratch allowed


class TestTwedBatch:
    def test_self_batch_of_one(self):
        matrix = warpband.twed_batch([np.array([1.0, 2.0, 3.0])])
        assert matrix.tolist() == [[0.0]]

    def test_symmetric_self_batch(self):
        rng = np.random.default_rng(3)
        series = [rng.random((6, 2)) for _ in range(3)]
        matrix = warpband.twed_batch(series, symmetric=True, workers=1)
        assert matrix.shape == (3, 3)
        assert np.array_equal(matrix, matrix.T)
        assert np.all(matrix.diagonal() == 0.0)

    def test_entries_match_single_pair_calls(self):
        rng = np.random.default_rng(4)
        list_a = [(rng.random((5, 1)), np.arange(5.0)) for _ in range(3)]
        list_b = [(rng.random((7, 1)), np.arange(7.0)) for _ in range(2)]
        matrix = warpband.twed_batch(list_a, list_b, nu=0.1, lam=0.5, degree=1, workers=2)
        for i, (va, ta) in enumerate(list_a):
            for j, (vb, tb) in enumerate(list_b):
                want = warpband.twed(va, ta, vb, tb, nu=0.1, lam=0.5, degree=1)
                assert matrix[i, j] == want

    def test_symmetric_needs_self_batch(self):
        with pytest.raises(twedband.InvalidInputError):
            warpband.twed_batch([np.array([1.0])], [np.array([2.0])], symmetric=True)


class TestLcsLength:
    def test_empty(self):
        assert warpband.lcs_length("", "AB") == 0

    def test_identical(self):
        assert warpband.lcs_length("AAAA", "AAAA") == 4

    def test_textbook_pair(self):
        assert warpband.lcs_length("ABCBDAB", "BDCABA") == 4

    def test_matches_primary_solvers(self):
        rng = np.random.default_rng(5)
        alphabet = np.array(list("ACGT"))
        for _ in range(30):
            s = "".join(rng.choice(alphabet, size=int(rng.integers(0, 80))))
            t = "".join(rng.choice(alphabet, size=int(rng.integers(0, 80))))
            assert warpband.lcs_length(s, t) == twedband.lcs_reference(s, t)


class TestVersionPin:
    def test_version_matches_primary(self):
        assert warpband.__version__ == twedband.__version__
