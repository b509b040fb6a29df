import math

import numpy as np
import pytest

from intcomplexity.analysis import (
    FIGURE_COLUMNS,
    BadFactorization,
    SequenceTruncated,
    bad_factorizations,
    coincidence_stats,
    figure_data,
    great_complexity_sequence,
    mersenne_check,
    midline_fraction,
    ratio_extremes,
    selfridge_check,
    two_pow_27_identity,
)
from intcomplexity.core import compute_table
from intcomplexity.errors import DomainError, RangeError
from intcomplexity.expressions import value, weight

from golden import GREAT_COMPLEXITY, GREAT_COMPLEXITY_TAIL, L_EXCEPTIONS_220


@pytest.fixture(scope="module")
def bad60(t5000):
    return bad_factorizations(t5000, 60)


class TestBadFactorizations:
    def test_one_times_n(self, bad60):
        pairs = {(b.m, b.n) for b in bad60}
        assert all((1, n) in pairs for n in range(2, 61))

    def test_2_23(self, bad60):
        hit = [b for b in bad60 if (b.m, b.n) == (2, 23)]
        assert hit == [BadFactorization(2, 23, 1)]

    def test_sorted_and_symmetric(self, bad60):
        assert bad60 == sorted(bad60)
        pairs = {(b.m, b.n) for b in bad60 if b.m > 1 and b.n > 1}
        assert pairs == {(n, m) for m, n in pairs}

    def test_against_direct_scan(self, t5000, bad60):
        v = t5000.values.astype(int)
        expected = [
            (m, n, v[m] + v[n] - v[m * n])
            for m in range(1, 61)
            for n in range(1, 61)
            if v[m * n] < v[m] + v[n]
        ]
        assert [(b.m, b.n, b.deficit) for b in bad60] == expected
        assert all(b.deficit >= 1 for b in bad60)

    def test_heavy_columns(self, bad60):
        per_column = {}
        for b in bad60:
            if b.m > 1:
                per_column[b.n] = per_column.get(b.n, 0) + 1
        typical = np.median(list(per_column.values()))
        for n in (23, 41, 59):
            assert per_column[n] > typical

    def test_range(self, t5000):
        with pytest.raises(RangeError):
            bad_factorizations(t5000, 71)


class TestGreatComplexity:
    def test_known_list(self, big):
        got = [e.n_k for e in great_complexity_sequence(big, 35)]
        assert got == GREAT_COMPLEXITY

    def test_recomputed_tail(self, big):
        got = [e.n_k for e in great_complexity_sequence(big, 40)]
        assert got[35:] == GREAT_COMPLEXITY_TAIL

    def test_minimal(self, big):
        v = big.values
        for e in great_complexity_sequence(big, 40):
            assert v[e.n_k] == e.k
            assert not np.any(v[1 : e.n_k] == e.k)

    def test_truncation_warns(self, t5000):
        with pytest.warns(SequenceTruncated):
            seq = great_complexity_sequence(t5000, 40)
        assert len(seq) == 29


class TestCoincidence:
    def test_exceptions_220(self, t5000):
        equal, exc = coincidence_stats(t5000, 220)
        assert exc == L_EXCEPTIONS_220
        assert equal == 220 - 24

    def test_count_1000(self, t5000, big_sieve):
        equal, exc = coincidence_stats(t5000, 1000, big_sieve)
        assert equal == 771
        assert {L - c for _, c, L in exc} <= {1, 2, 3}

    def test_none_below_46(self, t5000):
        assert coincidence_stats(t5000, 45)[1] == []

    def test_range(self, t20):
        with pytest.raises(RangeError):
            coincidence_stats(t20, 21)


class TestPowersOfTwo:
    def test_selfridge(self, big):
        rows = selfridge_check(big)
        assert [r[0] for r in rows] == list(range(1, 18))
        assert rows[0] == (1, 2, 2, True) and rows[1] == (2, 4, 4, True)
        assert all(ok for *_, ok in rows)

    def test_mersenne(self, big):
        rows = mersenne_check(big)
        assert rows[0] == (2, 3, 3, True)
        assert [r[0] for r in rows] == list(range(2, 18))
        assert all(ok for *_, ok in rows)

    def test_two_pow_27(self):
        full, minus_one = two_pow_27_identity()
        assert (value(full), weight(full)) == (2**27, 57)
        assert (value(minus_one), weight(minus_one)) == (2**27 - 1, 56)


class TestRatios:
    def test_single_point(self, t20):
        r = ratio_extremes(t20, 2, 2)
        assert r.n == 2 and r.ratio == pytest.approx(2 / math.log(2))

    def test_window_bounds(self, big):
        lo, hi = 3 / math.log(3), 3 / math.log(2)
        for start, stop in [(2, 100), (1000, 5000), (100000, 200000)]:
            r = ratio_extremes(big, start, stop)
            assert lo <= r.ratio <= hi
            assert start <= r.n <= stop

    def test_every_ratio_bounded(self, big):
        ns = np.arange(2, big.max_n + 1)
        ratios = big.values[2:] / np.log(ns)
        assert ratios.max() <= 3 / math.log(2)
        assert ratios.min() >= 3 / math.log(3) - 1e-12

    def test_bad_window(self, t20):
        with pytest.raises(RangeError):
            ratio_extremes(t20, 5, 2)
        with pytest.raises(RangeError):
            ratio_extremes(t20, 2, 21)

    def test_midline_fraction_reported(self, t5000):
        f = midline_fraction(t5000)
        assert 0.0 <= f <= 1.0


class TestFigures:
    def test_figure2_row(self, t20):
        rows = figure_data(t20, 2, 5)
        assert len(rows) == 5
        n, c, lower, mid, upper = rows[2]
        assert (n, c) == (3, 3)
        assert lower == pytest.approx(3.0)
        assert mid == pytest.approx(3.962406, abs=1e-6)
        assert upper == pytest.approx(4.754888, abs=1e-6)

    def test_figure2_under_upper_curve(self, t5000):
        rows = figure_data(t5000, 2, 2000)[1:]  # both curves vanish at n = 1
        assert all(c <= upper + 1e-9 and c >= lower - 1e-9 for _, c, lower, _, upper in rows)

    def test_figure1(self, t5000):
        rows = figure_data(t5000, 1, 60)
        assert (1, 2, 1) in rows
        assert (2, 23, 1) in rows
        assert all(len(r) == len(FIGURE_COLUMNS[1]) for r in rows)

    def test_unknown_figure(self, t20):
        with pytest.raises(DomainError):
            figure_data(t20, 3, 5)

    def test_columns(self):
        assert FIGURE_COLUMNS[2] == ("n", "complexity", "lower", "midline", "upper")


def test_scans_are_deterministic():
    a, b = compute_table(900), compute_table(900)
    assert bad_factorizations(a, 30) == bad_factorizations(b, 30)
