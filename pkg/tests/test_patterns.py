import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import BI_CLASSES, TRI_CLASSES
from entrokit import (
    InsufficientDataError,
    decode_dispersion,
    decode_freq_dispersion,
    embedded_count,
    encode_dispersion,
    encode_freq_dispersion,
    encode_permutation,
    forbidden_fraction,
    histogram,
)


def _pattern_counter(codes, decode, c, m):
    rows = decode(codes, c, m)
    return Counter(oracles.key_of(row) for row in rows)


class TestDispersionEncoding:
    def test_walkthrough_pattern_counts(self):
        codes = encode_dispersion(TRI_CLASSES, c=3, m=2, d=1)
        assert codes.size == 9
        got = _pattern_counter(codes, decode_dispersion, 3, 2)
        assert got == {
            "2|2": 1,
            "2|1": 2,
            "1|1": 2,
            "1|2": 2,
            "2|3": 1,
            "3|3": 1,
        }

    def test_constant_classes(self):
        codes = encode_dispersion([1, 1, 1, 1], c=2, m=3, d=1)
        assert codes.size == 2
        assert decode_dispersion(codes, 2, 3).tolist() == [[1, 1, 1], [1, 1, 1]]

    def test_delay_skips_samples(self):
        codes = encode_dispersion([1, 2, 3, 4], c=4, m=2, d=2)
        assert decode_dispersion(codes, 4, 2).tolist() == [[1, 3], [2, 4]]

    def test_code_formula(self):
        # (v1-1)*c + (v2-1) for m=2
        codes = encode_dispersion([2, 3], c=3, m=2, d=1)
        assert codes.tolist() == [1 * 3 + 2]

    def test_too_short_rejected(self):
        with pytest.raises(InsufficientDataError):
            encode_dispersion([1, 2], c=3, m=3, d=1)

    def test_class_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="class"):
            encode_dispersion([1, 4], c=3, m=2, d=1)
        with pytest.raises(ValueError, match="class"):
            encode_dispersion([0, 1], c=3, m=2, d=1)


class TestFreqDispersionEncoding:
    def test_walkthrough_difference_patterns(self):
        codes = encode_freq_dispersion(BI_CLASSES, c=2, m=3, d=1)
        rows = decode_freq_dispersion(codes, 2, 3)
        assert rows.tolist() == [
            [0, 1],
            [1, 0],
            [0, -1],
            [-1, 0],
            [0, 0],
            [0, 1],
            [1, 0],
            [0, 0],
        ]

    def test_extreme_differences(self):
        codes = encode_freq_dispersion([1, 3, 1, 3], c=3, m=2, d=1)
        assert decode_freq_dispersion(codes, 3, 2).tolist() == [[2], [-2], [2]]

    def test_constant_classes_give_zero_vectors(self):
        codes = encode_freq_dispersion([2, 2, 2, 2], c=3, m=3, d=1)
        assert decode_freq_dispersion(codes, 3, 3).tolist() == [[0, 0], [0, 0]]

    def test_needs_order_two(self):
        with pytest.raises(ValueError, match="m"):
            encode_freq_dispersion([1, 2, 3], c=3, m=1, d=1)


class TestPermutationEncoding:
    def test_identity_window_is_code_zero(self):
        assert encode_permutation([1.0, 2.0, 3.0], m=3).tolist() == [0]

    def test_single_window_example(self):
        # samples (3, 1, 2): ascending order visits indices 1, 2, 0
        assert encode_permutation([3.0, 1.0, 2.0], m=3).tolist() == [3]

    def test_ties_keep_first_occurrence_first(self):
        flat = encode_permutation([5.0, 5.0], m=2).tolist()
        assert flat == [0]

    def test_six_sample_walkthrough(self):
        codes = encode_permutation([1.0, 2.0, 3.0, 2.1, 1.0, 4.0], m=3)
        assert codes.size == 4
        assert len(set(codes.tolist())) == 4

    def test_codes_cover_alphabet(self):
        rng = np.random.default_rng(5)
        codes = encode_permutation(rng.random(4000), m=3)
        assert sorted(set(codes.tolist())) == list(range(6))

    def test_too_short_rejected(self):
        with pytest.raises(InsufficientDataError):
            encode_permutation([1.0, 2.0], m=4)


class TestHistogram:
    def test_walkthrough_probabilities(self):
        codes = encode_dispersion(TRI_CLASSES, c=3, m=2, d=1)
        hist = histogram(codes, alphabet_size=9)
        assert hist.total == 9
        assert hist.occupied == 6
        got = sorted(hist.probabilities())
        want = sorted([2 / 9, 2 / 9, 2 / 9, 1 / 9, 1 / 9, 1 / 9])
        assert got == pytest.approx(want, abs=0)

    def test_difference_walkthrough_probabilities(self):
        codes = encode_freq_dispersion(BI_CLASSES, c=2, m=3, d=1)
        hist = histogram(codes, alphabet_size=9)
        assert hist.occupied == 5
        assert sorted(hist.probabilities()) == pytest.approx(
            sorted([1 / 8, 1 / 8, 2 / 8, 2 / 8, 2 / 8]), abs=0
        )

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="no patterns"):
            histogram([], alphabet_size=4)

    def test_out_of_alphabet_rejected(self):
        with pytest.raises(ValueError, match="alphabet"):
            histogram([4], alphabet_size=4)
        with pytest.raises(ValueError, match="alphabet"):
            histogram([-1], alphabet_size=4)

    def test_probabilities_sum_to_one(self):
        hist = histogram([0, 0, 1, 5], alphabet_size=6)
        assert math.fsum(hist.probabilities()) == pytest.approx(1.0, abs=1e-15)

    def test_sparse_storage_above_dense_limit(self):
        # c=10, m=8 has an alphabet of 10^8 cells, too big to materialize
        rng = np.random.default_rng(0)
        u = rng.integers(1, 11, size=60)
        codes = encode_dispersion(u, c=10, m=8, d=1)
        hist = histogram(codes, alphabet_size=10**8)
        assert isinstance(hist.counts, dict)
        assert hist.total == 53
        assert math.fsum(hist.probabilities()) == pytest.approx(1.0, abs=1e-12)


class TestForbiddenFraction:
    def test_walkthrough(self):
        codes = encode_dispersion(TRI_CLASSES, c=3, m=2, d=1)
        assert forbidden_fraction(histogram(codes, 9)) == pytest.approx(1 / 3)

    def test_fully_occupied(self):
        assert forbidden_fraction(histogram(list(range(4)), 4)) == 0.0

    def test_single_pattern(self):
        assert forbidden_fraction(histogram([3, 3, 3], 9)) == pytest.approx(8 / 9)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

embeddings = st.tuples(
    st.integers(min_value=2, max_value=4),  # m
    st.integers(min_value=2, max_value=6),  # c
    st.integers(min_value=1, max_value=3),  # d
)


@st.composite
def class_series(draw):
    m, c, d = draw(embeddings)
    n = draw(st.integers(min_value=(m - 1) * d + 1, max_value=200))
    u = draw(
        st.lists(st.integers(min_value=1, max_value=c), min_size=n, max_size=n)
    )
    return u, m, c, d


@st.composite
def float_series(draw):
    m = draw(st.integers(min_value=2, max_value=5))
    d = draw(st.integers(min_value=1, max_value=3))
    n = draw(st.integers(min_value=(m - 1) * d + 1, max_value=200))
    xs = draw(
        st.lists(
            st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
            min_size=n,
            max_size=n,
        )
    )
    return xs, m, d


@given(class_series())
@settings(max_examples=80, deadline=None)
def test_window_count_formula(case):
    u, m, c, d = case
    expected = len(u) - (m - 1) * d
    assert embedded_count(len(u), m, d) == expected
    assert encode_dispersion(u, c, m, d).size == expected
    if m >= 2:
        assert encode_freq_dispersion(u, c, m, d).size == expected
    assert encode_permutation(np.asarray(u, dtype=float), m, d).size == expected


@given(class_series())
@settings(max_examples=80, deadline=None)
def test_dispersion_counts_match_string_key_oracle(case):
    u, m, c, d = case
    codes = encode_dispersion(u, c, m, d)
    assert _pattern_counter(codes, decode_dispersion, c, m) == (
        oracles.dispersion_key_counts(u, m, d)
    )


@given(class_series())
@settings(max_examples=80, deadline=None)
def test_freq_dispersion_counts_match_string_key_oracle(case):
    u, m, c, d = case
    codes = encode_freq_dispersion(u, c, m, d)
    assert _pattern_counter(codes, decode_freq_dispersion, c, m) == (
        oracles.freq_dispersion_key_counts(u, m, d)
    )


@given(float_series())
@settings(max_examples=80, deadline=None)
def test_permutation_codes_match_scalar_oracle(case):
    xs, m, d = case
    codes = encode_permutation(xs, m, d)
    expected = [
        oracles.lehmer_code(oracles.ordinal_pattern(w))
        for w in oracles.embed(xs, m, d)
    ]
    assert codes.tolist() == expected


@given(class_series())
@settings(max_examples=80, deadline=None)
def test_difference_patterns_are_differences_of_dispersion_patterns(case):
    u, m, c, d = case
    disp = decode_dispersion(encode_dispersion(u, c, m, d), c, m)
    freq = decode_freq_dispersion(encode_freq_dispersion(u, c, m, d), c, m)
    assert np.array_equal(np.diff(disp, axis=1), freq)


@given(class_series(), st.integers(min_value=1, max_value=3))
@settings(max_examples=80, deadline=None)
def test_difference_patterns_invariant_under_class_translation(case, shift):
    u, m, c, d = case
    shifted = [v + shift for v in u]
    base = encode_freq_dispersion(u, c, m, d)
    moved = encode_freq_dispersion(shifted, c + shift, m, d)
    # codes live in different alphabets, so compare decoded vectors padded
    # to the wider difference range
    base_rows = decode_freq_dispersion(base, c, m)
    moved_rows = decode_freq_dispersion(moved, c + shift, m)
    assert np.array_equal(base_rows, moved_rows)


@given(class_series())
@settings(max_examples=60, deadline=None)
def test_alphabet_sizes(case):
    u, m, c, d = case
    disp = histogram(encode_dispersion(u, c, m, d), c**m)
    assert disp.alphabet_size == c**m
    freq = histogram(encode_freq_dispersion(u, c, m, d), (2 * c - 1) ** (m - 1))
    assert freq.alphabet_size == (2 * c - 1) ** (m - 1)
    perm = histogram(
        encode_permutation(np.asarray(u, dtype=float), m, d), math.factorial(m)
    )
    assert perm.alphabet_size == math.factorial(m)
