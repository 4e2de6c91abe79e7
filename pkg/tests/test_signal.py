"""Token signal containers and mean-centering."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specdetect import (
    CenteredSignal,
    EmptySignal,
    InvalidConfig,
    TokenSignal,
    center,
)

finite = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False, width=64
)
value_lists = st.lists(finite, min_size=1, max_size=64)


def sig(values, **kw):
    return TokenSignal(values=np.asarray(values, dtype=np.float64), **kw)


class TestCenter:
    def test_two_token_example(self):
        c = center(sig([-1.0, -3.0]))
        assert c.values.tolist() == [1.0, -1.0]
        assert c.original_mean == -2.0

    def test_single_token(self):
        c = center(sig([5.0]))
        assert c.values.tolist() == [0.0]
        assert c.original_mean == 5.0

    def test_four_token_example(self):
        c = center(sig([2.0, 4.0, 0.0, 2.0]))
        assert c.values.tolist() == [0.0, 2.0, -2.0, 0.0]
        assert c.original_mean == 2.0

    def test_constant_signal(self):
        c = center(sig([7.0] * 6))
        assert np.all(c.values == 0.0)
        assert c.original_mean == 7.0

    @given(value_lists)
    def test_zero_sum(self, values):
        c = center(sig(values))
        assert abs(float(np.sum(c.values))) <= 1e-9 * len(values)

    @given(value_lists)
    def test_idempotent(self, values):
        once = center(sig(values))
        twice = center(sig(once.values))
        np.testing.assert_allclose(twice.values, once.values, rtol=0, atol=1e-9)
        assert abs(twice.original_mean) <= 1e-9

    @given(value_lists, st.floats(min_value=-1e3, max_value=1e3, width=64))
    def test_translation_invariance(self, values, shift):
        base = center(sig(values)).values
        moved = center(sig(np.asarray(values) + shift)).values
        np.testing.assert_allclose(moved, base, rtol=0, atol=1e-9 * max(1.0, abs(shift)))

    @given(value_lists)
    def test_length_preserved(self, values):
        assert len(center(sig(values)).values) == len(values)

    def test_mean_restores_signal(self):
        values = np.array([0.25, -1.5, 3.0, 0.125])
        c = center(sig(values))
        np.testing.assert_array_equal(c.values + c.original_mean, values)


class TestTokenSignalValidation:
    def test_empty_values_rejected(self):
        with pytest.raises(EmptySignal):
            sig([])

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidConfig):
            sig([1.0, float("nan")])
        with pytest.raises(InvalidConfig):
            sig([float("inf")])

    def test_token_length_mismatch(self):
        with pytest.raises(InvalidConfig):
            sig([1.0, 2.0], tokens=("a",))

    def test_rank_length_mismatch(self):
        with pytest.raises(InvalidConfig):
            sig([1.0, 2.0], ranks=(1.0, 2.0, 3.0))

    def test_rank_below_one(self):
        with pytest.raises(InvalidConfig):
            sig([1.0], ranks=(0.5,))

    def test_real_ranks_accepted(self):
        s = sig([1.0, -1.0], ranks=(np.e, 2.0))
        assert s.ranks is not None
        assert s.ranks[0] == pytest.approx(np.e)

    def test_negative_entropy_rejected(self):
        with pytest.raises(InvalidConfig):
            sig([1.0], entropies=(-0.1,))

    def test_entropy_length_mismatch(self):
        with pytest.raises(InvalidConfig):
            sig([1.0, 2.0], entropies=(0.5,))

    def test_candidate_length_mismatch(self):
        with pytest.raises(InvalidConfig):
            sig([1.0, 2.0], top_candidates=((("a", -1.0),),))

    def test_empty_candidate_position_rejected(self):
        with pytest.raises(InvalidConfig):
            sig([1.0], top_candidates=((),))

    def test_unsorted_candidates_rejected(self):
        with pytest.raises(InvalidConfig):
            sig([1.0], top_candidates=((("a", -2.0), ("b", -1.0)),))

    def test_tied_candidates_accepted(self):
        s = sig([1.0], top_candidates=((("a", -1.0), ("b", -1.0)),))
        assert len(s.top_candidates[0]) == 2

    def test_len(self):
        assert len(sig([1.0, 2.0, 3.0])) == 3


class TestCenteredSignalValidation:
    def test_nonzero_sum_rejected(self):
        with pytest.raises(InvalidConfig):
            CenteredSignal(values=np.array([1.0, 1.0]), original_mean=0.0)

    def test_empty_rejected(self):
        with pytest.raises(EmptySignal):
            CenteredSignal(values=np.array([]), original_mean=0.0)

    def test_valid_construction(self):
        c = CenteredSignal(values=np.array([1.0, -1.0]), original_mean=3.0)
        assert c.original_mean == 3.0
