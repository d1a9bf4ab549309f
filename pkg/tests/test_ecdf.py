import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sampver import ecdf, rng
from sampver.bounds import dkw_samples
from sampver.ecdf import build, ecdf_eval, probability_nonpositive, quantile
from sampver.errors import InputError, ParameterError

from oracles import ecdf_count

values = st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=60)
probs = st.floats(0.0, 1.0, exclude_min=True)


class TestBuild:
    def test_sorted(self):
        s = build([3, 1, 2])
        assert s.values.tolist() == [1, 2, 3] and s.count == 3

    def test_single(self):
        assert build([5]).values.tolist() == [5]

    def test_duplicates(self):
        s = build([1, 1, 1])
        assert s.values.tolist() == [1, 1, 1] and s.count == 3

    def test_immutable(self):
        s = build([2, 1])
        with pytest.raises(ValueError):
            s.values[0] = 7

    @pytest.mark.parametrize("bad", [[], [1.0, float("nan")], [float("inf")]])
    def test_rejects(self, bad):
        with pytest.raises(InputError):
            build(bad)


class TestEval:
    def test_examples(self):
        assert ecdf_eval(build([-2, -1, 0, 1]), 0) == 0.75
        assert ecdf_eval(build([1, 2, 3, 4, 5]), 3) == 0.6
        s = build([4, -7, 2.5])
        assert ecdf_eval(s, s.values[-1]) == 1.0
        assert ecdf_eval(s, float("inf")) == 1.0
        assert ecdf_eval(s, -8) == 0.0

    @given(values, st.floats(-2e6, 2e6, allow_nan=False))
    def test_matches_sorting_oracle(self, vals, y):
        assert ecdf_eval(build(vals), y) == ecdf_count(vals, y) / len(vals)

    def test_probability_nonpositive(self):
        assert probability_nonpositive(build([-3, -1, 2])) == pytest.approx(2 / 3)
        assert probability_nonpositive(build([-1, -2])) == 1.0
        assert probability_nonpositive(build([1, 2])) == 0.0
        assert probability_nonpositive(build([0.0])) == 1.0


class TestQuantile:
    @pytest.mark.parametrize("p, q", [(0.8, 4), (1.0, 5), (0.5, 3), (0.2, 1), (0.21, 2)])
    def test_examples(self, p, q):
        assert quantile(build([1, 2, 3, 4, 5]), p) == q

    def test_rounding_boundary(self):
        # 0.7 * 10 == 7.000000000000001 in binary; must still pick the 7th value
        s = build(np.arange(1, 11))
        assert quantile(s, 0.7) == 7
        assert quantile(s, 1 - 0.3) == 7

    @pytest.mark.parametrize("p", [0.0, -0.1, 1.01])
    def test_range(self, p):
        with pytest.raises(ParameterError):
            quantile(build([1, 2]), p)

    @given(values, probs)
    def test_infimum_definition(self, vals, p):
        s = build(vals)
        q = quantile(s, p)
        assert ecdf_eval(s, q) >= p
        below = s.values[s.values < q]
        if below.size:
            assert ecdf_eval(s, below[-1]) < p

    @given(values, probs)
    def test_bisection_agrees(self, vals, p):
        s = build(vals)
        assert quantile(s, p, method="bisect") == quantile(s, p)

    def test_bisection_with_tolerance_within_spacing(self):
        s = build(np.linspace(0, 1, 101) ** 2)
        for p in np.linspace(0.01, 1, 37):
            exact = quantile(s, p)
            approx = quantile(s, p, method="bisect", tol=1e-6)
            assert exact <= approx <= exact + 1e-6


class TestAlgebra:
    @given(values, st.data())
    def test_galois_connection(self, vals, data):
        s = build(vals)
        grid = np.linspace(0, 1, 51)[1:]
        for y in set(vals):
            for p in grid:
                assert (quantile(s, p) <= y) == (p <= ecdf_eval(s, y))

    @given(values)
    def test_right_continuous_steps(self, vals):
        s = build(vals)
        for v in s.values:
            left = ecdf_eval(s, v - 1e-12 * max(1.0, abs(v)))
            assert ecdf_eval(s, v) > left or left == ecdf_eval(s, v)
            assert ecdf_eval(s, v) == ecdf_count(vals, v) / len(vals)

    @given(values, st.randoms())
    def test_permutation_invariance(self, vals, rnd):
        shuffled = list(vals)
        rnd.shuffle(shuffled)
        a, b = build(vals), build(shuffled)
        np.testing.assert_array_equal(a.values, b.values)
        for p in (0.1, 0.5, 0.99, 1.0):
            assert quantile(a, p) == quantile(b, p)


def test_dkw_coverage():
    n = dkw_samples(0.05, 0.05)
    assert n == 738
    failures = sum(
        ecdf.sup_error(build(rng.uniform(seed, 0, n)), lambda v: v) > 0.05
        for seed in range(400))
    assert failures <= 40


def test_sup_error_simple():
    # samples at 0.25 and 0.75 against U(0,1): worst gap 0.25
    assert ecdf.sup_error(build([0.25, 0.75]), lambda v: v) == pytest.approx(0.25)
