import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lpextremal.lp_core import (
    DimensionMismatch,
    LpSpace,
    PointSet,
    diameter,
    dual_pairing,
    duality_map,
    lp_distance,
    lp_norm,
)

P_GRID = [1.2, 1.5, 2.0, 3.0, 5.0]
# magnitudes kept away from the subnormal range, where |v|^(p-1) underflows
coords = st.one_of(st.just(0.0), st.floats(1e-6, 100), st.floats(-100, -1e-6))
vectors = arrays(np.float64, st.integers(1, 12), elements=coords)


@pytest.mark.parametrize("p", [1.0, 0.5, -2.0, math.inf, math.nan])
def test_space_rejects_bad_exponents(p):
    with pytest.raises(ValueError):
        LpSpace(p)


@pytest.mark.parametrize("p", [1.01, 1.5, 2.0, 3.0, 17.0])
def test_conjugate_exponent(p):
    s = LpSpace(p)
    assert s.q == pytest.approx(p / (p - 1))
    assert abs(1 / s.p + 1 / s.q - 1) < 1e-12


def test_pointset_validation():
    s = LpSpace(2)
    with pytest.raises(ValueError):
        PointSet(s, np.zeros((0, 2)))
    with pytest.raises(ValueError):
        PointSet(s, [[1.0, math.nan]])
    with pytest.raises(ValueError):
        PointSet(s, [[1.0, 2.0], [3.0]])


class TestNorm:
    @pytest.mark.parametrize("p", P_GRID)
    def test_zero_and_unit(self, p):
        s = LpSpace(p)
        assert lp_norm(np.zeros(4), s) == 0.0
        assert lp_norm(np.eye(4)[0], s) == 1.0

    def test_pair_euclidean(self):
        assert lp_norm([1.0, 1.0], LpSpace(2)) == pytest.approx(1.41421356, abs=1e-8)

    def test_large_exponent_no_overflow(self):
        assert lp_norm([1e200, 1e200], LpSpace(50)) == pytest.approx(1e200 * 2 ** (1 / 50))


class TestDistance:
    def test_examples(self):
        e1, e2 = np.eye(2)
        assert lp_distance(e1, e1, LpSpace(3)) == 0.0
        assert lp_distance(e1, e2, LpSpace(3)) == pytest.approx(1.259921, abs=1e-6)
        assert lp_distance([2.0, 0.0], [0.0, 0.0], LpSpace(1.5)) == pytest.approx(2.0)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lp_distance([1.0], [1.0, 2.0], LpSpace(2))

    @settings(max_examples=200)
    @given(st.integers(1, 6), st.sampled_from(P_GRID), st.randoms(use_true_random=False))
    def test_metric_axioms(self, dim, p, r):
        rng = np.random.default_rng(r.randint(0, 2**31))
        u, v, w = rng.standard_normal((3, dim)) * 10
        s = LpSpace(p)
        assert lp_distance(u, v, s) == pytest.approx(lp_distance(v, u, s))
        assert lp_distance(u, w, s) <= lp_distance(u, v, s) + lp_distance(v, w, s) + 1e-12


class TestDiameter:
    def test_examples(self):
        s = LpSpace(3)
        assert diameter(PointSet(s, [[1.0, 2.0]])) == 0.0
        assert diameter(PointSet(s, np.eye(5))) == pytest.approx(2 ** (1 / 3))
        for p in P_GRID:
            assert diameter(PointSet(LpSpace(p), [[-1.0, 0.0], [1.0, 0.0]])) == pytest.approx(2.0)

    @settings(max_examples=50)
    @given(st.sampled_from(P_GRID), st.floats(0.1, 10), st.randoms(use_true_random=False))
    def test_translation_and_scaling(self, p, scale, r):
        rng = np.random.default_rng(r.randint(0, 2**31))
        X = rng.standard_normal((7, 4))
        s = LpSpace(p)
        d = diameter(PointSet(s, X))
        assert diameter(PointSet(s, X + rng.standard_normal(4))) == pytest.approx(d, rel=1e-12)
        assert diameter(PointSet(s, scale * X)) == pytest.approx(scale * d, rel=1e-12)


class TestDualityMap:
    def test_examples(self):
        v = np.array([0.3, -2.0, 0.0, 7.0])
        np.testing.assert_allclose(duality_map(v, LpSpace(2)), v, rtol=1e-15)
        np.testing.assert_allclose(duality_map([2.0, -1.0, 0.0], LpSpace(3)), [4.0, -1.0, 0.0])
        for p in P_GRID:
            np.testing.assert_array_equal(duality_map(np.eye(3)[0], LpSpace(p)), np.eye(3)[0])

    @settings(max_examples=300)
    @given(vectors, st.sampled_from(P_GRID))
    def test_involution(self, v, p):
        s = LpSpace(p)
        back = duality_map(duality_map(v, s), s.conjugate())
        np.testing.assert_allclose(back, v, rtol=1e-10, atol=1e-300)

    @settings(max_examples=300)
    @given(vectors, st.sampled_from(P_GRID))
    def test_normalization_chain(self, v, p):
        s = LpSpace(p)
        n = lp_norm(v, s)
        if n == 0:
            return
        Jv = duality_map(v, s)
        assert dual_pairing(v, Jv) == pytest.approx(n**p, rel=1e-10)
        assert lp_norm(Jv, s.conjugate()) == pytest.approx(n ** (p - 1), rel=1e-10)


class TestPairing:
    def test_examples(self):
        assert dual_pairing([1.0, 2.0], [0.0, 0.0]) == 0.0
        assert dual_pairing(np.eye(2)[0], np.eye(2)[0]) == 1.0
        assert dual_pairing([1.0, 2.0], [3.0, -1.0]) == 1.0

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dual_pairing([1.0], [1.0, 2.0])

    @settings(max_examples=300)
    @given(st.integers(1, 10), st.sampled_from(P_GRID), st.randoms(use_true_random=False))
    def test_holder(self, dim, p, r):
        rng = np.random.default_rng(r.randint(0, 2**31))
        v, g = rng.standard_normal((2, dim)) * 5
        s = LpSpace(p)
        assert abs(dual_pairing(v, g)) <= lp_norm(v, s) * lp_norm(g, s.conjugate()) + 1e-10
