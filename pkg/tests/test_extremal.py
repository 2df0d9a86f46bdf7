import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpextremal.chebyshev import chebyshev_center
from lpextremal.extremal import (
    DegenerateSet,
    basis_radius_oracle,
    chernykh_check,
    extremality_report,
    generate_basis_set,
    generate_hadamard_set,
    gulevich_gap,
    jung_constant,
)
from lpextremal.lp_core import LpSpace, PointSet, distance_matrix, lp_norm
from oracles import basis_radius_golden

# frozen from basis_radius_golden(n, 3)
BASIS_P3 = {64: 0.9239407417859207, 256: 0.9603156673792829}


class TestJung:
    def test_paper_values(self):
        assert jung_constant(LpSpace(2)).value == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        assert jung_constant(LpSpace(1.5)).value == pytest.approx(0.79370053, abs=1e-8)
        assert jung_constant(LpSpace(4)).value == pytest.approx(0.84089642, abs=1e-8)

    @pytest.mark.parametrize("p", [1.01, 1.2, 1.5, 1.9, 2.0])
    def test_conjugate_symmetry(self, p):
        s = LpSpace(p)
        assert jung_constant(s).value == pytest.approx(jung_constant(s.conjugate()).value, abs=1e-15)

    def test_in_range_and_increasing_above_two(self):
        ps = np.linspace(2.0, 30.0, 50)
        vals = [jung_constant(LpSpace(p)).value for p in ps]
        assert all(0.5 < v < 1 for v in vals)
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestReport:
    def test_symmetric_pair(self):
        rep = extremality_report(PointSet(LpSpace(2), [[-1.0], [1.0]]))
        assert (rep.diameter, rep.radius) == pytest.approx((2.0, 1.0))
        assert rep.ratio == pytest.approx(1 / math.sqrt(2))
        assert rep.gap == pytest.approx(math.sqrt(2) - 1)

    def test_basis_p3(self):
        rep = extremality_report(generate_basis_set(3, LpSpace(3)))
        assert rep.jung * rep.diameter == pytest.approx(1.0)
        assert rep.ratio == pytest.approx(0.700, abs=5e-4)

    def test_gap_basis_64(self):
        gap = gulevich_gap(generate_basis_set(64, LpSpace(3)))
        assert gap == pytest.approx(1 - BASIS_P3[64], abs=1e-9)
        assert gap == pytest.approx(0.076, abs=5e-4)

    def test_degenerate(self):
        with pytest.raises(DegenerateSet):
            extremality_report(PointSet(LpSpace(2), [[1.0, 1.0], [1.0, 1.0]]))
        with pytest.raises(DegenerateSet):
            gulevich_gap(PointSet(LpSpace(3), [[0.0]]))


class TestChernykh:
    def test_examples(self):
        for p in [1.3, 1.5, 2.0]:
            assert chernykh_check(1.7, 1.7, LpSpace(p)) == 0.0
        for p in [1.3, 2.0, 4.0]:
            assert chernykh_check(0.0, 0.0, LpSpace(p)) == 0.0
        # second branch at a = b: residual is (2p - 2)|a|^p, not 0
        assert chernykh_check(1.7, 1.7, LpSpace(4)) == pytest.approx(6 * 1.7**4)
        for a, b in [(3.0, -1.0), (-0.2, 5.5), (0.0, 2.0)]:
            assert chernykh_check(a, b, LpSpace(2)) == 0.0
        assert chernykh_check(1.0, -1.0, LpSpace(4)) == pytest.approx(6.0)

    @settings(max_examples=500)
    @given(
        st.floats(-10, 10),
        st.floats(-10, 10),
        st.sampled_from([1.1, 1.5, 1.9, 2.0, 3.0, 4.0, 8.0]),
    )
    def test_nonnegative(self, a, b, p):
        scale = max(1.0, abs(a) ** p + abs(b) ** p)
        assert chernykh_check(a, b, LpSpace(p)) >= -1e-10 * scale

    @pytest.mark.parametrize("p", [2.2, 2.5, 2.9])
    def test_second_branch_fails_between_two_and_three(self, p):
        # at a = -b the inequality reads 2 + 2p <= 2^p, false for 2 < p < 3
        assert chernykh_check(1.0, -1.0, LpSpace(p)) == pytest.approx(2**p - 2 - 2 * p)
        assert chernykh_check(1.0, -1.0, LpSpace(p)) < 0

    def test_vectorized(self):
        a = np.array([1.0, 2.0])
        out = chernykh_check(a, -a, LpSpace(4))
        assert out.shape == (2,)
        assert out[0] == pytest.approx(6.0)


class TestBasisFamily:
    def test_rejects_small(self):
        with pytest.raises(ValueError):
            generate_basis_set(1, LpSpace(2))

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_equidistant(self, p):
        A = generate_basis_set(7, LpSpace(p))
        D = distance_matrix(A)
        off = D[~np.eye(7, dtype=bool)]
        np.testing.assert_allclose(off, 2 ** (1 / p), rtol=1e-15)

    def test_two_points_ratio(self):
        assert extremality_report(generate_basis_set(2, LpSpace(2))).ratio == pytest.approx(0.7071, abs=1e-4)

    def test_hilbert_ten(self):
        assert chebyshev_center(generate_basis_set(10, LpSpace(2))).radius == pytest.approx(0.94868, abs=1e-5)

    def test_p3_256_ratio(self):
        assert basis_radius_oracle(256, LpSpace(3)) == pytest.approx(0.96, abs=1e-3)

    @pytest.mark.parametrize("p", [2.0, 3.0, 4.0, 1.5])
    @pytest.mark.parametrize("n", [2, 3, 5, 9, 16])
    def test_closed_form_matches_golden_and_solver(self, n, p):
        s = LpSpace(p)
        closed = basis_radius_oracle(n, s)
        assert closed == pytest.approx(basis_radius_golden(n, p)[0], abs=1e-12)
        assert closed == pytest.approx(chebyshev_center(generate_basis_set(n, s)).radius, abs=1e-10)

    def test_frozen(self):
        for n, r in BASIS_P3.items():
            assert basis_radius_oracle(n, LpSpace(3)) == pytest.approx(r, abs=1e-12)

    @pytest.mark.parametrize("p", [2.0, 3.0, 5.0])
    def test_ratio_increases(self, p):
        s = LpSpace(p)
        sizes = [2, 4, 8, 16, 32, 64]
        oracle = [basis_radius_oracle(n, s) for n in sizes]
        solved = [extremality_report(generate_basis_set(n, s)).ratio for n in sizes]
        assert all(b > a for a, b in zip(oracle, oracle[1:]))
        assert all(b > a for a, b in zip(solved, solved[1:]))


class TestHadamardFamily:
    def test_rejects_small(self):
        with pytest.raises(ValueError):
            generate_hadamard_set(0, LpSpace(1.5))

    def test_k1(self):
        A = generate_hadamard_set(1, LpSpace(1.5))
        np.testing.assert_allclose(A.points, 2 ** (-2 / 3) * np.array([[1, 1], [1, -1]]))
        assert lp_norm(A.points[0] - A.points[1], A.space) == pytest.approx(2 ** (1 / 3), abs=1e-4)

    @pytest.mark.parametrize("p", [1.2, 1.5, 2.0, 3.0])
    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_unit_norm_and_equidistant(self, k, p):
        A = generate_hadamard_set(k, LpSpace(p))
        np.testing.assert_allclose(lp_norm(A.points, A.space), 1.0, rtol=1e-14)
        D = distance_matrix(A)
        off = D[~np.eye(len(A), dtype=bool)]
        assert np.max(np.abs(off - 2 ** (1 / A.space.q))) <= 1e-12

    def test_shape(self):
        A = generate_hadamard_set(3, LpSpace(1.5))
        assert A.points.shape == (8, 8)

    def test_hilbert_ratio_k3(self):
        assert extremality_report(generate_hadamard_set(3, LpSpace(2))).ratio == pytest.approx(
            math.sqrt(1 - 1 / 8), abs=1e-8
        )

    @pytest.mark.parametrize("p", [1.3, 1.5, 1.8, 2.0])
    def test_ratio_trend(self, p):
        s = LpSpace(p)
        assert extremality_report(generate_hadamard_set(6, s)).ratio > extremality_report(
            generate_hadamard_set(2, s)
        ).ratio


@pytest.mark.parametrize("p", [1.3, 2.0, 4.0])
def test_finite_sets_strictly_below_jung(p):
    rng = np.random.default_rng(int(p * 100))
    for _ in range(20):
        A = PointSet(LpSpace(p), rng.standard_normal((int(rng.integers(2, 20)), int(rng.integers(1, 10)))))
        rep = extremality_report(A)
        assert 0 < rep.ratio < 1 and rep.gap > 1e-6
