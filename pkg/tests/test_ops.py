import numpy as np
import pytest

from eventemb.gradcheck import grad_check, random_projection
from eventemb.ops import (
    LowRankSlice,
    affine_tanh,
    bilinear_lowrank,
    bilinear_lowrank_grads,
    cosine,
    sigmoid,
)
from oracles import dense_bilinear, dense_slice_matrix, scalar_affine_tanh


def random_slice(rng, d, n):
    return LowRankSlice(
        left=rng.standard_normal((d, n)),
        right=rng.standard_normal((n, d)),
        diag=rng.standard_normal(d),
    )


class TestBilinearLowRank:
    def test_zero_tensor(self):
        slc = LowRankSlice(np.zeros((2, 1)), np.zeros((1, 2)), np.zeros(2))
        assert bilinear_lowrank(np.array([1.0, 0.0]), np.array([0.0, 1.0]), slc) == 0.0

    def test_diagonal_picks_single_term(self):
        slc = LowRankSlice(np.zeros((2, 1)), np.zeros((1, 2)), np.array([5.0, 0.0]))
        value = bilinear_lowrank(np.array([1.0, 0.0]), np.array([1.0, 0.0]), slc)
        assert value == 5.0

    def test_matches_dense_reconstruction(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            slc = random_slice(rng, 4, 2)
            a = rng.standard_normal(4)
            p = rng.standard_normal(4)
            m = dense_slice_matrix(slc.left, slc.right, slc.diag)
            assert bilinear_lowrank(a, p, slc) == pytest.approx(
                dense_bilinear(a, m, p), abs=1e-12
            )

    def test_dimension_errors_name_the_dimension(self):
        slc = random_slice(np.random.default_rng(0), 3, 2)
        with pytest.raises(ValueError, match=r"a has shape \(4,\)"):
            bilinear_lowrank(np.zeros(4), np.zeros(3), slc)
        with pytest.raises(ValueError, match=r"p has shape \(2,\)"):
            bilinear_lowrank(np.zeros(3), np.zeros(2), slc)

    def test_slice_shape_invariants(self):
        with pytest.raises(ValueError, match="rank n=4"):
            LowRankSlice(np.zeros((3, 4)), np.zeros((4, 3)), np.zeros(3))
        with pytest.raises(ValueError, match="right factor"):
            LowRankSlice(np.zeros((3, 2)), np.zeros((2, 4)), np.zeros(3))
        with pytest.raises(ValueError, match="diag"):
            LowRankSlice(np.zeros((3, 2)), np.zeros((2, 3)), np.zeros(4))


class TestAffineTanh:
    def test_all_zero(self):
        out = affine_tanh(np.zeros(4), np.zeros((3, 4)), np.zeros(3), np.zeros(3))
        assert np.array_equal(out, np.zeros(3))

    def test_saturation(self):
        out = affine_tanh(np.zeros(2), np.zeros((3, 2)), np.zeros(3), np.full(3, 20.0))
        assert np.all(np.abs(out - 1.0) < 1e-6)

    def test_matches_scalar_oracle(self):
        rng = np.random.default_rng(5)
        k, d = 3, 2
        x = rng.standard_normal(2 * d)
        w = rng.standard_normal((k, 2 * d))
        b = rng.standard_normal(k)
        bil = rng.standard_normal(k)
        assert affine_tanh(x, w, b, bil) == pytest.approx(
            scalar_affine_tanh(x, w, b, bil), abs=1e-14
        )

    def test_outputs_strictly_inside_unit_interval(self):
        # strict bound holds below the float64 saturation point of tanh
        # (|pre-activation| < ~18); beyond it the value rounds to +/-1.0
        rng = np.random.default_rng(6)
        for _ in range(10):
            out = affine_tanh(
                rng.uniform(-1, 1, 4),
                rng.uniform(-1, 1, (5, 4)),
                rng.uniform(-1, 1, 5),
                rng.uniform(-1, 1, 5) * 10,
            )
            assert np.all(out > -1.0) and np.all(out < 1.0)

    def test_outputs_never_leave_closed_interval(self):
        out = affine_tanh(
            np.full(4, 100.0), np.full((5, 4), 100.0), np.full(5, 100.0), np.full(5, 100.0)
        )
        assert np.all(out >= -1.0) and np.all(out <= 1.0)

    def test_dimension_error(self):
        with pytest.raises(ValueError, match="x has shape"):
            affine_tanh(np.zeros(3), np.zeros((2, 4)), np.zeros(2), np.zeros(2))


class TestGradCheck:
    def test_linear_op_is_exact(self):
        rng = np.random.default_rng(2)
        w = rng.uniform(0.5, 1.5, 6)
        x = rng.uniform(0.5, 1.5, 6)
        params = {"w": w, "x": x}

        def fn():
            return float(w @ x), {"w": x.copy(), "x": w.copy()}

        assert grad_check(fn, params) < 1e-10

    def test_bilinear_lowrank_gradients(self):
        rng = np.random.default_rng(3)
        slc = random_slice(rng, 6, 2)
        a = rng.standard_normal(6)
        p = rng.standard_normal(6)
        params = {"a": a, "p": p, "left": slc.left, "right": slc.right, "diag": slc.diag}

        def fn():
            value, grads = bilinear_lowrank_grads(a, p, slc)
            return value, grads

        assert grad_check(fn, params) < 1e-4

    @pytest.mark.parametrize("seed", range(5))
    def test_random_small_instances(self, seed):
        # dims bounded by d <= 8, n <= 3 per the repository-wide property
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 9))
        n = int(rng.integers(1, min(d, 3) + 1))
        slc = random_slice(rng, d, n)
        a = rng.standard_normal(d)
        p = rng.standard_normal(d)
        params = {"a": a, "p": p, "left": slc.left, "right": slc.right, "diag": slc.diag}
        assert grad_check(lambda: bilinear_lowrank_grads(a, p, slc), params) < 1e-4

    def test_catches_doubled_gradient(self):
        rng = np.random.default_rng(4)
        slc = random_slice(rng, 5, 2)
        a = rng.standard_normal(5)
        p = rng.standard_normal(5)
        params = {"a": a, "p": p}

        def corrupted():
            value, grads = bilinear_lowrank_grads(a, p, slc)
            return value, {"a": 2.0 * grads["a"], "p": 2.0 * grads["p"]}

        assert grad_check(corrupted, params) > 0.4

    def test_nonfinite_forward_rejected(self):
        x = np.array([1.0])

        def fn():
            return float("nan"), {"x": np.zeros(1)}

        with pytest.raises(FloatingPointError, match="non-finite"):
            grad_check(fn, {"x": x})

    def test_missing_gradient_rejected(self):
        x = np.array([1.0])
        with pytest.raises(KeyError, match="'x'"):
            grad_check(lambda: (1.0, {}), {"x": x})

    def test_random_projection_is_unit_norm(self):
        proj = random_projection(7, np.random.default_rng(0))
        assert np.linalg.norm(proj) == pytest.approx(1.0, abs=1e-12)


class TestScalarHelpers:
    def test_sigmoid_matches_reference(self):
        x = np.linspace(-30, 30, 13)
        assert sigmoid(x) == pytest.approx(1.0 / (1.0 + np.exp(-x)), abs=1e-15)

    def test_cosine_epsilon_guard(self):
        assert cosine(np.zeros(3), np.ones(3)) == 0.0
        assert cosine(np.ones(3), np.zeros(3)) == 0.0
