import numpy as np
import pytest

import barydeg as bd
from barydeg.asymptotic import (
    AsymptoticModel,
    cutoff_radius,
    eval_asymptotic,
    eval_piecewise,
    make_piecewise,
    moments,
)
from barydeg.errors import PoleEvaluationError, TrivialModelError

from conftest import chain_samples, exact_type_model, inverse_decay_samples


def exact_inverse_model():
    """The two-support representation of f(s) = 1/s."""
    return bd.BarycentricModel.from_weights([1.0, 2.0], [1.0, 0.5], [1.0, -2.0])


class TestMoments:
    def test_constant_model(self):
        m = bd.BarycentricModel([0.0], [5.0], [1.0])
        asym = moments(m, order=4)
        assert (asym.mu, asym.nu, asym.rdeg) == (0, 0, 0)
        assert np.array_equal(asym.num_moments, [5, 0, 0, 0, 0])
        assert np.array_equal(asym.den_moments, [1, 0, 0, 0, 0])
        for s in (10.0, 1e3 * 1j, -7.0 + 2j):
            assert eval_asymptotic(asym, s) == pytest.approx(5.0, rel=1e-14)

    def test_inverse_decay_model(self):
        asym = moments(exact_inverse_model())
        assert (asym.mu, asym.nu, asym.rdeg) == (1, 0, -1)
        val = eval_asymptotic(asym, 100.0)
        assert val == pytest.approx(0.01, rel=1e-12)

    def test_saturating_model(self):
        # r(s) = s / (2s - 1) tends to 1/2
        m = bd.BarycentricModel.from_weights([0.0, 1.0], [0.0, 1.0], [1.0, 1.0])
        asym = moments(m)
        assert asym.rdeg == 0
        assert eval_asymptotic(asym, 1e6) == pytest.approx(0.5, rel=1e-6)

    def test_default_order(self):
        asym = moments(exact_inverse_model())
        assert asym.order == 10
        assert asym.num_moments_scaled.size == 11

    def test_moment_identity_with_classification(self):
        for model in (exact_inverse_model(),
                      exact_type_model(np.random.default_rng(3), 6, 2, 1)):
            sig = bd.classify_degree(model)
            asym = moments(model)
            assert asym.num_moments[0] == sig.lead_num
            assert asym.den_moments[0] == sig.lead_den

    def test_general_model_moments(self):
        ss = inverse_decay_samples(1.0, 10.0, 20)
        model = bd.vf_solve(ss, bd.geometric_supports(ss, 1), -1)
        asym = moments(model)
        assert asym.rdeg == -1
        assert eval_asymptotic(asym, 1e4) == pytest.approx(1e-4, rel=1e-10)

    def test_trivial_model_propagates(self):
        m = bd.BarycentricModel([0.0, 1.0], [0.0, 0.0],
                                np.array([1.0, 1.0]) / np.sqrt(2))
        with pytest.raises(TrivialModelError):
            moments(m)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            moments(exact_inverse_model(), order=-1)


class TestEvalAsymptotic:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            eval_asymptotic(moments(exact_inverse_model()), 0.0)

    def test_truncated_denominator_zero(self):
        asym = AsymptoticModel(mu=0, nu=0, rdeg=0, order=1, scale=1.0,
                               num_moments_scaled=np.array([1.0, 0.0]),
                               den_moments_scaled=np.array([1.0, -1.0]))
        # denominator series 1 - 1/s vanishes at s = 1
        with pytest.raises(PoleEvaluationError):
            eval_asymptotic(asym, 1.0)

    def test_array_evaluation(self):
        asym = moments(exact_inverse_model())
        s = np.array([50.0, 100.0, 200.0])
        assert np.allclose(eval_asymptotic(asym, s), 1.0 / s, rtol=1e-10)


class TestCutoffRadius:
    def test_unit_error_at_band_edge(self):
        assert cutoff_radius(1.0, 1.0, -3, 10) == 1.0

    def test_direct_formula(self):
        assert cutoff_radius(1.0, 1e-6, -4, 10) == pytest.approx(10**0.4, rel=1e-12)

    def test_scaled_band(self):
        assert cutoff_radius(100.0, 1e-6, 0, 10) == pytest.approx(
            100.0 * 10 ** (6 / 11), rel=1e-12)

    def test_bad_eps(self):
        with pytest.raises(ValueError):
            cutoff_radius(1.0, 0.0, -4, 10)
        with pytest.raises(ValueError):
            cutoff_radius(1.0, -1e-3, -4, 10)


class TestMakePiecewise:
    def test_exact_fit_floors_eps(self):
        rng = np.random.default_rng(21)
        model = exact_type_model(rng, 4, 4, 0)  # relative degree -4
        pts = bd.sample_grid(0.2, 1.0, 40)
        ss = bd.SampleSet(pts, bd.eval_barycentric(model, pts))
        pm = make_piecewise(model, ss)
        assert pm.train_eps == 1e-16
        assert pm.cutoff == pytest.approx(10 ** (16 / 15), rel=1e-12)
        assert pm.cutoff == pytest.approx(11.66, rel=1e-3)

    def test_measured_eps_enters_cutoff(self):
        rng = np.random.default_rng(22)
        model = exact_type_model(rng, 6, 6, 0)  # relative degree -6
        pts = bd.sample_grid(0.2, 1.0, 40)
        vals = bd.eval_barycentric(model, pts) * (1 + 1e-6)
        ss = bd.SampleSet(pts, vals)
        pm = make_piecewise(model, ss)
        eps = np.max(np.abs(vals - bd.eval_barycentric(model, pts)) / np.abs(vals))
        assert pm.train_eps == pytest.approx(eps, rel=1e-12)
        assert pm.cutoff == pytest.approx(cutoff_radius(1.0, eps, -6, 10), rel=1e-12)
        assert pm.cutoff == pytest.approx(2.254, rel=1e-3)

    def test_zero_degree_model_still_consistent(self):
        rng = np.random.default_rng(23)
        model = exact_type_model(rng, 3, 0, 0)
        pts = bd.sample_grid(0.2, 1.0, 40)
        vals = bd.eval_barycentric(model, pts) * (1 + 1e-6)
        pm = make_piecewise(model, bd.SampleSet(pts, vals))
        s = 1j * pm.cutoff
        bary, asym = bd.eval_barycentric(model, s), eval_asymptotic(pm.asym, s)
        assert abs(bary - asym) / abs(bary) <= 10 * pm.train_eps

    def test_cutoff_never_inside_band(self):
        ss = chain_samples(2)
        model, _ = bd.aaa(ss, bd.AaaConfig(tol=1e-6, target_degree=-4))
        pm = make_piecewise(model, ss)
        assert pm.cutoff >= pm.train_T


class TestEvalPiecewise:
    def test_boundary_point_uses_barycentric_branch(self):
        asym = moments(exact_inverse_model())
        model = exact_inverse_model()
        pm = bd.PiecewiseModel(bary=model, asym=asym, cutoff=50.0,
                               train_T=10.0, train_eps=1e-12)
        s = 50.0 + 0j  # |s| == cutoff exactly
        assert eval_piecewise(pm, s) == bd.eval_barycentric(model, s)
        just_out = 50.0 * (1 + 1e-12)
        assert eval_piecewise(pm, just_out) == eval_asymptotic(asym, just_out)

    def test_inverse_decay_far_field(self):
        model = exact_inverse_model()
        pts = bd.sample_grid(0.5, 5.0, 30)
        pm = make_piecewise(model, bd.SampleSet(pts, bd.eval_barycentric(model, pts)))
        val = eval_piecewise(pm, 1e6j)
        assert abs(val - (-1e-6j)) <= 1e-10 * 1e-6

    def test_mixed_array_branches(self):
        model = exact_inverse_model()
        pts = bd.sample_grid(0.5, 5.0, 30)
        pm = make_piecewise(model, bd.SampleSet(pts, bd.eval_barycentric(model, pts)))
        s = np.array([1.0, pm.cutoff * 2]) * 1j
        out = eval_piecewise(pm, s)
        assert out[0] == bd.eval_barycentric(model, 1j)
        assert out[1] == eval_asymptotic(pm.asym, pm.cutoff * 2j)

    def test_piecewise_and_asymptotic_models_are_callable(self):
        model = exact_inverse_model()
        pts = bd.sample_grid(0.5, 5.0, 30)
        pm = make_piecewise(model, bd.SampleSet(pts, bd.eval_barycentric(model, pts)))
        assert pm(1e5j) == eval_piecewise(pm, 1e5j)
        assert pm.asym(1e5j) == eval_asymptotic(pm.asym, 1e5j)


class TestPiecewiseModelInvariants:
    def test_cutoff_inside_band_rejected(self):
        model = exact_inverse_model()
        asym = moments(model)
        with pytest.raises(ValueError, match="band"):
            bd.PiecewiseModel(bary=model, asym=asym, cutoff=1.0,
                              train_T=10.0, train_eps=1e-6)

    def test_bad_moment_arrays_rejected(self):
        with pytest.raises(ValueError, match="leading"):
            AsymptoticModel(mu=0, nu=0, rdeg=0, order=0, scale=1.0,
                            num_moments_scaled=np.array([0.0]),
                            den_moments_scaled=np.array([1.0]))


class TestExactModelFidelity:
    @pytest.mark.parametrize("seed", range(8))
    def test_far_field_matches_function(self, seed):
        rng = np.random.default_rng(500 + seed)
        m = int(rng.integers(1, 6))
        mu = int(rng.integers(0, min(m, 2) + 1))
        nu = int(rng.integers(0, min(m, 2) + 1))
        model = exact_type_model(rng, m, mu, nu)
        asym = moments(model)
        rho = float(np.max(np.abs(model.supports)))
        # checked where the truncation bound dominates the cancellation
        # noise of the barycentric reference evaluation itself
        for factor in (10.0, 12.0):
            s = factor * rho * np.exp(1j * rng.uniform(0, 2 * np.pi))
            exact = bd.eval_barycentric(model, s)
            approx = eval_asymptotic(asym, s)
            assert abs(approx - exact) <= 10 * (rho / abs(s)) ** 11 * abs(exact)
