import numpy as np
import pytest

from fractalspline import (
    HermiteData,
    IFSParameters,
    InsufficientDataError,
    ResourceLimitError,
    SmoothnessOrderError,
    affine_fif_limit,
    build_partition,
    classical_eval,
    default_depth,
    evaluate_pointwise,
    hermite_eval,
    picard_evaluate,
    sample_derivative_fif,
    sample_fif,
    sample_second_derivative_fif,
)
from fractalspline.evaluate import resolve_max_points

from conftest import params_from_table, random_admissible, random_params_for, CONVEX_TABLE


def linear_problem(slope=2.0, intercept=1.0):
    x = np.array([0.0, 0.4, 1.1, 1.9, 2.5])
    return HermiteData(x, slope * x + intercept, np.full(x.size, slope))


class TestSampleFif:
    def test_knot_interpolation_is_exact(self, monotone_data, table_params_a):
        s = sample_fif(monotone_data, table_params_a, depth=6)
        pos = np.searchsorted(s.abscissae, monotone_data.knots)
        np.testing.assert_array_equal(s.abscissae[pos], monotone_data.knots)
        np.testing.assert_array_equal(s.ordinates[pos], monotone_data.values)

    def test_depth_one_images_of_left_endpoint(self, monotone_data, table_params_a):
        # L_n(x_1) = x_n carries the interpolation condition
        s = sample_fif(monotone_data, table_params_a, depth=1)
        for n, knot in enumerate(monotone_data.knots[:-1]):
            i = np.searchsorted(s.abscissae, knot)
            assert s.ordinates[i] == monotone_data.values[n]

    def test_point_count_and_ordering(self, monotone_data, table_params_a):
        s = sample_fif(monotone_data, table_params_a, depth=4)
        raw = 4 * 3**4
        assert len(s) < raw  # shared endpoints dedup
        assert np.all(np.diff(s.abscissae) > 0)
        assert s.abscissae[0] == monotone_data.knots[0]
        assert s.abscissae[-1] == monotone_data.knots[-1]

    def test_linear_precision(self):
        rng = np.random.default_rng(21)
        data = linear_problem()
        for _ in range(10):
            params = random_params_for(data, rng)
            s = sample_fif(data, params, depth=4)
            expected = 2.0 * s.abscissae + 1.0
            np.testing.assert_allclose(s.ordinates, expected, atol=1e-9)

    def test_one_step_recursion_by_hand(self, monotone_data, table_params_a):
        # value at L_1(x_2) from one hand application of the functional equation
        part = build_partition(monotone_data)
        x2 = monotone_data.knots[1]
        target_x = part.apply_map(0, x2)
        s = sample_fif(monotone_data, table_params_a, depth=6)
        i = np.argmin(np.abs(s.abscissae - target_x))
        from fractalspline import build_pieces, q_eval
        piece = build_pieces(monotone_data, table_params_a, part)[0]
        theta = part.local_coordinate(x2)
        by_hand = table_params_a.scalings[0] * monotone_data.values[1] + q_eval(piece, theta)
        assert s.ordinates[i] == pytest.approx(by_hand, rel=1e-13)

    def test_functional_equation_residual(self, monotone_data, table_params_a):
        s = sample_fif(monotone_data, table_params_a, depth=6)
        scale = np.max(np.abs(s.ordinates))
        assert s.residual_stat <= 1e-12 * scale

    def test_classical_consistency(self, monotone_data):
        params = IFSParameters.classical(3, u=0.1, v=5.0)
        s = sample_fif(monotone_data, params, depth=6)
        c = classical_eval(monotone_data, params.shape_u, params.shape_v, s.abscissae)
        np.testing.assert_allclose(s.ordinates, c, atol=1e-12 * np.max(np.abs(c)))

    def test_depth_cap(self, monotone_data, table_params_a):
        with pytest.raises(ResourceLimitError):
            sample_fif(monotone_data, table_params_a, depth=20)

    def test_env_cap_override(self, monotone_data, table_params_a, monkeypatch):
        monkeypatch.setenv("FRIF_MAX_POINTS", "100")
        assert resolve_max_points() == 100
        with pytest.raises(ResourceLimitError):
            sample_fif(monotone_data, table_params_a, depth=6)

    def test_default_depth_rule(self):
        assert default_depth(4) == 6          # 4 * 3**6 = 2916 >= 2000
        assert default_depth(129) == 1        # already 129 * 128 >= 2000
        assert 3 * 2**default_depth(3) >= 2000


class TestPointwise:
    def test_matches_samples(self, monotone_data, table_params_a):
        s = sample_fif(monotone_data, table_params_a, depth=5)
        sub = s.abscissae[:: max(1, len(s) // 200)]
        vals = evaluate_pointwise(monotone_data, table_params_a, sub)
        expect = s.ordinates[np.searchsorted(s.abscissae, sub)]
        np.testing.assert_allclose(vals, expect, rtol=1e-10, atol=1e-10)

    def test_classical_termination(self, monotone_data):
        params = IFSParameters.classical(3, u=0.1, v=5.0)
        x = np.linspace(0.0, 3.3, 301)
        np.testing.assert_allclose(
            evaluate_pointwise(monotone_data, params, x),
            classical_eval(monotone_data, params.shape_u, params.shape_v, x),
            rtol=1e-12, atol=1e-10)

    def test_scalar_in_scalar_out(self, monotone_data, table_params_a):
        v = evaluate_pointwise(monotone_data, table_params_a, 1.25)
        assert isinstance(v, float)


class TestPicard:
    def test_zero_scaling_single_iteration_is_classical(self, monotone_data):
        params = IFSParameters.classical(3, u=0.1, v=5.0)
        s = picard_evaluate(monotone_data, params, grid=257, iterations=1)
        c = classical_eval(monotone_data, params.shape_u, params.shape_v, s.abscissae)
        np.testing.assert_allclose(s.ordinates, c, rtol=1e-13, atol=1e-10)

    def test_successive_distances_contract(self, monotone_data, table_params_a):
        s = picard_evaluate(monotone_data, table_params_a, grid=512, iterations=12)
        dist = s.generation["successive_distances"]
        kappa = s.generation["contraction_factor"]
        assert kappa == pytest.approx(0.15)
        osc0 = dist[0]
        assert dist[-1] <= kappa ** (len(dist) - 1) * osc0 * (1 + 1e-9) + 1e-12

    def test_oracle_agreement_random_instances(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            data, params = random_admissible(rng, alpha_frac=0.6)
            s = sample_fif(data, params)
            pic = picard_evaluate(data, params, grid=s.abscissae, tol=1e-12)
            assert np.max(np.abs(pic.ordinates - s.ordinates)) < 1e-8

    def test_small_grid_rejected(self, monotone_data, table_params_a):
        with pytest.raises(InsufficientDataError):
            picard_evaluate(monotone_data, table_params_a, grid=3)

    def test_knot_values_exact_on_shared_grid(self, monotone_data, table_params_a):
        s = sample_fif(monotone_data, table_params_a, depth=4)
        pic = picard_evaluate(monotone_data, table_params_a, grid=s.abscissae, tol=1e-11)
        pos = np.searchsorted(pic.abscissae, monotone_data.knots)
        np.testing.assert_array_equal(pic.ordinates[pos], monotone_data.values)


class TestDerivativeSampling:
    def test_knot_derivatives_reproduced(self, monotone_data, table_params_a):
        s = sample_derivative_fif(monotone_data, table_params_a, depth=5)
        pos = np.searchsorted(s.abscissae, monotone_data.knots)
        np.testing.assert_array_equal(s.ordinates[pos], monotone_data.derivatives)

    def test_zero_scaling_matches_classical_derivative(self, monotone_data):
        params = IFSParameters.classical(3, u=0.7, v=2.5)
        s = sample_derivative_fif(monotone_data, params, depth=5)
        step = 1e-6
        inner = (s.abscissae > monotone_data.knots[0] + step) \
            & (s.abscissae < monotone_data.knots[-1] - step)
        x = s.abscissae[inner]
        fd = (classical_eval(monotone_data, params.shape_u, params.shape_v, x + step)
              - classical_eval(monotone_data, params.shape_u, params.shape_v, x - step)) \
            / (2 * step)
        mask = np.ones(x.size, dtype=bool)  # knot images sit inside intervals here
        np.testing.assert_allclose(s.ordinates[inner][mask], fd[mask],
                                   rtol=1e-6, atol=1e-4 * np.max(np.abs(fd)))

    def test_linear_data_constant_derivative(self):
        rng = np.random.default_rng(33)
        data = linear_problem(slope=-1.5)
        params = random_params_for(data, rng, alpha_frac=0.7)
        s = sample_derivative_fif(data, params, depth=4)
        np.testing.assert_allclose(s.ordinates, -1.5, atol=1e-9)

    def test_contraction_bound_guard(self, monotone_data):
        from fractalspline import MalformedParametersError

        part = build_partition(monotone_data)
        alpha = part.map_slopes * np.array([0.999999, 0.5, 0.5])
        params = IFSParameters(alpha, np.ones(3), np.zeros(3))
        sample_derivative_fif(monotone_data, params, depth=3)  # just inside
        bad = IFSParameters(np.array([part.map_slopes[0], 0.0, 0.0]),
                            np.ones(3), np.zeros(3))
        with pytest.raises(MalformedParametersError):
            sample_derivative_fif(monotone_data, bad, depth=3)


class TestSecondDerivativeSampling:
    def test_zero_scaling_left_endpoint_seed(self, convex_data):
        from fractalspline import build_pieces
        params = IFSParameters.classical(3, u=0.1, v=0.2)
        piece = build_pieces(convex_data, params)[0]
        s = sample_second_derivative_fif(convex_data, params, depth=4)
        expected = piece.second_deriv_coeffs[0] / (piece.width * piece.shape_u**3)
        assert s.ordinates[0] == pytest.approx(expected, rel=1e-12)

    def test_reference_convex_parameters_nonnegative(self, convex_data):
        params = params_from_table(CONVEX_TABLE, "b", smoothness_order=2)
        s = sample_second_derivative_fif(convex_data, params, depth=5)
        assert np.all(s.ordinates >= 0)
        assert s.sides is not None and set(np.unique(s.sides)) == {-1, 1}

    def test_straight_line_gives_zero(self):
        data = linear_problem(slope=0.75)
        params = IFSParameters([0.01, 0.02, 0.0, 0.01], np.ones(4), np.ones(4),
                               smoothness_order=2)
        s = sample_second_derivative_fif(data, params, depth=4)
        np.testing.assert_allclose(s.ordinates, 0.0, atol=1e-8)

    def test_one_sided_duplicates_at_interior_knots(self, convex_data):
        params = params_from_table(CONVEX_TABLE, "b", smoothness_order=2)
        s = sample_second_derivative_fif(convex_data, params, depth=5)
        for knot in convex_data.knots[1:-1]:
            at = np.flatnonzero(s.abscissae == knot)
            assert at.size == 2
            assert sorted(s.sides[at]) == [-1, 1]

    def test_quadratic_bound_guard(self, convex_data):
        params = IFSParameters([0.3, 0.0, 0.0], np.ones(3), np.zeros(3))
        with pytest.raises(SmoothnessOrderError):
            sample_second_derivative_fif(convex_data, params, depth=3)


class TestClassicalAndHermite:
    def test_knot_values(self, convex_data):
        vals = classical_eval(convex_data, 0.1, 0.2, convex_data.knots)
        np.testing.assert_allclose(vals, convex_data.values, rtol=1e-13)

    def test_hermite_reduction_at_random_points(self, monotone_data):
        rng = np.random.default_rng(17)
        x = rng.uniform(0.0, 3.3, 50)
        ours = classical_eval(monotone_data, 1.0, 0.0, x)
        ref = hermite_eval(monotone_data, x)
        np.testing.assert_allclose(ours, ref, atol=1e-12 * np.max(np.abs(ref)))

    def test_out_of_span_rejected(self, monotone_data):
        with pytest.raises(Exception):
            classical_eval(monotone_data, 1.0, 0.0, [-0.1])


class TestAffineLimit:
    def test_zero_scaling_is_piecewise_linear(self, monotone_data):
        params = IFSParameters.classical(3, u=1.0, v=0.0)
        s = affine_fif_limit(monotone_data, params, depth=5)
        ref = np.interp(s.abscissae, monotone_data.knots, monotone_data.values)
        np.testing.assert_allclose(s.ordinates, ref, atol=1e-10)

    def test_huge_tension_approaches_affine_limit(self, monotone_data):
        params = IFSParameters([0.08, 0.06, 0.15], np.ones(3), np.full(3, 1e9))
        full = sample_fif(monotone_data, params, depth=6)
        limit = affine_fif_limit(monotone_data, params, depth=6)
        scale = np.max(np.abs(monotone_data.values))
        assert np.max(np.abs(full.ordinates - limit.ordinates)) < 1e-5 * scale

    def test_tension_distance_decreases_in_v(self, monotone_data):
        alpha = [0.08, 0.06, 0.15]
        dists = []
        for v in (1.0, 10.0, 100.0, 1e4, 1e6, 1e9):
            params = IFSParameters(alpha, np.ones(3), np.full(3, v))
            full = sample_fif(monotone_data, params, depth=5)
            limit = affine_fif_limit(monotone_data, params, depth=5)
            dists.append(np.max(np.abs(full.ordinates - limit.ordinates)))
        scale = np.max(np.abs(monotone_data.values))
        for a, b in zip(dists, dists[1:]):
            assert b <= a + 1e-9 * scale

    def test_linear_data_depth_one_agreement(self):
        data = linear_problem()
        rng = np.random.default_rng(2)
        params = random_params_for(data, rng)
        full = sample_fif(data, params, depth=1)
        limit = affine_fif_limit(data, params, depth=1)
        np.testing.assert_allclose(full.ordinates, limit.ordinates, atol=1e-10)
