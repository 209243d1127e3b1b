import numpy as np
import pytest

from bkgeom.cone import (
    ConeModel,
    EmptySectionError,
    QUOTIENT_TEMPLATE_SCALE,
    TangencyError,
    algebra_action,
    cone_lift,
    cone_rep,
    contact_form,
    contact_frame,
    cp_cone_model,
    eta_vector,
    flat_inner,
    group_action,
    induced_metric,
    j_m,
    quotient_chart,
    random_type1_cone_model,
    rho_frame_matrix,
    rho_map,
    sigma_membership,
    sigma_sample,
    sphere_proj,
    verify_curvature_prop,
)
from bkgeom.curvature import KaehlerModel
from bkgeom.fdgeom import riemann, sectional
from bkgeom.hermitian import HermitianSpace, wedge_j


class TestConeRepresentatives:
    def test_already_normalized(self):
        sp = HermitianSpace(2)
        y = np.array([1.0, 0.0, 1.0], dtype=complex)
        assert np.abs(cone_rep(y, sp) - np.array([1.0, 0.0])).max() < 1e-14

    def test_phase_divided_out(self):
        sp = HermitianSpace(2)
        y = np.array([1j, 0.0, 1j], dtype=complex)
        assert np.abs(cone_rep(y, sp) - np.array([1.0, 0.0])).max() < 1e-14

    def test_lift_round_trip(self):
        sp = HermitianSpace(3)
        rng = np.random.default_rng(0)
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert np.abs(cone_rep(cone_lift(x), sp) - x).max() < 1e-12

    def test_wedge_class_recovered(self):
        # the cone point class of a null vector survives the representative
        sp = HermitianSpace(2)
        y = np.exp(1.3j) * np.array([0.6 + 0.1j, 0.3j, np.linalg.norm([0.6 + 0.1j, 0.3j])])
        W1 = wedge_j(y, sp)
        W2 = wedge_j(cone_lift(cone_rep(y, sp)), sp)
        assert np.abs(W1 - W2).max() < 1e-12

    def test_non_null_rejected(self):
        sp = HermitianSpace(2)
        with pytest.raises(ValueError):
            cone_rep(np.array([1.0, 0.0, 2.0]), sp)

    def test_sphere_proj(self):
        assert np.abs(sphere_proj(np.array([2.0, 0.0])) - np.array([1.0, 0.0])).max() == 0
        v = sphere_proj(np.array([1.0, 1.0]))
        assert np.abs(v - np.array([1.0, 1.0]) / np.sqrt(2)).max() < 1e-15
        rng = np.random.default_rng(1)
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        for _ in range(20):
            c = float(rng.uniform(0.1, 5.0))
            assert np.abs(sphere_proj(c * x) - sphere_proj(x)).max() < 1e-12
        with pytest.raises(ValueError):
            sphere_proj(np.zeros(2))


class TestActions:
    def test_identity(self):
        x = np.array([0.3 + 1j, -0.2])
        assert np.abs(group_action(np.eye(2), x) - x).max() == 0.0

    def test_determinant_twist_on_phase(self):
        # G = diag(e^{i t}, 1): the first coordinate picks up the phase twice
        t = 0.7
        G = np.diag([np.exp(1j * t), 1.0])
        x = np.array([1.0, 1.0], dtype=complex)
        out = group_action(G, x)
        assert out[0] == pytest.approx(np.exp(2j * t))
        assert out[1] == pytest.approx(np.exp(1j * t))

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            group_action(2.0 * np.eye(2), np.ones(2))

    def test_algebra_action_zero(self):
        assert np.abs(algebra_action(np.zeros((3, 3)), np.ones(3))).max() == 0.0

    def test_algebra_action_scalar(self):
        n = 3
        x = np.array([1.0, 2.0, 3.0], dtype=complex)
        out = algebra_action(1j * np.eye(n), x)
        assert np.abs(out - 1j * (n + 1) * x).max() < 1e-14

    def test_diagonal_model_coefficients(self):
        model = random_type1_cone_model(3, 0)
        A0 = np.diag(1j * model.lambdas)
        x = np.array([1.0, 1.0, 1.0], dtype=complex)
        out = algebra_action(A0, x)
        expected = 1j * model.action_coefficients * x
        assert np.abs(out - expected).max() < 1e-14

    def test_group_vs_algebra_derivative(self):
        # d/dt|0 of group_action(exp(tA), x) = algebra_action(A, x)
        import scipy.linalg

        rng = np.random.default_rng(3)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        a = 0.5 * (a - a.conj().T)
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        t = 1e-6
        num = (group_action(scipy.linalg.expm(t * a), x)
               - group_action(scipy.linalg.expm(-t * a), x)) / (2 * t)
        assert np.abs(num - algebra_action(a, x)).max() < 1e-8


class TestSection:
    def test_sampler_residuals(self):
        for model in (cp_cone_model(2), random_type1_cone_model(3, 1)):
            for p in sigma_sample(model, 0, 5):
                assert abs(sigma_membership(p, model)) <= 1e-12

    def test_empty_sections(self):
        with pytest.raises(EmptySectionError):
            sigma_sample(ConeModel(np.array([-0.5, -0.25]), sigma_sign=1), 0)
        with pytest.raises(EmptySectionError):
            sigma_sample(ConeModel(np.array([0.5, 0.25]), sigma_sign=-1), 0)

    def test_projective_model_needs_flipped_sign(self):
        # the displayed (+1) quadric is empty for the equal-coefficient
        # model; the flipped sign yields the sphere of radius sqrt(2);
        # recorded as the convention that reproduces the projective claims
        n = 3
        lam = np.full(n, -1.0 / (2.0 * (n + 1)))
        with pytest.raises(EmptySectionError):
            sigma_sample(ConeModel(lam, sigma_sign=1), 0)
        model = cp_cone_model(n)
        assert model.sigma_sign == -1
        for p in sigma_sample(model, 1, 3):
            assert float(np.vdot(p, p).real) == pytest.approx(2.0, abs=1e-12)

    def test_transversality_is_the_section_value(self):
        model = random_type1_cone_model(2, 2)
        p = sigma_sample(model, 3, 1)[0]
        assert contact_form(model.act(p), p) == pytest.approx(model.target, abs=1e-12)

    def test_direct_quadric_solve(self):
        # lam = (1, 0): alpha = (2, 1); p = (1/sqrt(2), 0) sits on the surface
        model = ConeModel(np.array([1.0, 0.0]), sigma_sign=1)
        p = np.array([1.0 / np.sqrt(2.0), 0.0], dtype=complex)
        assert abs(sigma_membership(p, model)) < 1e-14


class TestContactGeometry:
    def setup_method(self):
        self.model = random_type1_cone_model(3, 5)
        self.p = sigma_sample(self.model, 7, 1)[0]
        self.frame = contact_frame(self.p, self.model)

    def test_frame_dimension(self):
        assert self.frame.count == 2 * self.model.n - 2

    def test_frame_annihilates_constraints(self):
        mc = self.model.coherent()
        for a in range(self.frame.count):
            X = self.frame.vectors[:, a]
            assert abs(flat_inner(X, 1j * self.p)) < 1e-10
            assert abs(flat_inner(X, 1j * mc.act(self.p))) < 1e-10

    def test_frame_orthonormal_and_j_adapted(self):
        G = self.frame.metric_gram()
        assert np.abs(G - np.eye(self.frame.count)).max() < 1e-9
        JF = self.frame.matrix_of(lambda X: j_m(self.p, X, self.model))
        assert np.abs(JF - KaehlerModel(self.model.n - 1).J).max() < 1e-9

    def test_jm_squares_to_minus_identity(self):
        for a in range(self.frame.count):
            X = self.frame.vectors[:, a]
            JJX = j_m(self.p, j_m(self.p, X, self.model), self.model)
            assert np.abs(JJX + X).max() < 1e-10

    def test_jm_reduces_to_j_when_corrections_vanish(self):
        # X orthogonal to both p and act(p): both corrections drop
        mc = self.model.coherent()
        X = self.frame.vectors[:, 0]
        X = X - flat_inner(X, self.p) / flat_inner(self.p, self.p) * self.p
        ap = mc.act(self.p)
        X = X - flat_inner(X, ap) / flat_inner(ap, ap) * ap
        if abs(flat_inner(X, self.p)) < 1e-12 and abs(flat_inner(X, ap)) < 1e-12:
            assert np.abs(j_m(self.p, X, self.model) - 1j * X).max() < 1e-9

    def test_metric_jm_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            c1 = rng.standard_normal(self.frame.count)
            c2 = rng.standard_normal(self.frame.count)
            X = self.frame.vectors @ c1
            Y = self.frame.vectors @ c2
            gx = induced_metric(self.p, X, Y, self.model)
            gj = induced_metric(self.p, j_m(self.p, X, self.model),
                                j_m(self.p, Y, self.model), self.model)
            assert abs(gx - gj) < 1e-9 * max(1.0, abs(gx))

    def test_projective_frame_at_axis_point_spans_other_directions(self):
        # at p = (sqrt(2), 0, ..., 0) the distribution is the complex span of
        # the remaining coordinates
        model = cp_cone_model(3)
        p = np.zeros(3, dtype=complex)
        p[0] = np.sqrt(2.0)
        frame = contact_frame(p, model)
        assert np.abs(frame.vectors[0, :]).max() < 1e-12

    def test_metric_unit_and_degenerate_directions(self):
        X = self.frame.vectors[:, 0]
        assert induced_metric(self.p, X, X, self.model) == pytest.approx(1.0, abs=1e-9)
        # the radial direction is degenerate
        assert abs(induced_metric(self.p, self.p, self.p, self.model)) < 1e-12

    def test_tangency_error(self):
        # alpha = (0.75, 0): the flow fixes the second axis, so xi0 vanishes
        # there and transversality fails
        model = ConeModel(np.array([0.5, -0.25]), sigma_sign=1)
        assert model.action_coefficients[1] == pytest.approx(0.0)
        p = np.array([0.0, 1.0], dtype=complex)
        with pytest.raises(TangencyError):
            contact_frame(p, model)


class TestRhoMap:
    def setup_method(self):
        self.model = random_type1_cone_model(3, 9)
        self.p = sigma_sample(self.model, 2, 1)[0]
        self.frame = contact_frame(self.p, self.model)

    def test_well_defined_orthogonal_to_jp(self):
        # g(rho X, Jp) = 0: the map lands in the contact distribution
        for a in range(self.frame.count):
            X = self.frame.vectors[:, a]
            rX = rho_map(self.p, X, self.model)
            assert abs(flat_inner(rX, 1j * self.p)) < 1e-9

    def test_skewness_matches_generator(self):
        # g(rho X, Y) = (act X, Y), hence skew on the distribution
        mc = self.model.coherent()
        for a in range(self.frame.count):
            for b in range(self.frame.count):
                X = self.frame.vectors[:, a]
                Y = self.frame.vectors[:, b]
                lhs = induced_metric(self.p, rho_map(self.p, X, self.model), Y,
                                     self.model)
                rhs = flat_inner(mc.act(X), Y)
                assert abs(lhs - rhs) < 1e-9
                sym = lhs + induced_metric(self.p, rho_map(self.p, Y, self.model),
                                           X, self.model)
                assert abs(sym) < 1e-9

    def test_commutes_with_jm(self):
        M = rho_frame_matrix(self.frame)
        J0 = KaehlerModel(self.model.n - 1).J
        assert np.abs(M @ J0 - J0 @ M).max() < 1e-9

    def test_projective_model_rho_is_minus_half_j(self):
        # the geometric rho of the equal-coefficient model is -J/2 on the
        # distribution, and its eta correction vanishes identically
        for n in (2, 3):
            model = cp_cone_model(n)
            p = sigma_sample(model, 4, 1)[0]
            frame = contact_frame(p, model)
            M = rho_frame_matrix(frame)
            assert np.abs(M + 0.5 * KaehlerModel(n - 1).J).max() < 1e-10
            assert np.abs(eta_vector(p, model)).max() < 1e-12


def test_pointwise_invariants_on_seeded_pairs():
    # J_M^2 = -Id on D, metric J_M-invariance, and rho in u(D_p), checked on
    # 100 seeded (model, point) pairs at 1e-9
    J_bound = metric_bound = rho_bound = 0.0
    for k in range(100):
        n = 2 + k % 3
        model = random_type1_cone_model(n, 1000 + k)
        p = sigma_sample(model, k, 1)[0]
        frame = contact_frame(p, model)
        rng = np.random.default_rng(k)
        X = frame.vectors @ rng.standard_normal(frame.count)
        Y = frame.vectors @ rng.standard_normal(frame.count)
        JJX = j_m(p, j_m(p, X, model), model)
        J_bound = max(J_bound, float(np.abs(JJX + X).max()))
        gx = induced_metric(p, X, Y, model)
        gj = induced_metric(p, j_m(p, X, model), j_m(p, Y, model), model)
        metric_bound = max(metric_bound, abs(gx - gj))
        skew = (induced_metric(p, rho_map(p, X, model), Y, model)
                + induced_metric(p, X, rho_map(p, Y, model), model))
        M = rho_frame_matrix(frame)
        J0 = KaehlerModel(n - 1).J
        rho_bound = max(rho_bound, abs(skew),
                        float(np.abs(M @ J0 - J0 @ M).max()))
    assert J_bound <= 1e-9
    assert metric_bound <= 1e-9
    assert rho_bound <= 1e-9


class TestContactFormIdentities:
    def test_coordinate_expression(self):
        # lambda(X) at p equals sum(x dy - y dx) in stacked coordinates
        rng = np.random.default_rng(0)
        p = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        X = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        coord = float(np.sum(p.real * X.imag - p.imag * X.real))
        assert contact_form(X, p) == pytest.approx(coord, abs=1e-12)

    def test_euler_homogeneity(self):
        # L_E0 lambda = lambda: lambda_(tp)(X) = t lambda_p(X)
        rng = np.random.default_rng(1)
        p = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        X = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert contact_form(X, 1.7 * p) == pytest.approx(1.7 * contact_form(X, p),
                                                         abs=1e-12)

    def test_vanishes_on_euler_field(self):
        rng = np.random.default_rng(2)
        p = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert abs(contact_form(p, p)) < 1e-12

    def test_representative_equivariance(self):
        # block-diagonal group elements map representative classes to classes
        sp = HermitianSpace(2)
        rng = np.random.default_rng(3)
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        q = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        G, _ = np.linalg.qr(q)
        Ghat = np.zeros((3, 3), dtype=complex)
        Ghat[:2, :2] = G
        Ghat[2, 2] = 1.0 / np.linalg.det(G)
        lhs = cone_rep(Ghat @ cone_lift(x), sp)
        assert np.abs(lhs - group_action(G, x)).max() < 1e-10


class TestCurvatureProposition:
    def test_projective_model(self):
        rep = verify_curvature_prop(cp_cone_model(2), 4, 1e-4, seed=0)
        assert rep.max_residual <= 1e-3
        assert rep.min_control_ratio >= 10.0

    def test_projective_quotient_curvature_constant(self):
        # holomorphic sectional curvature of the quotient is the constant 2
        # (Fubini-Study normalized by the sqrt(2)-sphere section)
        model = cp_cone_model(3)
        for p in sigma_sample(model, 5, 2):
            frame = contact_frame(p, model)
            chart = quotient_chart(frame)
            J0 = KaehlerModel(model.n - 1).J
            for a in range(model.n - 1):
                e = np.eye(frame.count)[a]
                K = sectional(chart, np.zeros(frame.count), e, J0 @ e, 1e-4)
                assert K == pytest.approx(2.0, abs=1e-4)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_random_models(self, seed):
        model = random_type1_cone_model(2, seed)
        rep = verify_curvature_prop(model, 3, 1e-4, seed=seed)
        assert rep.max_residual <= 1e-3
        assert rep.min_control_ratio >= 10.0

    def test_flat_limit_scaling(self):
        # rescaling the generator by c scales the quotient curvature by c
        base = random_type1_cone_model(2, 3)
        vals = {}
        for c in (1.0, 0.5):
            m = ConeModel(c * base.lambdas, base.sigma_sign)
            p = sigma_sample(m, 7, 1)[0]
            fr = contact_frame(p, m)
            R = riemann(quotient_chart(fr), np.zeros(fr.count), 1e-4)
            vals[c] = float(np.abs(R).max())
        assert vals[1.0] / vals[0.5] == pytest.approx(2.0, rel=1e-4)

    def test_template_scale_is_fixed_global_constant(self):
        assert QUOTIENT_TEMPLATE_SCALE == -2.0
