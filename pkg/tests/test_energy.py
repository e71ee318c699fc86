"""Tests for the energy functionals and their algebraic identities."""

import math

import numpy as np
import pytest
from scipy.linalg import logm

from cosserat2d import (
    Branch,
    LogUndefined,
    Mat2,
    NonPositiveSingularValue,
    Weights,
    cofactor_energy,
    cofactor_transform,
    constants_chain,
    critical_energy_levels,
    energy_expanded,
    log_strain_energy,
    log_strain_profile,
    matrix_log_2x2,
    polar_decompose,
    reduced_energy,
    reduced_energy_sv,
    rescaled_energy,
    ring_energy,
    rotation,
    shear_stretch_energy,
    shear_stretch_profile,
    singular_values,
    trace_invariants,
)
from cosserat2d.selfcheck import (
    random_gl_plus,
    random_nonclassical_case,
    random_rotation,
)
from cosserat2d.shear import simple_shear
from cosserat2d.weights import reduction_data

RNG = np.random.default_rng(20260811)
LIMIT = Weights(1.0, 0.0)


def random_weights(rng):
    return Weights(rng.uniform(0.1, 3.0), rng.uniform(0.0, 3.0))


class TestShearStretchEnergy:
    def test_zero_at_identity(self):
        assert shear_stretch_energy(Mat2.identity(), Mat2.identity(), Weights(1.0, 1.0)) == 0.0
        assert shear_stretch_energy(Mat2.identity(), Mat2.identity(), Weights(2.0, 0.0)) == 0.0

    def test_polar_factor_gives_stretch_distance(self):
        f = Mat2.diagonal(2.0, 1.0)
        value = shear_stretch_energy(polar_decompose(f).rotation, f, Weights(1.0, 1.0))
        assert value == pytest.approx(1.0, abs=1e-14)  # ||U - 1||^2 with U = F

    def test_pure_rotation_misfit(self):
        value = shear_stretch_energy(rotation(math.pi / 4.0), Mat2.identity(), LIMIT)
        assert value == pytest.approx(3.0 - 2.0 * math.sqrt(2.0), abs=1e-14)

    def test_zero_iff_microstrain_vanishes(self):
        r = rotation(0.4)
        # R^T F = 1 exactly when F is that rotation
        assert shear_stretch_energy(r, rotation(0.4), Weights(1.0, 2.0)) < 1e-30
        # with muc = 0 a skew microstrain is invisible
        f = r @ Mat2(1.0, -0.5, 0.5, 1.0)
        assert shear_stretch_energy(r, f, LIMIT) < 1e-28
        assert shear_stretch_energy(r, f, Weights(1.0, 1.0)) > 0.1

    def test_nonnegative(self):
        for _ in range(200):
            value = shear_stretch_energy(
                random_rotation(RNG), random_gl_plus(RNG), random_weights(RNG)
            )
            assert value >= 0.0


class TestExpandedForm:
    def test_matches_defining_form(self):
        for _ in range(1000):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            w = random_weights(RNG)
            assert energy_expanded(r, f, w) == pytest.approx(
                shear_stretch_energy(r, f, w), rel=1e-10, abs=1e-12
            )

    def test_equal_weights_reduce_to_frobenius_misfit(self):
        for _ in range(200):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            x = r.transpose() @ f - Mat2.identity()
            assert energy_expanded(r, f, Weights(1.0, 1.0)) == pytest.approx(
                x.frobenius_sq(), rel=1e-10, abs=1e-12
            )

    def test_trivial(self):
        assert energy_expanded(Mat2.identity(), Mat2.identity(), LIMIT) == pytest.approx(0.0, abs=1e-15)


class TestRingEnergy:
    def test_decomposition(self):
        for _ in range(500):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            ring = ring_energy(r, f)
            assert ring.wring + ring.cring == pytest.approx(
                shear_stretch_energy(r, f, LIMIT), rel=1e-10, abs=1e-12
            )

    def test_constant_term_in_stretch_trace(self):
        for _ in range(100):
            f = random_gl_plus(RNG)
            inv = trace_invariants(f)
            ring = ring_energy(random_rotation(RNG), f)
            assert ring.cring == pytest.approx(
                0.5 * inv.tr_u**2 - 2.0 * inv.det_f + 2.0, rel=1e-12
            )

    def test_critical_values(self):
        for _ in range(100):
            f = random_gl_plus(RNG)
            inv = trace_invariants(f)
            rot_polar = polar_decompose(f).rotation
            at_polar = ring_energy(rot_polar, f).wring
            assert at_polar == pytest.approx(0.5 * inv.tr_u**2 - 2.0 * inv.tr_u, rel=1e-10)
            at_opposite = ring_energy(-1.0 * rot_polar, f).wring
            assert at_opposite == pytest.approx(0.5 * inv.tr_u**2 + 2.0 * inv.tr_u, rel=1e-10)

    def test_value_on_trace_two_level_set(self):
        # any rotation with tr(R^T F) = 2 sits on the level -2
        f = Mat2.diagonal(3.0, 1.0)
        r = rotation(math.pi / 3.0)
        assert ring_energy(r, f).wring == pytest.approx(-2.0, abs=1e-12)


class TestExpandingTheSquare:
    def test_identity(self):
        for _ in range(300):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            rho = RNG.uniform(0.5, 5.0)
            x = r.transpose() @ f
            shifted = x - rho * Mat2.identity()
            lhs = (shifted @ shifted).trace()
            rhs = (x @ x).trace() - 2.0 * rho * x.trace() + rho * rho * 2.0
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


class TestRescaledEnergy:
    def test_zero_couple_modulus_is_doubling(self):
        for _ in range(100):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            assert rescaled_energy(r, f, LIMIT) == pytest.approx(
                2.0 * shear_stretch_energy(r, f, LIMIT), rel=1e-14
            )

    def test_affine_relation_offset_is_constant(self):
        f = random_gl_plus(RNG)
        w = Weights(1.0, 0.5)
        data = reduction_data(f, w)
        offsets = []
        for _ in range(100):
            r = random_rotation(RNG)
            lhs = rescaled_energy(r, f, w)
            rhs = data.lam**2 * rescaled_energy(r, data.ftilde, LIMIT)
            offsets.append(lhs - rhs)
        assert max(offsets) - min(offsets) < 1e-10

    def test_trivial(self):
        assert rescaled_energy(Mat2.identity(), Mat2.identity(), LIMIT) == 0.0

    def test_requires_nonclassical(self):
        from cosserat2d import RequiresNonClassical

        with pytest.raises(RequiresNonClassical):
            rescaled_energy(Mat2.identity(), Mat2.identity(), Weights(1.0, 1.0))


class TestConstantsChain:
    def test_identity_zero_couple(self):
        chain = constants_chain(Mat2.identity(), LIMIT)
        assert chain == pytest.approx((3.0, 6.0, 2.0, 0.0))

    def test_zero_couple_modulus_self_reduction(self):
        for _ in range(100):
            f = random_gl_plus(RNG)
            assert constants_chain(f, LIMIT).c4 == pytest.approx(0.0, abs=1e-12)

    def test_worked_example(self):
        chain = constants_chain(Mat2.diagonal(2.0, 1.0), Weights(2.0, 1.0))
        assert chain.c1 == pytest.approx(11.5)

    def test_c4_matches_empirical_offset(self):
        for _ in range(50):
            f, w = random_nonclassical_case(RNG)
            data = reduction_data(f, w)
            c4 = constants_chain(f, w).c4
            r = random_rotation(RNG)
            offset = rescaled_energy(r, f, w) - data.lam**2 * rescaled_energy(
                r, data.ftilde, LIMIT
            )
            assert offset == pytest.approx(c4, abs=1e-9)


class TestCriticalEnergyLevels:
    def test_ordering(self):
        for _ in range(500):
            lv = critical_energy_levels(random_gl_plus(RNG))
            assert lv.w1 >= lv.w2 - 1e-12
            if lv.w3 is not None:
                assert lv.w2 >= lv.w3 - 1e-12

    def test_third_level_existence(self):
        assert critical_energy_levels(Mat2.diagonal(0.5, 0.5)).w3 is None
        assert critical_energy_levels(Mat2.diagonal(3.0, 1.0)).w3 is not None

    def test_coincidence_at_threshold(self):
        lv = critical_energy_levels(Mat2.identity())
        assert lv.w3 is not None
        assert lv.w2 == pytest.approx(lv.w3, abs=1e-12)


class TestReducedEnergy:
    def test_classical_example(self):
        value, branch = reduced_energy(Mat2.diagonal(2.0, 1.0), Weights(1.0, 1.0))
        assert value == pytest.approx(1.0, abs=1e-12)
        assert branch is Branch.CLASSICAL

    def test_shear_example(self):
        value, branch = reduced_energy(simple_shear(2.0), LIMIT)
        assert value == pytest.approx(2.0, abs=1e-12)
        assert branch is Branch.PITCHFORK

    def test_compressive_example(self):
        value, branch = reduced_energy(Mat2.diagonal(0.5, 0.5), LIMIT)
        assert value == pytest.approx(0.5, abs=1e-12)
        assert branch is Branch.CLASSICAL

    def test_continuity_across_switch(self):
        # scale a fixed direction through the threshold and compare both sides
        f0 = Mat2(1.1, 0.3, -0.2, 0.9)
        w = Weights(1.0, 0.4)
        rho = w.singular_radius()
        tr0 = trace_invariants(f0).tr_u
        for eps in (1e-7, 1e-9, 1e-11):
            below = reduced_energy((rho / tr0) * (1.0 - eps) * f0, w).value
            above = reduced_energy((rho / tr0) * (1.0 + eps) * f0, w).value
            # the reduced energy is Lipschitz in tr U across the switch
            assert below == pytest.approx(above, abs=1e3 * eps)

    def test_branch_switch_at_threshold(self):
        f0 = Mat2(1.1, 0.3, -0.2, 0.9)
        w = Weights(1.0, 0.4)
        scale = w.singular_radius() / trace_invariants(f0).tr_u
        assert reduced_energy((scale * (1.0 - 1e-9)) * f0, w).branch is Branch.CLASSICAL
        assert reduced_energy((scale * (1.0 + 1e-9)) * f0, w).branch is Branch.PITCHFORK


class TestReducedEnergySingularValues:
    def test_examples(self):
        assert reduced_energy_sv((1.0, 1.0)) == 0.0
        assert reduced_energy_sv((3.0, 1.0)) == pytest.approx(2.0)
        assert reduced_energy_sv((0.5, 0.5)) == pytest.approx(0.5)

    def test_swap_symmetry(self):
        for _ in range(100):
            s1, s2 = RNG.uniform(0.05, 4.0, size=2)
            assert reduced_energy_sv((s1, s2)) == reduced_energy_sv((s2, s1))

    def test_agrees_with_reduced_energy(self):
        for _ in range(500):
            f = random_gl_plus(RNG)
            assert reduced_energy_sv(singular_values(f)) == pytest.approx(
                reduced_energy(f, LIMIT).value, rel=1e-10, abs=1e-12
            )

    def test_branches_agree_on_boundary(self):
        for _ in range(100):
            s1 = RNG.uniform(1.0, 1.999)
            s2 = 2.0 - s1
            below = (s1 - 1.0) ** 2 + (s2 - 1.0) ** 2
            above = 0.5 * (s1 - s2) ** 2
            assert below == pytest.approx(above, abs=1e-12)
            assert reduced_energy_sv((s1, s2)) == pytest.approx(above, abs=1e-12)

    def test_rejects_non_positive(self):
        with pytest.raises(NonPositiveSingularValue):
            reduced_energy_sv((1.0, 0.0))
        with pytest.raises(NonPositiveSingularValue):
            reduced_energy_sv((-1.0, 2.0))


class TestCofactorEnergy:
    def test_trivial(self):
        assert cofactor_energy(Mat2.identity(), Mat2.identity(), LIMIT) == 0.0

    def test_matches_transformed_gradient(self):
        value = cofactor_energy(Mat2.identity(), Mat2.diagonal(2.0, 3.0), LIMIT)
        expected = shear_stretch_energy(Mat2.identity(), Mat2.diagonal(3.0, 2.0), LIMIT)
        assert value == pytest.approx(expected, abs=1e-12)

    def test_equality_with_transform_randomized(self):
        for _ in range(300):
            f = random_gl_plus(RNG)
            r = random_rotation(RNG)
            w = random_weights(RNG)
            assert cofactor_energy(r, f, w) == pytest.approx(
                shear_stretch_energy(r, cofactor_transform(f), w), abs=1e-12, rel=1e-12
            )


class TestMatrixLog:
    def test_distinct_real_eigenvalues(self):
        x = Mat2(2.0, 1.0, 0.5, 1.0)
        np.testing.assert_allclose(
            matrix_log_2x2(x).as_array(), np.real(logm(x.as_array())), atol=1e-12
        )

    def test_complex_pair(self):
        x = rotation(0.8) @ Mat2.diagonal(1.5, 0.7)
        np.testing.assert_allclose(
            matrix_log_2x2(x).as_array(), np.real(logm(x.as_array())), atol=1e-12
        )

    def test_defective(self):
        x = Mat2(2.0, 1.0, 0.0, 2.0)
        expected = np.array([[math.log(2.0), 0.5], [0.0, math.log(2.0)]])
        np.testing.assert_allclose(matrix_log_2x2(x).as_array(), expected, atol=1e-14)

    def test_near_defective_stays_accurate(self):
        for eps in (1e-6, 1e-9, 1e-12):
            x = Mat2(2.0 + eps, 1.0, 0.0, 2.0)
            np.testing.assert_allclose(
                matrix_log_2x2(x).as_array(), np.real(logm(x.as_array())), atol=1e-7
            )

    def test_random_against_scipy(self):
        count = 0
        while count < 200:
            x = random_gl_plus(RNG)
            try:
                lg = matrix_log_2x2(x)
            except LogUndefined:
                continue
            count += 1
            np.testing.assert_allclose(
                lg.as_array(), np.real(logm(x.as_array())), atol=1e-9
            )

    def test_exp_roundtrip(self):
        from scipy.linalg import expm

        x = rotation(-1.2) @ Mat2.diagonal(2.5, 0.3)
        lg = matrix_log_2x2(x)
        np.testing.assert_allclose(expm(lg.as_array()), x.as_array(), atol=1e-12)

    def test_undefined_on_negative_spectrum(self):
        with pytest.raises(LogUndefined):
            matrix_log_2x2(Mat2.diagonal(-1.0, -1.0))
        with pytest.raises(LogUndefined):
            matrix_log_2x2(Mat2.diagonal(-2.0, -0.5))
        with pytest.raises(LogUndefined):
            matrix_log_2x2(Mat2.diagonal(1.0, -1.0))


class TestLogStrainEnergy:
    def test_zero_at_identity(self):
        assert log_strain_energy(Mat2.identity(), Mat2.identity(), Weights(1.0, 1.0)) == 0.0

    def test_polar_gives_principal_log_norm(self):
        for _ in range(100):
            f = random_gl_plus(RNG)
            mu = RNG.uniform(0.1, 3.0)
            w = Weights(mu, RNG.uniform(0.0, 3.0))
            sv = singular_values(f)
            expected = mu * (math.log(sv.sigma1) ** 2 + math.log(sv.sigma2) ** 2)
            value = log_strain_energy(polar_decompose(f).rotation, f, w)
            assert value == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_pure_rotation_penalizes_skew(self):
        for alpha in (-2.5, -0.9, 0.3, 1.4, 3.0):
            value = log_strain_energy(rotation(alpha), Mat2.identity(), Weights(1.0, 1.0))
            assert value == pytest.approx(2.0 * alpha * alpha, rel=1e-12)

    def test_undefined_at_half_turn(self):
        with pytest.raises(LogUndefined):
            log_strain_energy(rotation(math.pi), Mat2.identity(), Weights(1.0, 1.0))

    def test_profile_matches_scalar(self):
        f = random_gl_plus(RNG)
        w = Weights(1.5, 0.7)
        profile = log_strain_profile(f, w)
        for _ in range(50):
            a = RNG.uniform(-math.pi, math.pi)
            try:
                expected = log_strain_energy(rotation(a), f, w)
            except LogUndefined:
                continue
            assert profile(a) == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_profile_sentinel_on_undefined_arc(self):
        profile = log_strain_profile(Mat2.identity(), Weights(1.0, 1.0), undefined_value=123.0)
        assert profile(math.pi) == 123.0


class TestShearStretchProfile:
    def test_matches_scalar_energy(self):
        for _ in range(50):
            f = random_gl_plus(RNG)
            w = random_weights(RNG)
            profile = shear_stretch_profile(f, w)
            a = RNG.uniform(-math.pi, math.pi)
            assert profile(a) == pytest.approx(
                shear_stretch_energy(rotation(a), f, w), rel=1e-12, abs=1e-14
            )

    def test_vectorized_shape(self):
        profile = shear_stretch_profile(Mat2.diagonal(2.0, 1.0), LIMIT)
        grid = np.linspace(-3.0, 3.0, 17)
        assert profile(grid).shape == grid.shape
