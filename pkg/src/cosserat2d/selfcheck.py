"""Seeded verification suite: every closed form against an independent route.

Each check draws its own deterministic random stream from the suite seed,
evaluates one documented property over `samples` draws, and reports the
worst observed residual against the property's tolerance. The CLI `verify`
command runs the whole list; the test suite reuses the samplers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bruteforce, energy, minimizers, shear
from .planar import (
    Mat2,
    circular_distance,
    cofactor_transform,
    normalize_angle,
    polar_angle,
    polar_decompose,
    rotation,
    singular_values,
    trace_invariants,
)
from .weights import Weights, reduction_data


# ---------------------------------------------------------------------------
# Random samplers shared with the test suite
# ---------------------------------------------------------------------------

def random_gl_plus(rng: np.random.Generator, min_det: float = 0.05) -> Mat2:
    """Entries uniform in [-2, 2], rejected unless det >= min_det.

    The rejection keeps samples away from the boundary of GL+(2), where
    the problem is ill-conditioned.
    """
    while True:
        e = rng.uniform(-2.0, 2.0, size=4)
        f = Mat2(e[0], e[1], e[2], e[3])
        if f.det() >= min_det:
            return f


def random_rotation(rng: np.random.Generator) -> Mat2:
    return rotation(rng.uniform(-math.pi, math.pi))


def random_classical_weights(rng: np.random.Generator) -> Weights:
    mu = rng.uniform(0.1, 2.5)
    return Weights(mu, mu * rng.uniform(1.0, 3.0))


def random_nonclassical_weights(
    rng: np.random.Generator, max_ratio: float = 0.85
) -> Weights:
    mu = rng.uniform(0.2, 2.5)
    return Weights(mu, mu * rng.uniform(0.0, max_ratio))


def random_nonclassical_case(
    rng: np.random.Generator,
    max_ratio: float = 0.85,
    bifurcation_gap: float = 0.0,
) -> tuple[Mat2, Weights]:
    """A random (F, weights) pair with mu > muc.

    With bifurcation_gap > 0, pairs whose stretch trace lies within the
    given relative gap of the singular radius are rejected: immediately at
    the threshold the two pitchfork minima merge below the resolution of
    any value-tolerance grid clustering, so set comparison against the
    brute-force oracle is not meaningful there. The threshold itself is
    covered by dedicated continuity checks.
    """
    while True:
        f = random_gl_plus(rng)
        w = random_nonclassical_weights(rng, max_ratio)
        ratio = trace_invariants(f).tr_u / w.singular_radius()
        if abs(ratio - 1.0) > bifurcation_gap:
            return f, w


def random_unconstrained(rng: np.random.Generator, scale: float = 2.0) -> Mat2:
    e = rng.uniform(-scale, scale, size=4)
    return Mat2(e[0], e[1], e[2], e[3])


# ---------------------------------------------------------------------------
# Check registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


_CHECKS: list[tuple[str, float, Callable]] = []


def _check(name: str, tolerance: float):
    def register(fn):
        _CHECKS.append((name, tolerance, fn))
        return fn

    return register


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


@_check("cayley_hamilton_trace", 1e-10)
def _cayley_hamilton(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        x = random_unconstrained(rng)
        tr_sq = (x @ x).trace()
        worst = max(worst, _rel(tr_sq, x.trace() ** 2 - 2.0 * x.det()))
    return worst


@_check("stretch_trace_vs_eigensolver", 1e-9)
def _stretch_trace(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        gram = f.as_array().T @ f.as_array()
        eig_sum = float(np.sqrt(np.linalg.eigvalsh(gram)).sum())
        worst = max(worst, abs(trace_invariants(f).tr_u - eig_sum))
    return worst


@_check("trace_pythagoras", 1e-10)
def _trace_pythagoras(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        inv = trace_invariants(random_gl_plus(rng))
        worst = max(worst, _rel(inv.tr_f**2 + inv.tr_jf**2, inv.tr_u**2))
    return worst


@_check("polar_scale_invariance", 1e-12)
def _polar_scale(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        c = rng.uniform(0.1, 10.0)
        worst = max(worst, circular_distance(polar_angle(f), polar_angle(c * f)))
    return worst


@_check("polar_factorization", 1e-10)
def _polar_factorization(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        dec = polar_decompose(f)
        residual = dec.rotation @ dec.stretch - f
        worst = max(worst, residual.frobenius_norm())
        worst = max(worst, abs(dec.stretch.e12 - dec.stretch.e21))
    return worst


@_check("energy_expansion_identity", 1e-10)
def _expansion(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        r = random_rotation(rng)
        w = Weights(rng.uniform(0.1, 3.0), rng.uniform(0.0, 3.0))
        worst = max(
            worst,
            _rel(energy.shear_stretch_energy(r, f, w), energy.energy_expanded(r, f, w)),
        )
    return worst


@_check("ring_decomposition", 1e-10)
def _ring(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        r = random_rotation(rng)
        ring = energy.ring_energy(r, f)
        direct = energy.shear_stretch_energy(r, f, Weights(1.0, 0.0))
        worst = max(worst, _rel(ring.wring + ring.cring, direct))
    return worst


@_check("expanding_the_square", 1e-10)
def _expanding_square(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        r = random_rotation(rng)
        rho = rng.uniform(0.5, 5.0)
        x = r.transpose() @ f
        shifted = x - rho * Mat2.identity()
        lhs = (shifted @ shifted).trace()
        tr_x_sq = (x @ x).trace()
        rhs = tr_x_sq - 2.0 * rho * x.trace() + rho * rho * 2.0
        worst = max(worst, _rel(lhs, rhs))
    return worst


@_check("level_ordering", 1e-12)
def _levels(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        lv = energy.critical_energy_levels(random_gl_plus(rng))
        worst = max(worst, lv.w2 - lv.w1)
        if lv.w3 is not None:
            worst = max(worst, lv.w3 - lv.w2)
    return max(worst, 0.0)


@_check("classical_distance_formula", 1e-10)
def _dist_formula(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        sv = singular_values(f)
        value = energy.reduced_energy(f, Weights(1.0, 1.0)).value
        worst = max(worst, _rel(value, (sv.sigma1 - 1.0) ** 2 + (sv.sigma2 - 1.0) ** 2))
    return worst


@_check("reduced_energy_singular_values", 1e-10)
def _reduced_sv(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        value = energy.reduced_energy(f, Weights(1.0, 0.0)).value
        worst = max(worst, _rel(value, energy.reduced_energy_sv(singular_values(f))))
    return worst


@_check("affine_offset_constancy", 1e-9)
def _affine_offset(rng, samples, grid_n):
    worst = 0.0
    limit = Weights(1.0, 0.0)
    for _ in range(max(1, samples // 10)):
        f, w = random_nonclassical_case(rng)
        data = reduction_data(f, w)
        c4 = energy.constants_chain(f, w).c4
        offsets = []
        for _ in range(100):
            r = random_rotation(rng)
            lhs = energy.rescaled_energy(r, f, w)
            rhs = data.lam**2 * energy.rescaled_energy(r, data.ftilde, limit)
            offsets.append(lhs - rhs)
        # spread is held one decade tighter than the offset-vs-c4 match
        worst = max(worst, 10.0 * (max(offsets) - min(offsets)))
        worst = max(worst, abs(0.5 * (max(offsets) + min(offsets)) - c4))
    return worst


@_check("polar_invariant_under_rescaling", 1e-12)
def _polar_rescaled(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f, w = random_nonclassical_case(rng)
        data = reduction_data(f, w)
        diff = polar_decompose(f).rotation - polar_decompose(data.ftilde).rotation
        worst = max(worst, diff.frobenius_norm())
    return worst


@_check("classical_lower_bound", 1e-12)
def _classical_bound(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        w = random_classical_weights(rng)
        r = random_rotation(rng)
        full = energy.shear_stretch_energy(r, f, w)
        x = r.transpose() @ f - Mat2.identity()
        bound = w.mu * x.frobenius_sq()
        worst = max(worst, bound - full)
        at_polar = energy.shear_stretch_energy(polar_decompose(f).rotation, f, w)
        u = polar_decompose(f).stretch - Mat2.identity()
        worst = max(worst, abs(at_polar - w.mu * u.frobenius_sq()))
    return max(worst, 0.0)


@_check("argmin_transport_to_limit_case", 1e-6)
def _transport(rng, samples, grid_n):
    worst = 0.0
    limit = Weights(1.0, 0.0)
    for _ in range(max(1, samples // 20)):
        f, w = random_nonclassical_case(rng, bifurcation_gap=1e-3)
        data = reduction_data(f, w)
        full = bruteforce.grid_minimize(
            energy.shear_stretch_profile(f, w), grid_n, vectorized=True
        )
        reduced = bruteforce.grid_minimize(
            energy.shear_stretch_profile(data.ftilde, limit), grid_n, vectorized=True
        )
        worst = max(worst, bruteforce.angle_set_distance(full.angles, reduced.angles))
    return worst


@_check("closed_form_vs_oracle", 1e-6)
def _closed_form_oracle(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f, w = random_nonclassical_case(rng, bifurcation_gap=1e-3)
        ms = minimizers.optimal_set(f, w)
        grid = bruteforce.grid_minimize(
            energy.shear_stretch_profile(f, w), grid_n, vectorized=True
        )
        worst = max(worst, bruteforce.angle_set_distance(ms.angles, grid.angles))
        # energy agreement is held three decades tighter than the angles
        worst = max(worst, 1e3 * _rel(ms.energy, grid.best_value))
    return worst


@_check("pitchfork_energy_symmetry", 1e-12)
def _pitchfork_symmetry(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f, w = random_nonclassical_case(rng)
        ms = minimizers.optimal_set(f, w)
        if ms.branch is energy.Branch.PITCHFORK:
            e_plus = energy.shear_stretch_energy(rotation(ms.alpha_plus), f, w)
            e_minus = energy.shear_stretch_energy(rotation(ms.alpha_minus), f, w)
            worst = max(worst, _rel(e_plus, e_minus))
    return worst


@_check("minimality_over_criticals", 1e-12)
def _minimality(rng, samples, grid_n):
    worst = 0.0
    limit = Weights(1.0, 0.0)
    for _ in range(samples):
        f = random_gl_plus(rng)
        ms = minimizers.optimal_set(f, limit)
        cs = minimizers.critical_set(f)
        angles = list(cs.classical_pair) + list(cs.nonclassical or ())
        for a in angles:
            worst = max(worst, ms.energy - energy.shear_stretch_energy(rotation(a), f, limit))
    return max(worst, 0.0)


@_check("stationarity_at_criticals", 1e-8)
def _stationarity(rng, samples, grid_n):
    worst = 0.0
    for _ in range(samples):
        f = random_gl_plus(rng)
        cs = minimizers.critical_set(f)
        for a in list(cs.classical_pair) + list(cs.nonclassical or ()):
            worst = max(worst, abs(minimizers.stationarity_residual(a, f)))
    return worst


@_check("branch_continuity_at_threshold", 1e-5)
def _continuity(rng, samples, grid_n):
    worst = 0.0
    for _ in range(min(samples, 50)):
        w = random_nonclassical_weights(rng)
        rho = w.singular_radius()
        worst = max(worst, minimizers.relative_rotation_magnitude(rho * (1.0 + 1e-11), w))
    return worst


@_check("bifurcation_sharpness", 0.0)
def _sharpness(rng, samples, grid_n):
    # residual is the margin by which the quotient bound fails; 0 when it holds
    worst = 0.0
    for w in (Weights(1.0, 0.0), Weights(1.0, 0.5), Weights(2.0, 0.5)):
        rho = w.singular_radius()
        for h in (1e-2, 1e-4, 1e-6):
            quotient = minimizers.relative_rotation_magnitude(rho + h, w) / h
            worst = max(worst, 0.5 * h**-0.5 - quotient)
    return max(worst, 0.0)


@_check("skew_defect_two_roots", 1e-8)
def _skew_roots(rng, samples, grid_n):
    worst = 0.0
    for _ in range(max(1, samples // 5)):
        f = random_gl_plus(rng)
        roots = bruteforce.sign_change_scan(
            minimizers.signed_defect_profile(f), vectorized=True
        )
        if len(roots) != 2:
            return math.inf
        alpha_p = polar_angle(f)
        expected = [alpha_p, normalize_angle(alpha_p + math.pi)]
        worst = max(worst, bruteforce.angle_set_distance(roots, expected))
    return worst


@_check("shear_level_consistency", 1e-10)
def _shear_levels(rng, samples, grid_n):
    worst = 0.0
    limit = Weights(1.0, 0.0)
    for _ in range(min(samples, 200)):
        gamma = rng.uniform(-6.0, 6.0)
        f = shear.simple_shear(gamma)
        lv = energy.critical_energy_levels(f)
        cs = minimizers.critical_set(f)
        e1 = energy.shear_stretch_energy(rotation(cs.classical_pair[1]), f, limit)
        e2 = energy.shear_stretch_energy(rotation(cs.classical_pair[0]), f, limit)
        worst = max(worst, _rel(lv.w1, e1), _rel(lv.w2, e2))
        assert cs.nonclassical is not None
        e3 = energy.shear_stretch_energy(rotation(cs.nonclassical[0]), f, limit)
        worst = max(worst, _rel(lv.w3, e3), _rel(lv.w3, 0.5 * gamma * gamma))
    return worst


@_check("shear_arctan_identity", 1e-12)
def _arctan_identity(rng, samples, grid_n):
    worst = 0.0
    for gamma in np.arange(-10.0, 10.0 + 1e-9, 1e-2):
        lhs = math.atan(gamma / 2.0)
        rhs = math.copysign(1.0, gamma) * math.acos(2.0 / math.sqrt(4.0 + gamma * gamma)) if gamma else 0.0
        worst = max(worst, abs(lhs - rhs))
    return worst


@_check("oracle_self_consistency", 1e-8)
def _oracle_consistency(rng, samples, grid_n):
    worst = 0.0
    for _ in range(min(samples, 20)):
        f, w = random_nonclassical_case(rng, bifurcation_gap=1e-3)
        profile = energy.shear_stretch_profile(f, w)
        coarse = bruteforce.grid_minimize(profile, grid_n, vectorized=True)
        fine = bruteforce.grid_minimize(profile, 2 * grid_n, vectorized=True)
        worst = max(worst, bruteforce.angle_set_distance(coarse.angles, fine.angles))
    return worst


@_check("log_strain_polar_optimality", 1e-5)
def _log_strain(rng, samples, grid_n):
    worst = 0.0
    weight_sets = (Weights(1.0, 1.0), Weights(1.0, 0.0), Weights(2.0, 0.5), Weights(1.0, 3.0))
    for i in range(max(1, samples // 10)):
        while True:
            f = random_gl_plus(rng)
            sv = singular_values(f)
            if sv.sigma1 / sv.sigma2 <= 10.0:
                break
        w = weight_sets[i % len(weight_sets)]
        grid = bruteforce.grid_minimize(
            energy.log_strain_profile(f, w), grid_n, vectorized=True
        )
        if len(grid.angles) != 1:
            return math.inf
        worst = max(worst, circular_distance(grid.angles[0], polar_angle(f)))
    return worst


@_check("cofactor_argmin_transport", 1e-6)
def _cofactor_transport(rng, samples, grid_n):
    worst = 0.0
    for _ in range(max(1, samples // 10)):
        f, w = random_nonclassical_case(rng, bifurcation_gap=1e-3)
        grid = bruteforce.grid_minimize(
            energy.cofactor_shear_profile(f, w), grid_n, vectorized=True
        )
        ms = minimizers.optimal_set(cofactor_transform(f), w)
        worst = max(worst, bruteforce.angle_set_distance(grid.angles, ms.angles))
    return worst


@_check("classical_oracle_is_polar", 1e-6)
def _classical_oracle(rng, samples, grid_n):
    worst = 0.0
    for _ in range(max(1, samples // 5)):
        f = random_gl_plus(rng)
        w = random_classical_weights(rng)
        grid = bruteforce.grid_minimize(
            energy.shear_stretch_profile(f, w), grid_n, vectorized=True
        )
        if len(grid.angles) != 1:
            return math.inf
        worst = max(worst, circular_distance(grid.angles[0], polar_angle(f)))
    return worst


def run_suite(
    seed: int = 0,
    samples: int = 300,
    grid_n: int = 2048,
    inject_fault: bool = False,
) -> list[CheckResult]:
    """Run every registered property check with deterministic seeding."""
    results = []
    for index, (name, tolerance, fn) in enumerate(_CHECKS):
        rng = np.random.default_rng([seed, index])
        residual = float(fn(rng, samples, grid_n))
        passed = residual <= tolerance
        results.append(CheckResult(name, passed, residual, tolerance))
    if inject_fault:
        results.append(
            CheckResult("fault_injection", False, 1.0, 1e-12, "synthetic failure")
        )
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"  {r.detail}" if r.detail else ""
        lines.append(
            f"{status}  {r.name:<36} max_residual={r.residual:.3e}  tol={r.tolerance:.1e}{detail}"
        )
    n_pass = sum(1 for r in results if r.passed)
    lines.append(f"{n_pass}/{len(results)} properties passed")
    return "\n".join(lines)
