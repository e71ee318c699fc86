"""Energy functionals of the planar shear-stretch minimization problem.

The primary functional weights the symmetric and skew parts of the
microstrain R^T F - 1 by mu and muc. Several algebraically equivalent
forms are provided (expanded trace polynomial, trace-only form plus a
rotation-independent constant, rescaled form) because their mutual
agreement is part of the verification contract, together with the reduced
(minimized-over-rotations) energies and two variant functionals built on
the cofactor map and on the principal matrix logarithm.

All identities are expressed through t = tr(R^T F); dimension-specific
constants use ||identity||^2 = 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import LogUndefined, NonPositiveSingularValue
from .planar import (
    Mat2,
    SingularPair,
    normalize_angle,
    polar_angle,
    require_gl_plus,
    require_rotation,
    rotation,
    trace_invariants,
)
from .weights import Regime, Weights, classify


class Branch(enum.Enum):
    """Which side of the pitchfork a minimizer set lives on."""

    CLASSICAL = "classical"
    PITCHFORK = "pitchfork"


def _sym_skew_sq(x11: float, x12: float, x21: float, x22: float,
                 shift: float = 1.0) -> tuple[float, float]:
    # Frobenius norms squared of sym(X - shift*1) and skew(X - shift*1).
    sym_sq = (x11 - shift) ** 2 + (x22 - shift) ** 2 + 0.5 * (x12 + x21) ** 2
    skew_sq = 0.5 * (x12 - x21) ** 2
    return sym_sq, skew_sq


def shear_stretch_energy(r: Mat2, f: Mat2, w: Weights) -> float:
    """mu*||sym(R^T F - 1)||^2 + muc*||skew(R^T F - 1)||^2.

    Nonnegative; vanishes exactly when the microstrain is zero (muc > 0)
    or when its symmetric part is zero (muc = 0).
    """
    require_rotation(r)
    require_gl_plus(f)
    x = r.transpose() @ f
    sym_sq, skew_sq = _sym_skew_sq(x.e11, x.e12, x.e21, x.e22)
    return w.mu * sym_sq + w.muc * skew_sq


def energy_expanded(r: Mat2, f: Mat2, w: Weights) -> float:
    """Expanded trace-polynomial form of the shear-stretch energy.

    (mu-muc)/2 * tr((R^T F)^2) - 2 mu tr(R^T F) + (mu+muc)/2 ||F||^2 + 2 mu.
    Agrees with shear_stretch_energy identically; kept separate so the
    identity can be tested rather than assumed.
    """
    require_rotation(r)
    require_gl_plus(f)
    x = r.transpose() @ f
    tr_x = x.trace()
    tr_x_sq = x.e11**2 + 2.0 * x.e12 * x.e21 + x.e22**2  # tr(X @ X)
    return (
        0.5 * (w.mu - w.muc) * tr_x_sq
        - 2.0 * w.mu * tr_x
        + 0.5 * (w.mu + w.muc) * f.frobenius_sq()
        + 2.0 * w.mu
    )


class RingEnergy(NamedTuple):
    wring: float
    cring: float


def ring_energy(r: Mat2, f: Mat2) -> RingEnergy:
    """Split of the zero-couple-modulus energy into a part depending on R

    only through t = tr(R^T F), namely t^2/2 - 2t, plus the constant
    ||F||^2/2 - det F + 2. Their sum is shear_stretch_energy(r, f, (1, 0)).
    """
    require_rotation(r)
    require_gl_plus(f)
    t = (r.transpose() @ f).trace()
    wring = 0.5 * t * t - 2.0 * t
    cring = 0.5 * f.frobenius_sq() - f.det() + 2.0
    return RingEnergy(wring, cring)


def rescaled_energy(r: Mat2, f: Mat2, w: Weights) -> float:
    """The shear-stretch energy scaled by (singular radius / mu).

    Defined for non-classical weights only. Affinely related to the
    zero-couple-modulus rescaled energy of the shrunk gradient:
    value = lam^2 * rescaled_energy(r, ftilde, (1,0)) + c4(f), with c4
    independent of the rotation (see constants_chain).
    """
    rho = w.singular_radius()
    return (rho / w.mu) * shear_stretch_energy(r, f, w)


class ConstantsChain(NamedTuple):
    c1: float
    c2: float
    c3: float
    c4: float


def constants_chain(f: Mat2, w: Weights) -> ConstantsChain:
    """Rotation-independent constants of the reduction to the limit case.

    c1 = (mu+muc)/2 ||F||^2 + 2 mu, c2 = (rho/mu) c1, c3 = c2 - rho^2,
    c4 = c3 - lam^2 * c3_of_limit_case(ftilde). c4 is the offset in the
    affine relation documented at rescaled_energy.
    """
    require_gl_plus(f)
    rho = w.singular_radius()
    lam = w.scaling()
    frob_sq = f.frobenius_sq()
    c1 = 0.5 * (w.mu + w.muc) * frob_sq + 2.0 * w.mu
    c2 = (rho / w.mu) * c1
    c3 = c2 - rho * rho
    ftilde_frob_sq = frob_sq / (lam * lam)
    c3_limit = 2.0 * (0.5 * ftilde_frob_sq + 2.0) - 4.0
    c4 = c3 - lam * lam * c3_limit
    return ConstantsChain(c1, c2, c3, c4)


@dataclass(frozen=True)
class EnergyLevels:
    """Critical values of the zero-couple-modulus energy, largest first.

    w1 and w2 belong to the two rotations with symmetric microstrain; w3
    is the level of the non-classical branch and exists only when
    tr U >= 2. Always w1 >= w2, and w2 >= w3 whenever w3 exists, with
    equality w2 == w3 at tr U == 2.
    """

    w1: float
    w2: float
    w3: float | None


def critical_energy_levels(f: Mat2) -> EnergyLevels:
    inv = trace_invariants(f)
    ring_const = 0.5 * inv.frob_f**2 - inv.det_f + 2.0
    base = 0.5 * inv.tr_u**2
    w1 = base + 2.0 * inv.tr_u + ring_const
    w2 = base - 2.0 * inv.tr_u + ring_const
    w3 = -2.0 + ring_const if inv.tr_u >= 2.0 else None
    return EnergyLevels(w1, w2, w3)


class ReducedEnergy(NamedTuple):
    value: float
    branch: Branch


def reduced_energy(f: Mat2, w: Weights) -> ReducedEnergy:
    """Minimum of the shear-stretch energy over all rotations.

    Classical weights: mu * (||F||^2 - 2 tr U + 2), the squared distance
    of F to the rotation group scaled by mu; realized by the polar factor.

    Non-classical weights: evaluated at the closed-form optimal rotation
    set. The branch switches from the polar factor to the pitchfork pair
    exactly at tr U = singular radius and is continuous there; the
    pitchfork tag applies from the threshold on (right-continuous).
    """
    require_gl_plus(f)
    inv = trace_invariants(f)
    if classify(w) is Regime.CLASSICAL:
        return ReducedEnergy(
            w.mu * (inv.frob_f**2 - 2.0 * inv.tr_u + 2.0), Branch.CLASSICAL
        )
    rho = w.singular_radius()
    if inv.tr_u < rho:
        alpha = polar_angle(f)
        branch = Branch.CLASSICAL
    else:
        alpha = normalize_angle(polar_angle(f) + math.acos(rho / inv.tr_u))
        branch = Branch.PITCHFORK
    return ReducedEnergy(shear_stretch_energy(rotation(alpha), f, w), branch)


def reduced_energy_sv(pair: SingularPair | tuple[float, float]) -> float:
    """Reduced zero-couple-modulus energy from the singular values alone.

    (s1-1)^2 + (s2-1)^2 below the threshold s1 + s2 = 2, and (s1-s2)^2/2
    at or above it; the two pieces agree on the threshold. Symmetric in
    its arguments.
    """
    s1, s2 = float(pair[0]), float(pair[1])
    if not (math.isfinite(s1) and math.isfinite(s2) and s1 > 0.0 and s2 > 0.0):
        raise NonPositiveSingularValue(f"singular values must be positive, got {pair!r}")
    if s1 + s2 < 2.0:
        return (s1 - 1.0) ** 2 + (s2 - 1.0) ** 2
    return 0.5 * (s1 - s2) ** 2


def cofactor_energy(r: Mat2, f: Mat2, w: Weights) -> float:
    """Shear-stretch energy of the cofactor of the microstretch.

    Evaluates the sym/skew weights on cof(R^T F) - 1 directly. Equal to
    shear_stretch_energy(r, cofactor_transform(f), w), since in 2D the
    cofactor of R^T F is the transpose of R^T applied to the transformed
    gradient and the sym/skew norms are transpose-invariant.
    """
    require_rotation(r)
    require_gl_plus(f)
    x = r.transpose() @ f
    # cofactor (adjugate) of X: (x22, -x12; -x21, x11)
    sym_sq, skew_sq = _sym_skew_sq(x.e22, -x.e12, -x.e21, x.e11)
    return w.mu * sym_sq + w.muc * skew_sq


_LOG_BRANCH_TOL = 1e-14


def matrix_log_2x2(x: Mat2) -> Mat2:
    """Principal logarithm of a real 2x2 matrix, in closed form.

    Three cases: distinct positive real eigenvalues (spectral / divided
    difference form, with log1p to keep nearby eigenvalues accurate), a
    complex-conjugate pair (rotation-scaling form), and coincident
    eigenvalues (Jordan form; exact since the nilpotent part squares to
    zero). Raises LogUndefined when the spectrum touches (-inf, 0].
    """
    t = x.trace()
    d = x.det()
    disc = t * t - 4.0 * d
    tol = _LOG_BRANCH_TOL * max(1.0, t * t, 4.0 * abs(d))
    if disc > tol:
        if t <= 0.0 or d <= 0.0:
            raise LogUndefined(
                f"real eigenvalue on the closed negative axis (tr={t!r}, det={d!r})"
            )
        sq = math.sqrt(disc)
        lam1 = 0.5 * (t + sq)
        lam2 = d / lam1
        coeff = math.log1p(sq / lam2) / sq
        const = math.log(lam2)
        shift = lam2
    elif disc < -tol:
        half_t = 0.5 * t
        b = 0.5 * math.sqrt(-disc)
        coeff = math.atan2(b, half_t) / b
        const = 0.5 * math.log(d)
        shift = half_t
    else:
        if t <= 0.0:
            raise LogUndefined(f"double eigenvalue {0.5 * t!r} is not positive")
        lam = 0.5 * t
        coeff = 1.0 / lam
        const = math.log(lam)
        shift = lam
    return Mat2(
        const + coeff * (x.e11 - shift),
        coeff * x.e12,
        coeff * x.e21,
        const + coeff * (x.e22 - shift),
    )


def log_strain_energy(r: Mat2, f: Mat2, w: Weights) -> float:
    """mu*||sym log(R^T F)||^2 + muc*||skew log(R^T F)||^2.

    Defined only where the principal logarithm of R^T F exists.
    """
    require_rotation(r)
    require_gl_plus(f)
    lg = matrix_log_2x2(r.transpose() @ f)
    sym_sq, skew_sq = _sym_skew_sq(lg.e11, lg.e12, lg.e21, lg.e22, shift=0.0)
    return w.mu * sym_sq + w.muc * skew_sq


# ---------------------------------------------------------------------------
# Vectorized single-angle profiles for the brute-force grid. These evaluate
# the defining sym/skew forms entrywise, without the trace shortcuts used by
# the closed-form minimizers, so grid certification stays an independent
# route.
# ---------------------------------------------------------------------------

Profile = Callable[[np.ndarray], np.ndarray]


def _microstretch_entries(f: Mat2, alpha: np.ndarray):
    c, s = np.cos(alpha), np.sin(alpha)
    x11 = c * f.e11 + s * f.e21
    x12 = c * f.e12 + s * f.e22
    x21 = -s * f.e11 + c * f.e21
    x22 = -s * f.e12 + c * f.e22
    return x11, x12, x21, x22


def shear_stretch_profile(f: Mat2, w: Weights) -> Profile:
    """Vectorized alpha -> shear_stretch_energy(R(alpha), f, w)."""
    require_gl_plus(f)
    mu, muc = w.mu, w.muc

    def profile(alpha):
        a = np.asarray(alpha, dtype=float)
        x11, x12, x21, x22 = _microstretch_entries(f, a)
        sym_sq = (x11 - 1.0) ** 2 + (x22 - 1.0) ** 2 + 0.5 * (x12 + x21) ** 2
        skew_sq = 0.5 * (x12 - x21) ** 2
        return mu * sym_sq + muc * skew_sq

    return profile


def cofactor_shear_profile(f: Mat2, w: Weights) -> Profile:
    """Vectorized alpha -> cofactor_energy(R(alpha), f, w)."""
    require_gl_plus(f)
    mu, muc = w.mu, w.muc

    def profile(alpha):
        a = np.asarray(alpha, dtype=float)
        x11, x12, x21, x22 = _microstretch_entries(f, a)
        y11, y12, y21, y22 = x22, -x12, -x21, x11
        sym_sq = (y11 - 1.0) ** 2 + (y22 - 1.0) ** 2 + 0.5 * (y12 + y21) ** 2
        skew_sq = 0.5 * (y12 - y21) ** 2
        return mu * sym_sq + muc * skew_sq

    return profile


def log_strain_profile(f: Mat2, w: Weights, undefined_value: float = 1e9) -> Profile:
    """Vectorized alpha -> log_strain_energy(R(alpha), f, w).

    Angles where the principal logarithm does not exist are reported with
    the finite sentinel undefined_value, so the profile stays total on the
    circle (grid minimizers reject non-finite values by contract). The
    sentinel only needs to exceed the attainable minimum.
    """
    require_gl_plus(f)
    mu, muc = w.mu, w.muc
    d = f.det()

    def profile(alpha):
        arr = np.asarray(alpha, dtype=float)
        scalar = arr.ndim == 0
        a = np.atleast_1d(arr).astype(float)
        x11, x12, x21, x22 = _microstretch_entries(f, a)
        t = x11 + x22
        disc = t * t - 4.0 * d
        tol = _LOG_BRANCH_TOL * np.maximum(1.0, np.maximum(t * t, 4.0 * abs(d)))
        out = np.full(a.shape, float(undefined_value))

        def fill(mask, const, coeff, shift):
            l11 = const + coeff * (x11[mask] - shift)
            l12 = coeff * x12[mask]
            l21 = coeff * x21[mask]
            l22 = const + coeff * (x22[mask] - shift)
            sym_sq = l11**2 + l22**2 + 0.5 * (l12 + l21) ** 2
            skew_sq = 0.5 * (l12 - l21) ** 2
            out[mask] = mu * sym_sq + muc * skew_sq

        m = disc < -tol
        if m.any():
            half_t = 0.5 * t[m]
            b = 0.5 * np.sqrt(-disc[m])
            fill(m, 0.5 * math.log(d), np.arctan2(b, half_t) / b, half_t)
        m = (disc > tol) & (t > 0.0)
        if m.any():
            sq = np.sqrt(disc[m])
            lam1 = 0.5 * (t[m] + sq)
            lam2 = d / lam1
            fill(m, np.log(lam2), np.log1p(sq / lam2) / sq, lam2)
        m = (np.abs(disc) <= tol) & (t > 0.0)
        if m.any():
            lam = 0.5 * t[m]
            fill(m, np.log(lam), 1.0 / lam, lam)

        return float(out[0]) if scalar else out

    return profile
