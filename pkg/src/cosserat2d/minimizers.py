"""Closed-form critical rotations and optimal rotation sets.

For classical weights the polar factor is the unique minimizer. For
non-classical weights a pitchfork opens at tr U = singular radius: the
minimizer splits into the symmetric pair alpha_p +/- arccos(rho / tr U).
At the threshold the pair coincides with the polar angle and is still
tagged as the pitchfork branch, keeping the branch map right-continuous
in tr U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .energy import Branch, EnergyLevels, critical_energy_levels, shear_stretch_energy
from .planar import (
    Mat2,
    normalize_angle,
    polar_angle,
    require_gl_plus,
    require_rotation,
    rotation,
    trace_invariants,
)
from .weights import Regime, Weights, classify


@dataclass(frozen=True)
class MinimizerSet:
    """Global minimizers of the shear-stretch energy for one (F, weights).

    angles holds one angle on the classical branch and the ordered pair
    (alpha_p + beta, alpha_p - beta) on the pitchfork branch; the two
    entries coincide exactly at the bifurcation threshold. beta is the
    relative rotation magnitude, zero on the classical branch.
    """

    branch: Branch
    angles: tuple[float, ...]
    energy: float
    beta: float

    @property
    def alpha_plus(self) -> float:
        return self.angles[0]

    @property
    def alpha_minus(self) -> float:
        return self.angles[-1]


@dataclass(frozen=True)
class CriticalSet:
    """All critical rotations of the zero-couple-modulus energy.

    The pair with symmetric microstrain (the polar angle and its opposite)
    always exists; the non-classical pair solving tr(R^T F) = 2 exists if
    and only if tr U >= 2 and degenerates to the polar angle at equality.
    """

    classical_pair: tuple[float, float]
    nonclassical: tuple[float, float] | None
    levels: EnergyLevels


def critical_set(f: Mat2) -> CriticalSet:
    inv = trace_invariants(f)
    alpha_p = polar_angle(f)
    pair = (alpha_p, normalize_angle(alpha_p + math.pi))
    nonclassical = None
    if inv.tr_u >= 2.0:
        beta = math.acos(2.0 / inv.tr_u)
        nonclassical = (
            normalize_angle(alpha_p + beta),
            normalize_angle(alpha_p - beta),
        )
    return CriticalSet(pair, nonclassical, critical_energy_levels(f))


def relative_rotation_magnitude(tr_u: float, w: Weights) -> float:
    """The bifurcation diagram: beta(tr U) for non-classical weights.

    Zero below the singular radius, arccos(rho / tr U) at and above it.
    Continuous but with unbounded one-sided slope at the threshold.
    """
    if not tr_u > 0.0:
        raise ValueError(f"tr U must be positive, got {tr_u!r}")
    rho = w.singular_radius()
    if tr_u < rho:
        return 0.0
    return math.acos(rho / tr_u)


def optimal_set(f: Mat2, w: Weights) -> MinimizerSet:
    """The set of energy-minimizing rotations in closed form.

    The energy field equals the reduced energy; on the pitchfork branch
    both angles realize it.
    """
    require_gl_plus(f)
    inv = trace_invariants(f)
    alpha_p = polar_angle(f)
    if classify(w) is Regime.NON_CLASSICAL:
        rho = w.singular_radius()
        if inv.tr_u >= rho:
            beta = math.acos(rho / inv.tr_u)
            plus = normalize_angle(alpha_p + beta)
            minus = normalize_angle(alpha_p - beta)
            value = shear_stretch_energy(rotation(plus), f, w)
            return MinimizerSet(Branch.PITCHFORK, (plus, minus), value, beta)
    value = shear_stretch_energy(rotation(alpha_p), f, w)
    return MinimizerSet(Branch.CLASSICAL, (alpha_p,), value, 0.0)


_DEFAULT_WEIGHTS = Weights(1.0, 0.0)


def stationarity_residual(alpha: float, f: Mat2, w: Weights = _DEFAULT_WEIGHTS) -> float:
    """Analytic d/dalpha of the shear-stretch energy along the circle.

    With t(alpha) = tr(R(alpha)^T F) the derivative factors as
    ((mu - muc) * t - 2 mu) * t'(alpha); for the default weights this is
    (t - 2) * t'. Vanishes at every angle reported by critical_set.
    """
    inv = trace_invariants(f)
    c, s = math.cos(alpha), math.sin(alpha)
    t = inv.tr_f * c - inv.tr_jf * s
    t_prime = -inv.tr_f * s - inv.tr_jf * c
    return ((w.mu - w.muc) * t - 2.0 * w.mu) * t_prime


def microstrain_symmetry_defect(r: Mat2, f: Mat2) -> float:
    """Magnitude of the off-diagonal skew entry of R^T F.

    Equals |sin(beta)| * tr U / 2 with beta the rotation of R relative to
    the polar factor; zero exactly at the polar factor and its opposite.
    """
    require_rotation(r)
    require_gl_plus(f)
    x = r.transpose() @ f
    return abs(0.5 * (x.e12 - x.e21))


def signed_defect_profile(f: Mat2) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized signed skew entry of R(alpha)^T F.

    Crosses zero transversally at the polar angle and its opposite, which
    makes it the natural input for a sign-change root scan.
    """
    require_gl_plus(f)

    def profile(alpha):
        a = np.asarray(alpha, dtype=float)
        c, s = np.cos(a), np.sin(a)
        x12 = c * f.e12 + s * f.e22
        x21 = -s * f.e11 + c * f.e21
        return 0.5 * (x12 - x21)

    return profile
