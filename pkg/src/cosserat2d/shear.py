"""Simple shear: closed-form optimal rotations, the glide family, and the
rotation-cancellation predicate.

For a simple shear of amount gamma the stretch trace is sqrt(4 + gamma^2),
so the pitchfork branch of the zero-couple-modulus energy is always active
and one of the two optimal microrotations is the identity; the other is a
rotation by twice the polar angle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InadmissibleKappa
from .minimizers import optimal_set
from .planar import Mat2, polar_angle, require_gl_plus, trace_invariants
from .weights import Weights

_ZERO_COUPLE = Weights(1.0, 0.0)

#: Tolerances of the cancellation predicate on tr F and tr U.
TRACE_TOL = 1e-10
STRETCH_TOL = 1e-12


def simple_shear(gamma: float) -> Mat2:
    """Volume-preserving shear (1, gamma; 0, 1)."""
    return Mat2(1.0, float(gamma), 0.0, 1.0)


@dataclass(frozen=True)
class ShearSolution:
    """Optimal zero-couple-modulus response to a simple shear.

    angles contains the identity rotation (angle 0) and the rotation by
    2 * alpha_p, coinciding at gamma = 0; energy equals gamma^2 / 2. The
    first entry of angles is alpha_p + beta under this package's sign
    convention.
    """

    gamma: float
    alpha_p: float
    angles: tuple[float, float]
    energy: float
    tr_u: float


def shear_solution(gamma: float) -> ShearSolution:
    f = simple_shear(gamma)
    ms = optimal_set(f, _ZERO_COUPLE)
    return ShearSolution(
        gamma=float(gamma),
        alpha_p=polar_angle(f),
        angles=(ms.alpha_plus, ms.alpha_minus),
        energy=ms.energy,
        tr_u=trace_invariants(f).tr_u,
    )


def glide_family(gamma: float, kappa: float) -> Mat2:
    """Simple shear perturbed by kappa * diag(1, -1).

    Shares tr F and the stretch trace with the unperturbed shear for every
    admissible kappa, so the cancellation property survives; determinant
    drops to 1 - kappa^2, hence |kappa| < 1 is required.
    """
    if not abs(kappa) < 1.0:
        raise InadmissibleKappa(f"|kappa| must be < 1, got {kappa!r}")
    return Mat2(1.0 + float(kappa), float(gamma), 0.0, 1.0 - float(kappa))


def cancellation_check(f: Mat2) -> bool:
    """Whether one optimal relative rotation cancels the polar rotation.

    True exactly on the set tr F = 2 and tr U >= 2 (within tolerance);
    there the identity rotation belongs to the optimal set of the
    zero-couple-modulus energy.
    """
    require_gl_plus(f)
    inv = trace_invariants(f)
    return abs(inv.tr_f - 2.0) <= TRACE_TOL and inv.tr_u >= 2.0 - STRETCH_TOL
