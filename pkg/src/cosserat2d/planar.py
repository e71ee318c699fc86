"""Exact primitives for 2x2 real matrices and planar rotation angles.

Everything in this module is closed form: traces, determinants, the
rotation/stretch (polar) factorization, singular values and the
cofactor-transpose map. Membership in GL+(2) and SO(2) is validated,
never assumed, whenever a matrix crosses a function boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NonPositiveDeterminant, NotARotation

# Tolerance for SO(2) membership: orthogonality defect and |det - 1|.
ROTATION_TOL = 1e-12


def normalize_angle(radians: float) -> float:
    """Map an angle to the half-open interval (-pi, pi].

    The boundary is resolved in favor of +pi, so normalization is
    idempotent and pi is always preferred over -pi.
    """
    a = math.remainder(float(radians), math.tau)
    if a <= -math.pi:
        a += math.tau
    return a


def circular_distance(a: float, b: float) -> float:
    """Distance between two angles modulo 2*pi, in [0, pi]."""
    return abs(normalize_angle(a - b))


@dataclass(frozen=True)
class Mat2:
    """A 2x2 real matrix with row-major entries e11, e12, e21, e22.

    Entries must be finite; instances are immutable and safe to share.
    """

    e11: float
    e12: float
    e21: float
    e22: float

    def __post_init__(self):
        for name in ("e11", "e12", "e21", "e22"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"matrix entry {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diagonal(cls, d1: float, d2: float) -> "Mat2":
        return cls(d1, 0.0, 0.0, d2)

    @classmethod
    def from_array(cls, array) -> "Mat2":
        a = np.asarray(array, dtype=float)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {a.shape}")
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    def as_array(self) -> np.ndarray:
        return np.array([[self.e11, self.e12], [self.e21, self.e22]], dtype=float)

    def entries(self) -> tuple[float, float, float, float]:
        return (self.e11, self.e12, self.e21, self.e22)

    def trace(self) -> float:
        return self.e11 + self.e22

    def det(self) -> float:
        return self.e11 * self.e22 - self.e12 * self.e21

    def frobenius_sq(self) -> float:
        return self.e11**2 + self.e12**2 + self.e21**2 + self.e22**2

    def frobenius_norm(self) -> float:
        return math.sqrt(self.frobenius_sq())

    def transpose(self) -> "Mat2":
        return Mat2(self.e11, self.e21, self.e12, self.e22)

    def sym(self) -> "Mat2":
        off = 0.5 * (self.e12 + self.e21)
        return Mat2(self.e11, off, off, self.e22)

    def skew(self) -> "Mat2":
        off = 0.5 * (self.e12 - self.e21)
        return Mat2(0.0, off, -off, 0.0)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.e11 + other.e11, self.e12 + other.e12,
                    self.e21 + other.e21, self.e22 + other.e22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.e11 - other.e11, self.e12 - other.e12,
                    self.e21 - other.e21, self.e22 - other.e22)

    def __mul__(self, scalar: float) -> "Mat2":
        s = float(scalar)
        return Mat2(s * self.e11, s * self.e12, s * self.e21, s * self.e22)

    __rmul__ = __mul__


#: Quarter turn, i.e. rotation by +pi/2. Multiplying a vector by this matrix
#: corresponds to multiplication by the imaginary unit.
QUARTER_TURN = Mat2(0.0, -1.0, 1.0, 0.0)


def require_gl_plus(f: Mat2) -> Mat2:
    """Raise NonPositiveDeterminant unless det f > 0."""
    if not f.det() > 0.0:
        raise NonPositiveDeterminant(f"det F = {f.det()!r} must be positive")
    return f


def rotation_defect(r: Mat2) -> float:
    """Frobenius norm of R^T R - identity (orthogonality defect)."""
    g = r.transpose() @ r
    return math.sqrt((g.e11 - 1.0) ** 2 + g.e12**2 + g.e21**2 + (g.e22 - 1.0) ** 2)


def require_rotation(r: Mat2) -> Mat2:
    """Raise NotARotation unless r is in SO(2) within ROTATION_TOL."""
    if rotation_defect(r) > ROTATION_TOL or abs(r.det() - 1.0) > ROTATION_TOL:
        raise NotARotation(
            f"matrix is not a rotation (defect {rotation_defect(r):.3e}, det {r.det()!r})"
        )
    return r


def rotation(alpha: float) -> Mat2:
    """Counterclockwise rotation by alpha radians."""
    c, s = math.cos(alpha), math.sin(alpha)
    return Mat2(c, -s, s, c)


class TraceInvariants(NamedTuple):
    """The scalar invariants of F that drive every closed form here."""

    tr_f: float
    tr_jf: float
    tr_u: float
    det_f: float
    frob_f: float


def trace_invariants(f: Mat2) -> TraceInvariants:
    """Traces, determinant and Frobenius norm of F, plus the stretch trace.

    tr_jf is the trace of (quarter turn) * F. The stretch trace satisfies
    tr U = sqrt(||F||^2 + 2 det F) and also tr_f^2 + tr_jf^2 = (tr U)^2.
    """
    require_gl_plus(f)
    tr_f = f.e11 + f.e22
    tr_jf = f.e12 - f.e21
    det_f = f.det()
    frob_sq = f.frobenius_sq()
    tr_u = math.sqrt(frob_sq + 2.0 * det_f)
    return TraceInvariants(tr_f, tr_jf, tr_u, det_f, math.sqrt(frob_sq))


class PolarDecomposition(NamedTuple):
    angle: float
    rotation: Mat2
    stretch: Mat2


def polar_angle(f: Mat2) -> float:
    """Rotation angle of the polar factor of F, in (-pi, pi].

    Determined from the simultaneous equations cos(a) = tr F / tr U and
    sin(a) = -tr_jf / tr U via the two-argument arctangent; a bare arccos
    would lose the sign.
    """
    inv = trace_invariants(f)
    return math.atan2(-inv.tr_jf, inv.tr_f)


def polar_decompose(f: Mat2) -> PolarDecomposition:
    """Right polar decomposition F = R U with R in SO(2) and U symmetric

    positive definite. Returns the rotation angle, the rotation matrix and
    the stretch U = R^T F.
    """
    alpha_p = polar_angle(f)
    rot = rotation(alpha_p)
    stretch = rot.transpose() @ f
    return PolarDecomposition(alpha_p, rot, stretch)


class SingularPair(NamedTuple):
    """Singular values of a GL+(2) matrix, ordered sigma1 >= sigma2 > 0."""

    sigma1: float
    sigma2: float


def singular_values(f: Mat2) -> SingularPair:
    """Closed-form singular values: the roots of x^2 - (tr U) x + det F.

    The smaller one is recovered as det F / sigma1 to avoid cancellation
    for nearly singular inputs.
    """
    inv = trace_invariants(f)
    disc = max(inv.tr_u**2 - 4.0 * inv.det_f, 0.0)
    sigma1 = 0.5 * (inv.tr_u + math.sqrt(disc))
    sigma2 = inv.det_f / sigma1
    return SingularPair(sigma1, sigma2)


def cofactor_transform(f: Mat2) -> Mat2:
    """The transposed-cofactor map F -> det(F) * F^{-T}.

    An involution on GL+(2) that swaps the singular values' roles while
    preserving both the determinant and the stretch trace.
    """
    require_gl_plus(f)
    return Mat2(f.e22, -f.e21, -f.e12, f.e11)


def relative_angle(alpha: float, f: Mat2) -> float:
    """Angle of R(alpha)^T * polar(F), i.e. the rotation of R(alpha)

    relative to the continuum rotation. Returns polar_angle(f) - alpha,
    normalized to (-pi, pi].
    """
    return normalize_angle(polar_angle(f) - alpha)
