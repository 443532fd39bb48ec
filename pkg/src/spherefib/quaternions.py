"""Unit quaternions, the round metric on the 3-sphere, and deterministic sampling.

Scalar geometry goes through the frozen dataclass types below; heavy sweeps use
the (n, 4) float64 array kernels at the bottom of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12        # allowed drift on the unit-norm constraint
LEADING_SIGN_TOL = 1e-9  # magnitude threshold for the leading-sign convention


@dataclass(frozen=True)
class UnitQuaternion:
    """Point of the unit 3-sphere in quaternion space (w + xi + yj + zk).

    Components are renormalized on construction, so every instance satisfies
    the unit constraint to within floating-point roundoff.
    """

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)
        if n < 1e-8:
            raise ValueError("cannot normalize a near-zero quaternion")
        object.__setattr__(self, "w", float(self.w / n))
        object.__setattr__(self, "x", float(self.x / n))
        object.__setattr__(self, "y", float(self.y / n))
        object.__setattr__(self, "z", float(self.z / n))

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        """Hamilton product (ij = k); the constructor renormalizes the result."""
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return UnitQuaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    @classmethod
    def _exact(cls, w: float, x: float, y: float, z: float) -> "UnitQuaternion":
        # norm-preserving constructions (negation, conjugation) skip the
        # renormalizing constructor so they stay bitwise involutive
        q = object.__new__(UnitQuaternion)
        object.__setattr__(q, "w", w)
        object.__setattr__(q, "x", x)
        object.__setattr__(q, "y", y)
        object.__setattr__(q, "z", z)
        return q

    def __neg__(self) -> "UnitQuaternion":
        return UnitQuaternion._exact(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> "UnitQuaternion":
        return UnitQuaternion._exact(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "UnitQuaternion":
        """Group inverse; equals the conjugate on the unit sphere."""
        return self.conjugate()

    def dot(self, other: "UnitQuaternion") -> float:
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def distance_to(self, other: "UnitQuaternion") -> float:
        return geodesic_distance(self, other)

    def isclose(self, other: "UnitQuaternion", tol: float = 1e-9) -> bool:
        return geodesic_distance(self, other) <= tol

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    @property
    def imaginary_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def imaginary_direction(self) -> "ImaginaryUnit":
        """Unit direction of the imaginary part; undefined at +-1."""
        s = self.imaginary_norm
        if s < 1e-12:
            raise ValueError("imaginary direction undefined at +-1")
        return ImaginaryUnit(0.0, self.x / s, self.y / s, self.z / s)

    def axis_angle(self) -> tuple["ImaginaryUnit", float]:
        """Write the quaternion as exp_axis(axis, angle) with angle in (0, pi)."""
        return self.imaginary_direction(), math.atan2(self.imaginary_norm, self.w)


@dataclass(frozen=True)
class ImaginaryUnit(UnitQuaternion):
    """Unit quaternion with zero real part (a point of the imaginary 2-sphere)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if abs(self.w) > 1e-12:
            raise ValueError(f"real part {self.w!r} exceeds the purely-imaginary tolerance")
        # snap the real part to exactly zero and renormalize the rest
        s = self.imaginary_norm
        object.__setattr__(self, "w", 0.0)
        object.__setattr__(self, "x", self.x / s)
        object.__setattr__(self, "y", self.y / s)
        object.__setattr__(self, "z", self.z / s)


ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
I = ImaginaryUnit(0.0, 1.0, 0.0, 0.0)
J = ImaginaryUnit(0.0, 0.0, 1.0, 0.0)
K = ImaginaryUnit(0.0, 0.0, 0.0, 1.0)


def _clamp(v: float) -> float:
    return -1.0 if v < -1.0 else (1.0 if v > 1.0 else v)


def mul(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    return a * b


def conjugate(a: UnitQuaternion) -> UnitQuaternion:
    return a.conjugate()


def inverse(a: UnitQuaternion) -> UnitQuaternion:
    return a.inverse()


def exp_axis(axis: UnitQuaternion, t: float) -> UnitQuaternion:
    """cos(t) + axis * sin(t) for a purely imaginary unit axis."""
    if abs(axis.w) > 1e-12:
        raise ValueError("exp_axis requires a purely imaginary unit axis")
    s = math.sin(t)
    return UnitQuaternion(math.cos(t), s * axis.x, s * axis.y, s * axis.z)


def jk_circle_point(theta: float) -> ImaginaryUnit:
    """Point j*cos(theta) + k*sin(theta) on the great circle through j and k."""
    return ImaginaryUnit(0.0, 0.0, math.cos(theta), math.sin(theta))


def geodesic_distance(a: UnitQuaternion, b: UnitQuaternion) -> float:
    """Arc length between two points of the unit 3-sphere, in [0, pi].

    Equals arccos of the clamped inner product, computed in the
    cancellation-free form 2*atan2(|a-b|, |a+b|) so that distances far below
    sqrt(machine epsilon) are still resolved.
    """
    dw, dx, dy, dz = a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z
    sw, sx, sy, sz = a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z
    return 2.0 * math.atan2(
        math.sqrt(dw * dw + dx * dx + dy * dy + dz * dz),
        math.sqrt(sw * sw + sx * sx + sy * sy + sz * sz),
    )


def geodesic_midpoint(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    """Midpoint of the minimizing geodesic, computed as a * (a^-1 b)^(1/2).

    Raises for antipodal inputs, where the midpoint is not unique.
    """
    c = a.dot(b)
    if c <= -1.0 + 1e-12:
        raise ValueError("midpoint of antipodal points is not unique")
    r = a.inverse() * b
    s = r.imaginary_norm
    if s < 1e-15:
        return a
    half = math.atan2(s, r.w) / 2.0  # stable where cos rounds to 1
    k = math.sin(half) / s
    root = UnitQuaternion(math.cos(half), k * r.x, k * r.y, k * r.z)
    return a * root


def canonicalize_sign(
    p: UnitQuaternion, q: UnitQuaternion
) -> tuple[UnitQuaternion, UnitQuaternion]:
    """Resolve the joint sign ambiguity (p, q) ~ (-p, -q).

    Flips both signs so the first component of p with magnitude above
    LEADING_SIGN_TOL is positive. Idempotent.
    """
    for c in p.components:
        if abs(c) > LEADING_SIGN_TOL:
            if c < 0.0:
                return -p, -q
            return p, q
    return p, q  # unreachable for unit p; kept for safety


@dataclass(frozen=True)
class GreatCircle:
    """Great circle through two orthogonal points, parametrized as a cos t + b sin t."""

    a: UnitQuaternion
    b: UnitQuaternion

    def __post_init__(self) -> None:
        if abs(self.a.dot(self.b)) > 1e-12:
            raise ValueError("great-circle basis points must be orthogonal")

    def point_at(self, t: float) -> UnitQuaternion:
        c, s = math.cos(t), math.sin(t)
        return UnitQuaternion(
            c * self.a.w + s * self.b.w,
            c * self.a.x + s * self.b.x,
            c * self.a.y + s * self.b.y,
            c * self.a.z + s * self.b.z,
        )

    def distance_to_point(self, v: UnitQuaternion) -> float:
        """Geodesic distance from v to the circle.

        atan2 of the out-of-plane vs in-plane components of v; equal to arccos
        of the planar projection norm but stable for points on the circle.
        """
        pa, pb = v.dot(self.a), v.dot(self.b)
        rw = v.w - pa * self.a.w - pb * self.b.w
        rx = v.x - pa * self.a.x - pb * self.b.x
        ry = v.y - pa * self.a.y - pb * self.b.y
        rz = v.z - pa * self.a.z - pb * self.b.z
        out_of_plane = math.sqrt(rw * rw + rx * rx + ry * ry + rz * rz)
        return math.atan2(out_of_plane, math.sqrt(pa * pa + pb * pb))

    def contains_point(self, v: UnitQuaternion, tol: float = 1e-9) -> bool:
        return self.distance_to_point(v) <= tol

    def same_circle_as(self, other: "GreatCircle", tol: float = 1e-9) -> bool:
        """True when both circles are the same point set (equal 2-planes)."""
        return self.distance_to_point(other.a) <= tol and self.distance_to_point(other.b) <= tol

    def is_orthogonal_to(self, other: "GreatCircle", tol: float = 1e-9) -> bool:
        """True when every basis inner product between the two planes vanishes."""
        return (
            abs(self.a.dot(other.a)) <= tol
            and abs(self.a.dot(other.b)) <= tol
            and abs(self.b.dot(other.a)) <= tol
            and abs(self.b.dot(other.b)) <= tol
        )


def sample_uniform(seed: int, n: int) -> list[UnitQuaternion]:
    """n independent uniform points of the 3-sphere; deterministic in the seed."""
    return [from_array_row(row) for row in sample_uniform_array(seed, n)]


def sample_uniform_array(seed: int, n: int) -> np.ndarray:
    """Array form of sample_uniform: (n, 4) float64, rows unit-normalized."""
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, 4))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# Constants for the spiral lattice: 2*pi / sqrt(2) and 2*pi / psi where
# psi is the real root of psi^4 = psi + 4 (Alexa's super-Fibonacci spiral).
_SF_PHI = math.sqrt(2.0)
_SF_PSI = 1.533751168755204288118041


def quasi_uniform_lattice(n: int) -> np.ndarray:
    """Quasi-uniform deterministic lattice of n points on the 3-sphere.

    Double-spiral construction: low-discrepancy coverage without randomness,
    used as the seeding grid for brute-force extremization.
    """
    if n < 1:
        raise ValueError("need at least one lattice point")
    i = np.arange(n, dtype=np.float64)
    s = (i + 0.5) / n
    r = np.sqrt(s)
    rc = np.sqrt(1.0 - s)
    alpha = 2.0 * np.pi * s * n / _SF_PHI
    beta = 2.0 * np.pi * s * n / _SF_PSI
    return np.stack(
        [r * np.sin(alpha), r * np.cos(alpha), rc * np.sin(beta), rc * np.cos(beta)], axis=1
    )


def lattice_spacing(n: int) -> float:
    """Nominal spacing of an n-point lattice: (vol(S^3) / n)^(1/3)."""
    return (2.0 * math.pi**2 / n) ** (1.0 / 3.0)


def to_array(qs) -> np.ndarray:
    """Stack an iterable of UnitQuaternion into an (n, 4) array."""
    return np.array([q.components for q in qs], dtype=np.float64)


def from_array_row(row) -> UnitQuaternion:
    return UnitQuaternion(float(row[0]), float(row[1]), float(row[2]), float(row[3]))


# ---------------------------------------------------------------------------
# (n, 4) array kernels. Broadcasting follows numpy rules; rows are (w, x, y, z).

def qmul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched Hamilton product."""
    w1, x1, y1, z1 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w2, x2, y2, z2 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def qconj_array(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out[..., 1:] *= -1.0
    return out


def qdot_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sum(a * b, axis=-1)


def qdistance_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched geodesic distance, in the same stable atan2 form as the scalar."""
    diff = np.linalg.norm(a - b, axis=-1)
    summ = np.linalg.norm(a + b, axis=-1)
    return 2.0 * np.arctan2(diff, summ)


def qnormalize_array(a: np.ndarray) -> np.ndarray:
    return a / np.linalg.norm(a, axis=-1, keepdims=True)
