"""Extremal geometry of nearby fibers: hot/cold circles and commutator identities.

For a diagonal point (z, z) and an offset graph {(y, e^{q theta} y e^{-q phi})}
the product-metric distance collapses to (1/sqrt 2) d(z, e^{-q theta} z e^{q phi}),
whose minimizing set (the hot circle) is the great circle through 1 and the axis,
and whose maximizing set (the cold circle) is the orthogonal complement circle.
Everything else here reduces fiber pairs to that configuration and maps the two
extremal circles back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fibration import (
    GreatThreeSphere,
    PairIsometry,
    petro_discrepancy,
)
from .quaternions import (
    I,
    J,
    K,
    ONE,
    GreatCircle,
    ImaginaryUnit,
    UnitQuaternion,
    exp_axis,
    from_array_row,
    geodesic_distance,
    jk_circle_point,
    lattice_spacing,
    qdistance_array,
    qmul_array,
    quasi_uniform_lattice,
)
from .search import refine_extremum

SQRT2 = math.sqrt(2.0)
DEGENERATE_SPREAD_TOL = 1e-6


@dataclass(frozen=True)
class OffsetSphereParams:
    """Common-axis offset sphere {(y, e^{axis*theta} y e^{-axis*phi})}, 0 < phi < theta < pi."""

    axis: ImaginaryUnit
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 < self.phi < self.theta < math.pi:
            raise ValueError("offset angles must satisfy 0 < phi < theta < pi")

    def to_sphere(self) -> GreatThreeSphere:
        return GreatThreeSphere(exp_axis(self.axis, self.theta), exp_axis(self.axis, self.phi))

    def closest_distance(self) -> float:
        """Distance from the diagonal attained on the hot circle."""
        return (self.theta - self.phi) / SQRT2

    def furthest_distance(self) -> float:
        """Distance attained on the cold circle; wraps past antipodality."""
        return min(self.theta + self.phi, 2.0 * math.pi - self.theta - self.phi) / SQRT2


def point_to_diagonal_offset_distance(z: UnitQuaternion, params: OffsetSphereParams) -> float:
    """(1/sqrt 2) d(z, e^{-axis theta} z e^{axis phi}): distance from (z,z) to the offset sphere."""
    moved = exp_axis(params.axis, -params.theta) * z * exp_axis(params.axis, params.phi)
    return geodesic_distance(z, moved) / SQRT2


def conjugation_orbit_point(z: UnitQuaternion, theta: float, axis: ImaginaryUnit) -> UnitQuaternion:
    """z^-1 e^{axis theta} z; stays at distance theta from 1 for every z."""
    return z.inverse() * exp_axis(axis, theta) * z


def positive_completion(axis: ImaginaryUnit) -> tuple[ImaginaryUnit, ImaginaryUnit]:
    """(b, c) with (axis, b, c) a positively oriented orthonormal imaginary basis."""
    seed = min((I, J, K), key=lambda e: abs(axis.dot(e)))
    proj = (seed.x - axis.x * seed.dot(axis),
            seed.y - axis.y * seed.dot(axis),
            seed.z - axis.z * seed.dot(axis))
    b = ImaginaryUnit(0.0, *proj)
    c_quat = axis * b  # product of orthogonal imaginaries is their cross product
    return b, ImaginaryUnit(0.0, c_quat.x, c_quat.y, c_quat.z)


def hot_cold_analytic(params: OffsetSphereParams) -> tuple[GreatCircle, GreatCircle]:
    """Hot circle through 1 and the axis; cold circle through the completion pair."""
    b, c = positive_completion(params.axis)
    return GreatCircle(ONE, params.axis), GreatCircle(b, c)


@dataclass(frozen=True)
class NumericExtrema:
    """Refined argmin/argmax sets of the diagonal distance over a lattice."""

    hot_points: tuple[UnitQuaternion, ...]
    cold_points: tuple[UnitQuaternion, ...]
    hot_value: float
    cold_value: float
    spread: float
    degenerate: bool


def diagonal_extrema(
    sphere: GreatThreeSphere,
    grid_size: int = 10_000,
    n_seeds: int = 24,
    refine_steps: int = 50,
    value_band: float = 1e-3,
) -> NumericExtrema:
    """Numeric hot/cold sets of the diagonal relative to an arbitrary graph sphere.

    Lattice sweep of (1/sqrt 2) d(z, p^-1 z q), then pattern-search refinement of
    the best seeds on each side; returns refined points within value_band of the
    extremal values. degenerate flags spread below the near-parallel threshold.
    """
    if grid_size < 10_000:
        raise ValueError("extremal grid must have at least 10^4 points")
    grid = quasi_uniform_lattice(grid_size)
    pinv = np.array(sphere.p.inverse().components)
    q = np.array(sphere.q.components)
    inner = qmul_array(qmul_array(pinv[None, :], grid), q[None, :])
    vals = qdistance_array(grid, inner) / SQRT2
    spread = float(vals.max() - vals.min())
    degenerate = spread < DEGENERATE_SPREAD_TOL

    def objective(z: UnitQuaternion) -> float:
        return sphere.distance_to_point((z, z))

    order = np.argsort(vals, kind="stable")
    step0 = lattice_spacing(grid_size)
    lo = [
        refine_extremum(objective, from_array_row(grid[i]), step0, refine_steps)
        for i in order[:n_seeds]
    ]
    hi = [
        refine_extremum(objective, from_array_row(grid[i]), step0, refine_steps, maximize=True)
        for i in order[-n_seeds:]
    ]
    hot_value = min(v for _, v in lo)
    cold_value = max(v for _, v in hi)
    return NumericExtrema(
        hot_points=tuple(pt for pt, v in lo if v <= hot_value + value_band),
        cold_points=tuple(pt for pt, v in hi if v >= cold_value - value_band),
        hot_value=hot_value,
        cold_value=cold_value,
        spread=spread,
        degenerate=degenerate,
    )


def hot_cold_numeric(
    params: OffsetSphereParams,
    grid_size: int = 10_000,
    n_seeds: int = 24,
    refine_steps: int = 50,
    value_band: float = 1e-3,
) -> NumericExtrema:
    """Numeric oracle for hot_cold_analytic."""
    return diagonal_extrema(params.to_sphere(), grid_size, n_seeds, refine_steps, value_band)


# ---------------------------------------------------------------------------
# The commutator left over after moving the reference fiber to the diagonal.


def rotation_commutator(alpha: float, epsilon: float, theta: float) -> UnitQuaternion:
    """Group commutator e^{j_theta eps} e^{-i alpha} e^{-j_theta eps} e^{i alpha}."""
    a = exp_axis(jk_circle_point(theta), epsilon)
    b = exp_axis(I, alpha)
    return a * b.inverse() * a.inverse() * b


def rotation_commutator_closed_form(alpha: float, epsilon: float, theta: float) -> UnitQuaternion:
    """Componentwise expansion of rotation_commutator."""
    c, s = math.cos(epsilon), math.sin(epsilon)
    # jk phase is theta - alpha + pi/2; the sign is pinned by
    # test_commutator_phase_sign_regression.
    phase = theta - alpha + math.pi / 2.0
    amp = 2.0 * c * s * math.sin(alpha)
    return UnitQuaternion(
        c * c + s * s * math.cos(2.0 * alpha),
        s * s * math.sin(2.0 * alpha),
        amp * math.cos(phase),
        amp * math.sin(phase),
    )


def aligned_commutator(alpha: float, epsilon: float, theta: float) -> UnitQuaternion:
    """rotation_commutator conjugated so its jk part points along j_theta."""
    half = exp_axis(I, 0.5 * (math.pi / 2.0 - alpha))
    return half.inverse() * rotation_commutator(alpha, epsilon, theta) * half


def aligned_commutator_closed_form(alpha: float, epsilon: float, theta: float) -> UnitQuaternion:
    c, s = math.cos(epsilon), math.sin(epsilon)
    amp = 2.0 * c * s * math.sin(alpha)
    return UnitQuaternion(
        c * c + s * s * math.cos(2.0 * alpha),
        s * s * math.sin(2.0 * alpha),
        amp * math.cos(theta),
        amp * math.sin(theta),
    )


def aligned_commutator_first_order(alpha: float, epsilon: float, theta: float) -> UnitQuaternion:
    """normalize(1 + 2 eps sin(alpha) j_theta); differs from the exact value at O(eps^2)."""
    amp = 2.0 * epsilon * math.sin(alpha)
    return UnitQuaternion(1.0, 0.0, amp * math.cos(theta), amp * math.sin(theta))


# ---------------------------------------------------------------------------
# Hot/cold frames on the reference fiber of the latitude fibration.


@dataclass(frozen=True)
class HotColdFrame:
    """Hot/cold circles (first-factor projections) for one neighbor direction theta."""

    theta: float
    hot: GreatCircle
    cold: GreatCircle
    q_exact: UnitQuaternion
    q_first_order: UnitQuaternion

    def __post_init__(self) -> None:
        if not self.hot.is_orthogonal_to(self.cold, tol=1e-9):
            raise ValueError("hot and cold circles must span orthogonal planes")

    @property
    def approx_error(self) -> float:
        return geodesic_distance(self.q_exact, self.q_first_order)


def reference_fiber_maps(alpha: float) -> tuple[PairIsometry, PairIsometry]:
    """(T, V): T moves the reference fiber to the diagonal, V aligns the neighbor axis.

    T(x, y) = (x, y e^{i alpha}); V right-translates both factors by
    c = e^{-i(alpha/2 + pi/4)}, the zero-offset limit of the exact axis aligner
    (the same rotation works for every neighbor direction theta).
    """
    t = PairIsometry((ONE, ONE), (ONE, exp_axis(I, -alpha)))
    c_inv = exp_axis(I, alpha / 2.0 + math.pi / 4.0)
    v = PairIsometry((ONE, c_inv), (ONE, c_inv))
    return t, v


def hot_cold_frame(alpha: float, theta: float, epsilon: float = 0.0) -> HotColdFrame:
    """Limit hot/cold circles on the reference fiber facing direction theta.

    Circles are the epsilon -> 0 limits (exact for the analytic configuration);
    the commutator fields are evaluated at the given epsilon.
    """
    if not 0.0 < alpha <= math.pi / 6.0 + 1e-15:
        raise ValueError("latitude angle must lie in (0, pi/6]")
    t, v = reference_fiber_maps(alpha)
    back = v.compose(t).inverse()
    axis = jk_circle_point(theta)
    b, c = positive_completion(axis)
    hot0, cold0 = GreatCircle(ONE, axis), GreatCircle(b, c)

    def pull(z: UnitQuaternion) -> UnitQuaternion:
        return back.apply((z, z))[0]

    return HotColdFrame(
        theta=theta,
        hot=GreatCircle(pull(hot0.a), pull(hot0.b)),
        cold=GreatCircle(pull(cold0.a), pull(cold0.b)),
        q_exact=aligned_commutator(alpha, epsilon, theta),
        q_first_order=aligned_commutator_first_order(alpha, epsilon, theta),
    )


def hot_pivot(alpha: float) -> UnitQuaternion:
    """Common point of every hot circle: i e^{i(alpha/2 - pi/4)}."""
    return I * exp_axis(I, alpha / 2.0 - math.pi / 4.0)


def cold_pivot(alpha: float) -> UnitQuaternion:
    """Common point of every cold circle: e^{i(alpha/2 - pi/4)}."""
    return exp_axis(I, alpha / 2.0 - math.pi / 4.0)


def eggbeater_sweep(alpha: float, epsilon: float, n_frames: int) -> list[HotColdFrame]:
    """Frames at theta = 2 pi k / n_frames; hot and cold circles spin about their pivots."""
    if n_frames < 4:
        raise ValueError("sweep needs at least 4 frames")
    if epsilon <= 0.0:
        raise ValueError("sweep offset must be positive")
    return [
        hot_cold_frame(alpha, 2.0 * math.pi * k / n_frames, epsilon) for k in range(n_frames)
    ]


# ---------------------------------------------------------------------------
# Exact reduction of a disjoint pair to the diagonal configuration.


@dataclass(frozen=True)
class DiagonalReduction:
    """Result of reduce_to_diagonal.

    isometry U maps the first sphere to the diagonal and the second to
    `reduced`; params is the common-axis form of `reduced` (None when the pair
    is near-parallel, or on numeric alignment failure with near_parallel False).
    """

    isometry: PairIsometry
    reduced: GreatThreeSphere
    params: OffsetSphereParams | None
    near_parallel: bool
    spread: float


def _axis_aligner(src: ImaginaryUnit, dst: ImaginaryUnit) -> UnitQuaternion:
    """c with c^-1 src c = dst (conjugation rotates src onto dst)."""
    d = src.dot(dst)
    if d >= 1.0 - 1e-15:
        return ONE
    if d <= -1.0 + 1e-15:
        axis, _ = positive_completion(dst)
        return exp_axis(axis, -math.pi / 2.0)
    cross = src * dst  # imaginary part is src x dst
    n = ImaginaryUnit(0.0, cross.x, cross.y, cross.z)
    return exp_axis(n, -math.acos(max(-1.0, min(1.0, d))) / 2.0)


def _sphere_mismatch(a: GreatThreeSphere, b: GreatThreeSphere) -> float:
    direct = max(geodesic_distance(a.p, b.p), geodesic_distance(a.q, b.q))
    flipped = max(geodesic_distance(a.p, -b.p), geodesic_distance(a.q, -b.q))
    return min(direct, flipped)


def reduce_to_diagonal(
    s1: GreatThreeSphere,
    s2: GreatThreeSphere,
    intersect_tol: float = 1e-12,
    degenerate_spread_tol: float = DEGENERATE_SPREAD_TOL,
) -> DiagonalReduction:
    """Isometry taking s1 to the diagonal and s2 to a common-axis offset sphere.

    The base reduction (x, y) -> (x, p1^-1 y q1) leaves s2 as graph(r, s); a
    diagonal right translation then rotates the axis of s exactly onto the axis
    of r, and the joint sign flip fixes the angle ordering, so every disjoint
    non-near-parallel pair lands exactly in the 0 < phi < theta form. The
    intersection guard is deliberately tighter than the disjointness decision
    tolerance: nearly-touching pairs still reduce.
    """
    if petro_discrepancy(s1, s2) <= intersect_tol:
        raise ValueError("spheres intersect: no diagonal offset configuration exists")
    base = PairIsometry((ONE, ONE), (s1.p.inverse(), s1.q.inverse()))
    reduced0 = base.transform_sphere(s2)
    r, s = reduced0.p, reduced0.q
    theta_r = geodesic_distance(r, ONE)
    theta_s = geodesic_distance(s, ONE)
    if theta_s < theta_r:
        big_q, small_q, big, small = r, s, theta_r, theta_s
    else:
        big_q, small_q, big, small = -r, -s, math.pi - theta_r, math.pi - theta_s
    spread = SQRT2 * min(small, math.pi - big)
    if spread < degenerate_spread_tol:
        return DiagonalReduction(base, reduced0, None, True, spread)

    axis = big_q.imaginary_direction()
    c = _axis_aligner(small_q.imaginary_direction(), axis)
    if c.isclose(ONE, tol=1e-15):
        isometry, reduced = base, reduced0
    else:
        v = PairIsometry((ONE, c.inverse()), (ONE, c.inverse()))
        isometry = v.compose(base)
        reduced = v.transform_sphere(reduced0)
    params = OffsetSphereParams(axis=axis, theta=big, phi=small)
    if _sphere_mismatch(params.to_sphere(), reduced) > 1e-8:
        return DiagonalReduction(isometry, reduced, None, False, spread)
    return DiagonalReduction(isometry, reduced, params, False, spread)
