"""Great 3-spheres in the product of two 3-spheres, and their fibrations.

A great 3-sphere is the graph {(x, p x q^-1)} of an isometry between the two
factors. A distance-decreasing self-map f of the 3-sphere induces the fiber
family p -> graph(p, f(p)), whose fibers are pairwise disjoint by the Petro
criterion: two graphs are disjoint exactly when d(p1, p2) != d(q1, q2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quaternions import (
    I,
    ONE,
    ImaginaryUnit,
    UnitQuaternion,
    canonicalize_sign,
    exp_axis,
    from_array_row,
    geodesic_distance,
    lattice_spacing,
    qconj_array,
    qdistance_array,
    qmul_array,
    quasi_uniform_lattice,
    sample_uniform_array,
    to_array,
)
from .search import refine_extremum

SQRT2 = math.sqrt(2.0)

ProductPoint = tuple[UnitQuaternion, UnitQuaternion]

DISJOINT_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9
PARALLEL_SPREAD_TOL = 1e-9


def product_distance(a: ProductPoint, b: ProductPoint) -> float:
    """Product metric on S^3 x S^3 (each factor carrying the unit-sphere metric)."""
    return math.hypot(geodesic_distance(a[0], b[0]), geodesic_distance(a[1], b[1]))


@dataclass(frozen=True)
class GreatThreeSphere:
    """The graph {(x, p x q^-1) : x in S^3}, stored with canonical joint sign."""

    p: UnitQuaternion
    q: UnitQuaternion

    def __post_init__(self) -> None:
        p, q = canonicalize_sign(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def diagonal(cls) -> "GreatThreeSphere":
        return cls(ONE, ONE)

    def image_of(self, x: UnitQuaternion) -> UnitQuaternion:
        """Second coordinate of the graph point over x."""
        return self.p * x * self.q.inverse()

    def point_over(self, x: UnitQuaternion) -> ProductPoint:
        return (x, self.image_of(x))

    def contains(self, point: ProductPoint, tol: float = MEMBERSHIP_TOL) -> bool:
        x, y = point
        return geodesic_distance(y, self.image_of(x)) <= tol

    def distance_to_point(self, point: ProductPoint) -> float:
        """Closed-form product-metric distance from a point to this sphere.

        Moving the point to the diagonal and minimizing over the sphere puts
        the optimum at a geodesic midpoint, which collapses the distance to
        (1/sqrt(2)) * d(a, p^-1 b q).
        """
        a, b = point
        return geodesic_distance(a, self.p.inverse() * b * self.q) / SQRT2


def petro_discrepancy(s1: GreatThreeSphere, s2: GreatThreeSphere) -> float:
    """|d(p1,p2) - d(q1,q2)| minimized over the joint sign flip of the second pair."""
    direct = abs(
        geodesic_distance(s1.p, s2.p) - geodesic_distance(s1.q, s2.q)
    )
    flipped = abs(
        geodesic_distance(s1.p, -s2.p) - geodesic_distance(s1.q, -s2.q)
    )
    return min(direct, flipped)


def petro_disjoint(s1: GreatThreeSphere, s2: GreatThreeSphere, tol: float = DISJOINT_TOL) -> bool:
    """Petro criterion: graphs are disjoint exactly when the distances differ."""
    return petro_discrepancy(s1, s2) > tol


def brute_force_min_distance(
    s1: GreatThreeSphere, s2: GreatThreeSphere, grid_size: int = 1000
) -> float:
    """Minimum product-metric distance between two graphs, by grid search.

    Sweeps x over a quasi-uniform lattice, evaluating the closed-form distance
    from (x, p1 x q1^-1) to the second sphere, then refines the best grid point
    by local descent. Oracle counterpart of petro_disjoint.
    """
    if grid_size < 1000:
        raise ValueError("brute-force grid must have at least 1000 points")
    u = s2.p.inverse() * s1.p
    w = s1.q.inverse() * s2.q
    grid = quasi_uniform_lattice(grid_size)
    inner = qmul_array(qmul_array(np.array(u.components)[None, :], grid), np.array(w.components)[None, :])
    vals = qdistance_array(grid, inner) / SQRT2
    best = int(np.argmin(vals))

    def objective(x: UnitQuaternion) -> float:
        return s2.distance_to_point(s1.point_over(x))

    _, refined = refine_extremum(
        objective, from_array_row(grid[best]), lattice_spacing(grid_size)
    )
    return min(float(vals[best]), refined)


def _pointwise_distances(s1: GreatThreeSphere, s2: GreatThreeSphere, n_samples: int) -> np.ndarray:
    u = s2.p.inverse() * s1.p
    w = s1.q.inverse() * s2.q
    grid = quasi_uniform_lattice(n_samples)
    inner = qmul_array(qmul_array(np.array(u.components)[None, :], grid), np.array(w.components)[None, :])
    return qdistance_array(grid, inner) / SQRT2


def pointwise_distance_stats(
    s1: GreatThreeSphere, s2: GreatThreeSphere, n_samples: int = 512
) -> tuple[float, float, float]:
    """(min, max, variance) of x -> d((x, p1 x q1^-1), s2) over a lattice sweep."""
    d = _pointwise_distances(s1, s2, n_samples)
    return float(d.min()), float(d.max()), float(d.var())


def fibers_parallel(s1: GreatThreeSphere, s2: GreatThreeSphere, n_samples: int = 512) -> bool:
    """True when the pointwise distance from s1 to s2 is constant over samples."""
    if not petro_disjoint(s1, s2):
        raise ValueError("fibers intersect; parallelism is undefined")
    dmin, dmax, _ = pointwise_distance_stats(s1, s2, n_samples)
    return (dmax - dmin) <= PARALLEL_SPREAD_TOL


# ---------------------------------------------------------------------------
# Self-maps of the 3-sphere and the fibrations they induce.

MAX_LATITUDE = math.pi / 6


def hopf_map(p: UnitQuaternion) -> ImaginaryUnit:
    """Hopf map p -> p i p^-1 onto the imaginary unit 2-sphere."""
    r = p * I * p.inverse()
    return ImaginaryUnit(0.0, r.x, r.y, r.z)


def hopf_latitude(p: UnitQuaternion, alpha: float) -> UnitQuaternion:
    """Conjugate of the rotation cos(alpha) + i sin(alpha) by p.

    Maps the 3-sphere onto the latitude-alpha 2-sphere around 1; constant on
    Hopf circles and distance-decreasing for 0 <= alpha <= pi/6.
    """
    if not 0.0 <= alpha <= MAX_LATITUDE + 1e-15:
        raise ValueError("latitude angle must lie in [0, pi/6]")
    return p * exp_axis(I, alpha) * p.inverse()


def homogeneity_residual(alpha: float, q: UnitQuaternion, p: UnitQuaternion) -> float:
    """d(F(q p), q F(p) q^-1) for the latitude map F; identically ~0."""
    return geodesic_distance(
        hopf_latitude(q * p, alpha), q * hopf_latitude(p, alpha) * q.inverse()
    )


@dataclass(frozen=True)
class SphereMap:
    """Named self-map of the 3-sphere; batch_fn is an optional (n,4) vectorization."""

    name: str
    fn: Callable[[UnitQuaternion], UnitQuaternion]
    batch_fn: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, p: UnitQuaternion) -> UnitQuaternion:
        return self.fn(p)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        if self.batch_fn is not None:
            return self.batch_fn(arr)
        return to_array(self.fn(from_array_row(row)) for row in arr)


def sphere_map(
    name: str,
    fn: Callable[[UnitQuaternion], UnitQuaternion],
    batch_fn: Callable[[np.ndarray], np.ndarray] | None = None,
    check_pairs: int = 256,
    seed: int = 1105,
) -> SphereMap:
    """Build a SphereMap, rejecting maps that fail a sampled strictness check.

    check_pairs random pairs must satisfy d(f(a), f(b)) < d(a, b); pairs closer
    than 1e-6 are skipped (arccos conditioning makes the comparison meaningless
    there). A sampled guard, not a proof.
    """
    m = SphereMap(name, fn, batch_fn)
    a = sample_uniform_array(seed, check_pairs)
    b = sample_uniform_array(seed + 1, check_pairs)
    dists = qdistance_array(a, b)
    fdists = qdistance_array(m.apply_array(a), m.apply_array(b))
    keep = dists > 1e-6
    if np.any(fdists[keep] >= dists[keep]):
        worst = float(np.max(fdists[keep] / dists[keep]))
        raise ValueError(f"map {name!r} is not distance-decreasing on samples (ratio {worst:.6f})")
    return m


def constant_map(value: UnitQuaternion = ONE) -> SphereMap:
    row = np.array(value.components)

    def batch(arr: np.ndarray) -> np.ndarray:
        return np.broadcast_to(row, arr.shape).copy()

    return sphere_map(f"constant({value.w:.3g},{value.x:.3g},{value.y:.3g},{value.z:.3g})",
                      lambda p: value, batch)


def hopf_latitude_map(alpha: float) -> SphereMap:
    if not 0.0 <= alpha <= MAX_LATITUDE + 1e-15:
        raise ValueError("latitude angle must lie in [0, pi/6]")
    rot = np.array(exp_axis(I, alpha).components)

    def batch(arr: np.ndarray) -> np.ndarray:
        return qmul_array(qmul_array(arr, rot[None, :]), qconj_array(arr))

    return sphere_map(f"hopf_latitude({alpha:.6g})", lambda p: hopf_latitude(p, alpha), batch)


@dataclass(frozen=True)
class Fibration:
    """Fiber family p -> graph(p, f(p)) for a distance-decreasing map f."""

    sphere_map: SphereMap

    def fiber(self, p: UnitQuaternion) -> GreatThreeSphere:
        return GreatThreeSphere(p, self.sphere_map(p))


def hopf_fibration(value: UnitQuaternion = ONE) -> Fibration:
    """Fibration with constant map: fibers {(x, p x value^-1)} are the Hopf family."""
    return Fibration(constant_map(value))


def latitude_fibration(alpha: float) -> Fibration:
    """The nonconstant, fiberwise homogeneous family built from the latitude map."""
    return Fibration(hopf_latitude_map(alpha))


class FiberSolveError(RuntimeError):
    """Fixed-point solver failed to reach the membership tolerance."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"fiber solve did not converge: residual {residual:.3e} after {iterations} iterations"
        )
        self.residual = residual
        self.iterations = iterations


def solve_fiber_through_point(
    fibration: Fibration,
    point: ProductPoint,
    step_tol: float = 1e-12,
    max_iterations: int = 100_000,
    membership_tol: float = MEMBERSHIP_TOL,
) -> UnitQuaternion:
    """Index p of the unique fiber through (x, y).

    Fixed-point iteration p <- y f(p) x^-1 from p0 = y x^-1; the composition of
    a distance-decreasing map with isometries contracts, so iterates converge.
    Near Lipschitz ratio 1 the linear rate can exceed the iteration budget, so
    once the step ratio stalls above 0.9 an Aitken extrapolation is attempted,
    accepted only when it shrinks the step (the iteration never leaves the
    plain map otherwise). The returned index satisfies membership within
    membership_tol or FiberSolveError is raised with the last residual.
    """
    x, y = point
    xinv = x.inverse()
    f = fibration.sphere_map

    def advance(p: UnitQuaternion) -> UnitQuaternion:
        return y * f(p) * xinv

    p = y * xinv
    evals = 0
    while evals < max_iterations:
        p1 = advance(p)
        evals += 1
        if geodesic_distance(p1, p) < step_tol:
            p = p1
            break
        p2 = advance(p1)
        evals += 1
        step = geodesic_distance(p2, p1)
        if step < step_tol:
            p = p2
            break
        if step > 0.9 * geodesic_distance(p1, p):
            comps = []
            for c0, c1, c2 in zip(p.components, p1.components, p2.components):
                den = c2 - 2.0 * c1 + c0
                comps.append(c2 if abs(den) < 1e-14 else c0 - (c1 - c0) ** 2 / den)
            try:
                cand = UnitQuaternion(*comps)
            except ValueError:
                cand = None
            if cand is not None:
                guess = advance(cand)
                evals += 1
                if geodesic_distance(guess, cand) < step:
                    p = guess
                    continue
        p = p2
    residual = geodesic_distance(y, p * x * f(p).inverse())
    if residual > membership_tol:
        raise FiberSolveError(residual, evals)
    return p


# ---------------------------------------------------------------------------
# Isometries of the product acting on graphs.


@dataclass(frozen=True)
class PairIsometry:
    """Element of SO(4) x SO(4): (x, y) -> (g1 x h1^-1, g2 y h2^-1).

    left = (g1, h1) acts on the first factor, right = (g2, h2) on the second.
    """

    left: tuple[UnitQuaternion, UnitQuaternion]
    right: tuple[UnitQuaternion, UnitQuaternion]

    @classmethod
    def identity(cls) -> "PairIsometry":
        return cls((ONE, ONE), (ONE, ONE))

    def apply(self, point: ProductPoint) -> ProductPoint:
        x, y = point
        g1, h1 = self.left
        g2, h2 = self.right
        return (g1 * x * h1.inverse(), g2 * y * h2.inverse())

    def compose(self, other: "PairIsometry") -> "PairIsometry":
        """self after other."""
        return PairIsometry(
            (self.left[0] * other.left[0], self.left[1] * other.left[1]),
            (self.right[0] * other.right[0], self.right[1] * other.right[1]),
        )

    def inverse(self) -> "PairIsometry":
        return PairIsometry(
            (self.left[0].inverse(), self.left[1].inverse()),
            (self.right[0].inverse(), self.right[1].inverse()),
        )

    def transform_sphere(self, s: GreatThreeSphere) -> GreatThreeSphere:
        """Image of a graph sphere: graph(g2 p g1^-1, h2 q h1^-1)."""
        g1, h1 = self.left
        g2, h2 = self.right
        return GreatThreeSphere(g2 * s.p * g1.inverse(), h2 * s.q * h1.inverse())


def homogeneity_action(q: UnitQuaternion) -> PairIsometry:
    """The transitive action (x, y) -> (x q^-1, q y q^-1) on the latitude fibration."""
    return PairIsometry((ONE, q), (q, q))


def mix_match_isometry(
    t1: tuple[UnitQuaternion, UnitQuaternion], t2: tuple[UnitQuaternion, UnitQuaternion]
) -> PairIsometry:
    """Cross the two commuting-isometry pairs: (x, y) -> (q1 x q2^-1, p1 y p2^-1)."""
    (p1, q1), (p2, q2) = t1, t2
    return PairIsometry((q1, q2), (p1, p2))


def verify_fiberwise_homogeneity(
    fibration: Fibration, q: UnitQuaternion, p: UnitQuaternion, n_samples: int = 128
) -> float:
    """Worst sampled distance from the q-translate of fiber(p) to fiber(q p)."""
    action = homogeneity_action(q)
    source = fibration.fiber(p)
    target = fibration.fiber(q * p)
    worst = 0.0
    for row in quasi_uniform_lattice(n_samples):
        x = from_array_row(row)
        moved = action.apply(source.point_over(x))
        worst = max(worst, target.distance_to_point(moved))
    return worst


def lipschitz_estimate(f: SphereMap, n_pairs: int = 10_000, seed: int = 0) -> float:
    """Max sampled ratio d(f(a), f(b)) / d(a, b); pairs closer than 1e-6 skipped."""
    if n_pairs < 10_000:
        raise ValueError("lipschitz sampling needs at least 10^4 pairs")
    a = sample_uniform_array(seed, n_pairs)
    b = sample_uniform_array(seed + 1, n_pairs)
    dists = qdistance_array(a, b)
    fdists = qdistance_array(f.apply_array(a), f.apply_array(b))
    keep = dists > 1e-6
    return float(np.max(fdists[keep] / dists[keep]))
