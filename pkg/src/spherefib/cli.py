"""Command-line front end: verification suites, eggbeater sweeps, comparison reports.

Exit codes: 0 success, 1 verification failure, 2 usage/config error, 3 I/O error.
All randomness is seeded; canonical JSON/CSV output is byte-identical across runs
with the same config (wall-clock durations appear on the console only).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import extremal, fibration
from .quaternions import (
    I,
    J,
    ONE,
    ImaginaryUnit,
    UnitQuaternion,
    exp_axis,
    from_array_row,
    geodesic_distance,
    geodesic_midpoint,
    lattice_spacing,
    qdistance_array,
    qmul_array,
    quasi_uniform_lattice,
    sample_uniform,
)
from .search import refine_extremum

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

MIN_BRUTE_GRID = 1000
MIN_EXTREMAL_GRID = 10_000


class ConfigError(ValueError):
    pass


class OutputError(OSError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: float = math.pi / 6.0
    epsilon: float = 0.05
    n_frames: int = 8
    grid_size: int = 10_000
    n_samples: int = 200
    seed: int = 42
    output_format: str = "json"
    output_path: str = ""

    def validate(self, formats: tuple[str, ...] = ("json", "csv")) -> None:
        if not 0.0 <= self.alpha <= math.pi / 6.0 + 1e-15:
            raise ConfigError(f"--alpha must lie in [0, pi/6], got {self.alpha}")
        if self.epsilon <= 0.0:
            raise ConfigError(f"--epsilon must be positive, got {self.epsilon}")
        if self.n_frames < 4:
            raise ConfigError(f"--frames must be at least 4, got {self.n_frames}")
        if self.grid_size < 1:
            raise ConfigError(f"--grid must be positive, got {self.grid_size}")
        if self.n_samples < 1:
            raise ConfigError(f"--samples must be positive, got {self.n_samples}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"--seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.output_format not in formats:
            raise ConfigError(
                f"--format must be one of {'|'.join(formats)}, got {self.output_format!r}"
            )


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    residual: float | None
    tolerance: float | None
    samples: int
    duration_s: float = 0.0
    reason: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def payload(self, cfg: RunConfig) -> dict:
        # durations are excluded: canonical output must be run-independent
        return {
            "command": "verify",
            "config": {
                "alpha": cfg.alpha,
                "seed": cfg.seed,
                "samples": cfg.n_samples,
                "grid": cfg.grid_size,
            },
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "samples": c.samples,
                    "reason": c.reason,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }


class SkipCheck(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# ---------------------------------------------------------------------------
# verify checks. Each returns (residual, tolerance, samples, passed, reason).


def _random_quaternions(seed: int, n: int) -> list[UnitQuaternion]:
    return sample_uniform(seed, n)


def _check_bi_invariance(cfg: RunConfig):
    qs = _random_quaternions(cfg.seed + 101, 4 * cfg.n_samples)
    worst = 0.0
    for i in range(cfg.n_samples):
        a, b, p, q = qs[4 * i : 4 * i + 4]
        moved = geodesic_distance(a * (p * b), a * (q * b))
        worst = max(worst, abs(moved - geodesic_distance(p, q)))
    return worst, 1e-10, cfg.n_samples, worst <= 1e-10, ""


def _check_triangle(cfg: RunConfig):
    qs = _random_quaternions(cfg.seed + 102, 3 * cfg.n_samples)
    worst = -math.inf
    for i in range(cfg.n_samples):
        a, b, c = qs[3 * i : 3 * i + 3]
        worst = max(worst, geodesic_distance(a, c) - geodesic_distance(a, b) - geodesic_distance(b, c))
    return worst, 1e-10, cfg.n_samples, worst <= 1e-10, ""


def _check_inverse_reversal(cfg: RunConfig):
    qs = _random_quaternions(cfg.seed + 103, 2 * cfg.n_samples)
    worst = 0.0
    for i in range(cfg.n_samples):
        a, b = qs[2 * i : 2 * i + 2]
        worst = max(worst, geodesic_distance((a * b).inverse(), b.inverse() * a.inverse()))
    return worst, 1e-12, cfg.n_samples, worst <= 1e-12, ""


def _check_one_parameter_subgroup(cfg: RunConfig):
    rng = np.random.default_rng(cfg.seed + 104)
    worst = 0.0
    for _ in range(cfg.n_samples):
        v = rng.standard_normal(3)
        axis = ImaginaryUnit(0.0, *(v / np.linalg.norm(v)))
        s, t = rng.uniform(-math.pi, math.pi, size=2)
        worst = max(
            worst,
            geodesic_distance(exp_axis(axis, s + t), exp_axis(axis, s) * exp_axis(axis, t)),
        )
    return worst, 1e-12, cfg.n_samples, worst <= 1e-12, ""


def _check_midpoint_symmetry(cfg: RunConfig):
    qs = _random_quaternions(cfg.seed + 105, 2 * cfg.n_samples)
    worst = 0.0
    used = 0
    for i in range(cfg.n_samples):
        a, b = qs[2 * i : 2 * i + 2]
        if a.dot(b) <= -1.0 + 1e-6:
            continue
        used += 1
        worst = max(worst, geodesic_distance(geodesic_midpoint(a, b), geodesic_midpoint(b, a)))
    return worst, 1e-12, used, worst <= 1e-12, ""


def _check_petro_agreement(cfg: RunConfig):
    if cfg.grid_size < MIN_BRUTE_GRID:
        raise SkipCheck(f"grid {cfg.grid_size} below brute-force minimum {MIN_BRUTE_GRID}")
    qs = _random_quaternions(cfg.seed + 106, 4 * cfg.n_samples)
    mismatches = 0
    excluded = 0
    used = 0
    for i in range(cfg.n_samples):
        s1 = fibration.GreatThreeSphere(qs[4 * i], qs[4 * i + 1])
        s2 = fibration.GreatThreeSphere(qs[4 * i + 2], qs[4 * i + 3])
        if fibration.petro_discrepancy(s1, s2) < 1e-2:
            excluded += 1
            continue
        used += 1
        bf = fibration.brute_force_min_distance(s1, s2, cfg.grid_size)
        if fibration.petro_disjoint(s1, s2) != (bf > 1e-3):
            mismatches += 1
    return float(mismatches), 0.0, used, mismatches == 0, f"{excluded} near-ties excluded"


def _fibration_alphas(cfg: RunConfig) -> list[float]:
    alphas = [0.0, math.pi / 12.0, cfg.alpha]
    out: list[float] = []
    for a in alphas:
        if all(abs(a - b) > 1e-12 for b in out):
            out.append(a)
    return out


def _check_fiber_disjointness(cfg: RunConfig):
    qs = _random_quaternions(cfg.seed + 107, 2 * cfg.n_samples)
    min_disc = math.inf
    total = 0
    for alpha in _fibration_alphas(cfg):
        fib = fibration.latitude_fibration(alpha) if alpha > 0 else fibration.hopf_fibration()
        for i in range(cfg.n_samples):
            p1, p2 = qs[2 * i : 2 * i + 2]
            total += 1
            min_disc = min(min_disc, fibration.petro_discrepancy(fib.fiber(p1), fib.fiber(p2)))
    return min_disc, 1e-9, total, min_disc > 1e-9, "pass needs residual above tolerance"


def _check_coverage(cfg: RunConfig):
    fib = (
        fibration.latitude_fibration(cfg.alpha) if cfg.alpha > 0 else fibration.hopf_fibration()
    )
    qs = _random_quaternions(cfg.seed + 108, 2 * cfg.n_samples)
    worst = 0.0
    for i in range(cfg.n_samples):
        x, y = qs[2 * i : 2 * i + 2]
        p = fibration.solve_fiber_through_point(fib, (x, y))
        worst = max(worst, geodesic_distance(y, fib.fiber(p).image_of(x)))
    return worst, 1e-9, cfg.n_samples, worst <= 1e-9, ""


def _check_homogeneity(cfg: RunConfig):
    alpha = cfg.alpha if cfg.alpha > 0 else math.pi / 6.0
    fib = fibration.latitude_fibration(alpha)
    n = min(cfg.n_samples, 100)
    qs = _random_quaternions(cfg.seed + 109, 2 * n)
    worst = 0.0
    for i in range(n):
        q, p = qs[2 * i : 2 * i + 2]
        worst = max(worst, fibration.verify_fiberwise_homogeneity(fib, q, p, n_samples=64))
    return worst, 1e-10, n, worst <= 1e-10, f"alpha={alpha:.6g}"


def _check_hopf_characterization(cfg: RunConfig):
    n = min(cfg.n_samples, 32)
    qs = _random_quaternions(cfg.seed + 110, 2 * n)
    hopf = fibration.hopf_fibration()
    worst_spread = 0.0
    for i in range(n):
        p1, p2 = qs[2 * i : 2 * i + 2]
        dmin, dmax, _ = fibration.pointwise_distance_stats(hopf.fiber(p1), hopf.fiber(p2), 256)
        worst_spread = max(worst_spread, dmax - dmin)
    ok = worst_spread <= 1e-9
    reason = "all constant-map fiber pairs parallel"
    if cfg.alpha > 0:
        fib = fibration.latitude_fibration(cfg.alpha)
        _, _, var = fibration.pointwise_distance_stats(
            fib.fiber(ONE), fib.fiber(exp_axis(J, 0.3)), 512
        )
        ok = ok and var > 1e-4
        reason += f"; nonconstant witness variance {var:.3e}"
    return worst_spread, 1e-9, n, ok, reason


def _check_hopf_circle_constancy(cfg: RunConfig):
    alpha = cfg.alpha if cfg.alpha > 0 else math.pi / 6.0
    rng = np.random.default_rng(cfg.seed + 111)
    qs = _random_quaternions(cfg.seed + 111, cfg.n_samples)
    worst = 0.0
    for p in qs:
        t = float(rng.uniform(0.0, 2.0 * math.pi))
        worst = max(
            worst,
            geodesic_distance(
                fibration.hopf_latitude(p, alpha),
                fibration.hopf_latitude(p * exp_axis(I, t), alpha),
            ),
        )
    return worst, 1e-12, cfg.n_samples, worst <= 1e-12, ""


def _check_lipschitz(cfg: RunConfig):
    alpha = cfg.alpha if cfg.alpha > 0 else math.pi / 6.0
    ratio = fibration.lipschitz_estimate(
        fibration.hopf_latitude_map(alpha), 10_000, cfg.seed + 112
    )
    return ratio, 1.0, 10_000, ratio < 1.0, "pass needs max ratio strictly below 1"


def _brute_force_point_distance(
    z: UnitQuaternion, sphere: fibration.GreatThreeSphere, grid_size: int
) -> float:
    """Independent oracle: minimize the raw product metric over the second sphere."""
    grid = quasi_uniform_lattice(grid_size)
    p = np.array(sphere.p.components)
    qinv = np.array(sphere.q.inverse().components)
    images = qmul_array(qmul_array(p[None, :], grid), qinv[None, :])
    zrow = np.array(z.components)
    d1 = qdistance_array(grid, zrow[None, :])
    d2 = qdistance_array(images, zrow[None, :])
    vals = np.sqrt(d1 * d1 + d2 * d2)
    best = int(np.argmin(vals))

    def objective(y: UnitQuaternion) -> float:
        return fibration.product_distance((z, z), (y, sphere.image_of(y)))

    _, refined = refine_extremum(objective, from_array_row(grid[best]), lattice_spacing(grid_size))
    return min(float(vals[best]), refined)


def _lemma_configs(seed: int, count: int) -> list[tuple[float, float, ImaginaryUnit]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a, b = np.sort(rng.uniform(0.0, math.pi, size=2))
        if b - a < 0.05 or a < 0.05 or b > math.pi - 0.05:
            continue
        v = rng.standard_normal(3)
        out.append((float(b), float(a), ImaginaryUnit(0.0, *(v / np.linalg.norm(v)))))
    return out


def _check_lemma_oracle(cfg: RunConfig):
    if cfg.grid_size < MIN_EXTREMAL_GRID:
        raise SkipCheck(f"grid {cfg.grid_size} below extremal minimum {MIN_EXTREMAL_GRID}")
    rng = np.random.default_rng(cfg.seed + 113)
    worst = 0.0
    n_cfg = 4
    for theta, phi, axis in _lemma_configs(cfg.seed + 113, n_cfg):
        params = extremal.OffsetSphereParams(axis, theta, phi)
        v = rng.standard_normal(4)
        z = from_array_row(v / np.linalg.norm(v))
        closed = extremal.point_to_diagonal_offset_distance(z, params)
        brute = _brute_force_point_distance(z, params.to_sphere(), cfg.grid_size)
        worst = max(worst, abs(closed - brute))
    return worst, 1e-3, n_cfg, worst <= 1e-3, ""


def _check_conjugation_orbit(cfg: RunConfig):
    rng = np.random.default_rng(cfg.seed + 114)
    qs = _random_quaternions(cfg.seed + 114, cfg.n_samples)
    worst = 0.0
    for z in qs:
        theta = float(rng.uniform(0.05, math.pi - 0.05))
        v = rng.standard_normal(3)
        axis = ImaginaryUnit(0.0, *(v / np.linalg.norm(v)))
        orbit = extremal.conjugation_orbit_point(z, theta, axis)
        worst = max(worst, abs(geodesic_distance(orbit, ONE) - theta))
    return worst, 1e-10, cfg.n_samples, worst <= 1e-10, ""


def _check_hot_cold_values(cfg: RunConfig):
    if cfg.grid_size < MIN_EXTREMAL_GRID:
        raise SkipCheck(f"grid {cfg.grid_size} below extremal minimum {MIN_EXTREMAL_GRID}")
    worst = 0.0
    configs = _lemma_configs(cfg.seed + 115, 2)
    for theta, phi, axis in configs:
        params = extremal.OffsetSphereParams(axis, theta, phi)
        ext = extremal.hot_cold_numeric(params, cfg.grid_size)
        worst = max(worst, abs(ext.hot_value - params.closest_distance()))
        worst = max(worst, abs(ext.cold_value - params.furthest_distance()))
        hot_circle, cold_circle = extremal.hot_cold_analytic(params)
        band = 2.0 * lattice_spacing(cfg.grid_size)
        for pt in ext.hot_points:
            if hot_circle.distance_to_point(pt) > band:
                return worst, 1e-3, len(configs), False, "hot point off the analytic circle"
        for pt in ext.cold_points:
            if cold_circle.distance_to_point(pt) > band:
                return worst, 1e-3, len(configs), False, "cold point off the analytic circle"
    return worst, 1e-3, len(configs), worst <= 1e-3, ""


def _check_commutator_forms(cfg: RunConfig):
    worst = 0.0
    n = 0
    for alpha in np.linspace(0.0, math.pi / 6.0, 10):
        for eps in np.linspace(0.01, 0.5, 10):
            for theta in np.linspace(0.0, 2.0 * math.pi, 10, endpoint=False):
                n += 1
                worst = max(
                    worst,
                    geodesic_distance(
                        extremal.rotation_commutator(alpha, eps, theta),
                        extremal.rotation_commutator_closed_form(alpha, eps, theta),
                    ),
                    geodesic_distance(
                        extremal.aligned_commutator(alpha, eps, theta),
                        extremal.aligned_commutator_closed_form(alpha, eps, theta),
                    ),
                )
    return worst, 1e-12, n, worst <= 1e-12, ""


def _check_first_order_scaling(cfg: RunConfig):
    alpha = math.pi / 6.0
    worst_dev = 0.0
    for theta in (0.0, math.pi / 3.0, math.pi / 2.0):
        errs = [
            geodesic_distance(
                extremal.aligned_commutator(alpha, eps, theta),
                extremal.aligned_commutator_first_order(alpha, eps, theta),
            )
            for eps in (0.1, 0.05, 0.025)
        ]
        for e_big, e_small in zip(errs, errs[1:]):
            ratio = e_small / e_big
            worst_dev = max(worst_dev, abs(ratio - 0.25))
            if not 0.2 <= ratio <= 0.3:
                return worst_dev, 0.05, 6, False, f"halving ratio {ratio:.4f} outside [0.2, 0.3]"
    return worst_dev, 0.05, 6, True, "halving ratios near 1/4"


def _check_frame_orthogonality(cfg: RunConfig):
    alpha = cfg.alpha if cfg.alpha > 0 else math.pi / 6.0
    frames = extremal.eggbeater_sweep(alpha, cfg.epsilon, cfg.n_frames)
    worst = 0.0
    for fr in frames:
        for u in (fr.hot.a, fr.hot.b):
            for v in (fr.cold.a, fr.cold.b):
                worst = max(worst, abs(u.dot(v)))
    return worst, 1e-9, len(frames), worst <= 1e-9, ""


CHECKS = [
    ("quaternion.bi_invariance", _check_bi_invariance),
    ("quaternion.triangle_inequality", _check_triangle),
    ("quaternion.inverse_reversal", _check_inverse_reversal),
    ("quaternion.one_parameter_subgroup", _check_one_parameter_subgroup),
    ("quaternion.midpoint_symmetry", _check_midpoint_symmetry),
    ("fibration.petro_brute_force_agreement", _check_petro_agreement),
    ("fibration.fiber_disjointness", _check_fiber_disjointness),
    ("fibration.coverage_solver", _check_coverage),
    ("fibration.fiberwise_homogeneity", _check_homogeneity),
    ("fibration.hopf_characterization", _check_hopf_characterization),
    ("fibration.hopf_circle_constancy", _check_hopf_circle_constancy),
    ("fibration.lipschitz_strictness", _check_lipschitz),
    ("extremal.lemma_distance_oracle", _check_lemma_oracle),
    ("extremal.conjugation_orbit_radius", _check_conjugation_orbit),
    ("extremal.hot_cold_extremal_values", _check_hot_cold_values),
    ("extremal.commutator_closed_forms", _check_commutator_forms),
    ("extremal.first_order_error_scaling", _check_first_order_scaling),
    ("extremal.frame_orthogonality", _check_frame_orthogonality),
]


def run_verification(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport()
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            residual, tol, samples, ok, reason = fn(cfg)
            result = CheckResult(
                name=name,
                status="pass" if ok else "fail",
                residual=float(residual),
                tolerance=tol,
                samples=samples,
                reason=reason,
            )
        except SkipCheck as skip:
            result = CheckResult(
                name=name, status="skipped", residual=None, tolerance=None, samples=0,
                reason=skip.reason,
            )
        result.duration_s = time.perf_counter() - start
        report.checks.append(result)
    return report


# ---------------------------------------------------------------------------
# Output writers.


def write_atomic(path: str, text: str) -> None:
    target = os.path.abspath(path)
    directory = os.path.dirname(target)
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".spherefib-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _verify_csv(report: VerificationReport) -> str:
    lines = ["name,status,residual,tolerance,samples,reason"]
    for c in report.checks:
        residual = "" if c.residual is None else repr(c.residual)
        tol = "" if c.tolerance is None else repr(c.tolerance)
        reason = c.reason.replace(",", ";")
        lines.append(f"{c.name},{c.status},{residual},{tol},{c.samples},{reason}")
    return "\n".join(lines) + "\n"


def sweep_records(frames: list[extremal.HotColdFrame]) -> list[dict]:
    return [
        {
            "theta": fr.theta,
            "hot": {"a": list(fr.hot.a.components), "b": list(fr.hot.b.components)},
            "cold": {"a": list(fr.cold.a.components), "b": list(fr.cold.b.components)},
            "q_exact": list(fr.q_exact.components),
            "q_first_order": list(fr.q_first_order.components),
            "approx_error": fr.approx_error,
        }
        for fr in frames
    ]


SWEEP_CSV_FIELDS = (
    ["theta"]
    + [f"hot_a_{c}" for c in "wxyz"]
    + [f"hot_b_{c}" for c in "wxyz"]
    + [f"cold_a_{c}" for c in "wxyz"]
    + [f"cold_b_{c}" for c in "wxyz"]
    + [f"q_exact_{c}" for c in "wxyz"]
    + [f"q_first_order_{c}" for c in "wxyz"]
    + ["approx_error"]
)


def _sweep_csv(frames: list[extremal.HotColdFrame]) -> str:
    lines = [",".join(SWEEP_CSV_FIELDS)]
    for fr in frames:
        row = (
            [fr.theta]
            + list(fr.hot.a.components)
            + list(fr.hot.b.components)
            + list(fr.cold.a.components)
            + list(fr.cold.b.components)
            + list(fr.q_exact.components)
            + list(fr.q_first_order.components)
            + [fr.approx_error]
        )
        lines.append(",".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def _project_circle(circle, n_points: int = 128) -> list[tuple[float, float]]:
    # stereographic projection from -1 of the first-factor circle, then a fixed
    # oblique map of the tangent 3-space onto the page
    pts = []
    for k in range(n_points + 1):
        q = circle.point_at(2.0 * math.pi * k / n_points)
        denom = 1.0 + q.w
        if denom < 1e-3:
            continue
        x3, y3, z3 = q.x / denom, q.y / denom, q.z / denom
        pts.append((x3 + 0.38 * z3, y3 + 0.30 * z3))
    return pts


def _sweep_svg(frames: list[extremal.HotColdFrame], alpha: float) -> str:
    size, scale = 640.0, 150.0
    half = size / 2.0

    def fmt(p):
        return f"{half + scale * p[0]:.3f},{half - scale * p[1]:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>',
        f'<text x="12" y="24" font-family="monospace" font-size="14">'
        f"hot/cold circles, alpha={alpha:.6g}, frames={len(frames)}</text>",
    ]
    for fr in frames:
        hot_pts = " ".join(fmt(p) for p in _project_circle(fr.hot))
        cold_pts = " ".join(fmt(p) for p in _project_circle(fr.cold))
        parts.append(
            f'<polyline fill="none" stroke="#c0392b" stroke-width="1.2" points="{hot_pts}"/>'
        )
        parts.append(
            f'<polyline fill="none" stroke="#2471a3" stroke-width="1.2" points="{cold_pts}"/>'
        )
    for pivot, color in ((extremal.hot_pivot(alpha), "#c0392b"), (extremal.cold_pivot(alpha), "#2471a3")):
        for sgn in (1.0, -1.0):
            q = pivot if sgn > 0 else -pivot
            denom = 1.0 + q.w
            if denom < 1e-3:
                continue
            p = (q.x / denom + 0.38 * q.z / denom, q.y / denom + 0.30 * q.z / denom)
            x, y = half + scale * p[0], half - scale * p[1]
            parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Commands.


def cmd_verify(cfg: RunConfig) -> int:
    cfg.validate(formats=("json", "csv"))
    report = run_verification(cfg)
    text = (
        _json_text(report.payload(cfg)) if cfg.output_format == "json" else _verify_csv(report)
    )
    write_atomic(cfg.output_path, text)
    for c in report.checks:
        residual = "-" if c.residual is None else f"{c.residual:.3e}"
        print(f"{c.status.upper():7s} {c.name:42s} residual={residual:>10s} "
              f"samples={c.samples:<6d} {c.duration_s*1e3:8.1f} ms  {c.reason}")
    print(f"report written to {cfg.output_path}")
    if not report.passed:
        failing = [c.name for c in report.checks if c.status == "fail"]
        print(f"FAILED checks: {', '.join(failing)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    cfg.validate(formats=("json", "csv", "svg"))
    if cfg.alpha <= 0.0:
        raise ConfigError("sweep requires a strictly positive --alpha")
    frames = extremal.eggbeater_sweep(cfg.alpha, cfg.epsilon, cfg.n_frames)
    if cfg.output_format == "json":
        text = _json_text(sweep_records(frames))
    elif cfg.output_format == "csv":
        text = _sweep_csv(frames)
    else:
        text = _sweep_svg(frames, cfg.alpha)
    write_atomic(cfg.output_path, text)
    print(
        f"{len(frames)} frames at alpha={cfg.alpha:.6g}, epsilon={cfg.epsilon:.6g} "
        f"-> {cfg.output_path}"
    )
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    cfg.validate(formats=("json",))
    if cfg.alpha <= 0.0:
        raise ConfigError("compare requires a strictly positive --alpha")
    hopf = fibration.hopf_fibration()
    nonstandard = fibration.latitude_fibration(cfg.alpha)
    indices: list[tuple[UnitQuaternion, UnitQuaternion]] = [(ONE, exp_axis(J, 0.3))]
    qs = sample_uniform(cfg.seed + 301, 14)
    indices += [(qs[2 * i], qs[2 * i + 1]) for i in range(7)]
    pairs = []
    for k, (p1, p2) in enumerate(indices):
        _, _, hopf_var = fibration.pointwise_distance_stats(hopf.fiber(p1), hopf.fiber(p2), 512)
        _, _, ns_var = fibration.pointwise_distance_stats(
            nonstandard.fiber(p1), nonstandard.fiber(p2), 512
        )
        pairs.append(
            {
                "pair": k,
                "index_distance": geodesic_distance(p1, p2),
                "hopf_variance": hopf_var,
                "nonstandard_variance": ns_var,
            }
        )
    payload = {
        "command": "compare",
        "config": {"alpha": cfg.alpha, "seed": cfg.seed},
        "pairs": pairs,
        "max_hopf_variance": max(p["hopf_variance"] for p in pairs),
        "max_nonstandard_variance": max(p["nonstandard_variance"] for p in pairs),
    }
    write_atomic(cfg.output_path, _json_text(payload))
    print(
        f"max variance: hopf {payload['max_hopf_variance']:.3e}, "
        f"nonstandard(alpha={cfg.alpha:.6g}) {payload['max_nonstandard_variance']:.3e} "
        f"-> {cfg.output_path}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherefib",
        description="Great 3-sphere fibrations of the Clifford torus: verification and sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the property verification suites")
    p_verify.add_argument("--alpha", type=float, default=math.pi / 6.0)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--samples", type=int, default=200)
    p_verify.add_argument("--grid", type=int, default=10_000)
    p_verify.add_argument("--out", default="spherefib_verify.json")
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")

    p_sweep = sub.add_parser("sweep", help="export the eggbeater hot/cold sweep")
    p_sweep.add_argument("--alpha", type=float, default=math.pi / 6.0)
    p_sweep.add_argument("--epsilon", type=float, default=0.05)
    p_sweep.add_argument("--frames", type=int, default=8)
    p_sweep.add_argument("--out", default="spherefib_sweep.json")
    p_sweep.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    p_compare = sub.add_parser("compare", help="constant vs nonconstant parallelism report")
    p_compare.add_argument("--alpha", type=float, default=math.pi / 6.0)
    p_compare.add_argument("--seed", type=int, default=42)
    p_compare.add_argument("--out", default="spherefib_compare.json")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    base = RunConfig()
    try:
        if args.command == "verify":
            cfg = replace(
                base,
                alpha=args.alpha,
                seed=args.seed,
                n_samples=args.samples,
                grid_size=args.grid,
                output_path=args.out,
                output_format=args.format,
            )
            return cmd_verify(cfg)
        if args.command == "sweep":
            cfg = replace(
                base,
                alpha=args.alpha,
                epsilon=args.epsilon,
                n_frames=args.frames,
                output_path=args.out,
                output_format=args.format,
            )
            return cmd_sweep(cfg)
        cfg = replace(
            base, alpha=args.alpha, seed=args.seed, output_path=args.out, output_format="json"
        )
        return cmd_compare(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
