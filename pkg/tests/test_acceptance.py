"""Acceptance gate: every criterion at its stated budget and tolerance.

Each test prints one [acceptance] PASS/FAIL line (run with -s to see them all).
Criterion 8 is expected to fail as stated: the two extremal circles it names
are correct as a pair but their closest/furthest labels are exchanged (the
brute-force clause of the same criterion demonstrates this); the corrected
labeling is verified by the companion test directly below it. Details in
notes/decisions.md outside the package.
"""

import json
import math
import time

import numpy as np
import pytest

from spherefib import cli
from spherefib.extremal import (
    OffsetSphereParams,
    aligned_commutator,
    aligned_commutator_closed_form,
    aligned_commutator_first_order,
    cold_pivot,
    eggbeater_sweep,
    hot_cold_analytic,
    hot_cold_numeric,
    hot_pivot,
    reduce_to_diagonal,
    rotation_commutator,
    rotation_commutator_closed_form,
)
from spherefib.fibration import (
    GreatThreeSphere,
    brute_force_min_distance,
    hopf_fibration,
    latitude_fibration,
    petro_discrepancy,
    petro_disjoint,
    pointwise_distance_stats,
    product_distance,
    solve_fiber_through_point,
    verify_fiberwise_homogeneity,
)
from spherefib.quaternions import (
    I,
    ONE,
    ImaginaryUnit,
    UnitQuaternion,
    exp_axis,
    geodesic_distance,
    jk_circle_point,
    lattice_spacing,
    quasi_uniform_lattice,
    sample_uniform,
    sample_uniform_array,
)
from spherefib.search import refine_extremum

ALPHA = math.pi / 6


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_c1_petro_criterion_matches_brute_force():
    start = time.time()
    qs = sample_uniform(101, 4000)
    mismatches = 0
    excluded = 0
    for i in range(1000):
        s1 = GreatThreeSphere(qs[4 * i], qs[4 * i + 1])
        s2 = GreatThreeSphere(qs[4 * i + 2], qs[4 * i + 3])
        if petro_discrepancy(s1, s2) < 1e-2:
            excluded += 1
            continue
        bf = brute_force_min_distance(s1, s2, 1000)
        if petro_disjoint(s1, s2) != (bf > 1e-3):
            mismatches += 1
    elapsed = time.time() - start
    ok = mismatches == 0 and elapsed < 120.0
    report(
        "C1 petro vs brute force",
        ok,
        f"{1000 - excluded} pairs, {excluded} near-ties excluded, "
        f"{mismatches} disagreements, {elapsed:.1f}s",
    )
    assert mismatches == 0
    assert elapsed < 120.0


@pytest.mark.parametrize("alpha", [0.0, math.pi / 12, ALPHA])
def test_c2_fibration_validity(alpha):
    start = time.time()
    fib = latitude_fibration(alpha) if alpha > 0 else hopf_fibration()
    qs = sample_uniform(211, 2000)
    min_disc = math.inf
    for i in range(1000):
        p1, p2 = qs[2 * i], qs[2 * i + 1]
        disc = petro_discrepancy(fib.fiber(p1), fib.fiber(p2))
        min_disc = min(min_disc, disc)
        assert disc > 1e-9
    pts = sample_uniform(223, 2000)
    worst = 0.0
    for i in range(1000):
        x, y = pts[2 * i], pts[2 * i + 1]
        p = solve_fiber_through_point(fib, (x, y))
        worst = max(worst, geodesic_distance(y, fib.fiber(p).image_of(x)))
    elapsed = time.time() - start
    ok = worst <= 1e-9 and elapsed < 60.0
    report(
        f"C2 fibration validity (alpha={alpha:.4f})",
        ok,
        f"1000 disjoint index pairs (min discrepancy {min_disc:.2e}), "
        f"1000 points recovered (worst residual {worst:.2e}), {elapsed:.1f}s",
    )
    assert worst <= 1e-9
    assert elapsed < 60.0


def test_c3_fiberwise_homogeneity():
    fib = latitude_fibration(ALPHA)
    qs = sample_uniform(307, 200)
    worst = 0.0
    for i in range(100):
        q, p = qs[2 * i], qs[2 * i + 1]
        worst = max(worst, verify_fiberwise_homogeneity(fib, q, p, n_samples=64))
    ok = worst <= 1e-10
    report("C3 fiberwise homogeneity", ok, f"100 (q, p) pairs, worst residual {worst:.2e}")
    assert worst <= 1e-10


def test_c4_non_hopf_distinctness():
    fib = latitude_fibration(ALPHA)
    _, _, witness_var = pointwise_distance_stats(
        fib.fiber(ONE), fib.fiber(exp_axis(jk_circle_point(0.0), 0.3)), 512
    )
    hopf = hopf_fibration()
    qs = sample_uniform(401, 64)
    worst_hopf = 0.0
    for i in range(32):
        _, _, var = pointwise_distance_stats(hopf.fiber(qs[2 * i]), hopf.fiber(qs[2 * i + 1]), 512)
        worst_hopf = max(worst_hopf, var)
    ok = witness_var > 1e-4 and worst_hopf <= 1e-9
    report(
        "C4 non-constant-map distinctness",
        ok,
        f"witness variance {witness_var:.3e} > 1e-4; all 32 constant-map variances <= {worst_hopf:.2e}",
    )
    assert witness_var > 1e-4
    assert worst_hopf <= 1e-9


def _brute_force_offset_distance(z: UnitQuaternion, params: OffsetSphereParams, grid: int) -> float:
    sphere = params.to_sphere()
    rows = quasi_uniform_lattice(grid)
    best_row, best = None, math.inf
    for row in rows[:: max(1, grid // 4000)]:
        y = UnitQuaternion(*row)
        d = product_distance((z, z), sphere.point_over(y))
        if d < best:
            best_row, best = y, d
    _, refined = refine_extremum(
        lambda y: product_distance((z, z), sphere.point_over(y)), best_row, lattice_spacing(grid)
    )
    return min(best, refined)


def test_c5_lemma_verification():
    rng = np.random.default_rng(503)
    band = 2.0 * lattice_spacing(10_000)
    worst_pos = 0.0
    worst_val = 0.0
    for _ in range(100):
        phi, theta = np.sort(rng.uniform(0.0, math.pi, size=2))
        if theta - phi < 1e-3 or phi < 1e-3:
            continue
        v = rng.standard_normal(3)
        axis = ImaginaryUnit(0.0, *(v / np.linalg.norm(v)))
        params = OffsetSphereParams(axis, float(theta), float(phi))
        ext = hot_cold_numeric(params, 10_000)
        hot, cold = hot_cold_analytic(params)
        for pt in ext.hot_points:
            worst_pos = max(worst_pos, hot.distance_to_point(pt))
        for pt in ext.cold_points:
            worst_pos = max(worst_pos, cold.distance_to_point(pt))
        w = rng.standard_normal(4)
        z = UnitQuaternion(*(w / np.linalg.norm(w)))
        closed = params.to_sphere().distance_to_point((z, z))
        brute = _brute_force_offset_distance(z, params, 10_000)
        worst_val = max(worst_val, abs(closed - brute))
    ok = worst_pos <= band and worst_val <= 1e-3
    report(
        "C5 closest/furthest-set lemma",
        ok,
        f"extremal points within {worst_pos:.2e} of analytic circles (band {band:.2e}); "
        f"closed form vs brute force within {worst_val:.2e}",
    )
    assert worst_pos <= band
    assert worst_val <= 1e-3


def test_c6_commutator_identities():
    worst = 0.0
    for alpha in np.linspace(0.0, ALPHA, 10):
        for eps in np.linspace(0.01, 0.5, 10):
            for theta in np.linspace(0.0, 2.0 * math.pi, 10, endpoint=False):
                worst = max(
                    worst,
                    geodesic_distance(
                        rotation_commutator(alpha, eps, theta),
                        rotation_commutator_closed_form(alpha, eps, theta),
                    ),
                    geodesic_distance(
                        aligned_commutator(alpha, eps, theta),
                        aligned_commutator_closed_form(alpha, eps, theta),
                    ),
                )
    ok = worst <= 1e-12
    report(
        "C6 commutator closed forms",
        ok,
        f"1000-point lattice, worst deviation {worst:.2e} "
        "(jk phase of the unaligned form is theta - alpha + pi/2; "
        "the sign is pinned by a dedicated regression test)",
    )
    assert worst <= 1e-12


def test_c7_first_order_error_scaling():
    ratios = []
    for theta in (0.0, math.pi / 3, math.pi / 2):
        for eps in (0.1, 0.05, 0.025):
            err = geodesic_distance(
                aligned_commutator(ALPHA, eps, theta),
                aligned_commutator_first_order(ALPHA, eps, theta),
            )
            err_half = geodesic_distance(
                aligned_commutator(ALPHA, eps / 2, theta),
                aligned_commutator_first_order(ALPHA, eps / 2, theta),
            )
            ratios.append(err_half / err)
    ok = all(0.2 <= r <= 0.3 for r in ratios)
    report(
        "C7 first-order error scaling",
        ok,
        "halving ratios " + ", ".join(f"{r:.4f}" for r in ratios) + " all in [0.2, 0.3]",
    )
    assert ok


def _finite_offset_hot_cold_check(target_hot, target_cold, tol: float) -> float:
    """Worst distance from mapped-back numeric extremal sets to target circles."""
    eps = 1e-3
    fib = latitude_fibration(ALPHA)
    s1 = fib.fiber(ONE)
    worst = 0.0
    for theta in (0.0, 2.0 * math.pi / 8, 3 * 2.0 * math.pi / 8):
        s2 = fib.fiber(exp_axis(jk_circle_point(theta), eps))
        red = reduce_to_diagonal(s1, s2)
        assert red.params is not None
        ext = hot_cold_numeric(red.params, 10_000, refine_steps=80)
        back = red.isometry.inverse()
        for z in ext.hot_points:
            worst = max(worst, target_hot(theta).distance_to_point(back.apply((z, z))[0]))
        for z in ext.cold_points:
            worst = max(worst, target_cold(theta).distance_to_point(back.apply((z, z))[0]))
        if worst > tol:
            break
    return worst


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the stated pivot labels are exchanged: the brute-force closest set lands on "
        "the circle through +-i e^{i(alpha/2 - pi/4)}, the furthest set on the circle "
        "through +-e^{i(alpha/2 - pi/4)}; clauses (a)/(b) of this criterion contradict "
        "its own clause (d). The corrected-label companion test below passes."
    ),
)
def test_c8_final_theorem_eggbeater_as_stated():
    frames = eggbeater_sweep(ALPHA, 1e-3, 8)
    stated_hot_pivot = exp_axis(I, ALPHA / 2 - math.pi / 4)
    stated_cold_pivot = I * stated_hot_pivot
    clause_a = all(
        f.hot.contains_point(stated_hot_pivot, 1e-9)
        and f.hot.contains_point(-stated_hot_pivot, 1e-9)
        for f in frames
    )
    clause_b = all(
        f.cold.contains_point(stated_cold_pivot, 1e-9)
        and f.cold.contains_point(-stated_cold_pivot, 1e-9)
        for f in frames
    )
    clause_c = all(f.hot.is_orthogonal_to(f.cold, 1e-9) for f in frames)
    worst = _finite_offset_hot_cold_check(
        lambda theta: hot_cold_frame_hot(theta), lambda theta: hot_cold_frame_cold(theta), 1e-2
    )
    clause_d = worst <= 1e-2
    report(
        "C8 final-theorem eggbeater (as stated)",
        clause_a and clause_b and clause_c and clause_d,
        f"hot contains +-e^(i(a/2-pi/4)): {clause_a}; cold contains +-i e^(i(a/2-pi/4)): "
        f"{clause_b}; orthogonal: {clause_c}; brute-force hot near hot circle: {clause_d} "
        f"(labels are exchanged; swapped-label clauses all pass)",
    )
    assert clause_a and clause_b and clause_c and clause_d


def hot_cold_frame_hot(theta):
    from spherefib.extremal import hot_cold_frame

    return hot_cold_frame(ALPHA, theta, 1e-3).hot


def hot_cold_frame_cold(theta):
    from spherefib.extremal import hot_cold_frame

    return hot_cold_frame(ALPHA, theta, 1e-3).cold


def test_c8_final_theorem_eggbeater_corrected_labels():
    frames = eggbeater_sweep(ALPHA, 1e-3, 8)
    for f in frames:
        assert f.hot.contains_point(hot_pivot(ALPHA), 1e-9)
        assert f.hot.contains_point(-hot_pivot(ALPHA), 1e-9)
        assert f.cold.contains_point(cold_pivot(ALPHA), 1e-9)
        assert f.cold.contains_point(-cold_pivot(ALPHA), 1e-9)
        assert f.hot.is_orthogonal_to(f.cold, 1e-9)
    worst = _finite_offset_hot_cold_check(hot_cold_frame_hot, hot_cold_frame_cold, 1e-2)
    ok = worst <= 1e-2
    report(
        "C8' eggbeater with corrected labels",
        ok,
        f"8 frames: pivots +-i e^(i(a/2-pi/4)) on hot, +-e^(i(a/2-pi/4)) on cold, "
        f"orthogonal; finite-offset extremal sets within {worst:.2e} of the circles",
    )
    assert ok


def test_c9_determinism(tmp_path):
    pairs = []
    for run in ("a", "b"):
        v = tmp_path / f"verify_{run}.json"
        s = tmp_path / f"sweep_{run}.json"
        assert cli.main([
            "verify", "--samples", "40", "--grid", "1500", "--seed", "42", "--out", str(v),
        ]) == 0
        assert cli.main([
            "sweep", "--alpha", str(ALPHA), "--epsilon", "0.05", "--frames", "8", "--out", str(s),
        ]) == 0
        pairs.append((v.read_bytes(), s.read_bytes()))
    ok = pairs[0] == pairs[1]
    report("C9 determinism", ok, "verify and sweep outputs byte-identical across reruns")
    assert ok
