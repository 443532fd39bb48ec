"""Derivative-free local refinement of scalar objectives on the 3-sphere."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .quaternions import UnitQuaternion, from_array_row


def tangent_basis(q: UnitQuaternion) -> np.ndarray:
    """Three orthonormal tangent directions at q, rows of a (3, 4) array."""
    v = np.array(q.components)
    drop = int(np.argmax(np.abs(v)))
    rows = []
    for k in range(4):
        if k == drop:
            continue
        e = np.zeros(4)
        e[k] = 1.0
        e -= (e @ v) * v
        for t in rows:
            e -= (e @ t) * t
        e /= np.linalg.norm(e)
        rows.append(e)
    return np.array(rows)


FORCING_COEFF = 1e-4  # sufficient-decrease threshold: accept only gains >= coeff * step^3


def refine_extremum(
    objective: Callable[[UnitQuaternion], float],
    start: UnitQuaternion,
    initial_step: float,
    steps: int = 50,
    maximize: bool = False,
) -> tuple[UnitQuaternion, float]:
    """Pattern search along great circles with step halving.

    Polls six great-circle candidates per iteration and moves to the best one
    only when it clears the cubic sufficient-decrease threshold; otherwise the
    step halves. Without the forcing term, objectives whose extremal set is a
    circle admit endless marginal moves along the circle at full step, and the
    step never contracts. Deterministic: fixed candidate order, ties stay put.
    """
    sign = -1.0 if maximize else 1.0
    z = start
    zv = np.array(z.components)
    best = sign * objective(z)
    step = initial_step
    for _ in range(steps):
        rows = tangent_basis(z)
        c, s = math.cos(step), math.sin(step)
        cand_best: UnitQuaternion | None = None
        val_best = best
        for t in rows:
            for direction in (1.0, -1.0):
                cand = from_array_row(c * zv + (direction * s) * t)
                val = sign * objective(cand)
                if val < val_best:
                    val_best = val
                    cand_best = cand
        if cand_best is not None and best - val_best >= FORCING_COEFF * step**3:
            best = val_best
            z = cand_best
            zv = np.array(z.components)
        else:
            step *= 0.5
    return z, sign * best
