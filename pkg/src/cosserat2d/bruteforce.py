"""Brute-force certification on the circle of rotation angles.

grid_minimize evaluates an arbitrary single-angle energy on a dense
uniform grid over (-pi, pi], clusters the near-minimal cells, and refines
each cluster with golden-section search. sign_change_scan brackets and
bisects the roots of a continuous periodic function. Both are deliberately
derivative-free so they remain robust at the non-smooth bifurcation
threshold, and both treat the supplied callable as a black box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonFiniteEnergy
from .planar import circular_distance, normalize_angle

#: Grid cells within this absolute distance of the best cell value are
#: considered near-minimal and grouped into clusters.
CLUSTER_VALUE_TOL = 1e-7

#: Fraction of near-minimal cells beyond which the landscape is flagged
#: as a plateau.
PLATEAU_FRACTION = 0.1

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridResult:
    """Outcome of a grid minimization.

    minima lists (angle, value) pairs for every global minimizer found up
    to value_tol, pairwise separated by more than 2 * angle_tol. plateau
    is set when more than 10% of the grid is near-minimal, which signals
    a (nearly) constant landscape rather than isolated minima.
    """

    minima: tuple[tuple[float, float], ...]
    grid_n: int
    value_tol: float
    angle_tol: float
    plateau: bool

    @property
    def angles(self) -> tuple[float, ...]:
        return tuple(angle for angle, _ in self.minima)

    @property
    def best_value(self) -> float:
        return min(value for _, value in self.minima)


def _evaluate_grid(energy, alphas: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        values = np.asarray(energy(alphas), dtype=float)
        if values.shape != alphas.shape:
            raise ValueError("vectorized energy must return one value per angle")
    else:
        values = np.fromiter(
            (float(energy(a)) for a in alphas), dtype=float, count=alphas.size
        )
    bad = ~np.isfinite(values)
    if bad.any():
        idx = int(np.argmax(bad))
        raise NonFiniteEnergy(
            f"energy is {values[idx]!r} at angle {alphas[idx]!r}"
        )
    return values


def _scalar(energy, alpha: float) -> float:
    value = float(energy(alpha))
    if not math.isfinite(value):
        raise NonFiniteEnergy(f"energy is {value!r} at angle {alpha!r}")
    return value


def _golden_section(energy, lo: float, hi: float, tol: float) -> tuple[float, float]:
    # Standard golden-section descent; one new evaluation per iteration.
    h = hi - lo
    x1 = hi - _INV_PHI * h
    x2 = lo + _INV_PHI * h
    f1 = _scalar(energy, x1)
    f2 = _scalar(energy, x2)
    while h > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            h = hi - lo
            x1 = hi - _INV_PHI * h
            f1 = _scalar(energy, x1)
        else:
            lo, x1, f1 = x1, x2, f2
            h = hi - lo
            x2 = lo + _INV_PHI * h
            f2 = _scalar(energy, x2)
    mid = 0.5 * (lo + hi)
    return mid, _scalar(energy, mid)


def _parabolic_polish(energy, x: float, fx: float, delta: float = 1e-5) -> tuple[float, float]:
    # Golden-section placement saturates once value differences near the
    # minimum fall below floating-point noise; a single three-point parabola
    # fit with a spacing well above that noise floor recovers the vertex.
    # Still derivative-free; rejected whenever the fit is not convex or the
    # vertex leaves the sampled neighborhood.
    f_minus = _scalar(energy, x - delta)
    f_plus = _scalar(energy, x + delta)
    denom = f_minus - 2.0 * fx + f_plus
    if not (denom > 0.0 and math.isfinite(denom)):
        return x, fx
    shift = 0.5 * delta * (f_minus - f_plus) / denom
    if abs(shift) > delta:
        return x, fx
    candidate = x + shift
    f_candidate = _scalar(energy, candidate)
    if f_candidate <= fx + CLUSTER_VALUE_TOL:
        return candidate, f_candidate
    return x, fx


def _clusters(near: np.ndarray) -> list[tuple[int, int]]:
    # Contiguous runs of near-minimal cells on the circular grid, returned
    # as (first, last) index pairs where last may exceed n-1 for a run
    # that wraps around the seam.
    n = near.size
    if near.all():
        return [(0, n - 1)]
    indices = np.flatnonzero(near)
    runs: list[tuple[int, int]] = []
    start = prev = int(indices[0])
    for i in indices[1:]:
        i = int(i)
        if i == prev + 1:
            prev = i
            continue
        runs.append((start, prev))
        start = prev = i
    runs.append((start, prev))
    # merge a run ending at n-1 with one starting at 0 across the seam
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == n - 1:
        first = runs.pop(0)
        last = runs.pop()
        runs.append((last[0], first[1] + n))
    return runs


def grid_minimize(
    energy: Callable,
    grid_n: int = 20000,
    refine_tol: float = 1e-10,
    vectorized: bool = False,
) -> GridResult:
    """Locate all global minimizers of a 2*pi-periodic energy.

    The energy is sampled at grid_n uniformly spaced angles covering
    (-pi, pi]; cells within CLUSTER_VALUE_TOL of the best sample are
    grouped into circular clusters (the wrap-around cell is treated as
    adjacent to the first), and each cluster is refined by golden-section
    search down to a bracket of width refine_tol. Deterministic for fixed
    inputs. Pass vectorized=True when the energy accepts an ndarray of
    angles and returns an ndarray of values.
    """
    if grid_n < 360:
        raise ValueError(f"grid_n must be at least 360, got {grid_n}")
    h = math.tau / grid_n
    alphas = -math.pi + h * (1.0 + np.arange(grid_n))
    values = _evaluate_grid(energy, alphas, vectorized)

    best = float(values.min())
    plateau = bool((values <= best + CLUSTER_VALUE_TOL).mean() > PLATEAU_FRACTION)

    # Near a true minimum the closest sample sits up to f''h^2/8 above the
    # true value, so equal minima can show unequal samples. The local second
    # difference estimates exactly that discretization slack per cell; only
    # grid-local minima are eligible, which keeps the slack from leaking
    # across discontinuities. The final filter below re-applies the strict
    # value tolerance to the refined values.
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    slack = np.abs(right - 2.0 * values + left)
    near = (
        (values <= left)
        & (values <= right)
        & (values <= best + CLUSTER_VALUE_TOL + slack)
    )

    candidates: list[tuple[float, float]] = []
    for first, last in _clusters(near):
        lo = -math.pi + h * first  # one cell to the left of the first sample
        hi = -math.pi + h * (last + 2.0)  # one cell to the right of the last
        angle, value = _golden_section(energy, lo, hi, refine_tol)
        # keep the better of the refined point and the best grid sample
        cell = int(np.argmin([values[i % grid_n] for i in range(first, last + 1)]))
        cell_idx = (first + cell) % grid_n
        if values[cell_idx] < value:
            angle, value = float(alphas[cell_idx]), float(values[cell_idx])
        angle, value = _parabolic_polish(energy, angle, value)
        candidates.append((normalize_angle(angle), float(value)))

    best_refined = min(value for _, value in candidates)
    kept = [c for c in candidates if c[1] <= best_refined + CLUSTER_VALUE_TOL]

    # Merge refined minima closer than 2 grid steps, keeping the lower value.
    kept.sort(key=lambda c: c[1])
    merged: list[tuple[float, float]] = []
    for angle, value in kept:
        if all(circular_distance(angle, a) > 2.0 * h for a, _ in merged):
            merged.append((angle, value))
    merged.sort(key=lambda c: c[0])

    return GridResult(
        minima=tuple(merged),
        grid_n=grid_n,
        value_tol=CLUSTER_VALUE_TOL,
        angle_tol=h,
        plateau=plateau,
    )


def _bisect(f, lo: float, hi: float, flo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = float(f(mid))
        if not math.isfinite(fm):
            raise NonFiniteEnergy(f"function is {fm!r} at angle {mid!r}")
        if fm == 0.0:
            return mid
        if (flo < 0.0) != (fm < 0.0):
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def sign_change_scan(
    f: Callable,
    grid_n: int = 1440,
    vectorized: bool = False,
) -> list[float]:
    """All roots of a continuous 2*pi-periodic function found by bracketing.

    Samples grid_n points around the circle, duplicates the wrap-around
    cell, and bisects every sign change down to 1e-10. Exact zeros at
    sample points are reported directly. Returns normalized angles in
    increasing order with near-duplicates removed.
    """
    if grid_n < 360:
        raise ValueError(f"grid_n must be at least 360, got {grid_n}")
    h = math.tau / grid_n
    alphas = -math.pi + h * np.arange(grid_n)
    values = _evaluate_grid(f, alphas, vectorized)

    roots: list[float] = []
    for i in range(grid_n):
        a0 = float(alphas[i])
        v0 = float(values[i])
        a1 = a0 + h
        v1 = float(values[(i + 1) % grid_n])
        if v0 == 0.0:
            roots.append(normalize_angle(a0))
        elif v0 * v1 < 0.0:
            roots.append(normalize_angle(_bisect(f, a0, a1, v0, 1e-10)))

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if all(circular_distance(r, q) > 5e-9 for q in deduped):
            deduped.append(r)
    return deduped


def angle_set_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Symmetric Hausdorff distance between two angle sets, modulo 2*pi."""
    if not a and not b:
        return 0.0
    if not a or not b:
        return math.inf
    d_ab = max(min(circular_distance(x, y) for y in b) for x in a)
    d_ba = max(min(circular_distance(x, y) for y in a) for x in b)
    return max(d_ab, d_ba)
