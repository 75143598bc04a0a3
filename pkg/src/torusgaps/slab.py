"""Lattice-slab view of the max-metric gap spectrum.

Write N+ = N + 1/2.  The gap value at point n equals the minimum of
|k*alpha + ell|_inf over integers k in the window 1-n <= k <= N-n and
lattice points ell, with the zero vector excluded.  Embedding every pair
(k, ell) as the point (u, v) = (k/N+, k*alpha + ell) of a rank-(d+1)
lattice turns the window into the slab -t < u < 1-t at offset t = n/N+.

The window minimum as a function of the continuous offset t in (0, 1) is
piecewise constant and takes finitely many values; its value at t is the
least |v|_inf over slab points admissible at t.  This module enumerates
all slab points below the half-window bound, computes every window
minimum from them, sweeps t to count the distinct values over all offsets
(not just the N sampled ones), and extracts one witness point per value.
All of that is exact.  A float analogue handles arbitrary unimodular
bases of R^(d+1) that have no rational representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import ratlin
from .gaps import (
    KroneckerInstance,
    Lattice,
    Metric,
    lattice_points_near,
    positive_torus_norm,
)
from .ratlin import Mat, Vec


@dataclass(frozen=True)
class SlabFactors:
    """Exact factors of the embedding lattice basis for one instance.

    The full basis is diag(1, m0) * [[1, alpha], [0, I]] * diag(1/n_plus,
    n_plus^(1/d) I).  The last factor is irrational and is never applied on
    the exact path: all counts are invariant under it, so exact work stays
    in the unscaled coordinates (k, k*alpha + ell).
    """

    m0: Mat
    alpha: Vec
    n_plus: Fraction

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def unscaled_matrix(self) -> Mat:
        """Exact product of the first two factors: rows generate {(k, k*alpha + ell)}."""
        zero = Fraction(0)
        rows = [(Fraction(1), *self.alpha)]
        rows.extend((zero, *r) for r in self.m0)
        return tuple(rows)

    def scaled_matrix(self) -> list[list[float]]:
        """Float rendering with the diagonal scaling applied; |det| = 1."""
        d = self.dim
        u_scale = 1.0 / float(self.n_plus)
        v_scale = float(self.n_plus) ** (1.0 / d)
        return [
            [float(e) * (u_scale if j == 0 else v_scale) for j, e in enumerate(row)]
            for row in self.unscaled_matrix()
        ]


def build_slab_factors(inst: KroneckerInstance) -> SlabFactors:
    if not inst.lattice.unimodular:
        raise ValueError("unimodular lattice required")
    return SlabFactors(inst.lattice.basis, inst.alpha, inst.N + Fraction(1, 2))


@dataclass(frozen=True)
class SlabPoint:
    """One embedded pair: v = k*alpha + ell exactly, vnorm = |v|_inf."""

    k: int
    v: Vec
    ell: Vec
    vnorm: Fraction


def global_norm_bound(inst: KroneckerInstance) -> Fraction:
    """Least positive |k*alpha + ell|_inf over |k| <= N // 2.

    Points with |k| <= N // 2 lie inside every window, so this value caps
    every window minimum and is a sufficient enumeration radius for the
    candidate sweep.
    """
    return min(
        positive_torus_norm(ratlin.vec_scale(inst.alpha, k), inst.lattice, Metric.MAX)
        for k in range(inst.N // 2 + 1)
    )


def slab_points(
    inst: KroneckerInstance, radius: Optional[Fraction] = None
) -> tuple[SlabPoint, ...]:
    """All points (k, k*alpha + ell) with |k| <= N and 0 < |v|_inf <= radius,
    sorted by (vnorm, |k|, k, v).  Default radius is the half-window bound,
    which guarantees at least one point in every window."""
    if radius is None:
        radius = global_norm_bound(inst)
    if radius <= 0:
        raise ValueError("radius must be positive")
    out = []
    for k in range(-inst.N, inst.N + 1):
        x = ratlin.vec_scale(inst.alpha, -k)
        for ell, dist in lattice_points_near(x, inst.lattice, radius, Metric.MAX):
            if dist == 0:
                continue
            v = ratlin.vec_sub(ell, x)  # = k*alpha + ell
            out.append(SlabPoint(k, v, ell, dist))
    out.sort(key=lambda p: (p.vnorm, abs(p.k), p.k, p.v))
    return tuple(out)


def _default_points(inst: KroneckerInstance,
                    points: Optional[Sequence[SlabPoint]]) -> Sequence[SlabPoint]:
    if points is None:
        return slab_points(inst, global_norm_bound(inst))
    return points


def window_min_norm(
    inst: KroneckerInstance, n: int,
    points: Optional[Sequence[SlabPoint]] = None,
) -> Fraction:
    """Minimum |v|_inf over slab points with k in the n-th window
    1-n <= k <= N-n; equals the max-metric gap value at n."""
    if not 1 <= n <= inst.N:
        raise ValueError(f"n must lie in 1..{inst.N}")
    points = _default_points(inst, points)
    lo, hi = 1 - n, inst.N - n
    for p in points:  # sorted by vnorm ascending
        if lo <= p.k <= hi:
            return p.vnorm
    raise AssertionError("no window is empty at the half-window radius")


def window_values(
    inst: KroneckerInstance,
    points: Optional[Sequence[SlabPoint]] = None,
) -> tuple[Fraction, ...]:
    """Window minima for n = 1..N, in order."""
    points = _default_points(inst, points)
    return tuple(window_min_norm(inst, n, points) for n in range(1, inst.N + 1))


# ---------------------------------------------------------------------------
# Sweep over the continuous offset t


def _offset_interval(k: int, n_plus: Fraction) -> tuple[Fraction, Fraction]:
    """Open interval of offsets t at which the point with this k is admissible."""
    u = Fraction(k) / n_plus
    return max(Fraction(0), -u), min(Fraction(1), 1 - u)


def sweep_intervals(
    inst: KroneckerInstance,
    points: Optional[Sequence[SlabPoint]] = None,
) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    """Partition of (0,1) into open intervals of constant window minimum.

    Breakpoints are the admissibility endpoints -u and 1-u of the slab
    points, so the minimum is constant on each open piece; it is evaluated
    at the exact midpoint.  Returns (lo, hi, value) triples.
    """
    points = _default_points(inst, points)
    n_plus = inst.N + Fraction(1, 2)
    breaks = {Fraction(0), Fraction(1)}
    for p in points:
        lo, hi = _offset_interval(p.k, n_plus)
        if 0 < lo < 1:
            breaks.add(lo)
        if 0 < hi < 1:
            breaks.add(hi)
    cuts = sorted(breaks)
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        t = (lo + hi) / 2
        val = _min_at_offset(points, t, n_plus)
        out.append((lo, hi, val))
    return tuple(out)


def _min_at_offset(points: Sequence[SlabPoint], t: Fraction, n_plus: Fraction) -> Fraction:
    for p in points:  # sorted by vnorm ascending
        u = Fraction(p.k) / n_plus
        if -t < u < 1 - t:
            return p.vnorm
    raise AssertionError("every offset admits a point within the half-window radius")


@dataclass(frozen=True)
class CandidateSet:
    """One witness point per distinct window-minimum value, norms strictly
    increasing; K is the number of distinct values over all offsets."""

    points: tuple[SlabPoint, ...]
    K: int


def candidate_set(
    inst: KroneckerInstance,
    points: Optional[Sequence[SlabPoint]] = None,
) -> CandidateSet:
    """Sweep all offsets and pick, per attained value, the witness with the
    smallest |k| (ties: lexicographically smallest v)."""
    points = _default_points(inst, points)
    n_plus = inst.N + Fraction(1, 2)
    best: dict[Fraction, SlabPoint] = {}
    for lo, hi, val in sweep_intervals(inst, points):
        t = (lo + hi) / 2
        for p in points:
            if p.vnorm > val:
                break
            if p.vnorm == val:
                u = Fraction(p.k) / n_plus
                if -t < u < 1 - t:
                    cur = best.get(val)
                    if cur is None or (abs(p.k), p.v) < (abs(cur.k), cur.v):
                        best[val] = p
    ordered = tuple(best[val] for val in sorted(best))
    return CandidateSet(ordered, len(ordered))


@dataclass(frozen=True)
class SlabCounts:
    """g_window: distinct window minima over the N sampled offsets n/N+.
    g_total: distinct window minima over all offsets t in (0,1)."""

    g_window: int
    g_total: int


def slab_gap_counts(inst: KroneckerInstance) -> SlabCounts:
    points = slab_points(inst, global_norm_bound(inst))
    window = set(window_values(inst, points))
    return SlabCounts(len(window), candidate_set(inst, points).K)


# ---------------------------------------------------------------------------
# Orthant signatures


def orthant_signature(p: SlabPoint) -> str:
    """Sign pattern of sgn(k) * v, one character per coordinate; '*' marks a
    zero (sign undetermined, matching either sign)."""
    if p.k == 0:
        return "*" * len(p.v)
    s = 1 if p.k > 0 else -1
    chars = []
    for c in p.v:
        if c == 0:
            chars.append("*")
        else:
            chars.append("+" if (s > 0) == (c > 0) else "-")
    return "".join(chars)


def signatures_share_orthant(a: str, b: str) -> bool:
    """Whether the two sign patterns share a closed orthant: no coordinate
    carries strictly opposite signs ('*' matches both)."""
    return all({x, y} != {"+", "-"} for x, y in zip(a, b, strict=True))


# ---------------------------------------------------------------------------
# Serialization


def candidate_set_to_json(cs: CandidateSet) -> dict:
    return {
        "K": cs.K,
        "points": [
            {
                "k": p.k,
                "v": [str(c) for c in p.v],
                "ell": [str(c) for c in p.ell],
                "vnorm": str(p.vnorm),
                "signature": orthant_signature(p),
            }
            for p in cs.points
        ],
    }


def candidate_set_from_json(obj: dict) -> CandidateSet:
    points = tuple(
        SlabPoint(
            int(p["k"]),
            ratlin.vec(p["v"]),
            ratlin.vec(p["ell"]),
            ratlin.rational(p["vnorm"]),
        )
        for p in obj["points"]
    )
    return CandidateSet(points, int(obj["K"]))


# ---------------------------------------------------------------------------
# Float path for arbitrary unimodular bases of R^(d+1)


def _lll_rows(m: np.ndarray, delta: float = 0.99, max_iters: int = 20000) -> np.ndarray:
    """Float LLL on the rows; the returned rows span the same lattice, just
    with a rounder shape so coefficient boxes stay small."""
    b = np.array(m, dtype=float)
    n = b.shape[0]

    def gso(rows):
        star = rows.astype(float).copy()
        mu = np.eye(n)
        for i in range(n):
            for j in range(i):
                mu[i, j] = (rows[i] @ star[j]) / (star[j] @ star[j])
                star[i] = star[i] - mu[i, j] * star[j]
        return star, mu

    star, mu = gso(b)
    k = 1
    for _ in range(max_iters):
        if k >= n:
            break
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                b[k] = b[k] - q * b[j]
                star, mu = gso(b)
        if (star[k] @ star[k]) >= (delta - mu[k, k - 1] ** 2) * (star[k - 1] @ star[k - 1]):
            k += 1
        else:
            b[[k, k - 1]] = b[[k - 1, k]]
            star, mu = gso(b)
            k = max(k - 1, 1)
    if not np.isfinite(b).all():
        return np.array(m, dtype=float)
    return b


def _box_points(
    m: np.ndarray, u_bound: float, v_bound: float, candidate_cap: int
) -> tuple[np.ndarray, np.ndarray]:
    """(u, |v|_inf) for every lattice point in the coefficient box covering
    {|u| <= u_bound, |v|_inf <= v_bound}."""
    minv = np.linalg.inv(m)
    absinv = np.abs(minv)
    bounds = u_bound * absinv[0] + v_bound * absinv[1:].sum(axis=0)
    sizes = [int(math.floor(bd + 1e-9)) for bd in bounds]
    total = 1
    for s in sizes:
        total *= 2 * s + 1
    if total > candidate_cap:
        raise ValueError("radius cap exceeded")
    axes = [np.arange(-s, s + 1) for s in sizes]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m.shape[0])
    pts = grid @ m
    return pts[:, 0], np.abs(pts[:, 1:]).max(axis=1)


def generic_distinct_count(
    basis: Sequence[Sequence[float]],
    tolerance: float = 1e-9,
    radius_cap: float = 64.0,
    candidate_cap: int = 2_000_000,
) -> int:
    """Number of distinct window-minimum values for a float (d+1)x(d+1)
    basis with |det| = 1 (rows are basis vectors).

    The half-window cap is found by radius doubling from the Minkowski seed
    2^(1/d); the sweep then mirrors the exact path, with slab membership and
    distinct-value merging both at the given absolute tolerance.
    """
    m = np.array(basis, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise ValueError("need a square (d+1) x (d+1) basis with d >= 1")
    d = m.shape[0] - 1
    if abs(abs(np.linalg.det(m)) - 1.0) > tolerance:
        raise ValueError("basis is not unimodular within tolerance")
    m = _lll_rows(m)

    r = 2.0 ** (1.0 / d)
    while True:
        u, vnorm = _box_points(m, 0.5, r, candidate_cap)
        mask = (np.abs(u) < 0.5) & (vnorm > tolerance) & (vnorm <= r)
        if mask.any():
            half_window_cap = float(vnorm[mask].min())
            break
        r *= 2.0
        if r > radius_cap:
            raise ValueError("radius cap exceeded")

    radius = half_window_cap + tolerance
    u, vnorm = _box_points(m, 1.0, radius, candidate_cap)
    keep = (np.abs(u) < 1.0 - 1e-15) & (vnorm > tolerance) & (vnorm <= radius)
    u, vnorm = u[keep], vnorm[keep]

    cuts = np.concatenate([[0.0, 1.0], -u[u < 0], 1.0 - u[u > 0]])
    cuts = np.sort(cuts[(cuts >= 0.0) & (cuts <= 1.0)])
    merged = [float(cuts[0])]
    for c in cuts[1:]:
        if c - merged[-1] > tolerance:
            merged.append(float(c))
    values = []
    for lo, hi in zip(merged, merged[1:]):
        t = (lo + hi) / 2.0
        mask = (-t < u) & (u < 1.0 - t)
        if not mask.any():
            raise AssertionError("offset with no admissible point; basis too degenerate")
        values.append(float(vnorm[mask].min()))
    values.sort()
    count = 1
    for a, b in zip(values, values[1:]):
        if b - a > tolerance:
            count += 1
    return count


def instance_float_basis(inst: KroneckerInstance) -> list[list[float]]:
    """Float rendering of the instance's scaled embedding basis."""
    return build_slab_factors(inst).scaled_matrix()
