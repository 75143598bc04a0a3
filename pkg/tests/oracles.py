"""Independent reference implementations used only by the tests.

These deliberately avoid the library's own enumeration and sweep logic:
coefficient boxes come from a float singular value with a doubled safety
margin (the float only sizes the box; all comparisons stay exact), the gap
oracle works straight from the pairwise orbit-distance definition, and the
distinct-count oracle samples the offset sweep on a uniform grid that
provably meets every constancy interval.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from torusgaps.gaps import KroneckerInstance, Lattice, Metric, metric_norm
from torusgaps import ratlin


def brute_lattice_min(
    x: ratlin.Vec, lat: Lattice, metric: Metric, positive: bool = False
) -> Fraction:
    """Exact (smallest positive) distance from x to the lattice by searching
    a coefficient box inflated well past any possible minimizer."""
    y = ratlin.vec_mat(x, lat.inverse)
    c0 = tuple(Fraction(round(yi)) for yi in y)
    diff = ratlin.vec_sub(x, ratlin.vec_mat(c0, lat.basis))
    d0 = math.sqrt(sum(float(c) ** 2 for c in diff))
    if positive and all(c == 0 for c in diff):
        d0 = max(
            math.sqrt(sum(float(c) ** 2 for c in row)) for row in lat.basis
        )
    b = np.array([[float(e) for e in row] for row in lat.basis])
    sigma_min = float(np.linalg.svd(b, compute_uv=False)[-1])
    dim = lat.dim
    # any minimizer e satisfies |e|_2 <= sqrt(d) * d0-ish; doubled for slop
    margin = int(math.ceil(2.0 * math.sqrt(dim) * (d0 + 1.0) / max(sigma_min, 1e-12))) + 1
    assert margin <= 200, "test lattice too skewed for the brute oracle"
    best = None
    centers = [round(yi) for yi in y]
    for c in product(*[range(ci - margin, ci + margin + 1) for ci in centers]):
        ell = ratlin.vec_mat(tuple(Fraction(i) for i in c), lat.basis)
        dist = metric_norm(ratlin.vec_sub(x, ell), metric)
        if positive and dist == 0:
            continue
        if best is None or dist < best:
            best = dist
    assert best is not None
    return best


def brute_point_gap(inst: KroneckerInstance, n: int, metric: Metric) -> Fraction:
    """Gap value at n straight from the definition: the smallest positive
    distance from n*alpha to any orbit point m*alpha + ell, 1 <= m <= N."""
    best = None
    for m in range(1, inst.N + 1):
        x = ratlin.vec_scale(inst.alpha, m - n)
        d = brute_lattice_min(x, inst.lattice, metric, positive=True)
        if best is None or d < best:
            best = d
    assert best is not None
    return best


def grid_distinct_values(inst: KroneckerInstance) -> set[Fraction]:
    """All window-minimum values over offsets t in (0,1), sampled on the
    uniform grid of midpoints (2j+1) / (2(2N+1)).

    Every admissibility endpoint -u and 1-u with u = 2k/(2N+1) is a multiple
    of 1/(2N+1), so each open interval of constancy contains one of these
    midpoints; the sample is therefore exhaustive.
    """
    den = 2 * inst.N + 1
    n_plus = Fraction(den, 2)
    norm_cache: dict[int, Fraction] = {}

    def h(k: int) -> Fraction:
        if k not in norm_cache:
            norm_cache[k] = brute_lattice_min(
                ratlin.vec_scale(inst.alpha, k), inst.lattice, Metric.MAX,
                positive=True,
            )
        return norm_cache[k]

    values = set()
    for j in range(den):
        t = Fraction(2 * j + 1, 2 * den)
        best = None
        for k in range(-inst.N, inst.N + 1):
            u = Fraction(k) / n_plus
            if not (-t < u < 1 - t):
                continue
            val = h(k)
            if best is None or val < best:
                best = val
        assert best is not None
        values.add(best)
    return values


def det_cofactor(m: ratlin.Mat) -> Fraction:
    """Determinant by first-row cofactor expansion (small matrices only)."""
    size = len(m)
    if size == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(size):
        minor = tuple(
            tuple(row[c] for c in range(size) if c != j) for row in m[1:]
        )
        term = m[0][j] * det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total
