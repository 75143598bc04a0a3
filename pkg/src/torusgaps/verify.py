"""Self-check suites: known extremal examples, randomized invariants, and
an exhaustive one-dimensional sweep.

Each suite returns a :class:`SuiteReport` with one line per check so the
CLI can print them verbatim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import slab
from .gaps import (
    KroneckerInstance,
    Lattice,
    Metric,
    check_gap_bound,
    gap_bound,
    gap_spectrum,
    manhattan_spectrum_by_map,
)
from .ratlin import Vec, identity, mat, mat_mul


# ---------------------------------------------------------------------------
# Known extremal examples (two dimensions: five gaps; three dimensions: nine)


def extremal_example_d2() -> KroneckerInstance:
    """Two-dimensional instance attaining the maximum of five distinct gaps."""
    alpha = (Fraction(157, 500), Fraction(-23, 200))
    return KroneckerInstance(alpha, Lattice.identity(2), 11)


EXPECTED_D2_G = 5
EXPECTED_D2_DISTINCT = (
    Fraction(3, 20),
    Fraction(87, 500),
    Fraction(99, 500),
    Fraction(31, 100),
    Fraction(157, 500),
)
# (n, delta_n) pairs pinning where each value first appears
EXPECTED_D2_DELTAS = (
    (1, Fraction(3, 20)),
    (2, Fraction(87, 500)),
    (4, Fraction(99, 500)),
    (5, Fraction(31, 100)),
    (6, Fraction(157, 500)),
)


def extremal_example_d3() -> KroneckerInstance:
    """Three-dimensional instance attaining nine distinct gaps (bound 2^3+1)."""
    alpha = (
        Fraction(-157, 10000),
        Fraction(-742, 3125),
        Fraction(-23, 400),
    )
    return KroneckerInstance(alpha, Lattice.identity(3), 73)


EXPECTED_D3_G = 9
EXPECTED_D3_DISTINCT = (
    Fraction(7, 50),
    Fraction(443, 3125),
    Fraction(456, 3125),
    Fraction(59, 400),
    Fraction(13, 80),
    Fraction(557, 3125),
    Fraction(1993, 10000),
    Fraction(43, 200),
    Fraction(23, 100),
)
EXPECTED_D3_DELTAS = (
    (1, Fraction(7, 50)),
    (2, Fraction(443, 3125)),
    (5, Fraction(456, 3125)),
    (6, Fraction(59, 400)),
    (18, Fraction(13, 80)),
    (19, Fraction(557, 3125)),
    (22, Fraction(1993, 10000)),
    (23, Fraction(43, 200)),
    (24, Fraction(23, 100)),
)


# ---------------------------------------------------------------------------
# Random instance helpers (shared by suites and tests)


def random_rational(rng: random.Random, den_cap: int) -> Fraction:
    q = rng.randint(1, den_cap)
    return Fraction(rng.randint(-q, q), q)


def random_alpha(rng: random.Random, d: int, den_cap: int = 1000) -> Vec:
    return tuple(random_rational(rng, den_cap) for _ in range(d))


def random_unimodular_lattice(rng: random.Random, d: int, steps: int = 6) -> Lattice:
    """Random determinant +-1 rational basis: identity times a few elementary
    row shears (add a small rational multiple of one row to another)."""
    m = identity(d)
    for _ in range(steps):
        i = rng.randrange(d)
        j = rng.randrange(d)
        if i == j:
            continue
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        shear = [list(row) for row in identity(d)]
        shear[i][j] = c
        m = mat_mul(mat(shear), m)
    lat = Lattice(m)
    assert lat.unimodular
    return lat


# ---------------------------------------------------------------------------
# Suites


@dataclass(frozen=True)
class SuiteReport:
    name: str
    ok: bool
    lines: tuple[str, ...]


def _check(lines: list[str], label: str, ok: bool, detail: str = "") -> bool:
    status = "ok" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    lines.append(f"{status}: {label}{suffix}")
    return ok


def run_extremal_suite() -> SuiteReport:
    """Recompute both known extremal examples and compare every pinned value."""
    lines: list[str] = []
    ok = True

    for dim, make, want_g, want_distinct, want_deltas in (
        (2, extremal_example_d2, EXPECTED_D2_G, EXPECTED_D2_DISTINCT, EXPECTED_D2_DELTAS),
        (3, extremal_example_d3, EXPECTED_D3_G, EXPECTED_D3_DISTINCT, EXPECTED_D3_DELTAS),
    ):
        inst = make()
        sp = gap_spectrum(inst, Metric.MAX)
        ok &= _check(lines, f"d={dim} g", sp.g == want_g, f"g={sp.g}")
        ok &= _check(
            lines, f"d={dim} distinct values", sp.distinct == want_distinct,
            ", ".join(str(v) for v in sp.distinct),
        )
        for n, want in want_deltas:
            ok &= _check(
                lines, f"d={dim} delta_{n}", sp.gaps[n - 1] == want,
                f"{sp.gaps[n - 1]}",
            )
        counts = slab.slab_gap_counts(inst)
        ok &= _check(
            lines, f"d={dim} window count matches g",
            counts.g_window == sp.g, f"g_window={counts.g_window}",
        )
        bound = gap_bound(Metric.MAX, dim)
        assert bound is not None
        ok &= _check(
            lines, f"d={dim} attains bound 2^{dim}+1",
            counts.g_total <= bound and sp.g == bound,
            f"g_total={counts.g_total} bound={bound}",
        )
    return SuiteReport("extremal", ok, tuple(lines))


def run_properties_suite(seed: int = 42, per_dim: int = 40) -> SuiteReport:
    """Randomized invariants: bound, reflection symmetry, window/gap agreement,
    no shared orthants among leading slab candidates."""
    rng = random.Random(seed)
    lines: list[str] = []
    ok = True
    for d in (1, 2, 3):
        bound_ok = symmetry_ok = window_ok = orthant_ok = True
        for _ in range(per_dim):
            inst = KroneckerInstance(
                random_alpha(rng, d, den_cap=60), Lattice.identity(d),
                rng.randint(1, 40),
            )
            sp = gap_spectrum(inst, Metric.MAX)
            bound_ok &= check_gap_bound(sp).ok is not False
            symmetry_ok &= all(
                sp.gaps[n - 1] == sp.gaps[inst.N - n] for n in range(1, inst.N + 1)
            )
            points = slab.slab_points(inst)
            window_ok &= sorted(slab.window_values(inst, points)) == sorted(sp.gaps)
            cand = slab.candidate_set(inst, points)
            head = cand.points[: cand.K - 1]
            orthant_ok &= not any(
                slab.signatures_share_orthant(
                    slab.orthant_signature(a), slab.orthant_signature(b)
                )
                for i, a in enumerate(head)
                for b in head[i + 1:]
            )
        ok &= _check(lines, f"d={d} bound holds on {per_dim} random instances", bound_ok)
        ok &= _check(lines, f"d={d} reflection symmetry delta_n = delta_(N+1-n)", symmetry_ok)
        ok &= _check(lines, f"d={d} window values equal gap multiset", window_ok)
        ok &= _check(lines, f"d={d} leading candidates in distinct orthants", orthant_ok)

    man_ok = True
    for _ in range(per_dim):
        inst = KroneckerInstance(
            random_alpha(rng, 2, den_cap=60), Lattice.identity(2), rng.randint(1, 40)
        )
        direct = gap_spectrum(inst, Metric.MANHATTAN)
        mapped = manhattan_spectrum_by_map(inst)
        man_ok &= direct.gaps == mapped.gaps and direct.g <= 5
    ok &= _check(lines, f"d=2 Manhattan direct equals mapped on {per_dim} instances", man_ok)
    return SuiteReport("properties", ok, tuple(lines))


def run_d1_exhaustive_suite(den_cap: int = 20, n_max: int = 50) -> SuiteReport:
    """Every rational rotation with denominator <= den_cap, every N <= n_max:
    the gap count never exceeds three, and three is attained."""
    lines: list[str] = []
    ok = True
    max_g = 0
    over = 0
    total = 0
    for q in range(2, den_cap + 1):
        for p in range(1, q):
            if Fraction(p, q).denominator != q:
                continue
            alpha = (Fraction(p, q),)
            for n in range(1, n_max + 1):
                sp = gap_spectrum(
                    KroneckerInstance(alpha, Lattice.identity(1), n), Metric.MAX
                )
                total += 1
                max_g = max(max_g, sp.g)
                if sp.g > 3:
                    over += 1
    ok &= _check(lines, f"no instance of {total} exceeds three gaps", over == 0)
    ok &= _check(lines, "three gaps attained", max_g == 3, f"max g={max_g}")
    return SuiteReport("d1-exhaustive", ok, tuple(lines))
