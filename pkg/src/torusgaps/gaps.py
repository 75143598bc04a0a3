"""Gap spectra of Kronecker sequences on the torus R^d / L.

For a rational rotation vector alpha, a full-rank rational lattice L, and a
horizon N, the orbit is {n*alpha mod L : 1 <= n <= N}.  The gap value at n
is the smallest positive distance from n*alpha to any other orbit point
modulo L; the spectrum collects all N values and counts the distinct ones.

Everything here is exact.  Distances are Fractions; for the Euclidean
metric the *squared* distance is carried instead, which keeps values
rational and leaves distinct-value counts unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import accumulate, product
from typing import Iterable, Optional

from . import ratlin
from .ratlin import Mat, Vec, rational


class Metric(Enum):
    MAX = "max"
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"

    @property
    def squared(self) -> bool:
        """True when stored values are squared distances."""
        return self is Metric.EUCLIDEAN


def metric_norm(x: Vec, metric: Metric) -> Fraction:
    """Norm of x under the metric (squared norm for EUCLIDEAN)."""
    if metric is Metric.MAX:
        return max(abs(c) for c in x)
    if metric is Metric.MANHATTAN:
        return sum(abs(c) for c in x)
    return sum(c * c for c in x)


class Lattice:
    """Full-rank rational lattice Z^d B; the rows of ``basis`` generate it.

    The exact inverse, determinant, and unimodularity flag are computed once
    at construction.  Instances are immutable and hashable.
    """

    __slots__ = ("basis", "inverse", "det", "unimodular", "is_identity", "_colsums")

    def __init__(self, basis: Iterable[Iterable[ratlin.RatLike]]):
        b = ratlin.mat(basis)
        d = ratlin.det(b)
        if d == 0:
            raise ValueError("singular lattice basis")
        self.basis: Mat = b
        self.inverse: Mat = ratlin.inverse(b)
        self.det: Fraction = d
        self.unimodular: bool = abs(d) == 1
        self.is_identity: bool = b == ratlin.identity(len(b))
        # column j of |inverse| summed: |coeff_j(e)| <= |e|_inf * colsum_j
        self._colsums: tuple[Fraction, ...] = tuple(
            sum(abs(row[j]) for row in self.inverse) for j in range(len(b))
        )

    @classmethod
    def identity(cls, dim: int) -> "Lattice":
        return cls(ratlin.identity(dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        if self.is_identity:
            return f"Lattice.identity({self.dim})"
        return f"Lattice({[[str(e) for e in row] for row in self.basis]})"


@dataclass(frozen=True)
class KroneckerInstance:
    """One orbit: rotation vector alpha, lattice, and horizon N."""

    alpha: Vec
    lattice: Lattice
    N: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if len(self.alpha) != self.lattice.dim:
            raise ValueError("alpha and lattice dimensions differ")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class GapSpectrum:
    """All gap values of one instance: gaps[n-1] is the value at point n."""

    instance: KroneckerInstance
    metric: Metric
    gaps: tuple[Fraction, ...]
    distinct: tuple[Fraction, ...]
    g: int


# ---------------------------------------------------------------------------
# Closest-vector enumeration


def _coeff_box(y: Vec, halfwidths: tuple[Fraction, ...]) -> Iterable[tuple[int, ...]]:
    """Integer coefficient tuples c with |c_i - y_i| <= halfwidths_i."""
    ranges = []
    for yi, wi in zip(y, halfwidths):
        lo = math.ceil(yi - wi)
        hi = math.floor(yi + wi)
        if lo > hi:
            return ()
        ranges.append(range(lo, hi + 1))
    return product(*ranges)


def lattice_points_near(
    x: Vec, lat: Lattice, radius: Fraction, metric: Metric = Metric.MAX
) -> list[tuple[Vec, Fraction]]:
    """All lattice points ell with d(x, ell) <= radius, as (ell, distance).

    ``radius`` is in stored units (squared for EUCLIDEAN).  The coefficient
    box comes from |coeff_j(e)| <= |e|_inf * colsum_j(|B^-1|), with
    |e|_inf <= |e|_1 and |e|_inf <= |e|_2, so no candidate is missed.
    """
    if len(x) != lat.dim:
        raise ValueError("dimension mismatch")
    if radius < 0:
        return []
    linf_bound = ratlin.sqrt_upper(radius) if metric.squared else radius
    y = ratlin.vec_mat(x, lat.inverse)
    widths = tuple(linf_bound * cs for cs in lat._colsums)
    out = []
    if lat.is_identity:
        for c in _coeff_box(y, widths):
            ell = tuple(Fraction(ci) for ci in c)
            dist = metric_norm(ratlin.vec_sub(x, ell), metric)
            if dist <= radius:
                out.append((ell, dist))
        return out
    for c in _coeff_box(y, widths):
        ell = ratlin.vec_mat(tuple(Fraction(ci) for ci in c), lat.basis)
        dist = metric_norm(ratlin.vec_sub(x, ell), metric)
        if dist <= radius:
            out.append((ell, dist))
    return out


def _identity_dists(x: Vec) -> tuple[Fraction, ...]:
    """Per-coordinate distance to the nearest integer."""
    out = []
    for c in x:
        num, den = c.numerator, c.denominator
        r = num % den
        out.append(Fraction(min(r, den - r), den))
    return tuple(out)


def _neighborhood_min(
    x: Vec, lat: Lattice, metric: Metric, c0: tuple[Fraction, ...],
    positive: bool,
) -> Optional[Fraction]:
    """Best (positive) distance among the 3^d coefficient neighbours of c0.

    Any value found is attained, so it safely shrinks the enumeration radius
    before the full box scan; None only when positive and all are zero."""
    best: Optional[Fraction] = None
    for offs in product((-1, 0, 1), repeat=len(c0)):
        c = tuple(ci + o for ci, o in zip(c0, offs))
        dist = metric_norm(ratlin.vec_sub(x, ratlin.vec_mat(c, lat.basis)), metric)
        if positive and dist == 0:
            continue
        if best is None or dist < best:
            best = dist
    return best


def torus_norm(x: Vec, lat: Lattice, metric: Metric = Metric.MAX) -> Fraction:
    """Distance (squared for EUCLIDEAN) from x to the nearest lattice point."""
    if len(x) != lat.dim:
        raise ValueError("dimension mismatch")
    if lat.is_identity:
        dists = _identity_dists(x)
        return metric_norm(dists, metric)
    y = ratlin.vec_mat(x, lat.inverse)
    c0 = tuple(Fraction(round(yi)) for yi in y)
    r0 = _neighborhood_min(x, lat, metric, c0, positive=False)
    assert r0 is not None
    if r0 == 0:
        return Fraction(0)
    return min(dist for _, dist in lattice_points_near(x, lat, r0, metric))


def positive_torus_norm(x: Vec, lat: Lattice, metric: Metric = Metric.MAX) -> Fraction:
    """Smallest positive distance from x to a lattice point.

    Equals torus_norm unless x is itself on the lattice, in which case it is
    the norm of the shortest nonzero lattice vector.
    """
    if len(x) != lat.dim:
        raise ValueError("dimension mismatch")
    if lat.is_identity:
        dists = _identity_dists(x)
        val = metric_norm(dists, metric)
        return val if val > 0 else Fraction(1)
    y = ratlin.vec_mat(x, lat.inverse)
    c0 = tuple(Fraction(round(yi)) for yi in y)
    r0 = _neighborhood_min(x, lat, metric, c0, positive=True)
    if r0 is None:
        # degenerate only if every neighbour coincides with x, impossible for
        # a full-rank lattice; a basis step is always attainable
        r0 = metric_norm(lat.basis[0], metric)
    return min(d for _, d in lattice_points_near(x, lat, r0, metric) if d > 0)


# ---------------------------------------------------------------------------
# Gap values


def _multiple_norms(inst: KroneckerInstance, metric: Metric) -> list[Fraction]:
    """h[k] = smallest positive distance of k*alpha from the lattice, k < N.

    On the identity lattice the per-coordinate distance is min(r, q-r)/q with
    r = k*p mod q, so the whole loop runs on integers over the common
    denominator and builds one Fraction per k.
    """
    out = []
    if inst.lattice.is_identity:
        pairs = [(a.numerator, a.denominator) for a in inst.alpha]
        common = math.lcm(*(den for _, den in pairs))
        scales = [common // den for _, den in pairs]
        one = Fraction(1)
        if metric is Metric.MAX:
            for k in range(inst.N):
                best = 0
                for (num, den), m in zip(pairs, scales):
                    r = (k * num) % den
                    scaled = min(r, den - r) * m
                    if scaled > best:
                        best = scaled
                out.append(Fraction(best, common) if best else one)
        elif metric is Metric.MANHATTAN:
            for k in range(inst.N):
                total = 0
                for (num, den), m in zip(pairs, scales):
                    r = (k * num) % den
                    total += min(r, den - r) * m
                out.append(Fraction(total, common) if total else one)
        else:
            sq_common = common * common
            for k in range(inst.N):
                total = 0
                for (num, den), m in zip(pairs, scales):
                    r = (k * num) % den
                    scaled = min(r, den - r) * m
                    total += scaled * scaled
                out.append(Fraction(total, sq_common) if total else one)
        return out
    for k in range(inst.N):
        out.append(positive_torus_norm(ratlin.vec_scale(inst.alpha, k), inst.lattice, metric))
    return out


def point_gap(inst: KroneckerInstance, n: int, metric: Metric = Metric.MAX) -> Fraction:
    """Gap value at point n: min over the index window 1-n <= k <= N-n of the
    smallest positive distance of k*alpha from the lattice."""
    if not 1 <= n <= inst.N:
        raise ValueError(f"n must lie in 1..{inst.N}")
    cache: dict[int, Fraction] = {}
    best: Optional[Fraction] = None
    for k in range(1 - n, inst.N - n + 1):
        a = abs(k)
        if a not in cache:
            cache[a] = positive_torus_norm(
                ratlin.vec_scale(inst.alpha, a), inst.lattice, metric
            )
        if best is None or cache[a] < best:
            best = cache[a]
    assert best is not None
    return best


def gap_spectrum(inst: KroneckerInstance, metric: Metric = Metric.MAX) -> GapSpectrum:
    """All gap values at once.

    The window for point n always contains k = 0 and is symmetric in |ell|,
    so gaps[n-1] = min(pref[n-1], pref[N-n]) where pref is the running
    minimum of h[0..m].  This costs N norm evaluations total.
    """
    h = _multiple_norms(inst, metric)
    pref = list(accumulate(h, min))
    gaps = tuple(min(pref[n - 1], pref[inst.N - n]) for n in range(1, inst.N + 1))
    distinct = tuple(sorted(set(gaps)))
    return GapSpectrum(inst, metric, gaps, distinct, len(distinct))


# ---------------------------------------------------------------------------
# Manhattan metric via the exact skew map onto the max metric (d = 2 only)

# rows of Q; x Q = (x1 + x2, x2 - x1), and |x Q|_inf = |x|_1
_L1_TO_LINF = ratlin.mat([[1, -1], [1, 1]])


def manhattan_spectrum_by_map(inst: KroneckerInstance) -> GapSpectrum:
    """Manhattan spectrum computed as the max-metric spectrum of the image
    instance under x -> (x1 + x2, x2 - x1); exact, value-for-value."""
    if inst.dim != 2:
        raise ValueError("reduction defined for d=2 only")
    alpha = ratlin.vec_mat(inst.alpha, _L1_TO_LINF)
    basis = ratlin.mat_mul(inst.lattice.basis, _L1_TO_LINF)
    mapped = KroneckerInstance(alpha, Lattice(basis), inst.N)
    sp = gap_spectrum(mapped, Metric.MAX)
    return GapSpectrum(inst, Metric.MANHATTAN, sp.gaps, sp.distinct, sp.g)


# ---------------------------------------------------------------------------
# Distinct-count bounds


@dataclass(frozen=True)
class BoundCheck:
    """Result of comparing g against the known bound for (metric, d).

    ok is None when no bound is asserted for the pair.
    """

    bound: Optional[int]
    ok: Optional[bool]
    message: str


_EUCLIDEAN_BOUNDS = {1: 3, 2: 5}
_MANHATTAN_BOUNDS = {2: 5}


def gap_bound(metric: Metric, dim: int) -> Optional[int]:
    """Largest possible number of distinct gap values, where known."""
    if metric is Metric.MAX:
        return 2**dim + 1
    if metric is Metric.EUCLIDEAN:
        return _EUCLIDEAN_BOUNDS.get(dim)
    return _MANHATTAN_BOUNDS.get(dim)


def check_gap_bound(spectrum: GapSpectrum) -> BoundCheck:
    """Check g against the bound; a violation is a returned finding, never
    an exception."""
    d = spectrum.instance.dim
    bound = gap_bound(spectrum.metric, d)
    if bound is None:
        return BoundCheck(None, None, f"no bound asserted for ({spectrum.metric.value}, d={d})")
    if spectrum.g <= bound:
        return BoundCheck(bound, True, f"g = {spectrum.g} <= {bound}")
    inst = spectrum.instance
    alpha = ",".join(str(a) for a in inst.alpha)
    return BoundCheck(
        bound,
        False,
        f"BOUND VIOLATION: g = {spectrum.g} > {bound} at alpha=({alpha}), "
        f"N={inst.N}, lattice={inst.lattice!r}, metric={spectrum.metric.value}",
    )


# ---------------------------------------------------------------------------
# Serialization: canonical "p/q" strings only, never floats


def instance_to_json(inst: KroneckerInstance, metric: Metric) -> dict:
    return {
        "d": inst.dim,
        "alpha": [str(a) for a in inst.alpha],
        "lattice_basis": [[str(e) for e in row] for row in inst.lattice.basis],
        "N": inst.N,
        "metric": metric.value,
    }


def instance_from_json(obj: dict) -> tuple[KroneckerInstance, Metric]:
    alpha = ratlin.vec(obj["alpha"])
    lattice = Lattice(obj["lattice_basis"])
    inst = KroneckerInstance(alpha, lattice, int(obj["N"]))
    if inst.dim != int(obj["d"]):
        raise ValueError("inconsistent dimension")
    return inst, Metric(obj["metric"])


def spectrum_to_json(sp: GapSpectrum) -> dict:
    out = instance_to_json(sp.instance, sp.metric)
    out["deltas"] = [str(v) for v in sp.gaps]
    out["distinct"] = [str(v) for v in sp.distinct]
    out["g"] = sp.g
    return out


def spectrum_from_json(obj: dict) -> GapSpectrum:
    inst, metric = instance_from_json(obj)
    gaps = tuple(rational(v) for v in obj["deltas"])
    distinct = tuple(rational(v) for v in obj["distinct"])
    return GapSpectrum(inst, metric, gaps, distinct, int(obj["g"]))


def spectrum_to_csv(sp: GapSpectrum) -> str:
    lines = ["n,delta"]
    lines.extend(f"{n},{v}" for n, v in enumerate(sp.gaps, start=1))
    return "\n".join(lines) + "\n"
