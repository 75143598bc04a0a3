"""Gap spectra: norms, windows, spectra, bounds, serialization."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusgaps import ratlin
from torusgaps.gaps import (
    KroneckerInstance,
    Lattice,
    Metric,
    check_gap_bound,
    gap_bound,
    gap_spectrum,
    instance_from_json,
    instance_to_json,
    lattice_points_near,
    manhattan_spectrum_by_map,
    metric_norm,
    point_gap,
    positive_torus_norm,
    spectrum_from_json,
    spectrum_to_csv,
    spectrum_to_json,
    torus_norm,
)
from oracles import brute_lattice_min, brute_point_gap

METRICS = [Metric.MAX, Metric.EUCLIDEAN, Metric.MANHATTAN]

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def vectors(dim):
    return st.lists(small_rationals, min_size=dim, max_size=dim).map(tuple)


# mild unimodular bases: identity sheared a couple of times
def unimodular_lattices(dim):
    shear_entries = st.fractions(min_value=-1, max_value=1, max_denominator=3)

    def build(draws):
        rows = [list(r) for r in ratlin.identity(dim)]
        for (i, j, c) in draws:
            if i != j:
                for col in range(dim):
                    rows[i][col] += c * rows[j][col]
        return Lattice(rows)

    triple = st.tuples(
        st.integers(0, dim - 1), st.integers(0, dim - 1), shear_entries
    )
    return st.lists(triple, max_size=2).map(build)


def instances(dim, n_max=12):
    return st.builds(
        KroneckerInstance,
        vectors(dim),
        unimodular_lattices(dim),
        st.integers(1, n_max),
    )


# ---------------------------------------------------------------------------
# Metric norms


def test_metric_norm_values():
    x = (Fraction(3, 10), Fraction(-2, 5))
    assert metric_norm(x, Metric.MAX) == Fraction(2, 5)
    assert metric_norm(x, Metric.MANHATTAN) == Fraction(7, 10)
    assert metric_norm(x, Metric.EUCLIDEAN) == Fraction(9, 100) + Fraction(4, 25)


@given(vectors(3))
def test_metric_norm_ordering(x):
    # l_inf <= l_1 and l_inf^2 <= squared l_2 <= l_1^2
    linf = metric_norm(x, Metric.MAX)
    l1 = metric_norm(x, Metric.MANHATTAN)
    l2sq = metric_norm(x, Metric.EUCLIDEAN)
    assert linf <= l1
    assert linf * linf <= l2sq <= l1 * l1


# ---------------------------------------------------------------------------
# Lattice and instance construction


def test_lattice_rejects_singular_basis():
    with pytest.raises(ValueError):
        Lattice([[1, 2], [2, 4]])


def test_lattice_flags():
    assert Lattice.identity(3).is_identity
    assert Lattice.identity(3).unimodular
    sheared = Lattice([[1, 0], [1, 1]])
    assert sheared.unimodular and not sheared.is_identity
    scaled = Lattice([["2", "0"], ["0", "1"]])
    assert not scaled.unimodular


def test_instance_validation():
    with pytest.raises(ValueError):
        KroneckerInstance((Fraction(1, 2),), Lattice.identity(1), 0)
    with pytest.raises(ValueError):
        KroneckerInstance((Fraction(1, 2),), Lattice.identity(2), 3)


# ---------------------------------------------------------------------------
# Closest-vector enumeration and torus norms vs the brute oracle


@pytest.mark.parametrize("metric", METRICS)
@pytest.mark.parametrize("dim", [1, 2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_torus_norm_matches_brute_oracle(metric, dim, data):
    x = data.draw(vectors(dim))
    lat = data.draw(unimodular_lattices(dim))
    assert torus_norm(x, lat, metric) == brute_lattice_min(x, lat, metric)


@pytest.mark.parametrize("metric", METRICS)
@pytest.mark.parametrize("dim", [1, 2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_positive_torus_norm_matches_brute_oracle(metric, dim, data):
    x = data.draw(vectors(dim))
    lat = data.draw(unimodular_lattices(dim))
    got = positive_torus_norm(x, lat, metric)
    assert got > 0
    assert got == brute_lattice_min(x, lat, metric, positive=True)


def test_positive_torus_norm_on_lattice_point():
    lat = Lattice.identity(2)
    assert positive_torus_norm((Fraction(3), Fraction(-2)), lat) == 1
    sheared = Lattice([[1, 0], [Fraction(1, 2), 1]])
    x = ratlin.vec_mat((Fraction(2), Fraction(1)), sheared.basis)
    got = positive_torus_norm(x, sheared, Metric.MAX)
    assert got == brute_lattice_min(x, sheared, Metric.MAX, positive=True)


def test_lattice_points_near_returns_all_within_radius():
    lat = Lattice([[1, 0], [Fraction(1, 3), 1]])
    x = (Fraction(1, 4), Fraction(1, 4))
    radius = Fraction(3, 2)
    got = {ell for ell, _ in lattice_points_near(x, lat, radius, Metric.MAX)}
    # brute double loop over a generous coefficient grid
    want = set()
    for a in range(-6, 7):
        for b in range(-6, 7):
            ell = ratlin.vec_mat((Fraction(a), Fraction(b)), lat.basis)
            if metric_norm(ratlin.vec_sub(x, ell), Metric.MAX) <= radius:
                want.add(ell)
    assert got == want


def test_lattice_points_near_identity_matches_generic():
    # Z^2 expressed by a non-identity unimodular basis is the same lattice
    ident = Lattice.identity(2)
    sheared = Lattice([[1, 0], [1, 1]])
    x = (Fraction(2, 7), Fraction(-3, 5))
    for metric in METRICS:
        r = Fraction(2) if metric is not Metric.EUCLIDEAN else Fraction(4)
        a = sorted(lattice_points_near(x, ident, r, metric))
        b = sorted(lattice_points_near(x, sheared, r, metric))
        assert a == b


# ---------------------------------------------------------------------------
# Gap values vs the pairwise-definition oracle


@pytest.mark.parametrize("metric", METRICS)
@pytest.mark.parametrize("dim", [1, 2])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_point_gap_matches_pairwise_definition(metric, dim, data):
    inst = data.draw(instances(dim, n_max=8))
    n = data.draw(st.integers(1, inst.N))
    assert point_gap(inst, n, metric) == brute_point_gap(inst, n, metric)


@pytest.mark.parametrize("metric", METRICS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_gap_spectrum_agrees_with_point_gap(metric, data):
    inst = data.draw(instances(2, n_max=10))
    sp = gap_spectrum(inst, metric)
    assert len(sp.gaps) == inst.N
    for n in range(1, inst.N + 1):
        assert sp.gaps[n - 1] == point_gap(inst, n, metric)
    assert sp.distinct == tuple(sorted(set(sp.gaps)))
    assert sp.g == len(sp.distinct)


def test_point_gap_rejects_out_of_range_n():
    inst = KroneckerInstance((Fraction(1, 3),), Lattice.identity(1), 5)
    with pytest.raises(ValueError):
        point_gap(inst, 0)
    with pytest.raises(ValueError):
        point_gap(inst, 6)


@pytest.mark.parametrize("metric", METRICS)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_reflection_symmetry(metric, data):
    inst = data.draw(instances(2, n_max=14))
    sp = gap_spectrum(inst, metric)
    for n in range(1, inst.N + 1):
        assert sp.gaps[n - 1] == sp.gaps[inst.N - n]


def test_zero_alpha_single_gap():
    for dim in (1, 2, 3):
        inst = KroneckerInstance(
            tuple(Fraction(0) for _ in range(dim)), Lattice.identity(dim), 7
        )
        sp = gap_spectrum(inst, Metric.MAX)
        assert sp.g == 1
        assert sp.distinct == (Fraction(1),)


def test_equivalent_bases_give_equal_spectra():
    # [[1,0],[1,1]] generates Z^2, so all three metrics must agree with identity
    alpha = (Fraction(2, 7), Fraction(3, 11))
    a = KroneckerInstance(alpha, Lattice.identity(2), 9)
    b = KroneckerInstance(alpha, Lattice([[1, 0], [1, 1]]), 9)
    for metric in METRICS:
        assert gap_spectrum(a, metric).gaps == gap_spectrum(b, metric).gaps


def test_d1_two_distance_example():
    # alpha = 2/5, N = 3: points 2/5, 4/5, 1/5 — nearest-neighbor distances
    # 1/5, 2/5, 1/5 (worked by hand)
    inst = KroneckerInstance((Fraction(2, 5),), Lattice.identity(1), 3)
    sp = gap_spectrum(inst, Metric.MAX)
    assert sp.gaps == (Fraction(1, 5), Fraction(2, 5), Fraction(1, 5))
    assert sp.g == 2


# ---------------------------------------------------------------------------
# Manhattan metric via the skew map


@settings(max_examples=40, deadline=None)
@given(instances(2, n_max=12))
def test_manhattan_map_equals_direct(inst):
    direct = gap_spectrum(inst, Metric.MANHATTAN)
    mapped = manhattan_spectrum_by_map(inst)
    assert direct.gaps == mapped.gaps
    assert mapped.metric is Metric.MANHATTAN
    assert mapped.instance == inst


def test_manhattan_map_rejects_other_dimensions():
    inst = KroneckerInstance((Fraction(1, 3),), Lattice.identity(1), 4)
    with pytest.raises(ValueError):
        manhattan_spectrum_by_map(inst)


# ---------------------------------------------------------------------------
# Bounds


def test_gap_bound_table():
    assert gap_bound(Metric.MAX, 1) == 3
    assert gap_bound(Metric.MAX, 2) == 5
    assert gap_bound(Metric.MAX, 3) == 9
    assert gap_bound(Metric.MAX, 4) == 17
    assert gap_bound(Metric.EUCLIDEAN, 1) == 3
    assert gap_bound(Metric.EUCLIDEAN, 2) == 5
    assert gap_bound(Metric.EUCLIDEAN, 3) is None
    assert gap_bound(Metric.MANHATTAN, 2) == 5
    assert gap_bound(Metric.MANHATTAN, 3) is None


def test_check_gap_bound_reports():
    inst = KroneckerInstance((Fraction(1, 3),), Lattice.identity(1), 4)
    sp = gap_spectrum(inst, Metric.MAX)
    bc = check_gap_bound(sp)
    assert bc.ok is True and bc.bound == 3

    euclid3 = gap_spectrum(
        KroneckerInstance(
            (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)),
            Lattice.identity(3), 4,
        ),
        Metric.EUCLIDEAN,
    )
    bc3 = check_gap_bound(euclid3)
    assert bc3.ok is None and bc3.bound is None
    assert "no bound asserted" in bc3.message


def test_bound_violation_message_names_instance():
    # fabricate an impossible spectrum to exercise the reporting path
    inst = KroneckerInstance((Fraction(1, 3),), Lattice.identity(1), 4)
    fake = gap_spectrum(inst, Metric.MAX)
    from torusgaps.gaps import GapSpectrum

    bogus = GapSpectrum(inst, Metric.MAX, fake.gaps,
                        tuple(Fraction(i, 100) for i in range(1, 5)), 4)
    bc = check_gap_bound(bogus)
    assert bc.ok is False
    assert bc.message.startswith("BOUND VIOLATION:")
    assert "1/3" in bc.message and "N=4" in bc.message


# ---------------------------------------------------------------------------
# Serialization


@settings(max_examples=30, deadline=None)
@given(instances(2, n_max=8), st.sampled_from(METRICS))
def test_instance_json_round_trip(inst, metric):
    back, metric_back = instance_from_json(instance_to_json(inst, metric))
    assert back == inst
    assert metric_back is metric


@settings(max_examples=20, deadline=None)
@given(instances(2, n_max=8), st.sampled_from(METRICS))
def test_spectrum_json_round_trip(inst, metric):
    sp = gap_spectrum(inst, metric)
    back = spectrum_from_json(spectrum_to_json(sp))
    assert back == sp


def test_spectrum_csv_shape():
    inst = KroneckerInstance((Fraction(1, 3),), Lattice.identity(1), 5)
    text = spectrum_to_csv(gap_spectrum(inst, Metric.MAX))
    lines = text.strip().split("\n")
    assert lines[0] == "n,delta"
    assert len(lines) == inst.N + 1
    assert lines[1].startswith("1,")


def test_json_uses_rational_strings_not_floats():
    inst = KroneckerInstance((Fraction(1, 3), Fraction(2, 5)), Lattice.identity(2), 4)
    obj = spectrum_to_json(gap_spectrum(inst, Metric.MAX))
    for key in ("alpha", "deltas", "distinct"):
        for item in obj[key]:
            assert isinstance(item, str)
            float_free = item.replace("-", "").replace("/", "")
            assert float_free.isdigit()


def test_seeded_random_spectra_are_deterministic():
    rng = random.Random(7)
    alphas = [
        tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(2))
        for _ in range(5)
    ]
    run1 = [gap_spectrum(KroneckerInstance(a, Lattice.identity(2), 9)).gaps
            for a in alphas]
    run2 = [gap_spectrum(KroneckerInstance(a, Lattice.identity(2), 9)).gaps
            for a in alphas]
    assert run1 == run2
