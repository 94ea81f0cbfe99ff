import itertools
from math import comb

import numpy as np
import pytest

from domcell import oracle
from domcell.errors import GuardError, InvalidInstanceError, MapEvaluationError
from domcell.lattice import (LatticePoint, anchor_point, build_lattice, check_pseudo_sperner,
                             coordinate_order, kkm_coloring, sanitize)
from domcell.limits import Guard
from domcell.maps import MapSpec
from domcell.orders import is_dominant, make_order_family, max_of, min_of

BIG = Guard(max_elements=45)


def _brute_compositions(d, n):
    return sorted(v for v in itertools.product(range(n + 1), repeat=d) if sum(v) == n)


def test_zero_simplex():
    for n in (1, 5):
        lat = build_lattice(1, n)
        assert lat.points.tolist() == [[n]]


def test_segment_n2():
    lat = build_lattice(2, 2)
    assert lat.points.tolist() == [[0, 2], [1, 1], [2, 0]]


@pytest.mark.parametrize("d, n", [(3, 4), (2, 7), (4, 3), (5, 2)])
def test_lattice_is_every_composition_once(d, n):
    lat = build_lattice(d, n)
    assert [tuple(p) for p in lat.points.tolist()] == _brute_compositions(d, n)
    assert len(lat) == comb(n + d - 1, d - 1)


def test_d3_n4_has_15_points():
    assert len(build_lattice(3, 4)) == len(_brute_compositions(3, 4)) == 15


def test_invalid_arguments():
    with pytest.raises(InvalidInstanceError):
        build_lattice(0, 3)
    with pytest.raises(InvalidInstanceError):
        build_lattice(2, 0)
    with pytest.raises(GuardError):
        build_lattice(3, 100, Guard(max_lattice_points=100))


def test_lattice_point_invariant():
    assert LatticePoint((1, 2), 3).coordinates.tolist() == [1 / 3, 2 / 3]
    with pytest.raises(InvalidInstanceError):
        LatticePoint((1, 1), 3)


def test_order_d2():
    lat = build_lattice(2, 2)
    ranks = coordinate_order(2, 2, 0)
    ordered = [tuple(lat.points[k]) for k in np.argsort(ranks)]
    assert ordered == [(0, 2), (1, 1), (2, 0)]


def test_order_tie_rule_d3():
    lat = build_lattice(3, 2)
    ranks = lat.order_family.ranks[0]
    ordered = [tuple(lat.points[k]) for k in np.argsort(ranks)]
    assert ordered[:3] == [(0, 0, 2), (0, 1, 1), (0, 2, 0)]
    assert all(p[0] >= 1 for p in ordered[3:])


@pytest.mark.parametrize("d, n", [(2, 5), (3, 4), (4, 3)])
def test_order_respects_coordinates(d, n):
    lat = build_lattice(d, n)
    fam = lat.order_family
    for i in range(d):
        for x, y in itertools.permutations(range(len(lat)), 2):
            if lat.points[x, i] < lat.points[y, i]:
                assert fam.ranks[i, x] < fam.ranks[i, y]


def test_induced_family_passes_validation():
    lat = build_lattice(3, 3)
    fam = lat.order_family
    rebuilt = make_order_family(range(len(lat)), fam.colors, fam.ranks.tolist())
    assert np.array_equal(rebuilt.ranks, fam.ranks)
    assert fam.colors == (1, 2, 3)


def test_kkm_identity_colors_everything_first():
    lat = build_lattice(3, 6)
    assert set(kkm_coloring(lat, MapSpec("identity").build(3)).tolist()) == {0}


def test_kkm_constant_vertex_map():
    lat = build_lattice(3, 5)
    coloring = kkm_coloring(lat, lambda x: np.array([1.0, 0.0, 0.0]))
    x = lat.coordinates()
    gains = np.array([1.0, 0.0, 0.0]) - x
    # 1 - x_1 >= -x_j for all j, analytically and by scan
    assert np.all(gains[:, 0][:, None] >= gains)
    assert set(coloring.tolist()) == {0}


@pytest.mark.parametrize("spec", [MapSpec("rotation"), MapSpec("power_push", {"alpha": 0.5}),
                                  MapSpec("affine_contraction", {"p": [0.2, 0.3, 0.5], "lambda": 0.3})])
def test_kkm_guarantee(spec):
    lat = build_lattice(3, 9)
    f = spec.build(3)
    coloring = kkm_coloring(lat, f)
    x = lat.coordinates()
    fx = np.array([f(row) for row in x])
    picked = fx[np.arange(len(x)), coloring] - x[np.arange(len(x)), coloring]
    assert np.all(picked >= -1e-12)


def test_kkm_rejects_non_finite():
    lat = build_lattice(2, 3)
    with pytest.raises(MapEvaluationError):
        kkm_coloring(lat, lambda x: np.array([np.nan, 1.0]))
    with pytest.raises(MapEvaluationError):
        kkm_coloring(lat, lambda x: np.array([-1.0, 0.0]))
    with pytest.raises(MapEvaluationError):
        kkm_coloring(lat, lambda x: np.array([1.0, 0.0, 0.0]))


def test_sanitize_clamps_and_normalizes():
    out = sanitize([[-0.5, 1.0, 3.0]])
    assert out.tolist() == [[0.0, 0.25, 0.75]]
    exact = np.array([[0.1, 0.2, 0.7]])
    assert np.array_equal(sanitize(exact), exact)


def test_anchor_of_single_point_is_the_point():
    lat = build_lattice(3, 4)
    for k in range(len(lat)):
        if is_dominant(lat.order_family, [k], [0, 1, 2]):
            assert anchor_point(lat, [k], [0, 1, 2]).numerators == tuple(lat.points[k])


def test_anchor_of_top_singleton():
    lat = build_lattice(3, 4)
    for i in range(3):
        top = max_of(lat.order_family, i)
        m = anchor_point(lat, [top], [i]).numerators
        assert m[i] == lat.points[top, i] == 4
        assert sum(m) == m[i]


def test_anchor_rejects_non_dominant():
    lat = build_lattice(2, 3)
    with pytest.raises(InvalidInstanceError):
        anchor_point(lat, [0], [0])
    with pytest.raises(InvalidInstanceError):
        anchor_point(lat, [], [0])


def test_anchor_matches_direct_recomputation():
    lat = build_lattice(3, 5)
    fam = lat.order_family
    for x_set, c_set in oracle.all_dominant_pairs(fam, BIG):
        if not x_set:
            continue
        direct = [0, 0, 0]
        for i in c_set:
            lowest = min(x_set, key=lambda x: fam.ranks[i, x])
            direct[i] = int(lat.points[lowest, i])
        assert anchor_point(lat, x_set, c_set).numerators == tuple(direct)


@pytest.mark.parametrize("d, n", [(2, 6), (3, 5), (4, 3)])
def test_pseudo_sperner_on_every_dominant_pair(d, n):
    lat = build_lattice(d, n)
    for x_set, c_set in oracle.all_dominant_pairs(lat.order_family, BIG):
        if not x_set:
            continue
        report = check_pseudo_sperner(lat, x_set, c_set)
        assert report.ok and report.min_offset >= 0 and report.max_slack < d
        assert max(report.spread) < 2 * d and report.diameter_ok
        assert report.anchor_sum > n - d


def test_pseudo_sperner_singleton_has_zero_slack_on_its_colors():
    lat = build_lattice(3, 4)
    for k in range(len(lat)):
        for c_set in ([0], [0, 1], [0, 1, 2]):
            if is_dominant(lat.order_family, [k], c_set):
                report = check_pseudo_sperner(lat, [k], c_set)
                assert all(report.max_offset[i] == 0 for i in c_set)
