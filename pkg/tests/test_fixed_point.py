import json

import numpy as np
import pytest

from domcell.cells import classify
from domcell.errors import InvalidInstanceError
from domcell.fixed_point import (FixedPointResult, LevelRecord, approximate_fixed_point, residual,
                                 solve_level)
from domcell.maps import MapSpec
from domcell.orders import is_dominant

CENTER = np.full(3, 1 / 3)
AFFINE = MapSpec("affine_contraction", {"p": [0.5, 0.3, 0.2], "lambda": 0.5})


def test_residual_examples():
    identity = MapSpec("identity").build(3)
    assert residual(identity, [0.2, 0.3, 0.5]) == 0.0
    to_vertex = lambda x: np.array([1.0, 0.0, 0.0])
    assert residual(to_vertex, [1.0, 0.0, 0.0]) == 0.0
    assert residual(to_vertex, [0.0, 1.0, 0.0]) == 1.0
    with pytest.raises(InvalidInstanceError):
        residual(identity, [0.5, 0.6, 0.0])


def test_identity_converges_at_first_level():
    result = approximate_fixed_point(MapSpec("identity").build(3), 3, tol=1e-6)
    assert result.residual == 0.0
    assert result.resolution == 8 and len(result.trace) == 1 and result.converged


@pytest.mark.parametrize("representative", ["first", "centroid", "refined"])
def test_rotation_stays_near_center(representative):
    f = MapSpec("rotation").build(3)
    for n in (8, 16, 32, 64, 128, 256, 512):
        level = solve_level(f, 3, n, representative=representative)
        assert np.abs(level.z - CENTER).max() <= 2 * 3 / n


def test_rotation_lattice_points_cannot_reach_1e_3_at_512():
    # Off the center some numerator difference is >= 1, so residual >= 1/n.
    from domcell.lattice import build_lattice, evaluate_map
    lat = build_lattice(3, 512)
    x = lat.coordinates()
    res = np.abs(evaluate_map(MapSpec("rotation").build(3), x) - x).max(axis=1)
    assert res.min() >= 1 / 512 - 1e-15
    first = approximate_fixed_point(MapSpec("rotation").build(3), 3, [8, 32, 128, 512], tol=1e-3,
                                    representative="first")
    assert not first.converged


def test_rotation_residual_decreases_along_schedule():
    result = approximate_fixed_point(MapSpec("rotation").build(3), 3, [8, 32, 128, 512], tol=1e-12,
                                     representative="centroid")
    residuals = [rec.residual for rec in result.trace]
    assert residuals == sorted(residuals, reverse=True)


def test_affine_contraction_reaches_target():
    result = approximate_fixed_point(AFFINE.build(3), 3, [8, 16, 32, 64, 128, 256, 512], tol=1e-3)
    assert result.converged and result.resolution <= 512
    assert np.abs(np.array(result.z) - [0.5, 0.3, 0.2]).max() <= 5e-3


def test_literal_first_member_also_meets_affine_target():
    result = approximate_fixed_point(AFFINE.build(3), 3, [8, 16, 32, 64, 128, 256, 512], tol=1e-3,
                                     representative="first")
    assert result.converged and result.resolution == 512


def test_not_converged_is_flagged():
    f = MapSpec("rotation").build(3)
    result = approximate_fixed_point(f, 3, [8, 16], tol=1e-9, representative="first")
    assert not result.converged
    assert result.residual == min(rec.residual for rec in result.trace)
    assert len(result.trace) == 2


def test_trace_records():
    result = approximate_fixed_point(AFFINE.build(3), 3, [4, 8, 16], tol=1e-12, representative="first")
    bounds = [rec.diameter_bound for rec in result.trace]
    assert bounds == [2 * 3 / n for n in (4, 8, 16)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))
    for rec in result.trace:
        assert rec.cell_size == len(rec.colors)
        assert rec.residual >= 0


@pytest.mark.parametrize("spec", [AFFINE, MapSpec("rotation"), MapSpec("power_push", {"alpha": 0.5})])
@pytest.mark.parametrize("n", [6, 20, 64])
def test_level_invariants(spec, n):
    d = 3
    f = spec.build(d)
    level = solve_level(f, d, n)
    lat, cell, col = level.lattice, level.cell, level.coloring
    assert classify(lat.order_family, col, cell).balanced
    assert is_dominant(lat.order_family, cell.x_set, cell.c_set)
    points = lat.points[list(cell.x_set)]
    outside = [i for i in range(d) if i not in cell.c_set]
    # support localization, exactly in integers
    assert np.all(points[:, outside] < d)
    # every color of C is carried by a point that gains (or holds) in that color
    x = lat.coordinates(cell.x_set)
    fx = np.array([f(row) for row in x])
    for i in cell.c_set:
        assert any(col[k] == i and fx[j, i] >= x[j, i] - 1e-12 for j, k in enumerate(cell.x_set))
    assert np.all(level.z >= 0) and abs(level.z.sum() - 1) < 1e-12


def test_programmatic_callable_map():
    # nonlinear map with interior fixed point: softmax of 2x, fixed point at the center
    def soft(x):
        e = np.exp(2 * np.asarray(x))
        return e / e.sum()
    result = approximate_fixed_point(soft, 3, [8, 16, 32, 64], tol=1e-4)
    assert result.converged
    assert np.abs(np.array(result.z) - CENTER).max() < 1e-3


@pytest.mark.parametrize("kwargs", [dict(d=0), dict(schedule=[8, 8]), dict(schedule=[]),
                                    dict(tol=0.0), dict(representative="mean")])
def test_argument_validation(kwargs):
    args = dict(d=3, schedule=[8], tol=1e-3)
    args.update(kwargs)
    with pytest.raises(InvalidInstanceError):
        approximate_fixed_point(MapSpec("identity").build(3), **args)


def test_json_round_trip():
    result = approximate_fixed_point(AFFINE.build(3), 3, [8, 16, 32], tol=1e-12)
    text = result.to_json()
    assert text.endswith("\n")
    data = json.loads(text)
    assert set(data) == {"z", "residual", "resolution", "support_colors", "converged", "trace"}
    assert set(data["trace"][0]) == {"n", "cell_size", "colors", "diameter_bound", "residual"}
    assert data["support_colors"] == [i + 1 for i in result.support_colors]
    assert FixedPointResult.from_json(text) == result


def test_json_round_trip_hand_built():
    result = FixedPointResult(z=(0.25, 0.75), residual=1e-17, resolution=4, support_colors=(0, 1),
                              converged=True, trace=(LevelRecord(4, 2, (0, 1), 1.0, 1e-17),))
    assert FixedPointResult.from_json(result.to_json()) == result
