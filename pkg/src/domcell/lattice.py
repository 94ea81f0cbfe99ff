"""The (1/n)-lattice in the standard simplex and its coordinate orders.

Points are stored by integer numerators summing to ``n``; the real point
is ``numerators / n``.  Every comparison and every bound in this module is
integer-exact.  Evaluating a continuous map is the only floating-point step.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import InvalidInstanceError, MapEvaluationError
from .limits import DEFAULT_GUARD, Guard
from .orders import OrderFamily, is_dominant, min_of

# Differences of f(x)_i - x_i within this margin of the maximum count as ties.
KKM_TIE_TOL = 1e-12
ZERO_SUM_TOL = 1e-9


@dataclass(frozen=True)
class LatticePoint:
    numerators: tuple[int, ...]
    resolution: int

    def __post_init__(self):
        if any(v < 0 for v in self.numerators) or sum(self.numerators) != self.resolution:
            raise InvalidInstanceError(
                f"{self.numerators} is not a composition of {self.resolution}"
            )

    @property
    def coordinates(self) -> np.ndarray:
        return np.array(self.numerators, dtype=float) / self.resolution


@dataclass(frozen=True)
class AnchorPoint:
    numerators: tuple[int, ...]
    resolution: int


@dataclass(frozen=True, eq=False)
class LatticeSimplex:
    dimension_d: int
    resolution_n: int
    points: np.ndarray
    order_family: OrderFamily

    def __len__(self) -> int:
        return self.points.shape[0]

    def point(self, index: int) -> LatticePoint:
        return LatticePoint(tuple(int(v) for v in self.points[index]), self.resolution_n)

    def index_of(self, numerators: Iterable[int]) -> int:
        target = np.asarray(list(numerators), dtype=np.int64)
        hits = np.flatnonzero(np.all(self.points == target, axis=1))
        if hits.size != 1:
            raise InvalidInstanceError(f"{tuple(target)} is not a point of this lattice")
        return int(hits[0])

    def coordinates(self, indices=None) -> np.ndarray:
        pts = self.points if indices is None else self.points[list(indices)]
        return pts.astype(float) / self.resolution_n


@dataclass(frozen=True)
class PseudoSpernerReport:
    """Integer form of ``0 <= x_i - m_i < d/n`` over a dominant pair.

    ``max_offset[i]`` is the largest ``num_i(x) - num_i(m)`` over ``x in X``,
    ``min_offset`` the smallest offset over all ``x`` and ``i``, and
    ``spread[i]`` the largest ``|num_i(x) - num_i(y)|``.
    """

    ok: bool
    bound: int
    min_offset: int
    max_offset: tuple[int, ...]
    spread: tuple[int, ...]
    anchor_sum: int

    @property
    def max_slack(self) -> int:
        return max(self.max_offset)

    @property
    def diameter_ok(self) -> bool:
        return max(self.spread) < 2 * self.bound


def lattice_size(d: int, n: int) -> int:
    return comb(n + d - 1, d - 1)


def _compositions(d: int, n: int) -> np.ndarray:
    """All compositions of ``n`` into ``d`` parts, lexicographically ascending."""
    memo: dict[tuple[int, int], np.ndarray] = {}

    def build(parts: int, total: int) -> np.ndarray:
        key = (parts, total)
        if key in memo:
            return memo[key]
        if parts == 1:
            out = np.array([[total]], dtype=np.int64)
        else:
            blocks = []
            for head in range(total + 1):
                tail = build(parts - 1, total - head)
                blocks.append(np.column_stack([np.full(len(tail), head, dtype=np.int64), tail]))
            out = np.vstack(blocks)
        memo[key] = out
        return out

    return build(d, n)


def coordinate_order(d: int, n: int, i: int, points: np.ndarray | None = None) -> np.ndarray:
    """Ranks of the lattice points under ``<_i``.

    Ascending ``i``-th numerator, ties broken by the lexicographic order of
    the full numerator vector.
    """
    if not 0 <= i < d:
        raise InvalidInstanceError(f"color {i} out of range for d={d}")
    if points is None:
        points = _compositions(d, n)
    # points are lexicographically sorted, so a stable sort on one column
    # resolves ties lexicographically.
    order = np.argsort(points[:, i], kind="stable")
    ranks = np.empty(len(points), dtype=np.int64)
    ranks[order] = np.arange(len(points))
    return ranks


def build_lattice(d: int, n: int, guard: Guard = DEFAULT_GUARD) -> LatticeSimplex:
    if d < 1 or n < 1:
        raise InvalidInstanceError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    guard.check_lattice(lattice_size(d, n))
    points = _compositions(d, n)
    points.setflags(write=False)
    ranks = np.vstack([coordinate_order(d, n, i, points) for i in range(d)])
    family = OrderFamily.from_rank_array(
        ranks, elements=range(len(points)), colors=tuple(range(1, d + 1))
    )
    return LatticeSimplex(dimension_d=d, resolution_n=n, points=points, order_family=family)


def sanitize(values) -> np.ndarray:
    """Project raw map outputs (one row per point) back onto the simplex.

    Negative entries are clamped to zero and each row is rescaled to sum 1;
    rows already summing to 1 within tolerance are left bit-identical.
    """
    values = np.array(values, dtype=float, copy=True)
    if not np.all(np.isfinite(values)):
        raise MapEvaluationError("map produced non-finite values")
    np.maximum(values, 0.0, out=values)
    sums = values.sum(axis=-1, keepdims=True)
    if np.any(sums <= ZERO_SUM_TOL):
        raise MapEvaluationError("map produced a vector with no positive mass")
    needs_scaling = np.abs(sums - 1.0) > 1e-12
    return np.where(needs_scaling, values / sums, values)


def evaluate_map(f: Callable, x: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on each row of ``x`` and sanitize the results."""
    x = np.atleast_2d(x)
    batch = getattr(f, "batch", None)
    if batch is not None:
        raw = batch(x)
    else:
        raw = [f(row) for row in x]
    try:
        raw = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MapEvaluationError(f"map output is not numeric: {exc}") from None
    if raw.shape != x.shape:
        raise MapEvaluationError(f"map output shape {raw.shape} does not match input {x.shape}")
    return sanitize(raw)


def kkm_coloring(lattice: LatticeSimplex, f: Callable) -> np.ndarray:
    """Color each point by the smallest index maximizing ``f(x)_i - x_i``.

    Both ``x`` and ``f(x)`` sum to 1, so the maximum is non-negative and the
    result satisfies ``f(x)_{c(x)} >= x_{c(x)}``.
    """
    x = lattice.coordinates()
    gain = evaluate_map(f, x) - x
    best = gain.max(axis=1, keepdims=True)
    coloring = np.argmax(gain >= best - KKM_TIE_TOL, axis=1).astype(np.int64)
    coloring.setflags(write=False)
    return coloring


def anchor_point(lattice: LatticeSimplex, x_set, c_set) -> AnchorPoint:
    x_set, c_set = list(x_set), sorted(c_set)
    family = lattice.order_family
    if not x_set:
        raise InvalidInstanceError("anchor point needs a non-empty element set")
    if not is_dominant(family, x_set, c_set):
        raise InvalidInstanceError("anchor point is only defined for dominant pairs")
    numerators = [0] * lattice.dimension_d
    for i in c_set:
        numerators[i] = int(lattice.points[min_of(family, x_set, i), i])
    return AnchorPoint(tuple(numerators), lattice.resolution_n)


def check_pseudo_sperner(lattice: LatticeSimplex, x_set, c_set) -> PseudoSpernerReport:
    anchor = np.array(anchor_point(lattice, x_set, c_set).numerators)
    members = lattice.points[sorted(x_set)]
    offsets = members - anchor[None, :]
    d = lattice.dimension_d
    spread = members.max(axis=0) - members.min(axis=0)
    anchor_sum = int(anchor[sorted(c_set)].sum())
    ok = bool(offsets.min() >= 0 and offsets.max() < d)
    return PseudoSpernerReport(
        ok=ok,
        bound=d,
        min_offset=int(offsets.min()),
        max_offset=tuple(int(v) for v in offsets.max(axis=0)),
        spread=tuple(int(v) for v in spread),
        anchor_sum=anchor_sum,
    )
