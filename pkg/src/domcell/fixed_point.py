"""Approximate Brouwer fixed points on the standard simplex.

Each refinement level builds the (1/n)-lattice, colors it by the KKM rule
for ``f``, runs the pivot search for a balanced cell ``(X_n, C)`` and takes
a representative point from that cell.  All members of ``X_n`` lie within
``2d/n`` of each other in every coordinate, so the levels close in on a
fixed point as ``n`` grows.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass

import numpy as np

from .cells import find_balanced
from .errors import InvalidInstanceError
from .lattice import LatticeSimplex, build_lattice, evaluate_map, kkm_coloring
from .limits import DEFAULT_GUARD, Guard
from .orders import SubsetPair, min_of

DEFAULT_SCHEDULE = (8, 16, 32, 64, 128, 256, 512, 1024)
REPRESENTATIVES = ("refined", "first", "centroid")


@dataclass(frozen=True)
class LevelRecord:
    n: int
    cell_size: int
    colors: tuple[int, ...]
    diameter_bound: float
    residual: float


@dataclass(frozen=True)
class FixedPointResult:
    z: tuple[float, ...]
    residual: float
    resolution: int
    support_colors: tuple[int, ...]
    converged: bool
    trace: tuple[LevelRecord, ...]

    def to_dict(self) -> dict:
        """JSON-ready form; colors become 1-based."""
        return {
            "z": list(self.z),
            "residual": self.residual,
            "resolution": self.resolution,
            "support_colors": [i + 1 for i in self.support_colors],
            "converged": self.converged,
            "trace": [
                {**asdict(rec), "colors": [i + 1 for i in rec.colors]} for rec in self.trace
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> FixedPointResult:
        trace = tuple(
            LevelRecord(
                n=int(rec["n"]),
                cell_size=int(rec["cell_size"]),
                colors=tuple(int(i) - 1 for i in rec["colors"]),
                diameter_bound=float(rec["diameter_bound"]),
                residual=float(rec["residual"]),
            )
            for rec in data["trace"]
        )
        return cls(
            z=tuple(float(v) for v in data["z"]),
            residual=float(data["residual"]),
            resolution=int(data["resolution"]),
            support_colors=tuple(int(i) - 1 for i in data["support_colors"]),
            converged=bool(data["converged"]),
            trace=trace,
        )

    @classmethod
    def from_json(cls, text: str) -> FixedPointResult:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class LevelSolution:
    """Everything computed at one resolution, kept for inspection."""

    lattice: LatticeSimplex
    coloring: np.ndarray
    cell: SubsetPair
    z: np.ndarray
    residual: float


def residual(f: Callable, z) -> float:
    """Sup-norm of ``f(z) - z`` after projecting ``f(z)`` onto the simplex."""
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or np.any(z < -1e-12) or abs(z.sum() - 1.0) > 1e-9:
        raise InvalidInstanceError(f"{z} is not a point of the simplex")
    return float(np.abs(evaluate_map(f, z[None, :])[0] - z).max())


def _interpolated(points: np.ndarray, gains: np.ndarray) -> np.ndarray | None:
    """Affine combination of the cell points where the linearized gain vanishes.

    Solves min |sum_j w_j g_j| subject to sum_j w_j = 1.  Exact for affine maps.
    """
    k = len(points)
    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = gains @ gains.T
    system[:k, k] = 1.0
    system[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    weights = np.linalg.lstsq(system, rhs, rcond=None)[0][:k]
    z = weights @ points
    if not np.all(np.isfinite(z)) or np.any(z < -1e-12):
        return None
    z = np.maximum(z, 0.0)
    return z / z.sum()


def _representative(f, lattice: LatticeSimplex, cell: SubsetPair, how: str) -> tuple[np.ndarray, float]:
    points = lattice.coordinates(cell.x_set)
    first = lattice.coordinates([min_of(lattice.order_family, cell.x_set, 0)])[0]
    if how == "first":
        candidates = [first]
    elif how == "centroid":
        candidates = [points.mean(axis=0)]
    else:
        candidates = [first, points.mean(axis=0)]
        z = _interpolated(points, evaluate_map(f, points) - points)
        reach = 2 * lattice.dimension_d / lattice.resolution_n
        if z is not None and np.abs(points - z[None, :]).max() <= reach:
            candidates.append(z)
    scores = [residual(f, z) for z in candidates]
    best = int(np.argmin(scores))
    return candidates[best], scores[best]


def solve_level(f: Callable, d: int, n: int, guard: Guard = DEFAULT_GUARD,
                representative: str = "refined") -> LevelSolution:
    lattice = build_lattice(d, n, guard)
    coloring = kkm_coloring(lattice, f)
    cell = find_balanced(lattice.order_family, coloring, start_color=0)
    z, res = _representative(f, lattice, cell, representative)
    return LevelSolution(lattice=lattice, coloring=coloring, cell=cell, z=z, residual=res)


def approximate_fixed_point(f: Callable, d: int, schedule: Sequence[int] = DEFAULT_SCHEDULE,
                            tol: float = 1e-6, guard: Guard = DEFAULT_GUARD,
                            representative: str = "refined") -> FixedPointResult:
    """Refine along ``schedule`` until the residual drops to ``tol``.

    Returns the first level that meets ``tol``; otherwise the lowest-residual
    level (earliest on ties) with ``converged=False``.

    ``representative`` picks the point reported from each balanced cell:
    ``"first"`` is the ``<_1``-smallest cell member, ``"centroid"`` the mean
    of the cell members, and ``"refined"`` the best of those two and the
    interpolated zero of ``f(x) - x`` over the cell by residual.
    """
    schedule = [int(n) for n in schedule]
    if d < 1:
        raise InvalidInstanceError("dimension must be at least 1")
    if not schedule or schedule[0] < 1 or any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise InvalidInstanceError(f"schedule must be strictly increasing positive integers, got {schedule}")
    if not tol > 0:
        raise InvalidInstanceError("tol must be positive")
    if representative not in REPRESENTATIVES:
        raise InvalidInstanceError(f"representative must be one of {REPRESENTATIVES}")

    trace: list[LevelRecord] = []
    best: tuple[float, LevelSolution] | None = None
    for n in schedule:
        level = solve_level(f, d, n, guard, representative)
        trace.append(LevelRecord(
            n=n,
            cell_size=len(level.cell.x_set),
            colors=level.cell.c_set,
            diameter_bound=2 * d / n,
            residual=level.residual,
        ))
        if best is None or level.residual < best[0]:
            best = (level.residual, level)
        if level.residual <= tol:
            break
    res, level = best
    return FixedPointResult(
        z=tuple(float(v) for v in level.z),
        residual=res,
        resolution=level.lattice.resolution_n,
        support_colors=level.cell.c_set,
        converged=res <= tol,
        trace=tuple(trace),
    )
