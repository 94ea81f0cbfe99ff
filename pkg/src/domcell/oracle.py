"""Brute-force reference enumerations.

Nothing here calls into :mod:`domcell.cells`; dominance, classification,
faces and cofaces are recomputed from the raw rank table by exhaustive
scans so that the constructive code can be checked against them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .limits import DEFAULT_GUARD, Guard
from .orders import OrderFamily, SubsetPair


@dataclass(frozen=True)
class Instance:
    family: OrderFamily
    coloring: tuple[int, ...]
    seed: int | None = None


def random_instance(rng: np.random.Generator, t_max: int, i_max: int) -> Instance:
    """Uniformly random orders and coloring with ``|T| <= t_max``, ``|I| <= i_max``."""
    t = int(rng.integers(1, t_max + 1))
    k = int(rng.integers(1, i_max + 1))
    ranks = np.array([rng.permutation(t) for _ in range(k)])
    coloring = tuple(int(v) for v in rng.integers(0, k, size=t))
    return Instance(OrderFamily.from_rank_array(ranks), coloring)


def random_instances(seed: int, count: int, t_max: int = 7, i_max: int = 4) -> list[Instance]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        inst = random_instance(rng, t_max, i_max)
        out.append(Instance(inst.family, inst.coloring, seed))
    return out


def _rank_table(family: OrderFamily) -> list[list[int]]:
    return family.ranks.tolist()


def _bullied(ranks: list[list[int]], x_set, c_set) -> bool:
    if not x_set:
        return False
    floors = [min(ranks[i][x] for x in x_set) for i in c_set]
    n = len(ranks[0])
    return any(all(ranks[i][y] > floor for i, floor in zip(c_set, floors)) for y in range(n))


def dominant_by_scan(family: OrderFamily, x_set, c_set) -> bool:
    return not _bullied(_rank_table(family), tuple(x_set), tuple(c_set))


def minima_identity(family: OrderFamily, x_set, c_set) -> bool:
    """``X == {min_i X : i in C}`` (always true for the empty set)."""
    if not x_set:
        return True
    ranks = _rank_table(family)
    minima = {min(x_set, key=lambda x: ranks[i][x]) for i in c_set}
    return minima == set(x_set)


def enumerate_dominant(family: OrderFamily, c_set, guard: Guard = DEFAULT_GUARD
                       ) -> list[tuple[int, ...]]:
    """Every ``X`` dominant with respect to ``C``, including the empty set."""
    c_set = tuple(sorted(c_set))
    if not c_set:
        raise ValueError("color set must be non-empty")
    guard.check_exhaustive(family.n_elements, family.n_colors)
    ranks = _rank_table(family)
    found = []
    for size in range(0, min(len(c_set), family.n_elements) + 1):
        for x_set in itertools.combinations(range(family.n_elements), size):
            if not _bullied(ranks, x_set, c_set):
                found.append(x_set)
    return found


def all_dominant_pairs(family: OrderFamily, guard: Guard = DEFAULT_GUARD
                       ) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    pairs = []
    for size in range(1, family.n_colors + 1):
        for c_set in itertools.combinations(range(family.n_colors), size):
            pairs.extend((x_set, c_set) for x_set in enumerate_dominant(family, c_set, guard))
    return pairs


def oracle_kind(family: OrderFamily, coloring, x_set, c_set) -> tuple[str, int | None] | None:
    """Classification from the definitions; ``None`` when not a cell.

    Returns ``("balanced", None)``, ``("zero", type)`` or ``("one", type)``.
    """
    if not c_set:
        return None
    used = {coloring[x] for x in x_set}
    missing = [i for i in c_set if i not in used]
    if len(missing) > 1 or not dominant_by_scan(family, x_set, c_set):
        return None
    if len(c_set) == len(x_set):
        return ("balanced", None) if not missing else ("zero", missing[0])
    if len(c_set) == len(x_set) + 1:
        return ("one", missing[0])
    return None


def enumerate_cells(family: OrderFamily, coloring, guard: Guard = DEFAULT_GUARD
                    ) -> dict[SubsetPair, tuple[str, int | None]]:
    guard.check_exhaustive(family.n_elements, family.n_colors)
    coloring = tuple(int(v) for v in coloring)
    cells = {}
    for size in range(1, family.n_colors + 1):
        for c_set in itertools.combinations(range(family.n_colors), size):
            for x_size in range(0, min(size, family.n_elements) + 1):
                for x_set in itertools.combinations(range(family.n_elements), x_size):
                    kind = oracle_kind(family, coloring, x_set, c_set)
                    if kind is not None:
                        cells[SubsetPair(x_set, c_set)] = kind
    return cells


def enumerate_balanced(family: OrderFamily, coloring, guard: Guard = DEFAULT_GUARD
                       ) -> list[SubsetPair]:
    coloring = tuple(int(v) for v in coloring)
    guard.check_exhaustive(family.n_elements, family.n_colors)
    ranks = _rank_table(family)
    found = []
    for size in range(1, family.n_elements + 1):
        for x_set in itertools.combinations(range(family.n_elements), size):
            c_set = tuple(sorted({coloring[x] for x in x_set}))
            if not _bullied(ranks, x_set, c_set):
                found.append(SubsetPair(x_set, c_set))
    return found


def scan_faces(cells: dict, zero_cell: SubsetPair) -> set[SubsetPair]:
    """1-cells of the inventory that are faces of ``zero_cell`` by definition."""
    x, c = set(zero_cell.x_set), set(zero_cell.c_set)
    faces = set()
    for pair, (kind, _) in cells.items():
        if kind != "one":
            continue
        y, d = set(pair.x_set), set(pair.c_set)
        if d == c and y < x and len(x - y) == 1:
            faces.add(pair)
        elif y == x and c < d and len(d - c) == 1:
            faces.add(pair)
    return faces


def incidence_by_scan(cells: dict) -> tuple[dict, dict]:
    """Face and coface maps of the whole inventory, both keyed by cell."""
    faces = {pair: scan_faces(cells, pair) for pair, (kind, _) in cells.items() if kind != "one"}
    cofaces = {pair: set() for pair, (kind, _) in cells.items() if kind == "one"}
    for zero_cell, its_faces in faces.items():
        for face in its_faces:
            cofaces[face].add(zero_cell)
    return faces, cofaces


def census_by_scan(cells: dict, color: int) -> dict[str, int]:
    """``e, f, g, N`` for one color, counting incidences from the 0-cell side."""
    e = sum(1 for kind, _ in cells.values() if kind == "balanced")
    f = sum(1 for kind, t in cells.values() if kind == "zero" and t == color)
    g = sum(1 for pair, (kind, t) in cells.items()
            if kind == "one" and t == color and pair.x_set)
    n = 0
    for pair, (kind, t) in cells.items():
        if kind == "balanced" or (kind == "zero" and t == color):
            n += sum(1 for face in scan_faces(cells, pair) if cells[face][1] == color)
    return {"e": e, "f": f, "g": g, "N": n}
