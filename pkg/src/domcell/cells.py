"""Cells of a colored order family, their incidences, and the pivot search.

A pair ``(X, C)`` is a cell when ``C`` is non-empty, ``X`` is dominant
with respect to ``C`` and at most one color of ``C`` is missing from
``c(X)``.  0-cells have ``|C| = |X|``, 1-cells have ``|C| = |X| + 1``.
The incidence graph of cells of a fixed type ``i`` has degree 1 at the
balanced 0-cells and at ``(∅, {i})`` and degree 2 everywhere else, which
both the parity census and :func:`find_balanced` exploit.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, InvalidInstanceError
from .limits import DEFAULT_GUARD, Guard
from .orders import OrderFamily, SubsetPair, is_dominant, max_of, min_of


def make_coloring(family: OrderFamily, values: Sequence[int]) -> np.ndarray:
    """Validate a coloring given as one 0-based color index per element."""
    coloring = np.array(values, dtype=np.int64, copy=True)
    if coloring.shape != (family.n_elements,):
        raise InvalidInstanceError(
            f"coloring must assign a color to each of the {family.n_elements} elements"
        )
    if coloring.size and (coloring.min() < 0 or coloring.max() >= family.n_colors):
        raise InvalidInstanceError(f"coloring uses colors outside 0..{family.n_colors - 1}")
    coloring.setflags(write=False)
    return coloring


class CellKind(enum.Enum):
    NOT_A_CELL = "not-a-cell"
    ZERO_BALANCED = "0-cell balanced"
    ZERO_TYPED = "0-cell typed"
    ONE_TYPED = "1-cell typed"


@dataclass(frozen=True)
class CellClass:
    kind: CellKind
    type: int | None = None

    @property
    def is_cell(self) -> bool:
        return self.kind is not CellKind.NOT_A_CELL

    @property
    def is_zero_cell(self) -> bool:
        return self.kind in (CellKind.ZERO_BALANCED, CellKind.ZERO_TYPED)

    @property
    def is_one_cell(self) -> bool:
        return self.kind is CellKind.ONE_TYPED

    @property
    def balanced(self) -> bool:
        return self.kind is CellKind.ZERO_BALANCED


NOT_A_CELL = CellClass(CellKind.NOT_A_CELL)


@dataclass(frozen=True)
class Census:
    e: int
    f: int
    g: int
    n_pairs: int
    color: int


def _colors_of(coloring, x_set) -> set[int]:
    return {int(coloring[x]) for x in x_set}


def classify(family: OrderFamily, coloring, pair: SubsetPair) -> CellClass:
    if not pair.c_set:
        return NOT_A_CELL
    missing = set(pair.c_set) - _colors_of(coloring, pair.x_set)
    if len(missing) > 1:
        return NOT_A_CELL
    if not is_dominant(family, pair.x_set, pair.c_set):
        return NOT_A_CELL
    gap = len(pair.c_set) - len(pair.x_set)
    cell_type = next(iter(missing)) if missing else None
    if gap == 0:
        if cell_type is None:
            return CellClass(CellKind.ZERO_BALANCED)
        return CellClass(CellKind.ZERO_TYPED, cell_type)
    if gap == 1 and cell_type is not None:
        return CellClass(CellKind.ONE_TYPED, cell_type)
    raise InternalConsistencyError(f"dominant pair {pair} has impossible codimension {gap}")


def _typed_faces(coloring, pair: SubsetPair) -> list[SubsetPair]:
    # Either exactly one element is colored outside C, or c(X) is inside C
    # and exactly one color of C is used twice; |X| = |C| forces one of the two.
    colors = set(pair.c_set)
    outsiders = [x for x in pair.x_set if int(coloring[x]) not in colors]
    if len(outsiders) == 1:
        y = outsiders[0]
        return [pair.minus_element(y), pair.plus_color(int(coloring[y]))]
    by_color: dict[int, list[int]] = {}
    for x in pair.x_set:
        by_color.setdefault(int(coloring[x]), []).append(x)
    doubled = [group for group in by_color.values() if len(group) > 1]
    if not outsiders and len(doubled) == 1 and len(doubled[0]) == 2:
        y1, y2 = doubled[0]
        return [pair.minus_element(y1), pair.minus_element(y2)]
    raise InternalConsistencyError(f"typed 0-cell {pair} has no consistent pair of faces")


def faces_of_zero_cell(family: OrderFamily, coloring, pair: SubsetPair,
                       validate: bool = True) -> list[SubsetPair]:
    """The 1-cells obtained from a 0-cell by dropping an element or adding a color.

    A typed 0-cell has exactly two faces, both of its own type: either it
    drops the one element colored outside ``C`` or adds that color, or, when
    one color of ``C`` is used twice, it drops either of those two elements.
    A balanced 0-cell has one face per color of the family.
    """
    cls = classify(family, coloring, pair)
    if not cls.is_zero_cell:
        raise InvalidInstanceError(f"{pair} is not a 0-cell ({cls.kind.value})")
    if cls.balanced:
        faces = [pair.minus_element(x) for x in pair.x_set]
        faces += [pair.plus_color(i) for i in range(family.n_colors) if i not in pair.c_set]
    else:
        faces = _typed_faces(coloring, pair)
    if validate:
        for face in faces:
            face_cls = classify(family, coloring, face)
            if not face_cls.is_one_cell:
                raise InternalConsistencyError(f"face {face} of {pair} is not a 1-cell")
            if not cls.balanced and face_cls.type != cls.type:
                raise InternalConsistencyError(f"face {face} of {pair} changed type")
    return faces


def special_pair(family: OrderFamily, pair: SubsetPair) -> tuple[int, int]:
    """The two colors of ``D`` whose minima over a non-empty ``Y`` coincide."""
    if not pair.x_set:
        raise InvalidInstanceError("special pair needs a non-empty element set")
    if len(pair.c_set) != len(pair.x_set) + 1:
        raise InvalidInstanceError(f"{pair} does not have one more color than elements")
    by_minimum: dict[int, list[int]] = {}
    for i in pair.c_set:
        by_minimum.setdefault(min_of(family, pair.x_set, i), []).append(i)
    shared = [group for group in by_minimum.values() if len(group) > 1]
    if len(shared) != 1 or len(shared[0]) != 2:
        raise InvalidInstanceError(
            f"{pair} does not have exactly one pair of colors sharing a minimum"
        )
    a, b = shared[0]
    return a, b


def bullies_without(family: OrderFamily, pair: SubsetPair, i: int) -> np.ndarray:
    """Elements beating ``min_k Y`` in every order ``k`` of ``D - i``.

    Returns sorted element indices.  For the special pair of a 1-cell these
    are the sets whose emptiness decides the two cofaces.
    """
    rest = [k for k in pair.c_set if k != i]
    if not rest:
        return np.arange(family.n_elements)
    rows = family.ranks[rest]
    thresholds = np.array([family.ranks[k, min_of(family, pair.x_set, k)] for k in rest])
    return np.flatnonzero(np.all(rows > thresholds[:, None], axis=0))


def _one_cell_cofaces(family: OrderFamily, pair: SubsetPair) -> list[SubsetPair]:
    if not pair.x_set:
        (i,) = pair.c_set
        return [SubsetPair((max_of(family, i),), pair.c_set)]
    cofaces = []
    for i in special_pair(family, pair):
        bullies = bullies_without(family, pair, i)
        if bullies.size == 0:
            cofaces.append(pair.minus_color(i))
        else:
            top = int(bullies[np.argmax(family.ranks[i, bullies])])
            cofaces.append(pair.plus_element(top))
    return cofaces


def cofaces_of_one_cell(family: OrderFamily, coloring, pair: SubsetPair,
                        validate: bool = True) -> list[SubsetPair]:
    """The 0-cells having the given 1-cell as a face.

    ``(∅, {i})`` has the single coface ``({max_i T}, {i})``; every other
    1-cell has exactly two, found from its special pair of colors.
    """
    cls = classify(family, coloring, pair)
    if not cls.is_one_cell:
        raise InvalidInstanceError(f"{pair} is not a 1-cell ({cls.kind.value})")
    cofaces = _one_cell_cofaces(family, pair)
    if len(cofaces) == 2 and cofaces[0] == cofaces[1]:
        raise InternalConsistencyError(f"both cofaces of {pair} coincide: {cofaces[0]}")
    if validate:
        for coface in cofaces:
            co_cls = classify(family, coloring, coface)
            if not co_cls.is_zero_cell:
                raise InternalConsistencyError(f"coface {coface} of {pair} is not a 0-cell")
            if not co_cls.balanced and co_cls.type != cls.type:
                raise InternalConsistencyError(f"coface {coface} of {pair} changed type")
    return cofaces


def iter_cells(family: OrderFamily, coloring, guard: Guard = DEFAULT_GUARD
               ) -> Iterator[tuple[SubsetPair, CellClass]]:
    """All cells, visiting only ``|X| in {|C| - 1, |C|}``."""
    guard.check_exhaustive(family.n_elements, family.n_colors)
    elements = range(family.n_elements)
    for size in range(1, family.n_colors + 1):
        for c_set in itertools.combinations(range(family.n_colors), size):
            for x_size in (size - 1, size):
                for x_set in itertools.combinations(elements, x_size):
                    pair = SubsetPair(x_set, c_set)
                    cls = classify(family, coloring, pair)
                    if cls.is_cell:
                        yield pair, cls


def census(family: OrderFamily, coloring, i: int, guard: Guard = DEFAULT_GUARD) -> Census:
    """Count the cells and incidences of the type-``i`` double-counting argument.

    The incidence count is computed once from the 0-cell side and once from
    the 1-cell side; a disagreement is an internal error.
    """
    if not 0 <= i < family.n_colors:
        raise InvalidInstanceError(f"color {i} out of range")
    e = f = g = 0
    from_zero = from_one = 0
    for pair, cls in iter_cells(family, coloring, guard):
        if cls.balanced or (cls.is_zero_cell and cls.type == i):
            if cls.balanced:
                e += 1
            else:
                f += 1
            faces = faces_of_zero_cell(family, coloring, pair, validate=False)
            from_zero += sum(1 for face in faces if classify(family, coloring, face).type == i)
        elif cls.is_one_cell and cls.type == i:
            if pair.x_set:
                g += 1
            from_one += len(cofaces_of_one_cell(family, coloring, pair, validate=False))
    if from_zero != from_one:
        raise InternalConsistencyError(
            f"incidence count differs: {from_zero} from 0-cells, {from_one} from 1-cells"
        )
    return Census(e=e, f=f, g=g, n_pairs=from_zero, color=i)


def _is_balanced(coloring, pair: SubsetPair) -> bool:
    return _colors_of(coloring, pair.x_set) == set(pair.c_set)


def pivot_path(family: OrderFamily, coloring, start_color: int = 0,
               validate: bool = False) -> list[SubsetPair]:
    """Walk the type-``start_color`` doors from ``(∅, {start_color})``.

    Returns the visited 0-cells in order; the last one is balanced.  With
    ``validate`` every step re-classifies the cells it touches, which costs
    a full dominance scan per cell.
    """
    if not 0 <= start_color < family.n_colors:
        raise InvalidInstanceError(f"start color {start_color} out of range")
    door = SubsetPair((), (start_color,))
    room = _one_cell_cofaces(family, door)[0]
    path = [room]
    visited = {room}
    while not _is_balanced(coloring, room):
        if validate:
            cls = classify(family, coloring, room)
            if cls.kind is not CellKind.ZERO_TYPED or cls.type != start_color:
                raise InternalConsistencyError(f"pivot entered {room} ({cls.kind.value}, {cls.type})")
        faces = _typed_faces(coloring, room)
        exits = [face for face in faces if face != door]
        if len(exits) != 1:
            raise InternalConsistencyError(f"0-cell {room} has no unique exit besides {door}")
        door = exits[0]
        if validate:
            rooms = cofaces_of_one_cell(family, coloring, door, validate=True)
        else:
            rooms = _one_cell_cofaces(family, door)
        onward = [r for r in rooms if r != room]
        if len(rooms) != 2 or len(onward) != 1:
            raise InternalConsistencyError(f"1-cell {door} does not lead on from {room}")
        room = onward[0]
        if room in visited:
            raise InternalConsistencyError(f"pivot revisited {room}")
        visited.add(room)
        path.append(room)
    return path


def find_balanced(family: OrderFamily, coloring, start_color: int = 0,
                  validate: bool = False) -> SubsetPair:
    """A pair ``(X, c(X))`` with ``X`` non-empty and dominant w.r.t. ``c(X)``.

    The result is always re-classified before it is returned.
    """
    cell = pivot_path(family, coloring, start_color, validate=validate)[-1]
    if not classify(family, coloring, cell).balanced:
        raise InternalConsistencyError(f"pivot stopped at non-balanced {cell}")
    return cell
