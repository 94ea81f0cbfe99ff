"""Finite sets carrying one linear order per color, and the dominance test.

Elements and colors are addressed internally by their position (0-based
integers).  The external identifiers passed to :func:`make_order_family`
are kept on the family so that callers can translate back at the I/O
boundary.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InvalidInstanceError


@dataclass(frozen=True, eq=False)
class OrderFamily:
    """Ground set ``T`` with a linear order ``<_i`` for every color ``i``.

    ``ranks[i, t]`` is the position of element ``t`` in the order of color
    ``i`` (0 is the smallest).  ``order[i, r]`` is the inverse permutation.
    """

    elements: Sequence[Any]
    colors: Sequence[Any]
    ranks: np.ndarray
    order: np.ndarray = field(repr=False)

    @property
    def n_elements(self) -> int:
        return self.ranks.shape[1]

    @property
    def n_colors(self) -> int:
        return self.ranks.shape[0]

    def less(self, i: int, x: int, y: int) -> bool:
        """``x <_i y``."""
        return bool(self.ranks[i, x] < self.ranks[i, y])

    @classmethod
    def from_rank_array(cls, ranks, elements=None, colors=None, validate=True) -> OrderFamily:
        ranks = np.array(ranks, dtype=np.int64, copy=True)
        if ranks.ndim != 2:
            raise InvalidInstanceError("rank array must be two-dimensional (colors x elements)")
        k, t = ranks.shape
        if k == 0 or t == 0:
            raise InvalidInstanceError("an order family needs at least one element and one color")
        order = np.empty_like(ranks)
        if validate:
            expected = np.arange(t)
            for i in range(k):
                if not np.array_equal(np.sort(ranks[i]), expected):
                    raise InvalidInstanceError(
                        f"ranks of color {i} are not a bijection onto 0..{t - 1}"
                    )
        rows = np.arange(k)[:, None]
        order[rows, ranks] = np.arange(t)[None, :]
        ranks.setflags(write=False)
        order.setflags(write=False)
        if elements is None:
            elements = range(t)
        if colors is None:
            colors = range(k)
        if len(elements) != t or len(colors) != k:
            raise InvalidInstanceError("identifier lists do not match the rank array shape")
        return cls(elements=elements, colors=colors, ranks=ranks, order=order)


@dataclass(frozen=True, order=True)
class SubsetPair:
    """A pair ``(X, C)`` of element and color index sets in sorted form."""

    x_set: tuple[int, ...]
    c_set: tuple[int, ...]

    def __post_init__(self):
        for name, members in (("x_set", self.x_set), ("c_set", self.c_set)):
            if any(a >= b for a, b in zip(members, members[1:])):
                raise InvalidInstanceError(f"{name} must be strictly increasing, got {members}")

    @classmethod
    def of(cls, x: Iterable[int], c: Iterable[int]) -> SubsetPair:
        xs, cs = [int(v) for v in x], [int(v) for v in c]
        if len(set(xs)) != len(xs) or len(set(cs)) != len(cs):
            raise InvalidInstanceError("subset pair members must be distinct")
        return cls(tuple(sorted(xs)), tuple(sorted(cs)))

    def plus_element(self, x: int) -> SubsetPair:
        if x in self.x_set:
            raise InvalidInstanceError(f"element {x} already in X")
        return SubsetPair(tuple(sorted(self.x_set + (x,))), self.c_set)

    def minus_element(self, x: int) -> SubsetPair:
        if x not in self.x_set:
            raise InvalidInstanceError(f"element {x} not in X")
        return SubsetPair(tuple(v for v in self.x_set if v != x), self.c_set)

    def plus_color(self, i: int) -> SubsetPair:
        if i in self.c_set:
            raise InvalidInstanceError(f"color {i} already in C")
        return SubsetPair(self.x_set, tuple(sorted(self.c_set + (i,))))

    def minus_color(self, i: int) -> SubsetPair:
        if i not in self.c_set:
            raise InvalidInstanceError(f"color {i} not in C")
        return SubsetPair(self.x_set, tuple(v for v in self.c_set if v != i))

    def __str__(self) -> str:
        xs = ",".join(map(str, self.x_set))
        cs = ",".join(map(str, self.c_set))
        return f"({{{xs}}}, {{{cs}}})"


def make_order_family(elements: Sequence[Any], colors: Sequence[Any], ranks) -> OrderFamily:
    """Validate and build an :class:`OrderFamily`.

    ``ranks`` is either a mapping ``color -> {element: rank}`` keyed by the
    external identifiers, or a sequence (one row per color, in the order of
    ``colors``) of rank sequences aligned with ``elements``.
    """
    elements = tuple(elements)
    colors = tuple(colors)
    if not elements or not colors:
        raise InvalidInstanceError("an order family needs at least one element and one color")
    if len(set(elements)) != len(elements) or len(set(colors)) != len(colors):
        raise InvalidInstanceError("element and color identifiers must be distinct")

    if isinstance(ranks, Mapping):
        missing = [c for c in colors if c not in ranks]
        if missing:
            raise InvalidInstanceError(f"no ranks supplied for colors {missing}")
        rows = []
        for c in colors:
            per_color = ranks[c]
            absent = [e for e in elements if e not in per_color]
            if absent:
                raise InvalidInstanceError(f"color {c!r} has no rank for elements {absent}")
            rows.append([per_color[e] for e in elements])
    else:
        rows = [list(r) for r in ranks]
        if len(rows) != len(colors):
            raise InvalidInstanceError(f"expected {len(colors)} rank rows, got {len(rows)}")
        if any(len(r) != len(elements) for r in rows):
            raise InvalidInstanceError("every rank row must cover all elements")
    try:
        array = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InvalidInstanceError(f"ranks must be integers: {exc}") from None
    return OrderFamily.from_rank_array(array, elements=elements, colors=colors)


def min_of(family: OrderFamily, x: Iterable[int], i: int) -> int:
    """The ``<_i``-smallest member of the non-empty set ``x``."""
    members = list(x)
    if not members:
        raise InvalidInstanceError("min_of requires a non-empty subset")
    row = family.ranks[i]
    return min(members, key=row.__getitem__)


def max_of(family: OrderFamily, i: int) -> int:
    """The ``<_i``-largest element of the whole ground set."""
    return int(family.order[i, -1])


def dominance_witness(family: OrderFamily, x: Iterable[int], c: Iterable[int]) -> int | None:
    """Return an element beating ``min_i X`` in every order ``i in C``, if any.

    Among several witnesses the one that is smallest for the lowest-indexed
    color of ``C`` is returned.  The empty set has no witness.
    """
    colors = sorted(set(c))
    if not colors:
        raise InvalidInstanceError("dominance is only defined for a non-empty color set")
    members = list(x)
    if not members:
        return None
    rows = family.ranks[colors]
    thresholds = np.array([family.ranks[i, min_of(family, members, i)] for i in colors])
    beaten = np.all(rows > thresholds[:, None], axis=0)
    candidates = np.flatnonzero(beaten)
    if candidates.size == 0:
        return None
    first = rows[0, candidates]
    return int(candidates[np.argmin(first)])


def is_dominant(family: OrderFamily, x: Iterable[int], c: Iterable[int]) -> bool:
    return dominance_witness(family, x, c) is None
