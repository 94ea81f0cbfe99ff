"""Built-in simplex self-maps used by the solver front end and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInstanceError

MAP_NAMES = ("identity", "rotation", "affine_contraction", "power_push")


class Identity:
    def __call__(self, x):
        return np.asarray(x, dtype=float)

    def batch(self, xs):
        return np.asarray(xs, dtype=float)


class Rotation:
    """``(x_1, ..., x_d) -> (x_d, x_1, ..., x_{d-1})``; fixed point is the barycenter."""

    def __call__(self, x):
        return np.roll(np.asarray(x, dtype=float), 1)

    def batch(self, xs):
        return np.roll(np.asarray(xs, dtype=float), 1, axis=1)


class AffineContraction:
    """``x -> (1 - rate) x + rate p``; fixed point is ``p``."""

    def __init__(self, target, rate):
        self.target = np.asarray(target, dtype=float)
        self.rate = float(rate)

    def __call__(self, x):
        return (1.0 - self.rate) * np.asarray(x, dtype=float) + self.rate * self.target

    def batch(self, xs):
        return (1.0 - self.rate) * np.asarray(xs, dtype=float) + self.rate * self.target[None, :]


class PowerPush:
    """``x -> x**alpha / sum(x**alpha)``; vertices and the barycenter are fixed."""

    def __init__(self, alpha):
        self.alpha = float(alpha)

    def __call__(self, x):
        y = np.asarray(x, dtype=float) ** self.alpha
        return y / y.sum()

    def batch(self, xs):
        y = np.asarray(xs, dtype=float) ** self.alpha
        return y / y.sum(axis=1, keepdims=True)


@dataclass(frozen=True)
class MapSpec:
    name: str
    params: dict = field(default_factory=dict)

    def build(self, d: int):
        """Validate the parameters for dimension ``d`` and return the map."""
        if self.name not in MAP_NAMES:
            raise InvalidInstanceError(f"unknown map {self.name!r}; choose from {', '.join(MAP_NAMES)}")
        if self.name == "identity":
            return Identity()
        if self.name == "rotation":
            return Rotation()
        if self.name == "affine_contraction":
            if "p" not in self.params:
                raise InvalidInstanceError("affine_contraction needs target weights p")
            p = np.asarray(self.params["p"], dtype=float)
            rate = float(self.params.get("lambda", 0.5))
            if p.shape != (d,):
                raise InvalidInstanceError(f"p must have {d} entries, got {p.size}")
            if not np.all(np.isfinite(p)) or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
                raise InvalidInstanceError("p must lie in the simplex")
            if not 0.0 < rate < 1.0:
                raise InvalidInstanceError("lambda must lie in (0, 1)")
            return AffineContraction(p, rate)
        alpha = float(self.params.get("alpha", 2.0))
        if not alpha > 0.0:
            raise InvalidInstanceError("alpha must be positive")
        return PowerPush(alpha)
