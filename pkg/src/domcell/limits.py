"""Size guards for exhaustive enumeration and lattice construction."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import GuardError

OVERRIDE_ENV = "DOMCELL_GUARD_OVERRIDE"


def guards_lifted() -> bool:
    """True when the expert-only override variable is set to a truthy value."""
    value = os.environ.get(OVERRIDE_ENV, "")
    return value.strip().lower() not in ("", "0", "false", "no", "off")


@dataclass(frozen=True)
class Guard:
    max_elements: int = 12
    max_colors: int = 6
    max_lattice_points: int = 2_000_000

    def check_exhaustive(self, n_elements: int, n_colors: int) -> None:
        if guards_lifted():
            return
        if n_elements > self.max_elements or n_colors > self.max_colors:
            raise GuardError(
                f"exhaustive enumeration refused for |T|={n_elements}, |I|={n_colors} "
                f"(limits {self.max_elements}, {self.max_colors}; set {OVERRIDE_ENV}=1 to lift)"
            )

    def check_lattice(self, n_points: int) -> None:
        if guards_lifted():
            return
        if n_points > self.max_lattice_points:
            raise GuardError(
                f"lattice with {n_points} points exceeds limit {self.max_lattice_points} "
                f"(set {OVERRIDE_ENV}=1 to lift)"
            )


DEFAULT_GUARD = Guard()
