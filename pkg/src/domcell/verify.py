"""Invariant sweep over random order families and small lattices.

Every check compares the constructive code in :mod:`domcell.cells` and
:mod:`domcell.lattice` with the brute-force scans of :mod:`domcell.oracle`
or with an exact counting identity.  The report is a plain-text table
whose content depends only on the inputs, never on timing.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from . import cells, oracle
from .errors import DomcellError
from .lattice import build_lattice, check_pseudo_sperner, kkm_coloring
from .limits import DEFAULT_GUARD, Guard
from .maps import MapSpec

LATTICE_GUARD = Guard(max_elements=45)
LATTICE_MAPS = (
    MapSpec("identity"),
    MapSpec("rotation"),
    MapSpec("power_push", {"alpha": 2.0}),
)

CHECKS = (
    "theorem1_existence",
    "parity_census",
    "lemma2_minima_and_size",
    "lemma4_basic_cases",
    "lemma5_zero_cell_faces",
    "lemma6_7_one_cell_cofaces",
    "bully_sets_disjoint",
    "face_coface_duality",
    "pivot_path_sound",
    "pseudo_sperner_bounds",
)


@dataclass
class CheckTally:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 3:
            self.failures.append(label)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _guarded(fn: Callable[[], bool]) -> bool:
    try:
        return bool(fn())
    except DomcellError:
        return False


def check_instance(family, coloring, guard: Guard = DEFAULT_GUARD) -> dict[str, bool]:
    """Run every order-family check on one instance and report pass/fail by name."""
    coloring = cells.make_coloring(family, coloring)
    inventory = oracle.enumerate_cells(family, coloring, guard)
    scan_faces, scan_cofaces = oracle.incidence_by_scan(inventory)
    zero_cells = [p for p, (kind, _) in inventory.items() if kind != "one"]
    one_cells = [p for p, (kind, _) in inventory.items() if kind == "one"]
    color_of = [int(v) for v in coloring]
    results: dict[str, bool] = {}

    def theorem1():
        balanced = oracle.enumerate_balanced(family, coloring, guard)
        return bool(balanced) and all(
            cells.find_balanced(family, coloring, s) in balanced for s in range(family.n_colors)
        )

    def parity():
        for i in range(family.n_colors):
            got = cells.census(family, coloring, i, guard)
            want = oracle.census_by_scan(inventory, i)
            if (got.e, got.f, got.g, got.n_pairs) != (want["e"], want["f"], want["g"], want["N"]):
                return False
            if got.e + 2 * got.f != 1 + 2 * got.g or got.e % 2 != 1:
                return False
        return True

    def lemma2():
        for x_set, c_set in oracle.all_dominant_pairs(family, guard):
            if not oracle.minima_identity(family, x_set, c_set) or len(x_set) > len(c_set):
                return False
        return True

    def lemma4():
        for pair, (kind, _) in inventory.items():
            used = {color_of[x] for x in pair.x_set}
            c_set = set(pair.c_set)
            if kind == "zero" and not (len(c_set - used) == 1 and len(used - c_set) <= 1):
                return False
            if kind == "one" and not (used <= c_set and len(c_set - used) == 1):
                return False
        return True

    def lemma5():
        for pair in zero_cells:
            kind, cell_type = inventory[pair]
            faces = cells.faces_of_zero_cell(family, coloring, pair)
            if set(faces) != scan_faces[pair] or len(faces) != len(set(faces)):
                return False
            types = [inventory[face][1] for face in faces]
            if kind == "balanced" and sorted(types) != list(range(family.n_colors)):
                return False
            if kind == "zero" and types != [cell_type, cell_type]:
                return False
        return True

    def lemma6_7():
        for pair in one_cells:
            cofaces = cells.cofaces_of_one_cell(family, coloring, pair)
            if set(cofaces) != scan_cofaces[pair]:
                return False
            if len(cofaces) != (2 if pair.x_set else 1):
                return False
            cell_type = inventory[pair][1]
            if any(inventory[c][0] != "balanced" and inventory[c][1] != cell_type for c in cofaces):
                return False
        return True

    def disjoint():
        for pair in one_cells:
            if not pair.x_set:
                continue
            a, b = cells.special_pair(family, pair)
            common = set(cells.bullies_without(family, pair, a).tolist()) & set(
                cells.bullies_without(family, pair, b).tolist())
            if common:
                return False
        return True

    def duality():
        faces = {p: set(cells.faces_of_zero_cell(family, coloring, p, validate=False)) for p in zero_cells}
        cofaces = {p: set(cells.cofaces_of_one_cell(family, coloring, p, validate=False)) for p in one_cells}
        for sigma in zero_cells:
            for tau in one_cells:
                if (tau in faces[sigma]) != (sigma in cofaces[tau]):
                    return False
        return True

    def pivot():
        for s in range(family.n_colors):
            path = cells.pivot_path(family, coloring, s, validate=True)
            if len(set(path)) != len(path) or len(path) > len(zero_cells):
                return False
            if inventory.get(path[-1], (None,))[0] != "balanced":
                return False
        return True

    checks = {
        "theorem1_existence": theorem1,
        "parity_census": parity,
        "lemma2_minima_and_size": lemma2,
        "lemma4_basic_cases": lemma4,
        "lemma5_zero_cell_faces": lemma5,
        "lemma6_7_one_cell_cofaces": lemma6_7,
        "bully_sets_disjoint": disjoint,
        "face_coface_duality": duality,
        "pivot_path_sound": pivot,
    }
    for name, fn in checks.items():
        results[name] = _guarded(fn)
    return results


def check_lattice_bounds(d: int, n: int, maps: Iterable[MapSpec] = LATTICE_MAPS,
                         guard: Guard = LATTICE_GUARD) -> bool:
    """Pseudo-Sperner, diameter and anchor-sum bounds on ``T_n``.

    Covers every dominant pair of the lattice orders (these do not depend on
    the coloring) and the balanced cell found for each map's KKM coloring.
    """
    lattice = build_lattice(d, n, guard)
    family = lattice.order_family
    pairs = [(x, c) for x, c in oracle.all_dominant_pairs(family, guard) if x]
    for spec in maps:
        coloring = kkm_coloring(lattice, spec.build(d))
        cell = cells.find_balanced(family, coloring, 0)
        pairs.append((cell.x_set, cell.c_set))
    for x_set, c_set in pairs:
        report = check_pseudo_sperner(lattice, x_set, c_set)
        if not (report.ok and report.diameter_ok and report.anchor_sum > n - d):
            return False
    return True


def run_suite(seed: int = 0, instances: int = 200, t_max: int = 7, i_max: int = 4,
              guard: Guard = DEFAULT_GUARD, supplied=None,
              lattice_cases: Iterable[tuple[int, int]] | None = None) -> list[CheckTally]:
    """Tally every check over random instances (or ``supplied`` ones)."""
    tallies = {name: CheckTally(name) for name in CHECKS}
    if supplied is None:
        supplied = oracle.random_instances(seed, instances, t_max, i_max)
    for k, inst in enumerate(supplied):
        for name, ok in check_instance(inst.family, inst.coloring, guard).items():
            tallies[name].record(ok, f"instance {k}")
    if lattice_cases is None:
        lattice_cases = [(d, n) for d in (2, 3) for n in range(2, 7)]
    for d, n in lattice_cases:
        tallies["pseudo_sperner_bounds"].record(
            _guarded(lambda: check_lattice_bounds(d, n)), f"d={d} n={n}")
    return [t for t in tallies.values() if t.total]


def format_report(tallies: list[CheckTally], header: str) -> str:
    lines = [header, f"{'check':<28} {'passed':>7} {'total':>7}  status"]
    for t in tallies:
        status = "PASS" if t.ok else "FAIL"
        lines.append(f"{t.name:<28} {t.passed:>7} {t.total:>7}  {status}")
        for label in t.failures:
            lines.append(f"    failed on {label}")
    overall = "PASS" if all(t.ok for t in tallies) else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines) + "\n"
