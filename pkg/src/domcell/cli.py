"""Command-line driver: ``solve``, ``verify`` and ``census``.

Colors are 1-based on the command line and in every output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cells import census, make_coloring
from .errors import DomcellError
from .fixed_point import DEFAULT_SCHEDULE, approximate_fixed_point
from .lattice import build_lattice, kkm_coloring
from .limits import DEFAULT_GUARD, Guard
from .maps import MAP_NAMES, MapSpec
from .oracle import Instance
from .orders import make_order_family
from .verify import format_report, run_suite

log = logging.getLogger("domcell")

EXIT_OK, EXIT_ERROR, EXIT_NOT_CONVERGED = 0, 1, 2


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_guard_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--guard-t", type=int, default=DEFAULT_GUARD.max_elements,
                   help="largest ground set for exhaustive enumeration")
    p.add_argument("--guard-cells", type=int, default=DEFAULT_GUARD.max_lattice_points,
                   help="largest lattice (number of points) to build")


def _add_map_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--map", choices=MAP_NAMES, required=required, default=None if required else "identity")
    p.add_argument("--p", type=_floats, help="affine_contraction target weights")
    p.add_argument("--lambda", dest="rate", type=float, default=0.5, help="affine_contraction rate")
    p.add_argument("--alpha", type=float, default=2.0, help="power_push exponent")


def _guard(args) -> Guard:
    return Guard(max_elements=args.guard_t, max_colors=DEFAULT_GUARD.max_colors,
                 max_lattice_points=args.guard_cells)


def _map_spec(args) -> MapSpec:
    if args.map == "affine_contraction":
        params = {"lambda": args.rate}
        if args.p is not None:
            params["p"] = args.p
        return MapSpec(args.map, params)
    if args.map == "power_push":
        return MapSpec(args.map, {"alpha": args.alpha})
    return MapSpec(args.map)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="domcell", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="approximate a fixed point of a built-in map")
    _add_map_flags(solve, required=True)
    solve.add_argument("--d", type=int, default=3)
    solve.add_argument("--schedule", type=_ints, default=list(DEFAULT_SCHEDULE))
    solve.add_argument("--tol", type=float, default=1e-6)
    solve.add_argument("--representative", choices=("refined", "first", "centroid"), default="refined")
    solve.add_argument("--output", type=Path, help="write JSON here instead of stdout")
    _add_guard_flags(solve)

    verify = sub.add_parser("verify", help="run the invariant suite on random instances")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--instances", type=int, default=200)
    verify.add_argument("--t-max", type=int, default=7)
    verify.add_argument("--i-max", type=int, default=4)
    verify.add_argument("--instance", type=Path, help="verify one instance read from a JSON file")
    verify.add_argument("--output", type=Path, help="also write the report here")
    _add_guard_flags(verify)

    cen = sub.add_parser("census", help="count cells of a KKM-colored lattice")
    cen.add_argument("--d", type=int, required=True)
    cen.add_argument("--n", type=int, required=True)
    cen.add_argument("--color", type=int, default=1)
    _add_map_flags(cen, required=False)
    _add_guard_flags(cen)
    return parser


def load_instance(path: Path) -> Instance:
    """Read ``{"elements", "colors", "ranks", "coloring"}`` from JSON.

    ``ranks`` maps each color to ``{element: rank}`` (or is a list of rank
    rows); ``coloring`` maps each element to a color (or is a list).
    """
    data = json.loads(path.read_text(encoding="utf-8"))
    elements = data["elements"]
    colors = data["colors"]
    ranks = data["ranks"]
    if isinstance(ranks, dict):
        # JSON object keys are strings; match them to the declared identifiers.
        by_name = {str(c): c for c in colors}
        element_by_name = {str(e): e for e in elements}
        ranks = {by_name[k]: {element_by_name[e]: r for e, r in row.items()} for k, row in ranks.items()}
    family = make_order_family(elements, colors, ranks)
    raw = data["coloring"]
    color_index = {c: k for k, c in enumerate(family.colors)}
    color_index.update({str(c): k for k, c in enumerate(family.colors)})
    if isinstance(raw, dict):
        raw = [raw[str(e)] for e in family.elements]
    try:
        values = [color_index[c] for c in raw]
    except KeyError as exc:
        raise DomcellError(f"coloring uses unknown color {exc}") from None
    return Instance(family, tuple(make_coloring(family, values).tolist()))


def run_solve(args) -> int:
    f = _map_spec(args).build(args.d)
    result = approximate_fixed_point(f, args.d, args.schedule, args.tol, _guard(args),
                                     representative=args.representative)
    text = result.to_json()
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    log.info("residual %.3e at n=%d", result.residual, result.resolution)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def run_verify(args) -> int:
    guard = _guard(args)
    if args.instance:
        supplied = [load_instance(args.instance)]
        header = f"domcell verify instance={args.instance.name}"
        tallies = run_suite(guard=guard, supplied=supplied, lattice_cases=())
    else:
        header = (f"domcell verify seed={args.seed} instances={args.instances} "
                  f"t_max={args.t_max} i_max={args.i_max}")
        tallies = run_suite(args.seed, args.instances, args.t_max, args.i_max, guard)
    report = format_report(tallies, header)
    sys.stdout.write(report)
    if args.output:
        args.output.write_text(report, encoding="utf-8")
    return EXIT_OK if all(t.ok for t in tallies) else EXIT_ERROR


def run_census(args) -> int:
    lattice = build_lattice(args.d, args.n, _guard(args))
    coloring = kkm_coloring(lattice, _map_spec(args).build(args.d))
    color = args.color - 1
    result = census(lattice.order_family, coloring, color, _guard(args))
    holds = result.e + 2 * result.f == 1 + 2 * result.g == result.n_pairs and result.e % 2 == 1
    sys.stdout.write(
        f"d={args.d} n={args.n} map={args.map} color={args.color}\n"
        f"e={result.e} f={result.f} g={result.g} N={result.n_pairs}\n"
        f"e+2f={result.e + 2 * result.f} 1+2g={1 + 2 * result.g} "
        f"identity={'holds' if holds else 'FAILS'}\n"
    )
    return EXIT_OK if holds else EXIT_ERROR


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    handlers = {"solve": run_solve, "verify": run_verify, "census": run_census}
    try:
        return handlers[args.command](args)
    except (DomcellError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
