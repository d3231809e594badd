"""Command-line interface: generate, verify, and inspect tiling patches."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .analysis import label_arms, spiral_arms, symmetry_detect, verify
from .assembly import (
    HOUSES_KINDS,
    assemble_patch,
    hexagon_level,
    houses_patch,
    is_dihedral,
)
from .io import RenderOptions, SchemaError, parse, render_svg, serialize
from .pentagon import (
    FeasibleParams,
    PentagonError,
    default_params,
    derive_pentagon,
    dihedral_params,
    validate_property1,
)


@dataclass
class CliConfig:
    subcommand: str  # generate | verify | info
    n: int | None = None
    rings: int = 2
    C: float | None = None
    D: float | None = None
    dihedral: bool = False
    houses: str | None = None
    level: str = "pentagon"
    arms: bool = False
    svg_path: str | None = None
    json_path: str | None = None
    tolerance: float = 1e-7
    color_by: str = "ring"


def _params(config: CliConfig) -> FeasibleParams:
    base = dihedral_params(config.n) if config.dihedral else default_params(config.n)
    C = base.C if config.C is None else config.C
    D = base.D if config.D is None else config.D
    return FeasibleParams(config.n, C, D)


def _fail(stage: str, message) -> int:
    print(f"{stage}: {message}", file=sys.stderr)
    return 1


def _cmd_generate(config: CliConfig) -> int:
    if (config.houses is None) == (config.n is None):
        return _fail("generate", "pass exactly one of --n or --houses")
    if config.houses is not None:
        try:
            patch = houses_patch(config.houses)
        except (ValueError, KeyError) as ex:
            return _fail("generate", ex)
    else:
        if config.n < 3:
            return _fail("generate", "--n must be at least 3 (use --houses for n in {1, 2})")
        try:
            patch = assemble_patch(_params(config), config.rings)
        except PentagonError as ex:
            return _fail("infeasible parameters", ex)
    if config.level == "hexagon" and not patch.is_houses:
        patch = hexagon_level(patch)
    if config.arms:
        try:
            patch = label_arms(patch, spiral_arms(patch))
        except Exception as ex:
            return _fail("spiral arms", ex)

    report = verify(patch, eps=config.tolerance)
    if not report.passed:
        return _fail("verification failure", "; ".join(str(d) for d in report.details[:3]))
    group = symmetry_detect(patch, eps=config.tolerance).group

    if config.json_path:
        with open(config.json_path, "wb") as f:
            f.write(serialize(patch))
    if config.svg_path:
        opts = RenderOptions(color_by=config.color_by, show_center=True)
        with open(config.svg_path, "wb") as f:
            f.write(render_svg(patch, opts))
    print(f"{len(patch.tiles)} tiles ({patch.level} level), symmetry {group}")
    return 0


def _cmd_verify(config: CliConfig) -> int:
    if not config.json_path:
        return _fail("verify", "--json is required")
    try:
        with open(config.json_path, "rb") as f:
            patch = parse(f.read())
    except OSError as ex:
        return _fail("verify", ex)
    except SchemaError as ex:
        return _fail("schema error", ex)
    report = verify(patch, eps=config.tolerance)
    group = symmetry_detect(patch, eps=config.tolerance).group
    status = "all checks passed" if report.passed else "FAILED"
    print(
        f"{group}, {status} (overlap_free={report.overlap_free} "
        f"edge_matched={report.edge_matched} ring_census_ok={report.ring_census_ok} "
        f"closure_ok={report.closure_ok})"
    )
    for d in report.details:
        print(f"  {d}", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_info(config: CliConfig) -> int:
    if config.n is None:
        return _fail("info", "--n is required")
    try:
        params = _params(config)
        spec = derive_pentagon(params)
    except PentagonError as ex:
        return _fail("infeasible parameters", ex)
    issues = validate_property1(spec)
    print(f"n = {params.n}  (B = {params.B:g} deg)")
    print("angles (deg):  " + "  ".join(f"{k}={v:g}" for k, v in zip("ABCDE", spec.angles)))
    print("sides:         " + "  ".join(f"{k}={v:.12g}" for k, v in zip("abcde", spec.sides)))
    print("symmetry family:", "D (dihedral)" if is_dihedral(params) else "C (rotation only)")
    print("feasible:", "yes" if not issues else f"no ({'; '.join(issues)})")
    return 0 if not issues else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pentile",
        description="Construct, verify, and render pentagon tilings with C_n/D_n symmetry.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, generate=False):
        p.add_argument("--n", type=int, help="rotational symmetry order (n >= 3)")
        p.add_argument("--C", type=float, help="angle C in degrees")
        p.add_argument("--D", type=float, help="angle D in degrees")
        p.add_argument("--dihedral", action="store_true", help="use the D_n parameter family")
        if generate:
            p.add_argument("--rings", type=int, default=2, help="number of rings (default 2)")
            p.add_argument("--houses", choices=HOUSES_KINDS, help="houses tiling for n in {1, 2}")
            p.add_argument("--level", choices=("pentagon", "hexagon"), default="pentagon")
            p.add_argument("--arms", action="store_true", help="label spiral arms")
            p.add_argument("--svg", dest="svg_path", help="write an SVG rendering here")
            p.add_argument("--json", dest="json_path", help="write the JSON document here")
            p.add_argument("--color-by", dest="color_by", default="ring",
                           choices=("ring", "sector", "arm", "chirality"))

    g = sub.add_parser("generate", help="build a patch and write JSON/SVG outputs")
    common(g, generate=True)
    g.add_argument("--tolerance", type=float, default=1e-7)

    v = sub.add_parser("verify", help="check a serialized patch")
    v.add_argument("--json", dest="json_path", required=True)
    v.add_argument("--tolerance", type=float, default=1e-7)

    i = sub.add_parser("info", help="print the derived pentagon for given parameters")
    common(i)
    return parser


def run(config: CliConfig) -> int:
    if config.subcommand == "generate":
        return _cmd_generate(config)
    if config.subcommand == "verify":
        return _cmd_verify(config)
    if config.subcommand == "info":
        return _cmd_info(config)
    return _fail("cli", f"unknown subcommand {config.subcommand!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if v is not None}
    return run(CliConfig(**fields))


if __name__ == "__main__":
    sys.exit(main())
