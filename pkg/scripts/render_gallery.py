#!/usr/bin/env python3
"""Render a small gallery of example patches to SVG.

Usage: python3 scripts/render_gallery.py [output_dir]
"""

import sys
from pathlib import Path

from pentile import (
    FeasibleParams,
    RenderOptions,
    assemble_patch,
    dihedral_params,
    hexagon_level,
    houses_patch,
    label_arms,
    render_svg,
    spiral_arms,
)

EXAMPLES = [
    ("c5_rings3", FeasibleParams(5, 156.0, 78.0), 3, "ring", "pentagon"),
    ("d7_rings3_arms", dihedral_params(7), 3, "arm", "hexagon"),
    ("c6_rings4_sectors", FeasibleParams(6, 160.0, 80.0), 4, "sector", "pentagon"),
    ("d4_rings3_chirality", dihedral_params(4), 3, "chirality", "pentagon"),
]


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
    out_dir.mkdir(parents=True, exist_ok=True)

    for name, params, rings, color_by, level in EXAMPLES:
        patch = assemble_patch(params, rings)
        if level == "hexagon":
            patch = hexagon_level(patch)
        if color_by == "arm":
            patch = label_arms(patch, spiral_arms(patch))
        svg = render_svg(patch, RenderOptions(color_by=color_by, show_center=True))
        path = out_dir / f"{name}.svg"
        path.write_bytes(svg)
        print(f"{path}  ({len(patch.tiles)} tiles, colored by {color_by})")

    for kind in ("c1", "c2", "d1", "d2"):
        patch = houses_patch(kind)
        path = out_dir / f"houses_{kind}.svg"
        path.write_bytes(render_svg(patch, RenderOptions(color_by="ring", show_center=True)))
        print(f"{path}  ({len(patch.tiles)} tiles)")


if __name__ == "__main__":
    main()
