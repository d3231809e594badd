"""JSON serialization and SVG rendering for patches.

The JSON document format (schema version "1"):

    {
      "schema_version": "1",
      "config": {"n": ..., "C": ..., "D": ..., "rings": ...,
                 "symmetry_declared": "C"|"D", "level": "pentagon"|"hexagon",
                 "houses_kind": null|"c1"|"c2"|"d1"|"d2"},
      "pentagon": null | {"A": ..., ..., "E": ..., "a": ..., ..., "e": ...},
      "tiles": [{"id": 0, "level": "pentagon", "ring": 1, "sector": 0,
                 "reflected": false, "arm": null,
                 "vertices": [[x, y], ...]}, ...]
    }

Floats are written with 17 significant decimal digits, which round-trips IEEE
doubles exactly; tile order is the builder's (ring, sector, intra-row) order,
so serialization is deterministic and diffable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .assembly import Patch, Tile
from .geom import Polygon
from .pentagon import PentagonSpec

SCHEMA_VERSION = "1"

_ANGLE_FIELDS = ("A", "B", "C", "D", "E")
_SIDE_FIELDS = ("a", "b", "c", "d", "e")


class SchemaError(ValueError):
    """A patch document violates the JSON schema; the message names the field."""


# --- JSON emission --------------------------------------------------------


def _emit(value, out: list) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        # 17 significant digits round-trips IEEE doubles exactly
        out.append(format(float(value), ".17g"))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(k))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


def _document(patch: Patch) -> dict:
    p = patch.pentagon
    config = {
        "n": patch.n,
        "C": None if p is None else p.C,
        "D": None if p is None else p.D,
        "rings": patch.rings,
        "symmetry_declared": patch.symmetry_declared,
        "level": patch.level,
        "houses_kind": patch.houses_kind,
    }
    pentagon = None
    if p is not None:
        pentagon = {f: getattr(p, f) for f in _ANGLE_FIELDS + _SIDE_FIELDS}
    tiles = []
    for i, t in enumerate(patch.tiles):
        tiles.append(
            {
                "id": i,
                "level": t.level,
                "ring": t.ring,
                "sector": t.sector,
                "reflected": t.reflected,
                "arm": t.arm,
                "vertices": [[float(x), float(y)] for x, y in t.polygon.vertices],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "pentagon": pentagon,
        "tiles": tiles,
    }


def serialize(patch: Patch) -> bytes:
    """Serialize a patch to deterministic JSON bytes (schema version "1")."""
    out: list = []
    _emit(_document(patch), out)
    return "".join(out).encode("ascii")


# --- parsing --------------------------------------------------------------


def _require(mapping, key, path):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"missing field {path}.{key}")
    return mapping[key]


def _finite(value, path) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SchemaError(f"{path} is not a number")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{path} is not finite")
    return value


def parse(data: bytes | str) -> Patch:
    """Parse JSON bytes back into a Patch.

    Raises SchemaError naming the first offending field for unknown schema
    versions, missing fields, non-finite coordinates, and degenerate polygons.
    """
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as ex:
        raise SchemaError(f"not valid JSON: {ex}") from ex
    if not isinstance(doc, dict):
        raise SchemaError("document root is not an object")
    version = _require(doc, "schema_version", "$")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unknown schema_version {version!r}")
    config = _require(doc, "config", "$")
    n = _require(config, "n", "config")
    rings = _require(config, "rings", "config")
    symmetry = _require(config, "symmetry_declared", "config")
    level = _require(config, "level", "config")
    houses_kind = _require(config, "houses_kind", "config")
    if level not in ("pentagon", "hexagon"):
        raise SchemaError(f"config.level {level!r} is not a tile level")

    pentagon_doc = _require(doc, "pentagon", "$")
    pentagon = None
    if pentagon_doc is not None:
        fields = {
            f: _finite(_require(pentagon_doc, f, "pentagon"), f"pentagon.{f}")
            for f in _ANGLE_FIELDS + _SIDE_FIELDS
        }
        pentagon = PentagonSpec(**fields)

    tiles_doc = _require(doc, "tiles", "$")
    if not isinstance(tiles_doc, list):
        raise SchemaError("$.tiles is not a list")
    tiles = []
    for i, td in enumerate(tiles_doc):
        path = f"tiles[{i}]"
        tile_id = _require(td, "id", path)
        verts = _require(td, "vertices", path)
        if not isinstance(verts, list) or len(verts) < 3:
            raise SchemaError(f"tile {tile_id} has fewer than 3 vertices")
        pts = []
        for pt in verts:
            if not isinstance(pt, list) or len(pt) != 2:
                raise SchemaError(f"tile {tile_id} has a malformed vertex")
            pts.append([_finite(c, f"tile {tile_id} coordinate") for c in pt])
        tiles.append(
            Tile(
                polygon=Polygon(np.array(pts)),
                level=_require(td, "level", path),
                ring=_require(td, "ring", path),
                sector=_require(td, "sector", path),
                reflected=_require(td, "reflected", path),
                arm=_require(td, "arm", path),
            )
        )
    return Patch(
        n=n,
        symmetry_declared=symmetry,
        rings=rings,
        pentagon=pentagon,
        tiles=tiles,
        level=level,
        houses_kind=houses_kind,
    )


# --- SVG rendering --------------------------------------------------------


@dataclass(frozen=True)
class RenderOptions:
    width: int = 800
    color_by: str = "ring"  # ring | sector | arm | chirality
    show_center: bool = False


def _color_key(tile: Tile, color_by: str):
    if color_by == "ring":
        return tile.ring
    if color_by == "sector":
        return tile.sector
    if color_by == "arm":
        return tile.arm
    if color_by == "chirality":
        return tile.reflected
    raise ValueError(f"unknown color_by {color_by!r}")


def _palette(keys):
    keys = sorted(set(keys), key=lambda k: (k is None, k))
    colors = {}
    for i, k in enumerate(keys):
        hue = (i * 360.0 / max(len(keys), 1) + 20.0) % 360.0
        colors[k] = f"hsl({hue:.0f}, 65%, 70%)"
    return colors


def render_svg(patch: Patch, options: RenderOptions = RenderOptions()) -> bytes:
    """Render one closed SVG path per tile, colored by the chosen index."""
    if not patch.tiles:
        raise ValueError("cannot render an empty patch")
    allv = np.concatenate([t.polygon.vertices for t in patch.tiles])
    lo = allv.min(axis=0)
    hi = allv.max(axis=0)
    span = hi - lo
    pad = 0.02 * float(max(span))
    lo, hi = lo - pad, hi + pad
    span = hi - lo
    width = options.width
    height = int(round(width * span[1] / span[0]))
    colors = _palette(_color_key(t, options.color_by) for t in patch.tiles)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="{lo[0]:.6g} {-hi[1]:.6g} '
        f'{span[0]:.6g} {span[1]:.6g}">'
    ]
    stroke = 0.004 * float(max(span))
    for t in patch.tiles:
        # flip y so the mathematical orientation matches screen coordinates
        d = "M " + " L ".join(f"{x:.9g} {-y:.9g}" for x, y in t.polygon.vertices) + " Z"
        fill = colors[_color_key(t, options.color_by)]
        arm = "" if t.arm is None else f' data-arm="{t.arm}"'
        parts.append(
            f'<path d="{d}" fill="{fill}" stroke="#333" '
            f'stroke-width="{stroke:.6g}" stroke-linejoin="round" '
            f'data-ring="{t.ring}" data-sector="{t.sector}"{arm}/>'
        )
    if options.show_center:
        cx, cy = patch.center
        r = 0.012 * float(max(span))
        parts.append(
            f'<circle cx="{cx:.9g}" cy="{-cy:.9g}" r="{r:.6g}" fill="#111" '
            f'class="center-marker"/>'
        )
    parts.append("</svg>")
    return "".join(parts).encode("ascii")
