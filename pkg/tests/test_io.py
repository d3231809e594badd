import json
import re

import numpy as np
import pytest

from pentile.analysis import label_arms, spiral_arms, verify
from pentile.assembly import assemble_patch, hexagon_level, houses_patch
from pentile.io import RenderOptions, SchemaError, parse, render_svg, serialize
from pentile.pentagon import default_params, dihedral_params

from oracles import random_feasible_params


@pytest.fixture(scope="module")
def patch():
    return assemble_patch(default_params(5), 2)


def test_round_trip_vertices_bit_exact(patch):
    again = parse(serialize(patch))
    assert len(again.tiles) == len(patch.tiles)
    for a, b in zip(patch.tiles, again.tiles):
        assert (a.polygon.vertices == b.polygon.vertices).all()
        assert (a.ring, a.sector, a.reflected, a.level) == (
            b.ring,
            b.sector,
            b.reflected,
            b.level,
        )
    assert again.pentagon == patch.pentagon
    assert (again.n, again.rings, again.level) == (patch.n, patch.rings, patch.level)


def test_serialization_is_deterministic(patch):
    assert serialize(patch) == serialize(patch)
    assert serialize(parse(serialize(patch))) == serialize(patch)


def test_round_trip_random_patches():
    rng = np.random.default_rng(7)
    for _ in range(5):
        params = random_feasible_params(rng, n_range=(3, 8))
        p = assemble_patch(params, int(rng.integers(1, 3)))
        q = parse(serialize(p))
        for a, b in zip(p.tiles, q.tiles):
            assert (a.polygon.vertices == b.polygon.vertices).all()


def test_parsed_patch_passes_verify(patch):
    assert verify(parse(serialize(patch))).passed


def test_houses_round_trip():
    h = houses_patch("d2")
    again = parse(serialize(h))
    assert again.houses_kind == "d2"
    assert again.pentagon is None
    assert verify(again).passed


def test_schema_version_guard(patch):
    doc = json.loads(serialize(patch))
    doc["schema_version"] = "2"
    with pytest.raises(SchemaError, match="schema_version"):
        parse(json.dumps(doc))


def test_missing_field_guard(patch):
    doc = json.loads(serialize(patch))
    del doc["config"]["n"]
    with pytest.raises(SchemaError, match="config.n"):
        parse(json.dumps(doc))


def test_nan_coordinate_names_tile(patch):
    doc = json.loads(serialize(patch))
    doc["tiles"][4]["vertices"][0][1] = float("nan")
    with pytest.raises(SchemaError, match="tile 4"):
        parse(json.dumps(doc))


def test_too_few_vertices_guard(patch):
    doc = json.loads(serialize(patch))
    doc["tiles"][0]["vertices"] = doc["tiles"][0]["vertices"][:2]
    with pytest.raises(SchemaError, match="3 vertices"):
        parse(json.dumps(doc))


def test_svg_one_closed_path_per_tile(patch):
    svg = render_svg(patch, RenderOptions(color_by="ring"))
    text = svg.decode()
    paths = re.findall(r'<path d="([^"]*)"', text)
    assert len(paths) == len(patch.tiles)
    assert all(d.strip().endswith("Z") for d in paths)
    fills = {m for m in re.findall(r'fill="(hsl[^"]*)"', text)}
    assert len(fills) == patch.rings


def test_svg_arm_coloring_and_metadata():
    hp = hexagon_level(assemble_patch(dihedral_params(7), 2))
    hp = label_arms(hp, spiral_arms(hp))
    text = render_svg(hp, RenderOptions(color_by="arm")).decode()
    assert len(set(re.findall(r'fill="(hsl[^"]*)"', text))) == 7
    assert text.count("data-arm=") == len(hp.tiles)
    assert text.count("data-ring=") == len(hp.tiles)


def test_svg_center_marker():
    text = render_svg(houses_patch("c2"), RenderOptions(show_center=True)).decode()
    assert "center-marker" in text
    assert "center-marker" not in render_svg(houses_patch("c2")).decode()
