import numpy as np
import pytest

from pentile.assembly import (
    HOUSES_KINDS,
    assemble_patch,
    build_sector,
    build_wedge,
    fit_tile_placement,
    glue_hexagon,
    hexagon_level,
    houses_patch,
    is_dihedral,
    wedge_transforms,
)
from pentile.geom import Isometry, polygons_interiors_intersect
from pentile.pentagon import (
    FeasibleParams,
    default_params,
    derive_pentagon,
    dihedral_params,
)


@pytest.fixture(scope="module")
def hex5():
    return glue_hexagon(derive_pentagon(default_params(5)))


def test_glued_hexagon_shape(hex5):
    p = derive_pentagon(default_params(5))
    angles = hex5.outline.interior_angles()
    assert np.allclose(angles, [p.A, p.B, p.C, p.A, p.B, p.C])
    assert np.allclose(hex5.outline.side_lengths(), 1.0)


def test_glued_hexagon_centrally_symmetric(hex5):
    v = hex5.outline.vertices
    center = v.mean(axis=0)
    assert np.max(np.abs((v[:3] - center) + (v[3:] - center))) < 1e-12


def test_divider_splits_hexagon_into_the_two_pentagons(hex5):
    half0, half1 = hex5.halves
    assert half0.area + half1.area == pytest.approx(hex5.outline.area, abs=1e-12)
    flip = Isometry.rotation(180.0, center=hex5.divider.mean(axis=0))
    assert np.allclose(flip(half0.vertices), half1.vertices, atol=1e-12)
    # divider endpoints sit strictly inside hexagon sides
    v = hex5.outline.vertices
    for p in hex5.divider:
        d = np.linalg.norm(v - p, axis=1)
        assert d.min() > 1e-6


def test_sector_row_sizes_and_no_overlap(hex5):
    rings = 4
    tiles = build_sector(hex5, rings)
    assert len(tiles) == rings * (rings + 1) // 2
    for m in range(1, rings + 1):
        assert sum(1 for t in tiles if t.ring == m) == m
    for i in range(len(tiles)):
        for k in range(i + 1, len(tiles)):
            assert not polygons_interiors_intersect(
                tiles[i].polygon, tiles[k].polygon, 1e-9
            )


def test_mating_border_shape(hex5):
    rings = 3
    border = hex5.mating_border(rings)
    assert border.shape == (2 * rings + 1, 2)
    assert np.allclose(border[0], hex5.tip)
    seg = np.diff(border, axis=0)
    assert np.allclose(np.linalg.norm(seg, axis=1), 1.0)


def test_wedge_mates_exactly(hex5):
    rings = 3
    base_move, refl_move = wedge_transforms(hex5, rings)
    border = hex5.mating_border(rings)
    # the reflected border lands on the base border shifted by one segment
    mapped = refl_move(border[1:])
    assert np.max(np.linalg.norm(mapped - base_move(border[:-1]), axis=1)) < 1e-9
    # the reflected tip becomes the patch origin
    assert np.max(np.abs(refl_move(border[0]))) < 1e-9
    tiles = build_wedge(hex5, rings)
    assert len(tiles) == rings * (rings + 1)


@pytest.mark.parametrize("n", [3, 6, 9])
def test_patch_tile_counts(n):
    rings = 3
    patch = assemble_patch(default_params(n), rings)
    assert len(patch.tiles) == sum(4 * n * m for m in range(1, rings + 1))
    hp = hexagon_level(patch)
    for m in range(1, rings + 1):
        assert sum(1 for t in hp.tiles if t.ring == m) == 2 * n * m


def test_patch_tile_ordering_and_metadata():
    patch = assemble_patch(default_params(4), 2)
    keys = [(t.ring, t.sector) for t in patch.tiles]
    assert keys == sorted(keys)
    assert {t.half for t in patch.tiles} == {0, 1}
    assert {t.reflected for t in patch.tiles} == {False, True}
    # halves of one hexagon are adjacent in the tile list
    for i in range(0, len(patch.tiles), 2):
        a, b = patch.tiles[i], patch.tiles[i + 1]
        assert (a.ring, a.sector, a.reflected) == (b.ring, b.sector, b.reflected)


def test_hexagon_level_merges_halves():
    patch = assemble_patch(default_params(5), 2)
    hp = hexagon_level(patch)
    assert len(hp.tiles) == len(patch.tiles) // 2
    assert hp.level == "hexagon"
    area_p = sum(t.polygon.area for t in patch.tiles)
    area_h = sum(t.polygon.area for t in hp.tiles)
    assert area_h == pytest.approx(area_p, rel=1e-12)


def test_fit_tile_placement_roundtrip(hex5):
    iso = Isometry.rotation(77.0, center=(0.3, -1.2))
    placed = iso(hex5.outline.vertices)
    from pentile.geom import Polygon

    fit = fit_tile_placement(hex5.outline, Polygon(placed))
    assert np.max(np.abs(fit(hex5.outline.vertices) - placed)) < 1e-9


def test_is_dihedral():
    assert is_dihedral(dihedral_params(6))
    assert not is_dihedral(default_params(6))
    assert not is_dihedral(FeasibleParams(6, 150.0 + 0.5, 90.0))


@pytest.mark.parametrize("kind", HOUSES_KINDS)
def test_houses_patches_are_house_pentagons(kind):
    patch = houses_patch(kind)
    assert patch.houses_kind == kind
    assert patch.is_houses
    assert patch.n == (2 if kind in ("c2", "d2") else 1)
    for t in patch.tiles:
        assert len(t.polygon.vertices) == 5
        assert t.polygon.area == pytest.approx(1.25, abs=1e-12)


def test_houses_rejects_unknown_kind():
    with pytest.raises(Exception):
        houses_patch("c3")
