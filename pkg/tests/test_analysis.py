from dataclasses import replace

import numpy as np
import pytest

from pentile.analysis import (
    NotApplicable,
    OutermostRing,
    label_arms,
    spiral_arms,
    spiral_next,
    symmetry_detect,
    verify,
)
from pentile.assembly import (
    assemble_patch,
    hexagon_level,
    houses_patch,
)
from pentile.geom import Isometry, Polygon, apply
from pentile.pentagon import FeasibleParams, default_params, dihedral_params


@pytest.fixture(scope="module")
def patch5():
    return assemble_patch(default_params(5), 3)


def _translate_tile(patch, idx, delta):
    tiles = list(patch.tiles)
    moved = Polygon(tiles[idx].polygon.vertices + delta)
    tiles[idx] = replace(tiles[idx], polygon=moved, placement=None)
    return replace_patch(patch, tiles)


def replace_patch(patch, tiles):
    from pentile.assembly import Patch

    return Patch(
        n=patch.n,
        symmetry_declared=patch.symmetry_declared,
        rings=patch.rings,
        pentagon=patch.pentagon,
        tiles=tiles,
        center=patch.center,
        level=patch.level,
        houses_kind=patch.houses_kind,
    )


def test_valid_patch_report(patch5):
    report = verify(patch5)
    assert report.passed
    assert report.overlap_free and report.edge_matched
    assert report.ring_census_ok and report.closure_ok
    assert report.details == []


def test_verify_is_isometry_invariant(patch5):
    rot = Isometry.rotation(31.0)
    tiles = [replace(t, polygon=apply(rot, t.polygon), placement=None) for t in patch5.tiles]
    moved = replace_patch(patch5, tiles)
    moved.center = rot(patch5.center)
    assert verify(moved).passed


def test_translated_tile_defect_detected(patch5):
    bad = _translate_tile(patch5, 7, np.array([1e-6, 0.0]))
    report = verify(bad)
    assert not report.passed
    assert not (report.overlap_free and report.edge_matched)
    assert report.details


def test_hexagon_level_also_verifies(patch5):
    assert verify(hexagon_level(patch5)).passed


def test_symmetry_default_vs_dihedral():
    assert symmetry_detect(assemble_patch(default_params(5), 2)).group == "C_5"
    assert symmetry_detect(assemble_patch(dihedral_params(7), 2)).group == "D_7"


def test_symmetry_perturbed_dihedral_downgrades():
    base = dihedral_params(4)
    perturbed = FeasibleParams(4, base.C + 0.5, base.D)
    assert symmetry_detect(assemble_patch(perturbed, 2)).group == "C_4"


@pytest.mark.parametrize(
    "kind,group", [("c1", "C_1"), ("c2", "C_2"), ("d1", "D_1"), ("d2", "D_2")]
)
def test_houses_symmetry(kind, group):
    patch = houses_patch(kind)
    assert verify(patch).passed
    assert symmetry_detect(patch).group == group


def test_spiral_walk_monotone(patch5):
    hp = hexagon_level(patch5)
    start = next(
        i for i, t in enumerate(hp.tiles) if t.ring == 1 and not t.reflected
    )
    seq = [start]
    while True:
        try:
            seq.append(spiral_next(hp, seq[-1]))
        except OutermostRing:
            break
    rings = [hp.tiles[i].ring for i in seq]
    # one ring-1 hexagon, then 2m hexagons in every ring m
    assert rings == [1] + [m for m in range(2, 4) for _ in range(2 * m)]
    assert len(set(seq)) == len(seq)


def test_spiral_next_neighbors_touch(patch5):
    hp = hexagon_level(patch5)
    i = next(i for i, t in enumerate(hp.tiles) if t.ring == 1 and not t.reflected)
    j = spiral_next(hp, i)
    # successive hexagons share boundary (up to floating-point placement error)
    from shapely.geometry import Polygon as SP

    gap = SP(hp.tiles[i].polygon.vertices).distance(SP(hp.tiles[j].polygon.vertices))
    assert gap < 1e-9


def test_spiral_arms_partition(patch5):
    labeling = spiral_arms(patch5)
    assert labeling.n == 5
    counts = {}
    hp = hexagon_level(patch5)
    for i, arm in labeling.assignment.items():
        counts.setdefault(arm, []).append(hp.tiles[i].ring)
    assert set(counts) == set(range(5))
    for rings in counts.values():
        assert sorted(rings) == [1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3]


def test_spiral_arm_congruence(patch5):
    hp = hexagon_level(patch5)
    labeling = spiral_arms(hp)
    rot = Isometry.rotation(360.0 / 5)
    arm = {k: np.concatenate([hp.tiles[i].polygon.vertices
                              for i in labeling.assignment
                              if labeling.assignment[i] == k])
           for k in (0, 1)}
    from scipy.spatial import cKDTree

    d, _ = cKDTree(arm[1]).query(rot(arm[0]))
    assert d.max() < 1e-7


def test_spiral_not_applicable_for_houses():
    with pytest.raises(NotApplicable):
        spiral_arms(houses_patch("c2"))


def test_label_arms_pentagon_level(patch5):
    labeled = label_arms(patch5, spiral_arms(patch5))
    assert all(t.arm is not None for t in labeled.tiles)
    # the two halves of one hexagon share an arm
    for i in range(0, len(labeled.tiles), 2):
        assert labeled.tiles[i].arm == labeled.tiles[i + 1].arm
