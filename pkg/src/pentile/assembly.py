"""Tiling assembly: pentagon pairs glue into centrally symmetric equilateral
hexagons, hexagons stack into triangular sectors of growing rows, a sector
plus its mated mirror image form a wedge, and n rotated wedges close up into
a finite patch with n-fold symmetry.

The n = 1, 2 symmetry types use the classic houses tiling instead, since the
hexagon construction degenerates there.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .geom import Isometry, Polygon, compose
from .pentagon import FeasibleParams, PentagonSpec, derive_pentagon, realize

MATING_TOL = 1e-7
DIHEDRAL_TOL = 1e-9

HOUSES_KINDS = ("c1", "c2", "d1", "d2")


class DegenerateHexagon(ValueError):
    pass


class MatingMismatch(RuntimeError):
    """Sector borders failed to coincide; indicates a construction bug."""


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class HexagonSpec:
    """Canonical glued hexagon: outline (A, B, C, A', B', C'), the dividing
    segment e, and the two pentagon halves."""

    outline: Polygon
    divider: np.ndarray  # (2, 2) endpoints of the shared side e
    halves: tuple

    @property
    def sides(self) -> np.ndarray:
        v = self.outline.vertices
        return np.roll(v, -1, axis=0) - v

    @property
    def row_step(self) -> np.ndarray:
        """Within-sector lattice vector u = s1 + s2."""
        s = self.sides
        return s[0] + s[1]

    @property
    def ring_step(self) -> np.ndarray:
        """Lattice vector v = s2 + s3 between consecutive sector rows."""
        s = self.sides
        return s[1] + s[2]

    def offset(self, ring: int, j: int) -> np.ndarray:
        return -(ring - 1) * self.ring_step + j * self.row_step

    @property
    def tip(self) -> np.ndarray:
        """Sector tip: corner B' of the row-1 hexagon (interior angle B)."""
        return self.outline.vertices[4]

    def mating_border(self, rings: int) -> np.ndarray:
        """Zig-zag border with angles A / 360 - A, from the tip outward.

        Runs along the j = m - 1 column; 2 * rings unit segments.
        """
        v = self.outline.vertices
        pts = []
        for m in range(1, rings + 1):
            off = self.offset(m, m - 1)
            pts.append(off + v[4])
            pts.append(off + v[3])
        pts.append(self.offset(rings, rings - 1) + v[2])
        return np.array(pts)


@dataclass(frozen=True)
class Tile:
    """A placed polygon with provenance indices."""

    polygon: Polygon
    level: str  # "pentagon" | "hexagon"
    ring: int
    sector: int
    reflected: bool
    arm: int | None = None
    half: int | None = None  # pentagon tiles: 0 original, 1 rotated copy
    placement: Isometry | None = field(default=None, compare=False)


@dataclass
class Patch:
    n: int
    symmetry_declared: str  # "C" | "D"
    rings: int
    pentagon: PentagonSpec | None
    tiles: list
    center: np.ndarray = field(default_factory=lambda: np.zeros(2))
    level: str = "pentagon"
    houses_kind: str | None = None

    @property
    def is_houses(self) -> bool:
        return self.houses_kind is not None

    def hexagon_count(self) -> int:
        if self.level == "hexagon":
            return len(self.tiles)
        return len(self.tiles) // 2


def glue_hexagon(p: PentagonSpec) -> HexagonSpec:
    """Glue the pentagon and a 180-degree rotated copy along side e.

    The D and E corners of the two copies merge into straight boundary
    points and drop out of the outline, leaving an equilateral, centrally
    symmetric hexagon with angles (A, B, C, A, B, C).
    """
    penta = realize(p)
    va, vb, vc, vd, ve = penta.vertices
    flip = Isometry.rotation(180.0, center=0.5 * (vd + ve))
    outline = Polygon(np.array([va, vb, vc, flip(va), flip(vb), flip(vc)]))
    if np.any(outline.interior_angles() >= 180.0 - 1e-9):
        raise DegenerateHexagon(
            f"gluing yields a non-convex or degenerate hexagon for angles {p.angles}"
        )
    return HexagonSpec(
        outline=outline,
        divider=np.array([vd, ve]),
        halves=(penta, Polygon(flip(penta.vertices))),
    )


def _hex_tiles(h: HexagonSpec, rings: int, move: Isometry | None, sector: int,
               reflected: bool) -> list:
    tiles = []
    for m in range(1, rings + 1):
        for j in range(m):
            place = Isometry.translation_by(h.offset(m, j))
            if move is not None:
                place = compose(move, place)
            tiles.append(
                Tile(
                    polygon=Polygon(place(h.outline.vertices)),
                    level="hexagon",
                    ring=m,
                    sector=sector,
                    reflected=reflected,
                    placement=place,
                )
            )
    return tiles


def build_sector(h: HexagonSpec, rings: int) -> list:
    """Triangular sector: rows m = 1..rings with m hexagons each.

    Hexagons translate by u = s1 + s2 within a row and by -v = -(s2 + s3)
    between rows; the row-1 hexagon sits in canonical pose.
    """
    if rings < 1:
        raise ValueError(f"rings must be >= 1, got {rings}")
    return _hex_tiles(h, rings, None, 0, False)


def _fit_rigid(src: np.ndarray, dst: np.ndarray) -> Isometry:
    """Least-squares rotation + translation mapping src points onto dst."""
    cs, cd = src.mean(axis=0), dst.mean(axis=0)
    m = (src - cs).T @ (dst - cd)
    u, _, vt = np.linalg.svd(m)
    r = vt.T @ u.T
    if np.linalg.det(r) < 0:
        vt[-1] *= -1
        r = vt.T @ u.T
    return Isometry(r, cd - r @ cs)


def wedge_transforms(h: HexagonSpec, rings: int):
    """Placements (base, reflected) for a wedge with the reflected tip at
    the origin.

    The mirrored sector mates border-to-border with the base sector, offset
    by one zig-zag segment: the mirrored tip slides one unit inward, which
    is what leaves the angle B at the shared innermost point.
    """
    border = h.mating_border(rings)
    mirror = Isometry.reflection(0.0)
    g = _fit_rigid(mirror(border)[1:], border[:-1])
    place_refl = compose(g, mirror)
    mapped = place_refl(border)
    resid = float(np.max(np.linalg.norm(mapped[1:] - border[:-1], axis=1)))
    if resid > MATING_TOL:
        raise MatingMismatch(f"border mating residual {resid:.3g} > {MATING_TOL}")
    shift = Isometry.translation_by(-mapped[0])
    return shift, compose(shift, place_refl)


def build_wedge(h: HexagonSpec, rings: int) -> list:
    """Base sector (sector 0) plus its mated mirror copy (sector 1)."""
    if rings < 1:
        raise ValueError(f"rings must be >= 1, got {rings}")
    base_move, refl_move = wedge_transforms(h, rings)
    return _hex_tiles(h, rings, base_move, 0, False) + _hex_tiles(
        h, rings, refl_move, 1, True
    )


def is_dihedral(params: FeasibleParams, tol: float = DIHEDRAL_TOL) -> bool:
    return abs(params.C - (180.0 - params.B / 2.0)) <= tol and abs(params.D - 90.0) <= tol


def assemble_patch(params: FeasibleParams, rings: int) -> Patch:
    """n rotated wedge copies around the origin; pentagon-level tiles.

    Ring m ends up with exactly 2nm hexagons (4nm pentagons).  Tiles are
    ordered by (ring, sector, position-in-row, half); the two halves of each
    hexagon are adjacent, at indices (2i, 2i + 1).
    """
    n = params.n
    p = derive_pentagon(params)
    h = glue_hexagon(p)
    base_move, refl_move = wedge_transforms(h, rings)
    placements = []  # (ring, sector, j, iso, reflected)
    for k in range(n):
        rot = Isometry.rotation(360.0 * k / n)
        for s, (move, refl) in enumerate(((base_move, False), (refl_move, True))):
            sector = 2 * k + s
            for m in range(1, rings + 1):
                for j in range(m):
                    iso = compose(rot, compose(move, Isometry.translation_by(h.offset(m, j))))
                    placements.append((m, sector, j, iso, refl))
    placements.sort(key=lambda t: (t[0], t[1], t[2]))
    tiles = []
    for m, sector, j, iso, refl in placements:
        for half, penta in enumerate(h.halves):
            tiles.append(
                Tile(
                    polygon=Polygon(iso(penta.vertices)),
                    level="pentagon",
                    ring=m,
                    sector=sector,
                    reflected=refl,
                    half=half,
                    placement=iso,
                )
            )
    return Patch(
        n=n,
        symmetry_declared="D" if is_dihedral(params) else "C",
        rings=rings,
        pentagon=p,
        tiles=tiles,
    )


def hexagon_level(patch: Patch) -> Patch:
    """Merge pentagon halves back into hexagon tiles (2:1)."""
    if patch.is_houses:
        raise NotApplicable("houses patches have no hexagon level")
    if patch.level == "hexagon":
        return patch
    h = glue_hexagon(patch.pentagon)
    tiles = []
    for i in range(0, len(patch.tiles), 2):
        t0, t1 = patch.tiles[i], patch.tiles[i + 1]
        assert (t0.ring, t0.sector) == (t1.ring, t1.sector)
        iso = t0.placement
        if iso is None:
            iso = fit_tile_placement(h.halves[0], t0.polygon)
        tiles.append(
            Tile(
                polygon=Polygon(iso(h.outline.vertices)),
                level="hexagon",
                ring=t0.ring,
                sector=t0.sector,
                reflected=t0.reflected,
                arm=t0.arm,
                placement=iso,
            )
        )
    return Patch(
        n=patch.n,
        symmetry_declared=patch.symmetry_declared,
        rings=patch.rings,
        pentagon=patch.pentagon,
        tiles=tiles,
        center=patch.center,
        level="hexagon",
        houses_kind=None,
    )


def fit_tile_placement(canonical: Polygon, placed: Polygon, tol: float = MATING_TOL) -> Isometry:
    """Recover the isometry taking a canonical polygon onto a placed tile.

    Tile vertices preserve construction order up to the reversal that CCW
    re-normalization applies to reflected placements; cyclic shifts are
    tried as a fallback for symmetric outlines.
    """
    src = canonical.vertices
    dst = placed.vertices
    if len(src) != len(dst):
        raise ValueError("vertex count mismatch")
    candidates = [dst] + [np.roll(dst, -k, axis=0) for k in range(1, len(dst))]
    for cand in candidates:
        for pts in (cand, cand[::-1]):
            iso = _fit_general(src, pts)
            if np.max(np.linalg.norm(iso(src) - pts, axis=1)) <= tol:
                return iso
    raise MatingMismatch("tile is not congruent to the canonical polygon")


def _fit_general(src: np.ndarray, dst: np.ndarray) -> Isometry:
    """Least-squares orthogonal transform + translation (reflection allowed)."""
    cs, cd = src.mean(axis=0), dst.mean(axis=0)
    m = (src - cs).T @ (dst - cd)
    u, _, vt = np.linalg.svd(m)
    r = vt.T @ u.T
    return Isometry(r, cd - r @ cs)


# --- houses tilings for the n = 1, 2 symmetry types -----------------------

_HOUSE_RIGHT = np.array([(0.0, 0.0), (1.0, 0.0), (1.5, 0.5), (1.0, 1.0), (0.0, 1.0)])


def _house_right(k: int) -> np.ndarray:
    return _HOUSE_RIGHT + (0.0, float(k))


def _house_left(k: int) -> np.ndarray:
    mirror = Isometry.reflection(90.0, through=(1.25, 0.0))
    return mirror(_HOUSE_RIGHT)[::-1] + (0.0, float(k) + 0.5)


def houses_patch(kind: str, extent: int = 2) -> Patch:
    """Finite houses-tiling patch whose symmetry group about its marked
    center is exactly the requested kind.

    Houses are unit squares with an isosceles right-triangle roof; they sit
    in two (for d2, four) vertical strips of alternating orientation.  The
    kind is realized purely by the choice of strip phase, extent and center.
    """
    kind = kind.lower()
    if kind not in HOUSES_KINDS:
        raise ValueError(f"kind must be one of {HOUSES_KINDS}, got {kind!r}")
    if extent < 1:
        raise ValueError(f"extent must be >= 1, got {extent}")
    e = extent
    if kind == "c2":
        polys = [_house_right(k) for k in range(-e, e)]
        polys += [_house_left(k) for k in range(-e + 1, e + 1)]
        center = np.array([1.25, 0.75])
    else:
        polys = [_house_right(k) for k in range(-e, e + 1)]
        polys += [_house_left(k) for k in range(-e, e)]
        center = np.array([1.25, 0.5])
        if kind == "c1":
            polys.append(_house_right(e + 1))
        elif kind == "d2":
            mirror = Isometry.reflection(90.0, through=(2.5, 0.0))
            polys += [mirror(q)[::-1] for q in polys]
            center = np.array([2.5, 0.5])
    n = 2 if kind in ("c2", "d2") else 1
    tiles = [
        Tile(polygon=Polygon(q - center), level="pentagon", ring=1, sector=0,
             reflected=False)
        for q in polys
    ]
    return Patch(
        n=n,
        symmetry_declared=kind[0].upper(),
        rings=1,
        pentagon=None,
        tiles=tiles,
        level="pentagon",
        houses_kind=kind,
    )
