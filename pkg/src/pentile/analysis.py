"""Certification of assembled patches: overlap/gap verification, symmetry
group detection about the patch center, and spiral-arm extraction.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree
from shapely import STRtree
from shapely.geometry import Polygon as ShapelyPolygon

from .assembly import NotApplicable, Patch, Tile, glue_hexagon, hexagon_level
from .geom import uncovered_intervals

SIGNATURE_DECIMALS = 6


class OutermostRing(ValueError):
    """The spiral walk has no next hexagon beyond the outermost ring."""


@dataclass
class VerificationReport:
    overlap_free: bool
    edge_matched: bool
    ring_census_ok: bool
    closure_ok: bool
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.overlap_free
            and self.edge_matched
            and self.ring_census_ok
            and self.closure_ok
            and not self.details
        )


@dataclass(frozen=True)
class SymmetryResult:
    rotation_order: int
    mirror_axes: tuple

    @property
    def group(self) -> str:
        kind = "D" if len(self.mirror_axes) == self.rotation_order else "C"
        return f"{kind}_{self.rotation_order}"


@dataclass(frozen=True)
class ArmLabeling:
    n: int
    assignment: dict  # hexagon tile id -> arm index in [0, n)


# --- verification ---------------------------------------------------------


def _tile_edges(tiles):
    """Flat arrays of directed edges (start, end) with owning tile ids."""
    starts, ends, owner = [], [], []
    for tid, t in enumerate(tiles):
        v = t.polygon.vertices
        nxt = np.roll(v, -1, axis=0)
        starts.append(v)
        ends.append(nxt)
        owner.extend([tid] * len(v))
    return np.concatenate(starts), np.concatenate(ends), np.array(owner)


def _boundary_segments(tiles, eps):
    """Sub-segments of tile edges not covered by reversed neighbor edges.

    The tiling need not be edge-to-edge, so coverage is interval arithmetic
    along each edge, not endpoint matching.  Returns (segments, details)
    where each segment is (tile_id, start_point, end_point).
    """
    p, q, owner = _tile_edges(tiles)
    d = q - p
    length = np.linalg.norm(d, axis=1)
    u = d / length[:, None]
    mids = 0.5 * (p + q)
    tree = cKDTree(mids)
    # two edges can only overlap if their midpoints are within the sum of
    # their half-lengths; use the global maximum as the query radius
    radius = float(length.max()) + eps
    pairs = tree.query_pairs(radius, output_type="ndarray")

    cover = defaultdict(list)
    for i, k in pairs:
        if owner[i] == owner[k]:
            continue
        for a, b in ((i, k), (k, i)):
            # does edge b (reversed) cover part of edge a?
            if np.dot(u[a], u[b]) > -1.0 + 1e-9:
                continue
            n_a = np.array([-u[a][1], u[a][0]])
            if abs(np.dot(p[b] - p[a], n_a)) > eps or abs(np.dot(q[b] - p[a], n_a)) > eps:
                continue
            t0 = float(np.dot(p[b] - p[a], u[a]))
            t1 = float(np.dot(q[b] - p[a], u[a]))
            lo, hi = max(min(t0, t1), 0.0), min(max(t0, t1), float(length[a]))
            if hi - lo > eps:
                cover[a].append((lo, hi))

    segments = []
    for a in range(len(p)):
        for lo, hi in uncovered_intervals(cover.get(a, []), float(length[a]), eps):
            segments.append((int(owner[a]), p[a] + lo * u[a], p[a] + hi * u[a]))
    return segments


def _chain_cycles(segments, tol):
    """Chain directed boundary segments end-to-start into closed cycles.

    Returns (cycles, dangling) with each cycle a list of segment indices.
    """
    if not segments:
        return [], []
    starts = np.array([s[1] for s in segments])
    tree = cKDTree(starts)
    nxt = [None] * len(segments)
    used_start = set()
    for i, (_, _, end) in enumerate(segments):
        dists, idxs = tree.query(end, k=min(4, len(segments)))
        dists, idxs = np.atleast_1d(dists), np.atleast_1d(idxs)
        for dist, k in zip(dists, idxs):
            if dist <= tol and k not in used_start:
                nxt[i] = int(k)
                used_start.add(int(k))
                break
    cycles, dangling = [], []
    seen = set()
    for i in range(len(segments)):
        if i in seen:
            continue
        path = [i]
        seen.add(i)
        k = nxt[i]
        closed = False
        while k is not None and k not in seen:
            path.append(k)
            seen.add(k)
            k = nxt[k]
        if k == path[0]:
            closed = True
        if closed:
            cycles.append(path)
        else:
            dangling.append(path)
    return cycles, dangling


def _cycle_area(segments, cycle) -> float:
    pts = np.array([segments[i][1] for i in cycle])
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _single_disk(tiles, eps):
    """One closed outer boundary whose enclosed area equals the tile areas."""
    segments = _boundary_segments(tiles, eps)
    cycles, dangling = _chain_cycles(segments, 3 * eps)
    issues = []
    if dangling:
        issues.append(
            {"kind": "open_boundary", "tiles": sorted({segments[i][0] for p in dangling for i in p})}
        )
    if len(cycles) != 1:
        issues.append({"kind": "boundary_cycles", "count": len(cycles)})
    if len(cycles) == 1 and not dangling:
        enclosed = _cycle_area(segments, cycles[0])
        total = sum(t.polygon.area for t in tiles)
        gap = abs(enclosed - total)
        if gap > max(eps, 1e-9 * total):
            issues.append({"kind": "area_mismatch", "magnitude": gap})
    return issues


def verify(patch: Patch, eps: float = 1e-7) -> VerificationReport:
    """Certify the patch: overlap-free, edges matched, ring census, and
    disk closure of every ring prefix.  Failures become report entries."""
    tiles = patch.tiles
    details = []

    shrunk = [t.polygon.to_shapely().buffer(-eps, join_style=2) for t in tiles]
    tree = STRtree(shrunk)
    i_idx, k_idx = tree.query(shrunk, predicate="intersects")
    overlaps = [(int(i), int(k)) for i, k in zip(i_idx, k_idx) if i < k]
    for i, k in overlaps:
        details.append(
            {
                "kind": "overlap",
                "tiles": (i, k),
                "magnitude": shrunk[i].intersection(shrunk[k]).area,
            }
        )
    overlap_free = not overlaps

    boundary_issues = _single_disk(tiles, eps)
    edge_matched = not boundary_issues
    details.extend(boundary_issues)

    ring_census_ok = True
    if not patch.is_houses:
        per_tile = 4 if patch.level == "pentagon" else 2
        census = Counter(t.ring for t in tiles)
        for m in range(1, patch.rings + 1):
            expect = per_tile * patch.n * m
            if census.get(m, 0) != expect:
                ring_census_ok = False
                details.append(
                    {"kind": "ring_census", "ring": m, "count": census.get(m, 0), "expected": expect}
                )

    closure_ok = True
    for m in range(1, patch.rings):  # full prefix is the edge_matched pass
        prefix = [t for t in tiles if t.ring <= m]
        issues = _single_disk(prefix, eps)
        if issues:
            closure_ok = False
            details.append({"kind": "closure", "ring": m, "issues": issues})
    if not edge_matched:
        closure_ok = False

    return VerificationReport(
        overlap_free=overlap_free,
        edge_matched=edge_matched,
        ring_census_ok=ring_census_ok,
        closure_ok=closure_ok,
        details=details,
    )


# --- symmetry detection ---------------------------------------------------


def _signature_counter(tiles, iso=None):
    keys = []
    for t in tiles:
        v = t.polygon.vertices if iso is None else iso(t.polygon.vertices)
        keys.append(tuple(sorted(map(tuple, np.round(v, SIGNATURE_DECIMALS)))))
    return Counter(keys)


def _preserves(tiles, base_counter, iso) -> bool:
    return _signature_counter(tiles, iso) == base_counter


def symmetry_detect(patch: Patch, eps: float = 1e-7) -> SymmetryResult:
    """Detect the rotation order and mirror axes about the patch center.

    Only symmetries through the origin are searched; the construction
    centers every symmetry there.
    """
    from .geom import Isometry

    tiles = patch.tiles
    base = _signature_counter(tiles)

    centroids = np.array([t.polygon.centroid for t in tiles])
    radii = np.linalg.norm(centroids, axis=1)
    angles = np.degrees(np.arctan2(centroids[:, 1], centroids[:, 0]))

    # rotation candidates from the innermost centroid shell
    rounded = np.round(radii, SIGNATURE_DECIMALS)
    shells = sorted(r for r in set(rounded) if r > 10.0 ** -SIGNATURE_DECIMALS)
    rotation_order = 1
    max_order = 2 * max(1, patch.hexagon_count())
    if shells:
        shell = np.where(rounded == shells[0])[0]
        phis = np.sort(angles[shell])
        cands = set()
        for phi in phis[1:]:
            alpha = (phi - phis[0]) % 360.0
            if alpha < 1e-9:
                continue
            k = 360.0 / alpha
            if abs(k - round(k)) < 1e-6 and 2 <= round(k) <= max_order:
                cands.add(int(round(k)))
        for k in sorted(cands, reverse=True):
            if _preserves(tiles, base, Isometry.rotation(360.0 / k)):
                rotation_order = k
                break

    # mirror candidates: axes bisecting a reference vertex and each vertex
    # on the same radius shell
    verts = np.concatenate([t.polygon.vertices for t in tiles])
    vr = np.linalg.norm(verts, axis=1)
    keep = vr > 10.0 ** -SIGNATURE_DECIMALS
    verts, vr = verts[keep], vr[keep]
    vphi = np.degrees(np.arctan2(verts[:, 1], verts[:, 0]))
    vshell = np.round(vr, SIGNATURE_DECIMALS)
    ref_shell = np.min(vshell)
    mask = vshell == ref_shell
    phi0 = vphi[mask][0]
    axes = []
    cands = sorted({round(((phi0 + phi) / 2.0) % 180.0, 9) % 180.0 for phi in vphi[mask]})
    for theta in cands:
        if any(min(abs(theta - a), 180.0 - abs(theta - a)) < 1e-6 for a in axes):
            continue
        if _preserves(tiles, base, Isometry.reflection(theta)):
            axes.append(theta)
    return SymmetryResult(rotation_order=rotation_order, mirror_axes=tuple(sorted(axes)))


# --- spiral arms ----------------------------------------------------------


def _as_hexagon_patch(patch: Patch) -> Patch:
    if patch.is_houses:
        raise NotApplicable("houses patches have no spiral structure")
    return patch if patch.level == "hexagon" else hexagon_level(patch)


def _dividers(patch: Patch) -> np.ndarray:
    """Absolute divider endpoints for every hexagon tile, (N, 2, 2)."""
    from .assembly import fit_tile_placement

    h = glue_hexagon(patch.pentagon)
    out = []
    for t in patch.tiles:
        iso = t.placement
        if iso is None:
            iso = fit_tile_placement(h.outline, t.polygon)
        out.append(iso(h.divider))
    return np.array(out)


def _wrap180(a):
    return (np.asarray(a) + 180.0) % 360.0 - 180.0


def _point_on_boundary(poly, point, tol) -> bool:
    v = poly.vertices
    w = np.roll(v, -1, axis=0)
    d = w - v
    ll = np.einsum("ij,ij->i", d, d)
    t = np.clip(np.einsum("ij,ij->i", point - v, d) / ll, 0.0, 1.0)
    proj = v + t[:, None] * d
    return bool(np.min(np.linalg.norm(proj - point, axis=1)) <= tol)


def spiral_next(patch: Patch, hex_id: int, tol: float = 1e-7) -> int:
    """Next hexagon of the spiral walk.

    Take the hexagon's divider, pick its "right" endpoint as seen from the
    origin (the endpoint most clockwise of the outward ray through the
    centroid), and step to the neighboring hexagon across the side containing
    that endpoint.  Iterating from an innermost hexagon spirals outward,
    visiting each ring m a bounded number of times before moving on to ring
    m+1, and terminates at the patch border.
    """
    hp = _as_hexagon_patch(patch)
    return _spiral_next(hp, _dividers(hp), hex_id, tol)


def _spiral_next(
    hp: Patch,
    dividers: np.ndarray,
    hex_id: int,
    tol: float,
    tree: "cKDTree | None" = None,
) -> int:
    tiles = hp.tiles
    t = tiles[hex_id]
    c = t.polygon.centroid
    phi = math.degrees(math.atan2(c[1], c[0]))
    ends = dividers[hex_id]
    deltas = [
        _wrap180(math.degrees(math.atan2(p[1], p[0])) - phi) for p in ends
    ]
    right = ends[int(np.argmin(deltas))]

    # only tiles whose centroid is within a hexagon diameter can touch p
    if tree is None:
        tree = cKDTree(np.array([x.polygon.centroid for x in tiles]))
    near = tree.query_ball_point(right, r=2.0)
    cands = [
        i
        for i in near
        if i != hex_id and _point_on_boundary(tiles[i].polygon, right, tol)
    ]
    if not cands:
        raise OutermostRing("the divider's right endpoint lies on the patch border")
    if len(cands) == 1:
        return cands[0]
    pr = math.degrees(math.atan2(right[1], right[0]))
    # clockwise-most centroid relative to the endpoint direction
    def key(i):
        ci = tiles[i].polygon.centroid
        return _wrap180(math.degrees(math.atan2(ci[1], ci[0])) - pr)

    return min(cands, key=key)


def _hex_adjacency(tiles):
    """Edge-sharing adjacency via rounded edge keys (edge-to-edge level)."""
    owners = defaultdict(list)
    for i, t in enumerate(tiles):
        v = np.round(t.polygon.vertices, SIGNATURE_DECIMALS)
        w = np.roll(v, -1, axis=0)
        for a, b in zip(map(tuple, v), map(tuple, w)):
            owners[tuple(sorted((a, b)))].append(i)
    adj = defaultdict(set)
    for ids in owners.values():
        for i in ids:
            for k in ids:
                if i != k:
                    adj[i].add(k)
    return adj


def spiral_arms(patch: Patch) -> ArmLabeling:
    """Partition the hexagons into the n congruent spiral arms.

    Each arm is the trace of the spiral walk seeded at one of the n innermost
    hexagons of the non-reflected chirality: the walk visits that one ring-1
    hexagon, then 2m hexagons in every ring m >= 2, ending at the patch
    border.  The n reflected ring-1 hexagons are the only ones the walks skip;
    each joins the arm of its own spiral successor (a rotation-equivariant
    choice, so the partition stays congruent under rotation by 360/n).
    """
    hp = _as_hexagon_patch(patch)
    n = hp.n
    if n < 2:
        raise NotApplicable("spiral arms need n >= 2")
    tiles = hp.tiles
    dividers = _dividers(hp)

    centroids = np.array([t.polygon.centroid for t in tiles])
    cangle = np.degrees(np.arctan2(centroids[:, 1], centroids[:, 0])) % 360.0
    tree = cKDTree(centroids)

    seeds = [i for i, t in enumerate(tiles) if t.ring == 1 and not t.reflected]
    seeds.sort(key=lambda i: cangle[i])
    assignment = {}
    for arm, seed in enumerate(seeds):
        i = seed
        assignment[i] = arm
        while True:
            try:
                i = _spiral_next(hp, dividers, i, 1e-7, tree)
            except OutermostRing:
                break
            if i in assignment:
                raise NotApplicable("spiral walks collided; patch is not a clean spiral")
            assignment[i] = arm

    for i, t in enumerate(tiles):
        if i in assignment:
            continue
        assignment[i] = assignment[_spiral_next(hp, dividers, i, 1e-7, tree)]
    return ArmLabeling(n=n, assignment=assignment)


def label_arms(patch: Patch, labeling: ArmLabeling) -> Patch:
    """Copy of the patch with per-tile arm indices filled in."""
    from dataclasses import replace

    tiles = []
    for i, t in enumerate(patch.tiles):
        hex_id = i if patch.level == "hexagon" else i // 2
        tiles.append(replace(t, arm=labeling.assignment.get(hex_id)))
    out = Patch(**{**patch.__dict__, "tiles": tiles})
    return out
