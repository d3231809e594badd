"""Derivation and validation of the pentagon family that generates the
rotationally symmetric tilings.

A pentagon in this family has interior angles A..E (counter-clockwise) and
sides a..e, with side a ending at corner A.  The defining constraints are
|b| = |c| = |a| + |d|, D + E = 180 degrees, all angles convex, and B an
integer divisor of 360 degrees.  In canonical scale b = c = 1.

Three parameters are free: n (fixing B = 360/n), C and D.  The remaining
angles follow from the angle sum, and the side lengths (a, e) come from a
2x2 linear solve of the polygon closure condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import Isometry, Polygon, unit


class PentagonError(ValueError):
    """Base class for infeasible pentagon parameters."""


class InfeasibleAngles(PentagonError):
    pass


class InfeasibleLengths(PentagonError):
    pass


class SingularClosure(PentagonError):
    pass


@dataclass(frozen=True)
class FeasibleParams:
    """Free parameters: n fixes B = 360/n; C and D are chosen angles (deg)."""

    n: int
    C: float
    D: float

    @property
    def B(self) -> float:
        return 360.0 / self.n


@dataclass(frozen=True)
class PentagonSpec:
    """Interior angles (degrees) and side lengths (canonical units, b = 1)."""

    A: float
    B: float
    C: float
    D: float
    E: float
    a: float
    b: float
    c: float
    d: float
    e: float

    @property
    def angles(self):
        return (self.A, self.B, self.C, self.D, self.E)

    @property
    def sides(self):
        return (self.a, self.b, self.c, self.d, self.e)


def default_params(n: int) -> FeasibleParams:
    """Generic parameter choice, feasible for every n >= 3.

    A and C are placed symmetrically around (360 - B)/2 with a B/4 offset,
    which keeps all angles strictly convex; D follows as 270 - B/2 - C.
    """
    if n < 3:
        raise InfeasibleAngles(f"n must be >= 3, got {n}")
    B = 360.0 / n
    C = (360.0 - B) / 2.0 + B / 4.0
    D = 270.0 - B / 2.0 - C
    return FeasibleParams(n=n, C=C, D=D)


def dihedral_params(n: int) -> FeasibleParams:
    """Parameter choice C = 180 - B/2, D = 90 that upgrades C_n to D_n."""
    if n < 3:
        raise InfeasibleAngles(f"n must be >= 3, got {n}")
    B = 360.0 / n
    return FeasibleParams(n=n, C=180.0 - B / 2.0, D=90.0)


def edge_directions(A: float, B: float, C: float, D: float, E: float) -> np.ndarray:
    """Directions (degrees) of the directed sides a..e in canonical pose.

    Canonical pose: corner B at the origin, side b arriving along +x.
    Walking the boundary counter-clockwise turns left by 180 - interior
    at each corner.
    """
    theta_b = 0.0
    theta_a = theta_b - (180.0 - A)
    theta_c = theta_b + (180.0 - B)
    theta_d = theta_c + (180.0 - C)
    theta_e = theta_d + (180.0 - D)
    return np.array([theta_a, theta_b, theta_c, theta_d, theta_e])


def derive_pentagon(params: FeasibleParams) -> PentagonSpec:
    """Derive the full pentagon from (n, C, D).

    Angles: B = 360/n, A = 360 - B - C, E = 180 - D.  Sides: b = c = 1 and
    a + d = 1; the two scalar closure equations (directed sides sum to
    zero) then determine a and e linearly.
    """
    if params.n < 3:
        raise InfeasibleAngles(f"n must be >= 3, got {params.n}")
    B = 360.0 / params.n
    C = float(params.C)
    D = float(params.D)
    A = 360.0 - B - C
    E = 180.0 - D
    for name, value in (("A", A), ("B", B), ("C", C), ("D", D), ("E", E)):
        if not 0.0 < value < 180.0:
            raise InfeasibleAngles(f"angle {name} = {value:.6g} outside (0, 180)")

    theta = edge_directions(A, B, C, D, E)
    ua, ub, uc, ud, ue = (unit(t) for t in theta)
    # closure with d = 1 - a:  a*(ua - ud) + e*ue = -(ub + uc + ud)
    mat = np.column_stack([ua - ud, ue])
    rhs = -(ub + uc + ud)
    det = float(np.linalg.det(mat))
    if abs(det) < 1e-12:
        raise SingularClosure(f"closure system singular (det = {det:.3g})")
    a, e = np.linalg.solve(mat, rhs)
    a, e = float(a), float(e)
    if not 0.0 < a < 1.0:
        raise InfeasibleLengths(f"side a = {a:.6g} outside (0, 1)")
    if e <= 0.0:
        raise InfeasibleLengths(f"side e = {e:.6g} not positive")
    return PentagonSpec(A=A, B=B, C=C, D=D, E=E, a=a, b=1.0, c=1.0, d=1.0 - a, e=e)


def closure_residual(p: PentagonSpec) -> float:
    """Norm of the vector sum of the five directed sides."""
    theta = edge_directions(*p.angles)
    vecs = np.array([s * unit(t) for s, t in zip(p.sides, theta)])
    return float(np.linalg.norm(vecs.sum(axis=0)))


def validate_property1(p: PentagonSpec, eps: float = 1e-9):
    """Check every defining invariant; returns one descriptor per violation."""
    violations = []
    angles = p.angles
    if abs(sum(angles) - 540.0) > eps:
        violations.append(f"angle sum {sum(angles):.12g} != 540")
    for name, value in zip("ABCDE", angles):
        if not eps < value < 180.0 - eps:
            violations.append(f"angle {name} = {value:.6g} outside (0, 180)")
    if abs(p.b - p.c) > eps:
        violations.append(f"|b| != |c| ({p.b:.12g} vs {p.c:.12g})")
    if abs(p.b - (p.a + p.d)) > eps:
        violations.append(f"|b| != |a| + |d| ({p.b:.12g} vs {p.a + p.d:.12g})")
    if abs(p.D + p.E - 180.0) > eps:
        violations.append(f"D + E = {p.D + p.E:.12g} != 180")
    ratio = 360.0 / p.B if p.B > 0 else math.inf
    if abs(ratio - round(ratio)) > eps:
        violations.append(f"B = {p.B:.12g} does not divide 360")
    if any(s <= 0 for s in p.sides):
        violations.append(f"non-positive side length in {p.sides}")
    res = closure_residual(p)
    if res > eps:
        violations.append(f"closure residual {res:.3g} > {eps:.3g}")
    theta = edge_directions(*angles)
    ua, ud = unit(theta[0]), unit(theta[3])
    cross = abs(float(ua[0] * ud[1] - ua[1] * ud[0]))
    if cross > eps:
        violations.append(f"sides a and d not parallel (cross = {cross:.3g})")
    return violations


def realize(p: PentagonSpec, placement: Isometry | None = None) -> Polygon:
    """Coordinates of the pentagon.

    Canonical pose before placement: corner B at the origin, side b arriving
    along the positive x direction; vertices ordered (A, B, C, D, E).
    """
    theta = edge_directions(*p.angles)
    ua, ub, uc, ud, ue = (unit(t) for t in theta)
    v_b = np.zeros(2)
    v_a = v_b - p.b * ub
    v_c = v_b + p.c * uc
    v_d = v_c + p.d * ud
    v_e = v_d + p.e * ue
    verts = np.array([v_a, v_b, v_c, v_d, v_e])
    if placement is not None:
        verts = placement(verts)
    return Polygon(verts)
