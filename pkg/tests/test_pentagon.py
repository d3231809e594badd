import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pentile.geom import unit
from pentile.pentagon import (
    FeasibleParams,
    InfeasibleAngles,
    InfeasibleLengths,
    closure_residual,
    default_params,
    derive_pentagon,
    dihedral_params,
    edge_directions,
    realize,
    validate_property1,
)

from oracles import grid_scan_sides, random_feasible_params


def test_reference_pentagon_n5():
    """The n=5, C=156, D=78 pentagon has integer-degree angles."""
    p = derive_pentagon(FeasibleParams(5, 156.0, 78.0))
    assert p.angles == (132.0, 72.0, 156.0, 78.0, 102.0)
    assert closure_residual(p) <= 1e-9
    assert validate_property1(p) == []


def test_dihedral_n4_is_half_square():
    p = derive_pentagon(dihedral_params(4))
    assert p.angles == (135.0, 90.0, 135.0, 90.0, 90.0)
    assert p.a == pytest.approx(0.5, abs=1e-12)
    assert p.e == pytest.approx(np.sqrt(2.0), abs=1e-12)


def test_default_params_feasible_for_many_n():
    for n in range(3, 25):
        p = derive_pentagon(default_params(n))
        assert validate_property1(p) == []


def test_angle_relations():
    for n in (3, 5, 8):
        p = derive_pentagon(default_params(n))
        assert p.A + p.C == pytest.approx(360.0 - p.B, abs=1e-9)
        assert p.D + p.E == pytest.approx(180.0, abs=1e-9)
        assert sum(p.angles) == pytest.approx(540.0, abs=1e-9)


def test_infeasible_angles_rejected():
    with pytest.raises(InfeasibleAngles):
        derive_pentagon(FeasibleParams(5, 300.0, 78.0))
    with pytest.raises(InfeasibleAngles):
        default_params(2)
    with pytest.raises(InfeasibleAngles):
        derive_pentagon(FeasibleParams(5, 156.0, -10.0))


def test_infeasible_lengths_rejected():
    # an extreme D squeezes side a out of (0, 1)
    with pytest.raises(InfeasibleLengths):
        derive_pentagon(FeasibleParams(5, 156.0, 170.0))


def test_sides_a_and_d_antiparallel():
    p = derive_pentagon(default_params(7))
    theta = edge_directions(*p.angles)
    ua, ud = unit(theta[0]), unit(theta[3])
    assert abs(float(ua[0] * ud[1] - ua[1] * ud[0])) < 1e-12


def test_realize_matches_derivation():
    p = derive_pentagon(default_params(5))
    poly = realize(p)
    assert np.allclose(np.sort(poly.interior_angles()), np.sort(p.angles))
    # vertex order (A, B, C, D, E): side a runs E -> A
    lengths = np.linalg.norm(
        np.roll(poly.vertices, -1, axis=0) - poly.vertices, axis=1
    )
    # edges in vertex order: A->B is side b, B->C is c, C->D is d, D->E is e, E->A is a
    assert np.allclose(lengths, [p.b, p.c, p.d, p.e, p.a])


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_derived_pentagons_satisfy_property1(n, fc, fd):
    """Any accepted parameter triple yields a valid property-1 pentagon."""
    B = 360.0 / n
    params = FeasibleParams(n, 90.0 + fc * (270.0 - B - 90.0), fd * 180.0)
    try:
        p = derive_pentagon(params)
    except Exception:
        return  # rejection is fine; acceptance must imply validity
    assert validate_property1(p) == []
    assert realize(p).is_simple()


def test_closure_solve_agrees_with_grid_oracle():
    rng = np.random.default_rng(20260824)
    for _ in range(5):
        params = random_feasible_params(rng)
        p = derive_pentagon(params)
        a_grid, e_grid = grid_scan_sides(*p.angles)
        assert abs(a_grid - p.a) <= 2e-4
        assert abs(e_grid - p.e) <= 2e-4
