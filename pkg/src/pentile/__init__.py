"""Monohedral pentagon/hexagon tilings with prescribed rotational symmetry."""

from .geom import Isometry, Polygon, apply, compose, polygons_interiors_intersect, segment_coverage
from .pentagon import (
    FeasibleParams,
    InfeasibleAngles,
    InfeasibleLengths,
    PentagonError,
    PentagonSpec,
    SingularClosure,
    default_params,
    derive_pentagon,
    dihedral_params,
    realize,
    validate_property1,
)
from .assembly import (
    HexagonSpec,
    Patch,
    Tile,
    assemble_patch,
    glue_hexagon,
    hexagon_level,
    houses_patch,
    is_dihedral,
)
from .analysis import (
    ArmLabeling,
    NotApplicable,
    OutermostRing,
    SymmetryResult,
    VerificationReport,
    label_arms,
    spiral_arms,
    spiral_next,
    symmetry_detect,
    verify,
)
from .io import RenderOptions, SchemaError, parse, render_svg, serialize

__version__ = "0.1.0"
