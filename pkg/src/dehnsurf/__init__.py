"""Cubulations of closed 3-manifolds and their dual filling surfaces.

Core objects are face-gluing descriptions of cubulations and
triangulations.  The package validates them as closed 3-manifolds,
computes exact integer homology, realizes the duality with filling
surfaces, converts between the two presentations with controlled cell
counts, enumerates small cubulation censuses up to isomorphism, evaluates
complexity upper bounds from Heegaard and surgery presentations, and
verifies the exactly-solved crossing-complexity theory for loops on
surfaces.
"""

from .bounds import (
    BoundResult,
    FramedLink,
    HeegaardData,
    MatveevRelation,
    heegaard_bound,
    matveev_relation,
    parse_gauss_code,
    surgery_bound,
)
from .census import CensusRecord, enumerate_cubulations, fingerprint, render_census
from .complexes import (
    Cubulation,
    GluingError,
    ParseError,
    Triangulation,
    make_cubulation,
    make_triangulation,
    parse_cubulation,
    parse_triangulation,
    serialize_cubulation,
    serialize_triangulation,
)
from .convert import (
    ConversionStats,
    cubulation_to_triangulation,
    triangulation_to_cubulation,
)
from .duality import (
    DehnSurfaceReport,
    SheetSurface,
    SingularGraph,
    dual_dehn_surface,
    verify_duality_counts,
)
from .homology import (
    AbelianGroup,
    HomologyProfile,
    IntegerMatrix,
    boundary_matrices,
    homology_groups,
    smith_normal_form,
)
from .loops import (
    DehnLoop,
    LoopRecord,
    SurfaceType,
    enumerate_dehn_loops,
    loop_complexity_formula,
    loop_dual_quadrangulation,
    loop_surface,
    verify_lc,
)
from .signature import canonical_signature, canonical_signature_triangulation
from .validate import (
    CellCounts,
    ManifoldReport,
    barycentric_subdivision,
    cone_subdivision,
    orientability,
    validate_closed_3manifold,
    validate_cubulation,
)

__version__ = "0.1.0"
