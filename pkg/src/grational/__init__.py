"""Grationality of regular polygons.

``n`` is grational when some regular n-gon with integer side has the area of
``n`` congruent regular n-gons with integer side; this happens exactly for
perfect squares.  The package decides grationality, runs the integer
descent maps behind the non-square cases, builds the carpet overlays whose
area accounting drives those descents, and constructs the triangle tilings
that realize the square cases.
"""

from .carpets import (
    corner_overlay,
    hexagon_overlay_report,
    overlay_identity_check,
    pentagon_dissection,
    tennenbaum_arrangement,
)
from .geomkernel import (
    Arrangement,
    CoverageReport,
    Point,
    Polygon,
    boolean_op,
    coverage_depth,
    polygon_area,
    regular_polygon,
)
from .gratcore import (
    CandidatePair,
    DescentStrategy,
    NiceGon,
    PolyExpr,
    Witness,
    brute_force_witness,
    descent_chain,
    descent_step,
    is_grational,
    pentagon_diagonal_identity,
    reduce_poly,
    verify_identity,
    verify_witness,
)
from .numerics import QuadraticNumber, integer_sqrt, quad_arith
from .render import SceneDoc, render_svg
from .tilings import (
    assemble_ngon,
    parallelogram_double,
    row_tile,
    theorem2_witness_scene,
    tile_triangle,
)

__version__ = "0.1.0"
