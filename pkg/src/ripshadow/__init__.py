"""Exact-arithmetic Rips complexes, planar shadows, and homology certificates."""

from .complexes import (
    SimplicialComplex,
    VertexColoring,
    build_cech_1d,
    build_rips,
    cone_apex,
    flag_complex,
    induced_span,
)
from .fixtures import (
    annulus_ring_points,
    cross_polytope_points,
    crossing_triangle_fixture,
    four_d_points,
    hexagon_points,
)
from .geometry import (
    Point,
    Segment,
    dist2,
    make_point,
    orient,
    point_in_triangle,
    segment_intersection,
    winding_number,
)
from .homology import (
    BettiProfile,
    SmithDecomposition,
    betti_numbers,
    boundary_matrix,
    induced_h1_rank,
    integer_h1,
    verify_chain_property,
)
from .lifting import (
    HoleWord,
    RipsWalk,
    chaining_sequence,
    is_contractible,
    is_null_homologous,
    lift_loop,
    lift_path,
    loop_word,
    walk_word,
)
from .quasi import (
    BlowupComplex,
    EdgePolicy,
    GroupPresentation,
    UncertaintyInterval,
    blowup,
    build_quasi,
    embed_blowup,
    flag_blowup,
    pair_image_analysis,
    presentation_to_colored_complex,
    preset_presentation,
    quasi_integer_h1,
    run_pipeline,
)
from .shadow import (
    ShadowComplex,
    build_shadow,
    hole_anchors,
    render_svg,
    shadow_betti,
)

__version__ = "0.1.0"

__all__ = [
    "BettiProfile",
    "BlowupComplex",
    "EdgePolicy",
    "GroupPresentation",
    "HoleWord",
    "Point",
    "RipsWalk",
    "Segment",
    "ShadowComplex",
    "SimplicialComplex",
    "SmithDecomposition",
    "UncertaintyInterval",
    "VertexColoring",
    "annulus_ring_points",
    "betti_numbers",
    "blowup",
    "boundary_matrix",
    "build_cech_1d",
    "build_quasi",
    "build_rips",
    "build_shadow",
    "chaining_sequence",
    "cone_apex",
    "cross_polytope_points",
    "crossing_triangle_fixture",
    "dist2",
    "embed_blowup",
    "flag_blowup",
    "flag_complex",
    "four_d_points",
    "hexagon_points",
    "hole_anchors",
    "induced_h1_rank",
    "induced_span",
    "integer_h1",
    "is_contractible",
    "is_null_homologous",
    "lift_loop",
    "lift_path",
    "loop_word",
    "make_point",
    "orient",
    "pair_image_analysis",
    "point_in_triangle",
    "presentation_to_colored_complex",
    "preset_presentation",
    "quasi_integer_h1",
    "render_svg",
    "run_pipeline",
    "segment_intersection",
    "shadow_betti",
    "verify_chain_property",
    "walk_word",
    "winding_number",
]
