"""Coherent edge labellings of polyhedra.

A labelling of the edges is coherent when every face, read in its
orientation, has exactly one cyclic descent.  The package builds and
validates polyhedra, decides and searches for coherent labellings, and
implements the constructions that preserve coherence.
"""

from .attachments import (
    AttachmentSpec,
    attach,
    attach_a1,
    attach_a2,
    attach_a3,
    attach_a5,
    cap_triangle,
)
from .constructions import (
    CATALOG_NAMES,
    Layout,
    bipyramid,
    catalog,
    cuboid,
    cuboid_layout,
    octahedron,
    prism,
    pyramid,
    tetrahedron,
)
from .document import parse, serialize
from .errors import *  # noqa: F401,F403
from .extension import (
    PyramidExtensionTrace,
    attach_pyramid_to_face,
    pyramidalize,
    truncate_all,
    truncate_vertex,
)
from .labelling import (
    CoherenceReport,
    DescentProfile,
    Labelling,
    cyclic_descent_count,
    cyclic_shift,
    is_canonical,
    is_coherent,
    is_vertex_coherent,
    normalize,
)
from .solver import (
    SolveResult,
    count_by_rotation_selection,
    count_labellings,
    count_linear_extensions,
    enumerate_with_fixed_minimum,
    selection_census,
    solve_backtracking,
    solve_by_rotation_selection,
)
from .surface import (
    DualCorrespondence,
    Polyhedron,
    build_from_faces,
    canonical_form,
    dual,
    edge_key,
    is_isomorphic,
    vertex_star,
)
