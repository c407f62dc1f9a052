"""Distance-r vertex-distinguishing total colorings: verification, exact search and constructions."""

from .bounds import Bounds, bounds, conjectured_order_bound, proven_upper_bound
from .coloring import (
    ColorSet,
    TotalColoring,
    VerificationReport,
    Violation,
    color_set,
    find_equalizing_color,
    find_extension_color,
    is_proper_total,
    lower_bound,
    verify_r_sec,
    verify_r_vsdtc,
)
from .construct import (
    compose,
    compose_vsdtc,
    forest_vsdtc,
    greedy_r_sec,
    greedy_vertex_coloring,
    tree_r_sec,
    tree_vsdtc_r,
)
from .errors import (
    ExtensionFailure,
    IncompleteColoring,
    InvalidInput,
    IsolatedEdge,
    NotAForest,
    NotATree,
    PreconditionViolated,
    SearchTimeout,
    VSDTCError,
)
from .extension import ExtensionTrace, extend_degenerate_vsdtc
from .graph import (
    Element,
    Graph,
    build_graph,
    degeneracy,
    diameter,
    disjoint_union,
    distance_within,
    generate,
    incidence_set,
)
from .solver import SearchBudget, SolveResult, chromatic_number, exists_coloring

__version__ = "0.1.0"
