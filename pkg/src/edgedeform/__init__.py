"""Deformations of edge ideals of finite graphs.

Core objects: graphs with loops, their quadratic monomial (edge) ideals,
the combinatorial generators of first-order deformations, rigidity and
separation decisions, obstruction-vanishing criteria, and an exact
graded linear-algebra oracle that cross-checks all of it.
"""

from .errors import (
    DegreeCapExceededError,
    EdgeDeformError,
    EmptyGraphError,
    InvalidChoiceError,
    MaterializationLimitError,
    NameCollisionError,
    NotASeparationPairError,
    ParseError,
    PreconditionViolatedError,
    SimpleGraphRequiredError,
    TriangleFoundError,
    UnknownEdgeError,
    UnknownVertexError,
)
from .graphs import (
    Graph,
    Poset,
    build_graph,
    contract_fresh,
    cycle,
    family,
    is_inseparable,
    labeled_graphs,
    letterplace2,
    parse_graph_text,
    parse_poset_text,
    path,
    polarize,
    separate,
    separating_vertices,
    separation_pairs,
)
from .monomials import (
    EdgeIdeal,
    Monomial,
    QuotientClass,
    minimal_elements,
    product_times_set_in_ideal,
    sqrt_products,
    squarefree_part,
)
from .deform import (
    Classification,
    DeformHom,
    derivation_hom,
    edge_context,
    edge_homs,
    evaluate,
    hom_generators,
    is_rigid,
    is_rigid_independent_sets,
    rigid_no456,
    star_context,
    star_homs,
    validate_hom,
)
from .obstructions import (
    KGenerator,
    KRelation,
    T2Hom,
    edge_rank,
    kk0_generators,
    kk0_relations,
    pair_context,
    pair_homs,
    projection_map,
    t2_vanishes_trianglefree,
    t2_zero_sufficient,
    validate_t2hom,
)
from .oracle import (
    GradedReport,
    generation_check_t1,
    generation_check_t2,
    hom_basis,
    hom_dim,
    homK_basis,
    homK_dim,
    separation_regularity_check,
    t1_dim,
    t1_report,
    t2_dim,
    t2_report,
)

__version__ = "0.1.0"
