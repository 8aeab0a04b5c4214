"""Schubert decompositions of quiver Grassmannians, with a counting oracle."""

from .quiver import (
    Arrow,
    Quiver,
    QuiverMorphism,
    Subquiver,
    compose,
    difference_of,
    disjoint_union,
    full_subquiver,
    identity_morphism,
    is_strictly_ordered,
    is_tree_extension,
    is_winding,
    morphism,
    quiver,
    quotient_by,
    subquiver,
    validate,
)
from .representation import (
    OrderedBasis,
    Representation,
    direct_sum,
    is_ordered_above,
    order_above_extension,
    push_forward,
    reorder_basis,
    representation,
    restrict,
    thin_representation,
)
from .schubert import (
    CellEquationSystem,
    CellIndex,
    PreconditionError,
    cell_index,
    cell_partial_orders,
    cell_type,
    enumerate_cells,
    generate_equations,
    grassmannian_fibration,
    iota,
    pi,
    preceq,
    block_leq,
    tree_cell_dimension,
    tree_cell_emptiness,
)
from .hypothesis_h import (
    HypothesisResult,
    TripleType,
    WindingContext,
    check_hypothesis_h,
    classify_triple,
    relevant_pairs,
)
from .oracle import (
    AffineCertificateError,
    BudgetExceededError,
    CountReport,
    CountingPolynomial,
    assign_cell,
    cell_count,
    count,
    counting_polynomial,
    enumerate_subreps,
    euler_characteristic,
    poincare_polynomial,
    verify_affine,
)
from .catalog import CatalogEntry, catalog, catalog_names

__version__ = "0.1.0"
