"""Combinatorial manifold toolkit: complexes, GF(2) homology, bistellar
moves, Morse orderings, tightness verification, and f-vector bounds."""

from .bistellar import (
    AnnealSchedule,
    BistellarMove,
    ExactStackedness,
    MoveCertificate,
    apply_move,
    is_boundary_simplex,
    k_stacked_exact,
    move_fvector_delta,
    stackedness_certificate,
    valid_moves,
    vertex_reduce,
)
from .bounds import (
    BinomialCheck,
    BoundsReport,
    binomial_form_check,
    dehn_sommerville6_residual,
    glbc_bound,
    heawood_bound,
    six_manifold_bound,
    tight_neighborly_bound,
)
from .complexes import (
    PseudomanifoldReport,
    SimplicialComplex,
    from_facets,
    from_json,
    from_text,
    load_complex,
    save_complex,
    simplex,
    to_json,
    to_text,
)
from .constructors import (
    boundary_complex,
    boundary_simplex,
    connected_sum,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    dataset,
    dataset_names,
    handle_addition,
    kuehnel_series,
    simplicial_product,
    stacked_sphere,
    stellar_subdivide,
)
from .errors import InvalidMoveError, SearchLimitError, TntError
from .homology import (
    HomologyReport,
    betti_numbers,
    boundary_matrix,
    induced_kernel_dim,
    reduced_betti,
    relative_mu_contribution,
)
from .morse import (
    AmbientPolytope,
    MembershipReport,
    MuVector,
    TightnessReport,
    TightNeighborlyReport,
    central_symmetry,
    hamiltonian_check,
    is_polar,
    lacunary_tight_pattern,
    mu_vector,
    tight_neighborly_check,
    tightness_verify,
    walkup_class_membership,
)
from .symmetry import (
    automorphism_group_order,
    automorphisms,
    find_central_involution,
    is_automorphism,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AmbientPolytope",
    "AnnealSchedule",
    "BinomialCheck",
    "BistellarMove",
    "BoundsReport",
    "ExactStackedness",
    "HomologyReport",
    "InvalidMoveError",
    "MembershipReport",
    "MoveCertificate",
    "MuVector",
    "PseudomanifoldReport",
    "SearchLimitError",
    "SimplicialComplex",
    "TightNeighborlyReport",
    "TightnessReport",
    "TntError",
    "apply_move",
    "automorphism_group_order",
    "automorphisms",
    "betti_numbers",
    "binomial_form_check",
    "boundary_complex",
    "boundary_matrix",
    "boundary_simplex",
    "central_symmetry",
    "find_central_involution",
    "connected_sum",
    "cross_polytope_boundary",
    "cyclic_polytope_boundary",
    "dataset",
    "dataset_names",
    "dehn_sommerville6_residual",
    "from_facets",
    "from_json",
    "from_text",
    "glbc_bound",
    "hamiltonian_check",
    "handle_addition",
    "heawood_bound",
    "induced_kernel_dim",
    "is_automorphism",
    "is_boundary_simplex",
    "is_polar",
    "k_stacked_exact",
    "kuehnel_series",
    "lacunary_tight_pattern",
    "load_complex",
    "move_fvector_delta",
    "mu_vector",
    "reduced_betti",
    "relative_mu_contribution",
    "save_complex",
    "simplex",
    "simplicial_product",
    "six_manifold_bound",
    "stacked_sphere",
    "stackedness_certificate",
    "stellar_subdivide",
    "tight_neighborly_bound",
    "tight_neighborly_check",
    "tightness_verify",
    "to_json",
    "to_text",
    "valid_moves",
    "vertex_reduce",
    "walkup_class_membership",
]
