"""Ordered Hamming block spaces: metric, symmetry group, automorphisms,
brute-force oracle, and code equivalence."""

from .errors import (
    CapExceeded,
    DomainError,
    NotIsometryError,
    OhbError,
    StructureError,
    UsageError,
    ValidationError,
)
from .fields import (
    Field,
    FieldElement,
    block_rank,
    block_unrank,
    field_arith,
)
from .space import (
    BlockVector,
    SpaceConfig,
    chain_distance,
    distance,
    format_vector,
    ideal_closure,
    parse_vector,
    pi_support,
    weight,
    weight_array,
)
from .chains import (
    ChainSymmetry,
    all_chain_symmetries,
    alt_chain_order_unit,
    apply_chain,
    chain_order,
    compose_chain,
    decompose_chain,
    identity_chain,
    invert_chain,
    make_triangular,
    random_chain,
)
from .symmetry import (
    Symmetry,
    admissible_permutations,
    all_symmetries,
    alt_full_order_unit,
    apply_symmetry,
    as_rank_table,
    compose_symmetry,
    decompose_full,
    full_order,
    identity_symmetry,
    invert_symmetry,
    is_admissible,
    make_translation,
    random_symmetry,
    s_pi_order,
)
from .automorphisms import (
    AutReport,
    aut_order_antichain,
    aut_report,
    enumerate_automorphisms,
    gl_order,
    is_linear,
)
from .oracle import (
    OracleReport,
    distance_matrix,
    enumerate_isometries,
    verify_against_formula,
)
from .codes import (
    Code,
    EquivalenceResult,
    apply_to_code,
    chain_from_pairs,
    code_invariants,
    equivalent,
    parse_code_json,
    parse_code_text,
)

__version__ = "0.1.0"

__all__ = [
    "AutReport",
    "BlockVector",
    "CapExceeded",
    "ChainSymmetry",
    "Code",
    "DomainError",
    "EquivalenceResult",
    "Field",
    "FieldElement",
    "NotIsometryError",
    "OhbError",
    "OracleReport",
    "SpaceConfig",
    "StructureError",
    "Symmetry",
    "UsageError",
    "ValidationError",
    "admissible_permutations",
    "all_chain_symmetries",
    "all_symmetries",
    "alt_chain_order_unit",
    "alt_full_order_unit",
    "apply_chain",
    "apply_symmetry",
    "apply_to_code",
    "as_rank_table",
    "aut_order_antichain",
    "aut_report",
    "block_rank",
    "block_unrank",
    "chain_distance",
    "chain_from_pairs",
    "chain_order",
    "code_invariants",
    "compose_chain",
    "compose_symmetry",
    "decompose_chain",
    "decompose_full",
    "distance",
    "distance_matrix",
    "enumerate_automorphisms",
    "enumerate_isometries",
    "equivalent",
    "field_arith",
    "format_vector",
    "full_order",
    "gl_order",
    "ideal_closure",
    "identity_chain",
    "identity_symmetry",
    "invert_chain",
    "invert_symmetry",
    "is_admissible",
    "is_linear",
    "make_translation",
    "make_triangular",
    "parse_code_json",
    "parse_code_text",
    "parse_vector",
    "pi_support",
    "random_chain",
    "random_symmetry",
    "s_pi_order",
    "verify_against_formula",
    "weight",
    "weight_array",
]
