"""Generalized Turan numbers ex(n, K_r, {C_>=k, M_s+1}) at desk scale."""

from .cache import ResultCache
from .canonical import canonical_code
from .constructions import (
    Family,
    FamilyParams,
    TheoremEvaluation,
    applicable_families,
    build_construction,
    construction_id,
    derive_params,
    formula_clique_count,
    matching_turan_value,
    minimum_order,
    parse_construction_id,
    theorem_evaluation,
    theorem_value,
)
from .errors import (
    CacheIntegrityError,
    CapacityError,
    CountOverflowError,
    ExtremalLabError,
    Graph6ParseError,
    ParameterError,
    PreconditionError,
)
from .estimators import ExtremalSearch, GraphInvariants, TheoremValue
from .generators import random_instances
from .graph import Graph, clique, contract, cycle, identify, independent, join, path, primitive, replicate, union
from .graph6 import decode, encode
from .invariants import (
    BlockCutTree,
    Matching,
    block_count,
    block_cut_decompose,
    circumference,
    count_cliques,
    is_free,
    longest_cycle,
    longest_path,
    matching_number,
    maximum_matching,
)
from .lemmas import (
    BinomResult,
    LemmaRecord,
    PhiPotential,
    StabilityPartition,
    binom_inequality_check,
    block_cut_star_of,
    contraction_closure_check,
    dirac_kopylov_check,
    exceptional_edges,
    near_perfect_matching_excluding,
    phi_potential,
    stability_decompose,
)
from .search import SearchOptions, SearchRecord, extremal_search, sweep

__all__ = [
    "applicable_families", "binom_inequality_check", "BinomResult", "block_count",
    "block_cut_decompose", "block_cut_star_of", "BlockCutTree", "build_construction",
    "CacheIntegrityError", "canonical_code", "CapacityError", "circumference", "clique",
    "construction_id", "contract", "contraction_closure_check", "count_cliques",
    "CountOverflowError", "cycle", "decode", "derive_params", "dirac_kopylov_check", "encode",
    "exceptional_edges", "extremal_search", "ExtremalLabError", "ExtremalSearch", "Family",
    "FamilyParams", "formula_clique_count", "Graph", "Graph6ParseError", "GraphInvariants",
    "identify", "independent", "is_free", "join", "LemmaRecord", "longest_cycle", "longest_path",
    "Matching", "matching_number", "matching_turan_value", "maximum_matching", "minimum_order",
    "near_perfect_matching_excluding", "ParameterError", "parse_construction_id", "path",
    "phi_potential", "PhiPotential", "PreconditionError", "primitive", "random_instances",
    "replicate", "ResultCache", "SearchOptions", "SearchRecord", "stability_decompose",
    "StabilityPartition", "sweep", "theorem_evaluation", "theorem_value", "TheoremEvaluation",
    "TheoremValue", "union",
]

__version__ = "0.1.0"
