"""Quantum symmetry toolkit for matroids.

Matroids with the revlex hex codec, free-algebra polynomials over the
rationals, a noncommutative Buchberger engine with Aho-Corasick reduction,
quantum automorphism ideals under four cryptomorphic axiom systems,
commutativity verdicts, classical automorphism groups, and strong-map
counting with the hom-profile isomorphism test.
"""

from .autgroup import PermGroup, automorphism_group, find_isomorphism, is_isomorphic
from .groebner import (
    EngineConfig,
    GBStatus,
    GroebnerBasis,
    Obstruction,
    buchberger,
    build_reducer,
    find_obstructions,
    gb_degree,
    interreduce,
    read_gb,
    s_polynomial,
    stabilized_buchberger,
    write_gb,
)
from .kernel import BACKEND
from .matroids import (
    GroundSet,
    INFINITY,
    Matroid,
    MatroidError,
    RevlexCode,
    SubsetFamily,
    TooLarge,
    canonical_form,
    canonical_revlex_hex,
    decode_revlex,
    direct_sum,
    encode_revlex,
    enumerate_all_matroids,
    enumerate_matroids,
    new_matroid,
    relabel,
    revlex_subsets,
    uniform,
)
from .ncpoly import Algebra, NcPolynomial, Variable, normal_remainder, replay_trace
from .quantum import (
    AXIOM_KINDS,
    CommutativityVerdict,
    QuantumGroupSpec,
    TupleSet,
    commutators,
    decide_commutativity,
    eval_at_permutation,
    free_product_ideal,
    graph_qaut_ideal,
    qsym_ideal_generators,
    quantum_aut_spec,
    quantum_symmetric_spec,
    theorem_shortcuts,
    tuple_ideal_generators,
    tuple_set,
)
from .strongmaps import (
    EMPTY_MATROID,
    HomCounts,
    StrongMap,
    hom_counts,
    hom_profile,
    is_strong_map,
    iso_class_catalog,
    lovasz_isomorphism_test,
    strong_maps,
    verify_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOM_KINDS",
    "Algebra",
    "BACKEND",
    "CommutativityVerdict",
    "EMPTY_MATROID",
    "EngineConfig",
    "GBStatus",
    "GroebnerBasis",
    "GroundSet",
    "HomCounts",
    "INFINITY",
    "Matroid",
    "MatroidError",
    "NcPolynomial",
    "Obstruction",
    "PermGroup",
    "QuantumGroupSpec",
    "RevlexCode",
    "StrongMap",
    "SubsetFamily",
    "TooLarge",
    "TupleSet",
    "Variable",
    "automorphism_group",
    "buchberger",
    "build_reducer",
    "canonical_form",
    "canonical_revlex_hex",
    "commutators",
    "decide_commutativity",
    "decode_revlex",
    "direct_sum",
    "encode_revlex",
    "enumerate_all_matroids",
    "enumerate_matroids",
    "eval_at_permutation",
    "find_isomorphism",
    "find_obstructions",
    "free_product_ideal",
    "gb_degree",
    "graph_qaut_ideal",
    "hom_counts",
    "hom_profile",
    "interreduce",
    "is_isomorphic",
    "is_strong_map",
    "iso_class_catalog",
    "lovasz_isomorphism_test",
    "new_matroid",
    "normal_remainder",
    "qsym_ideal_generators",
    "quantum_aut_spec",
    "quantum_symmetric_spec",
    "read_gb",
    "relabel",
    "replay_trace",
    "revlex_subsets",
    "s_polynomial",
    "stabilized_buchberger",
    "strong_maps",
    "theorem_shortcuts",
    "tuple_ideal_generators",
    "tuple_set",
    "uniform",
    "verify_decomposition",
    "write_gb",
]
