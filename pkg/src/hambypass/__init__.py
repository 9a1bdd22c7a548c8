"""Digraph analysis toolkit: degree-sum conditions, Hamiltonian structure
searches, path-insertion machinery and exhaustive small-order verification.
"""

from .conditions import (
    Condition,
    ConditionReport,
    ConditionWitness,
    check_a_k,
    check_degree_sum,
    check_ghouila_houri,
    check_meyniel,
    check_nash_williams,
    check_thm13_condition,
    check_thm14_condition,
    check_thm15_condition,
    check_thm16_hypothesis,
    check_thm16_relaxed,
    check_woodall,
    known_condition_ids,
    lemma5_consequence_holds,
    resolve,
)
from .digraph import (
    Cycle,
    Digraph,
    DigraphError,
    DuplicateArcError,
    OrderError,
    ParseError,
    Path,
    PathError,
    SelfLoopError,
    VertexRangeError,
    converse,
    degrees,
    degrees_toward_set,
    format_digraph,
    induced_subdigraph,
    is_strong,
    make_cycle,
    make_path,
    new_digraph,
    non_adjacent_pairs,
    parse_digraph,
    vertex_mask,
)
from .families import (
    InnerSpec,
    bypass_pattern,
    complete_bipartite_digraph,
    complete_digraph,
    d0,
    d1,
    directed_cycle,
    iter_inner_specs,
    t5,
)
from .insertion import (
    InsertionOutcome,
    Lemma7Report,
    PartnerCollection,
    extend_as_much_as_possible,
    find_collection_of_partners,
    find_partner_for_path,
    find_partner_for_vertex,
    insert_at,
    is_good_cycle,
    lemma1_hypothesis,
    lemma2_hypothesis,
    lemma3_hypothesis,
    lemma4_hypothesis,
    lemma7_consequences,
    multi_insert,
)
from .iso import (
    CanonicalForm,
    are_isomorphic,
    canonical_form,
    is_balanced_complete_bipartite,
    is_isomorphic_to_t5,
)
from .search import (
    BypassWitness,
    PatternEmbedding,
    find_bypass_pattern,
    find_cycle_of_length,
    find_good_cycle,
    find_hamiltonian_bypass,
    find_hamiltonian_cycle,
    find_hamiltonian_path_between,
    find_pre_hamiltonian_cycle,
    iter_cycles_of_length,
    validate_bypass,
)
from .verify import (
    EnumerationTask,
    ExceptionRecord,
    ScanResult,
    TheoremReport,
    check_theorem6,
    check_theorem8,
    check_theorem9,
    check_theorem11,
    check_theorem12,
    check_theorem16_conjecture,
    digraph_from_mask,
    enumerate_digraphs,
    explore_no_bypass,
    mask_of,
)

__version__ = "0.1.0"
