"""Ranking alternatives from opinions on the criteria they satisfy.

The model layer holds subsets, criterion tables, voter profiles over
criteria, and sparse opinion states with their support quotient.  On top of
it sit two choice methods driven by criterion scores, a family of opinion
aggregators built around the deepest-intersection score, an executable
axiom suite, and a brute-force oracle used for differential testing.
"""

from .aggregators import (
    coarse_f1,
    coarse_f2,
    indifference_rule,
    induce_opinion,
    iis_rank,
    iis_tiebreak_order,
    iis_tiebreak_tau,
    lexcel_rank,
    max_of,
    support_rank,
    tau_vector,
    class_count_vector,
)
from .axioms import (
    AXIOM_KINDS,
    AxiomInstance,
    AxiomVerdict,
    InvalidInstanceError,
    SweepResult,
    VARIANT_RULES,
    VARIANT_TARGETS,
    axiom_independence_report,
    check_axiom,
    check_choice_equivalence,
    generate_instances,
    permute_state,
    permute_subset,
    random_profile,
    random_state,
    random_support_state,
    random_symmetric_table,
    random_table,
    sweep_axiom,
    trailing_merge_sequence,
    validate_instance,
)
from .choice import (
    BordaTally,
    borda_criterion_scores,
    borda_ranking,
    cascade_sets,
    nurmi_first,
    nurmi_second,
)
from .cli import (
    ParseError,
    RunConfig,
    format_criterion_table,
    format_opinion_state,
    format_profile,
    format_ranking,
    format_subset,
    main,
    parse_criterion_table,
    parse_opinion_state,
    parse_profile,
    run,
)
from .model import (
    AltSubset,
    CriterionTable,
    MAX_UNIVERSE,
    OpinionState,
    PreferenceProfile,
    QuotientOrder,
    Ranking,
    SupportClass,
    SupportVector,
    ValidationError,
    class_union_intersection,
    e_score,
    e_scores,
    quotient_order,
    ranking_from_scores,
    support_of,
    support_vector,
)
from .oracle import (
    DenseRankings,
    DenseState,
    ORACLE_MAX_UNIVERSE,
    dense_e_score,
    dense_rankings,
    differential_sweep,
)

__version__ = "0.1.0"
