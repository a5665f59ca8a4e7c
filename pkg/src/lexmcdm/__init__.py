"""Lexicographic multicriteria decision procedures.

Crisp cascade comparison, weighted-sum representation, lexicographic
composition of crisp relations, and the fuzzy lexicographic procedure.
"""

from .model import (
    ComparisonOutcome,
    CriterionSpec,
    DecisionMatrix,
    InputError,
    MatrixError,
    Verdict,
    Violation,
    dump_matrix,
    load_matrix,
    negate_criteria,
    parse_matrix,
    validate,
)
from .crisp import Ranking, lex_best, lex_compare, lex_rank, superiority_table
from .convolution import (
    WeightVector,
    argmax_convolution,
    check_lex_condition,
    convolution_rank,
    convolve,
    diapason,
    lex_weights,
    min_gaps,
    normalize,
)
from .relational import (
    CrispRelation,
    RelationParts,
    check_axioms,
    compose_table,
    derive_parts,
    induced_relation,
    lex_compose,
    load_relations,
    verify_affirmation2,
)
from .fuzzy import (
    FuzzyOutcome,
    FuzzyRelation,
    IntransitivityError,
    check_scale_theorem,
    equivalence_part,
    fuzzy_lex_compare,
    fuzzy_lex_convolve,
    fuzzy_lex_rank,
    fuzzy_table,
    inverse,
    load_fuzzy,
    strict_part,
    utility_projection,
)

__version__ = "0.1.0"
