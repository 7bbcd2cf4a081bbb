"""parapri: prioritized propositional defaults made parallel.

The package turns a finite strict priority order over propositional
defaults into an equivalent parallel (unprioritized) default set, and
ships a brute-force preferred-model engine that makes the equivalence,
skeptical queries, and the related encodings (inheritance pruning,
guarded abnormality rules, stratified logic programs) machine-checkable
at small atom counts.
"""

from .circumscription import (
    PreferredModelSet,
    circ_equivalent,
    format_model,
    models_of,
    preferred_models,
    preorder_equivalent,
    skeptical_entails,
)
from .errors import (
    CapExceededError,
    CycleError,
    InternalError,
    NotStratifiedError,
    ParapriError,
    ParseError,
    UniverseError,
    ValidationError,
)
from .formula import (
    And,
    Atom,
    Const,
    FALSE,
    Formula,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    TRUE,
    atoms,
    entails,
    evaluate,
    is_tautology,
    parse_formula,
    to_text,
    truth_mask,
)
from .lp import Clause, Program, Stratification, encode_stratified, parse_program, perfect_model, stratify
from .preorder import PreorderSpec, default_leq, fixture_equiv, strictly_better
from .specificity import (
    GuardedRule,
    PruneReport,
    abnormality_variant_report,
    encode_abnormality,
    prune_redundant,
    verify_special_case,
)
from .theory import (
    LabeledFormula,
    PriorityOrder,
    Schema,
    SchemaTheory,
    Theory,
    build_theory,
    classify_order,
    fixtures_to_defaults,
    ground,
    parallel_order,
    parse_theory,
    print_theory,
    theory_to_json,
    transitive_closure,
)
from .transform import (
    Provenance,
    SizeReport,
    TransformOutput,
    build_wil,
    descending_sequences,
    dominators,
    output_size,
    parallel_theory,
    transform_all,
    transform_canonical,
    transform_theory,
)

__version__ = "0.1.0"
