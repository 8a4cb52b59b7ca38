"""Belief-revision laboratory: ranked epistemic states, revision and
contraction operators, postulate checking, counterexample search, and
theorem harnesses, all over a finite propositional signature."""

from .logic import (
    FALSE,
    TRUE,
    Atom,
    Const,
    Formula,
    FormulaSyntaxError,
    Iff,
    Implies,
    And,
    Not,
    Or,
    Signature,
    SignatureMismatchError,
    UnknownAtomError,
    WorldSet,
    dnf_of,
    entails,
    expand,
    formula_text,
    models,
    parse_formula,
    satisfies,
)
from .operators import (
    ABSURD,
    CONTRACTION_OPERATORS,
    REVISION_OPERATORS,
    ContractionOperator,
    OperatorPair,
    RevisionOperator,
    UnsupportedSequenceError,
    apply_sequence,
    drastic_withdrawal,
    flatten_revision,
    get_contraction,
    get_revision,
    lexicographic_revision,
    make_pair,
    natural_contraction,
    natural_revision,
    outcome_belief_set,
    reverse_revision,
)
from .postulates import (
    ALL_POSTULATE_IDS,
    POSTULATES,
    Counterexample,
    Instance,
    SuiteReport,
    Verdict,
    check_instance,
    run_suite,
    search_counterexample,
)
from .states import (
    RankedState,
    StateFileError,
    StateStream,
    belief_set,
    believes,
    count_weak_orders,
    enumerate_states,
    load_state_file,
    min_worlds,
    normalize,
    parse_state_text,
    sample_states,
    state_equal,
    state_to_text,
    uniform_state,
)
from .theorems import (
    GeorgeResult,
    TheoremReport,
    run_george,
    verify_corollary1,
    verify_hansson,
    verify_observation1,
    verify_theorem1,
)

__version__ = "0.1.0"
