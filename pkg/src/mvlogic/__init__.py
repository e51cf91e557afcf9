"""Finite multiple-valued logics for modular rule bases.

Truth values live on finite chains with an involutive negation and a
user-chosen monotone, associative "and" table.  The package builds the
interval extension of such an algebra, searches for renamings between
two algebras that preserve inference (morphisms and quasi-morphisms),
saturates weighted rule modules, and carries conclusions across a
bridge so they can be replayed and audited on the other side.
"""
from .chain import (
    Algebra,
    Chain,
    ValidationReport,
    all_algebras,
    enumerate_conj,
    mp_interval,
    sign_partition,
    validate_conj,
)
from .entailment import (
    Conj,
    KnowledgeModule,
    Literal,
    Rule,
    Sentence,
    conjunction,
    derive_closure,
    entails,
    semantic_entails,
)
from .errors import (
    CapExceededError,
    IncompatibleMapError,
    InvalidTableError,
    MVLogicError,
    NegationMismatchError,
    NotDerivableError,
    SchemaError,
    SessionError,
    StructuralError,
    UndeclaredAtomError,
)
from .generator import gen_both, gen_renamings, gen_tables, rank, select, start
from .interval import Interval, hull, point
from .intervals import IntervalAlgebra, leq_star
from .morphisms import (
    Renaming,
    common_subalgebras,
    extend_conj,
    identity_renaming,
    is_compatible,
    is_morphism,
    is_quasi_morphism,
    negation_morphisms,
    quasi_from_common,
    quotient,
    subalgebras,
)
from .translation import (
    Bridge,
    bridge,
    check_map,
    check_weak_conservative,
    harness_weak_conservative,
    replay_witness,
    translate,
    translate_weight,
)
from .workspace import Workspace

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Bridge",
    "CapExceededError",
    "Chain",
    "Conj",
    "IncompatibleMapError",
    "Interval",
    "IntervalAlgebra",
    "InvalidTableError",
    "KnowledgeModule",
    "Literal",
    "MVLogicError",
    "NegationMismatchError",
    "NotDerivableError",
    "Renaming",
    "Rule",
    "SchemaError",
    "Sentence",
    "SessionError",
    "StructuralError",
    "UndeclaredAtomError",
    "ValidationReport",
    "Workspace",
    "all_algebras",
    "bridge",
    "check_map",
    "check_weak_conservative",
    "common_subalgebras",
    "conjunction",
    "derive_closure",
    "enumerate_conj",
    "entails",
    "extend_conj",
    "gen_both",
    "gen_renamings",
    "gen_tables",
    "harness_weak_conservative",
    "hull",
    "identity_renaming",
    "is_compatible",
    "is_morphism",
    "is_quasi_morphism",
    "leq_star",
    "mp_interval",
    "negation_morphisms",
    "point",
    "quasi_from_common",
    "quotient",
    "rank",
    "replay_witness",
    "select",
    "semantic_entails",
    "sign_partition",
    "start",
    "subalgebras",
    "translate",
    "translate_weight",
    "validate_conj",
]
