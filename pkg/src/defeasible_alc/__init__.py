"""Defeasible reasoning in ALC with a typicality operator.

Rational closure, MP-closure and lexicographic closure are computed over a
shared tableau; ``oracle`` offers a brute-force model-theoretic check on
role-free knowledge bases.
"""

from .bases import Base, ClosureReport, lex_bases, lex_entails, mp_bases, mp_entails, prefers
from .concepts import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    Top,
    canonical,
    nnf,
    show,
)
from .errors import ResourceLimitExceeded
from .kb import (
    DefeasibleInclusion,
    KnowledgeBase,
    NamespaceError,
    Query,
    StrictInclusion,
    aspects,
    materialize,
)
from .oracle import (
    OracleBounds,
    OracleModel,
    minimal_ranked_model,
    minimal_s_enriched_models,
    oracle_rc_entails,
    oracle_s_entails,
)
from .parser import ParseError, parse_concept, parse_kb, parse_query
from .ranking import RankingResult, compute_ranking, concept_rank, rc_entails
from .tableau import BACKEND, abox_consistent, entails, is_satisfiable
from .typicality import TBoxStage, guarded_entails, is_exceptional, strict_query_entails

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "BACKEND", "BOT", "Base", "Bot", "ClosureReport", "Concept",
    "DefeasibleInclusion", "Exists", "Forall", "KnowledgeBase", "NamespaceError",
    "Not", "Or", "OracleBounds", "OracleModel", "ParseError", "Query",
    "RankingResult", "ResourceLimitExceeded", "StrictInclusion", "TBoxStage",
    "TOP", "Top", "abox_consistent", "aspects", "canonical", "compute_ranking",
    "concept_rank", "entails", "guarded_entails", "is_exceptional",
    "is_satisfiable", "lex_bases", "lex_entails", "materialize",
    "minimal_ranked_model", "minimal_s_enriched_models", "mp_bases",
    "mp_entails", "nnf", "oracle_rc_entails", "oracle_s_entails", "parse_concept",
    "parse_kb", "parse_query", "prefers", "rc_entails", "show",
    "strict_query_entails",
]
