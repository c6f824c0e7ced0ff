"""Typicality checks reduced to classical ALC entailment.

An element of rank 0 in a ranked model satisfies the materialization of
every default, and a classical model of the strict axioms plus those
materializations containing a ``C`` can be turned into a ranked model
with a rank-0 ``C``.  So ``T(Top) <= not C`` holds in every model of a
stage exactly when ``C`` together with the materialization is unsatisfiable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .concepts import BOT, Concept, conjoin
from .kb import DefeasibleInclusion, KnowledgeBase, Query, StrictInclusion, materialize
from .tableau import entails, is_satisfiable


@dataclass(frozen=True)
class TBoxStage:
    """The strict axioms plus the defaults still active at one stage."""

    strict: tuple[StrictInclusion, ...]
    defeasible: tuple[DefeasibleInclusion, ...]


def is_exceptional(c: Concept, e: TBoxStage, max_nodes: int | None = None) -> bool:
    """No typical element of any model of ``e`` is a ``c``."""
    return not is_satisfiable(
        conjoin([materialize(e.defeasible), c]), e.strict, max_nodes
    )


def guarded_entails(
    e: TBoxStage,
    extra: Concept,
    b: Concept,
    d: Concept,
    max_nodes: int | None = None,
) -> bool:
    """``T(Top) and extra <= not b or d`` holds in every model of ``e``."""
    lhs = conjoin([materialize(e.defeasible), extra, b])
    return entails(e.strict, Query(lhs, d), max_nodes)


def is_compatible(
    e: TBoxStage, extra: Concept, b: Concept, max_nodes: int | None = None
) -> bool:
    """Some typical element of a model of ``e`` satisfies ``extra and b``."""
    return not guarded_entails(e, extra, b, BOT, max_nodes)


def strictified(kb: KnowledgeBase, infinite: tuple[DefeasibleInclusion, ...]) -> tuple[StrictInclusion, ...]:
    """Strict axioms of ``kb`` plus ``C <= D`` for each default of infinite rank."""
    return kb.strict + tuple(StrictInclusion(d.subject, d.aspect) for d in infinite)


def strict_query_entails(kb: KnowledgeBase, ranking, q: Query, max_nodes: int | None = None) -> bool:
    """Plain ``C <= D`` under the typicality semantics of ``kb``.

    Defaults whose subject has infinite rank hold classically in every
    model (their subject is empty in all of them), so they are added as
    strict axioms before the classical check.
    """
    if q.typical:
        raise ValueError("strict_query_entails needs a query without T(...)")
    limit = max_nodes if max_nodes is not None else ranking.max_nodes
    return entails(strictified(kb, ranking.infinite_defaults), q, limit)
