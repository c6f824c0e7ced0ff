"""Exceptionality sequence, ranks and rational-closure entailment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .concepts import Concept, Not, canonical, conjoin
from .kb import DefeasibleInclusion, KnowledgeBase, Query
from .typicality import TBoxStage, is_exceptional, strict_query_entails

Rank = int | float  # a natural number or math.inf


@dataclass
class RankingResult:
    """Stages ``E_0, E_1, ...`` down to the fixpoint, and the derived strata.

    ``strata[i]`` holds the defaults of rank ``i``; ``infinite_defaults``
    are those still present in the fixpoint stage.  When that set is empty
    the last stage has no defaults at all, so every concept consistent
    with the strict axioms gets a finite rank.
    """

    stages: list[TBoxStage]
    strata: list[tuple[DefeasibleInclusion, ...]]
    infinite_defaults: tuple[DefeasibleInclusion, ...]
    default_rank: dict[DefeasibleInclusion, Rank]
    concept_rank_cache: dict[Concept, Rank] = field(default_factory=dict)
    max_nodes: int | None = None

    def stage(self, k: int) -> TBoxStage:
        return self.stages[min(k, len(self.stages) - 1)]


def compute_ranking(kb: KnowledgeBase, max_nodes: int | None = None) -> RankingResult:
    current = kb.defeasible
    stages = [TBoxStage(kb.strict, current)]
    while True:
        stage = stages[-1]
        nxt = tuple(d for d in current if is_exceptional(d.subject, stage, max_nodes))
        if nxt == current:
            break
        current = nxt
        stages.append(TBoxStage(kb.strict, current))
    strata = []
    for upper, lower in zip(stages, stages[1:]):
        kept = set(lower.defeasible)
        strata.append(tuple(d for d in upper.defeasible if d not in kept))
    default_rank: dict[DefeasibleInclusion, Rank] = {}
    for i, layer in enumerate(strata):
        for d in layer:
            default_rank[d] = i
    for d in current:
        default_rank[d] = math.inf
    return RankingResult(stages, strata, current, default_rank, max_nodes=max_nodes)


def concept_rank(ranking: RankingResult, c: Concept) -> Rank:
    """Least stage index at which ``c`` is not exceptional, or ``math.inf``."""
    key = canonical(c)
    cached = ranking.concept_rank_cache.get(key)
    if cached is not None:
        return cached
    rank: Rank = math.inf
    for i, stage in enumerate(ranking.stages):
        if not is_exceptional(key, stage, ranking.max_nodes):
            rank = i
            break
    ranking.concept_rank_cache[key] = rank
    return rank


def rc_entails(kb: KnowledgeBase, ranking: RankingResult, q: Query) -> bool:
    """Rational-closure entailment of ``q``."""
    if not q.typical:
        return strict_query_entails(kb, ranking, q)
    lhs_rank = concept_rank(ranking, q.lhs)
    if lhs_rank == math.inf:
        return True
    return lhs_rank < concept_rank(ranking, conjoin([q.lhs, Not(q.rhs)]))


def format_rank(rank: Rank) -> str:
    return "inf" if rank == math.inf else str(rank)
