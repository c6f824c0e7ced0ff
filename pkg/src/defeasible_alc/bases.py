"""Maximal compatible bases and the MP / lexicographic closures.

For a subject ``B`` of rank ``k`` a base keeps every default of rank at
least ``k`` and picks, stratum by stratum from ``k - 1`` down to ``0``, a
subset of the defaults of that rank that stays compatible with ``B``.
The MP-closure keeps the subset-maximal choices at each stratum, the
lexicographic closure the choices of maximum size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Callable, Sequence

from .concepts import Concept
from .kb import DefeasibleInclusion, KnowledgeBase, Query, materialize
from .ranking import RankingResult, concept_rank
from .typicality import guarded_entails, is_compatible, strict_query_entails

MP = "mp"
LEX = "lex"


@dataclass(frozen=True)
class Base:
    """``selection[i]`` is the subset chosen from stratum ``i`` (for ``i < k``)."""

    selection: tuple[tuple[DefeasibleInclusion, ...], ...]
    forced: tuple[DefeasibleInclusion, ...]
    k: int

    @property
    def chosen(self) -> tuple[DefeasibleInclusion, ...]:
        return tuple(chain.from_iterable(self.selection))

    @property
    def full(self) -> tuple[DefeasibleInclusion, ...]:
        return self.chosen + self.forced


def prefers(
    new: Sequence[frozenset], old: Sequence[frozenset]
) -> bool:
    """``new`` is preferred to ``old`` (both given as per-stratum sets).

    At the highest stratum where they differ, ``new`` must strictly
    contain ``old``.
    """
    for h in reversed(range(max(len(new), len(old)))):
        a = new[h] if h < len(new) else frozenset()
        b = old[h] if h < len(old) else frozenset()
        if a != b:
            return b < a
    return False


def lex_prefers(new: Sequence[frozenset], old: Sequence[frozenset]) -> bool:
    """Like ``prefers`` but comparing stratum sizes instead of inclusion."""
    for h in reversed(range(max(len(new), len(old)))):
        a = len(new[h]) if h < len(new) else 0
        b = len(old[h]) if h < len(old) else 0
        if a != b:
            return a > b
    return False


def _subset_maximal(layer, fits) -> list[tuple]:
    found: list[tuple] = []
    for size in range(len(layer), -1, -1):
        for q in combinations(layer, size):
            if any(set(q) <= set(f) for f in found):
                continue
            if fits(q):
                found.append(q)
    return found


def _largest(layer, fits) -> list[tuple]:
    for size in range(len(layer), -1, -1):
        found = [q for q in combinations(layer, size) if fits(q)]
        if found:
            return found
    return []


_POLICIES: dict[str, Callable] = {MP: _subset_maximal, LEX: _largest}


def find_bases(
    kb: KnowledgeBase, ranking: RankingResult, b: Concept, method: str = MP
) -> list[Base]:
    """All preferred bases for subject ``b``; empty when ``b`` has infinite rank."""
    policy = _POLICIES[method]
    k = concept_rank(ranking, b)
    if k == math.inf:
        return []
    stage = ranking.stage(k)
    order = {d: i for i, d in enumerate(kb.defeasible)}
    memo: dict[frozenset, bool] = {}

    def compatible(defaults: frozenset) -> bool:
        if defaults not in memo:
            memo[defaults] = is_compatible(
                stage, materialize(defaults), b, ranking.max_nodes
            )
        return memo[defaults]

    results: dict[tuple, Base] = {}

    def descend(h: int, picked: tuple[tuple[DefeasibleInclusion, ...], ...]) -> None:
        if h < 0:
            selection = tuple(reversed(picked))
            base = Base(selection, stage.defeasible, k)
            key = tuple(sorted(order[d] for d in base.full))
            results.setdefault(key, base)
            return
        so_far = frozenset(chain.from_iterable(picked))
        for q in policy(ranking.strata[h], lambda q: compatible(so_far | frozenset(q))):
            descend(h - 1, picked + (q,))

    descend(k - 1, ())
    return [results[key] for key in sorted(results)]


def mp_bases(kb: KnowledgeBase, ranking: RankingResult, b: Concept) -> list[Base]:
    return find_bases(kb, ranking, b, MP)


def lex_bases(kb: KnowledgeBase, ranking: RankingResult, b: Concept) -> list[Base]:
    return find_bases(kb, ranking, b, LEX)


@dataclass(frozen=True)
class ClosureReport:
    """Verdict of a closure query with the per-base outcomes behind it."""

    entailed: bool
    rank: int | float | None
    bases: tuple[tuple[Base, bool], ...] = ()


def closure_report(
    kb: KnowledgeBase, ranking: RankingResult, q: Query, method: str = MP
) -> ClosureReport:
    if not q.typical:
        return ClosureReport(strict_query_entails(kb, ranking, q), None)
    k = concept_rank(ranking, q.lhs)
    if k == math.inf:
        return ClosureReport(True, k)
    stage = ranking.stage(k)
    outcomes = tuple(
        (
            base,
            guarded_entails(
                stage, materialize(base.chosen), q.lhs, q.rhs, ranking.max_nodes
            ),
        )
        for base in find_bases(kb, ranking, q.lhs, method)
    )
    return ClosureReport(all(ok for _, ok in outcomes), k, outcomes)


def mp_entails(kb: KnowledgeBase, ranking: RankingResult, q: Query) -> bool:
    return closure_report(kb, ranking, q, MP).entailed


def lex_entails(kb: KnowledgeBase, ranking: RankingResult, q: Query) -> bool:
    return closure_report(kb, ranking, q, LEX).entailed
