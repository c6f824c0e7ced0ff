"""Brute-force base enumeration over every subset of the defaults."""

import itertools
import math

from defeasible_alc.bases import MP, lex_prefers, prefers
from defeasible_alc.kb import materialize
from defeasible_alc.ranking import concept_rank
from defeasible_alc.typicality import is_compatible


def naive_bases(kb, ranking, b, method):
    """Every S drawn from all defaults, filtered for compatibility, keeping the preferred ones."""
    k = concept_rank(ranking, b)
    stage = ranking.stage(k)
    top = len(ranking.strata)

    def layered(subset):
        layers = [set() for _ in range(top + 1)]
        for d in subset:
            r = ranking.default_rank[d]
            layers[top if r == math.inf else r].add(d)
        return [frozenset(x) for x in layers]

    candidates = [
        frozenset(s)
        for n in range(len(kb.defeasible) + 1)
        for s in itertools.combinations(kb.defeasible, n)
        if is_compatible(stage, materialize(s), b)
    ]
    better = prefers if method == MP else lex_prefers
    return sorted(
        sorted(str(d) for d in s)
        for s in candidates
        if not any(better(layered(t), layered(s)) for t in candidates)
    )
