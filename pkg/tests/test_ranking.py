import math
import random

import pytest

from defeasible_alc.kb import Query
from defeasible_alc.oracle import oracle_rc_entails
from defeasible_alc.parser import parse_concept, parse_kb, parse_query
from defeasible_alc.ranking import compute_ranking, concept_rank, format_rank, rc_entails
from defeasible_alc.typicality import is_exceptional

from randomkb import random_kb

LITERAL_POOL = ["Top", "p", "not p", "q", "not q", "r", "not r", "p and q", "p and not r"]


def strata_text(ranking):
    return [sorted(str(d) for d in layer) for layer in ranking.strata]


class TestStrata:
    def test_kb1(self, rankings):
        assert strata_text(rankings["kb1"]) == [
            ["T(Bird) <= Fly", "T(Bird) <= HasNiceFeather"],
            ["T(Penguin) <= not Fly"],
        ]
        assert rankings["kb1"].infinite_defaults == ()

    def test_kb1_stages(self, rankings):
        stages = rankings["kb1"].stages
        assert [sorted(str(d) for d in e.defeasible) for e in stages] == [
            ["T(Bird) <= Fly", "T(Bird) <= HasNiceFeather", "T(Penguin) <= not Fly"],
            ["T(Penguin) <= not Fly"],
            [],
        ]
        assert all([str(s) for s in e.strict] == ["Penguin <= Bird"] for e in stages)

    def test_kb4_three_strata(self, rankings):
        assert strata_text(rankings["kb4"]) == [
            ["T(Bird) <= Fly"],
            ["T(Penguin) <= BlackFeather", "T(Penguin) <= not Fly"],
            ["T(BabyPenguin) <= not BlackFeather"],
        ]

    def test_unsatisfiable_subject_has_infinite_rank(self):
        ranking = compute_ranking(parse_kb("T(A and not A) <= B."))
        assert [str(d) for d in ranking.infinite_defaults] == ["T(A and not A) <= B"]
        assert ranking.strata == []
        assert ranking.default_rank[ranking.infinite_defaults[0]] == math.inf

    def test_no_defaults(self):
        ranking = compute_ranking(parse_kb("A <= B."))
        assert len(ranking.stages) == 1 and ranking.strata == []


class TestConceptRank:
    @pytest.mark.parametrize(
        "kb_name, concept, rank",
        [
            ("kb1", "Bird", 0),
            ("kb1", "Penguin", 1),
            ("kb1", "Penguin and Fly", 2),
            ("kb1", "A and not A", math.inf),
            ("kb4", "BabyPenguin", 2),
            ("kb4", "BabyPenguin and Fly", 2),
            ("kb4", "BabyPenguin and not Fly", 2),
            ("kb2", "Penguin and A and H", math.inf),
        ],
    )
    def test_values(self, rankings, kb_name, concept, rank):
        assert concept_rank(rankings[kb_name], parse_concept(concept)) == rank

    def test_memoized_by_canonical_form(self, kbs):
        ranking = compute_ranking(kbs["kb1"])
        concept_rank(ranking, parse_concept("Penguin and Fly"))
        assert len(ranking.concept_rank_cache) == 1
        concept_rank(ranking, parse_concept("Fly and Penguin"))
        assert len(ranking.concept_rank_cache) == 1

    def test_cached_ranks_are_least_non_exceptional_stage(self, kbs):
        ranking = compute_ranking(kbs["kb4"])
        for text in ("Bird", "Penguin and Fly", "BabyPenguin and BlackFeather", "Fly"):
            concept_rank(ranking, parse_concept(text))
        for c, rank in ranking.concept_rank_cache.items():
            for j, stage in enumerate(ranking.stages):
                assert is_exceptional(c, stage) is (j < rank)

    def test_format(self):
        assert format_rank(math.inf) == "inf" and format_rank(3) == "3"


class TestRcEntails:
    @pytest.mark.parametrize(
        "kb_name, query, expected",
        [
            ("kb1", "T(Bird) <= Fly", True),
            ("kb1", "T(Penguin) <= HasNiceFeather", False),
            ("kb1", "T(Penguin) <= not Fly", True),
            ("kb1", "T(Penguin) <= Bird", True),
            ("kb1", "Penguin <= Bird", True),
            ("kb1", "Bird <= Fly", False),
            ("kb4", "T(BabyPenguin) <= not Fly", False),
            ("kb4", "T(BabyPenguin) <= not BlackFeather", True),
            ("kb2", "T(Penguin and A and H) <= Fly", True),
        ],
    )
    def test_examples(self, kbs, rankings, kb_name, query, expected):
        assert rc_entails(kbs[kb_name], rankings[kb_name], parse_query(query)) is expected


def test_random_kb_invariants():
    rng = random.Random(3)
    for _ in range(80):
        kb = random_kb(rng)
        ranking = compute_ranking(kb)
        assert len(ranking.stages) <= len(kb.defeasible) + 1
        layered = [d for layer in ranking.strata for d in layer]
        assert sorted(map(str, layered + list(ranking.infinite_defaults))) == sorted(
            map(str, kb.defeasible)
        )
        for d, rank in ranking.default_rank.items():
            assert concept_rank(ranking, d.subject) == rank


def test_agrees_with_minimal_ranked_models():
    rng = random.Random(5)
    pool = [parse_concept(t) for t in LITERAL_POOL]
    for _ in range(40):
        kb = random_kb(rng)
        ranking = compute_ranking(kb)
        for lhs in pool:
            for rhs in pool[1:7]:
                for typical in (True, False):
                    q = Query(lhs, rhs, typical)
                    assert rc_entails(kb, ranking, q) is oracle_rc_entails(kb, q), (str(kb), str(q))
