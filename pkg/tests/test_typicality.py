import random

import pytest

from defeasible_alc.concepts import BOT, TOP, Atom
from defeasible_alc.kb import materialize
from defeasible_alc.oracle import minimal_ranked_model
from defeasible_alc.parser import parse_concept, parse_kb, parse_query
from defeasible_alc.ranking import compute_ranking
from defeasible_alc.typicality import (
    TBoxStage,
    guarded_entails,
    is_exceptional,
    strict_query_entails,
)

from randomkb import random_kb, small_concept

Penguin, Bird, HNF = Atom("Penguin"), Atom("Bird"), Atom("HasNiceFeather")


@pytest.fixture
def kb1_stages(rankings):
    return rankings["kb1"].stages


class TestExceptionality:
    def test_penguin_exceptional_at_start(self, kb1_stages):
        assert is_exceptional(Penguin, kb1_stages[0])

    def test_bird_not_exceptional(self, kb1_stages):
        assert not is_exceptional(Bird, kb1_stages[0])

    @pytest.mark.parametrize("text", ["Bot", "A and not A", "Penguin and not Bird"])
    def test_empty_concepts_always_exceptional(self, kb1_stages, text):
        for stage in kb1_stages:
            assert is_exceptional(parse_concept(text), stage)

    def test_monotone_along_stages(self, kb1_stages, rankings):
        pool = [parse_concept(t) for t in ("Bird", "Penguin", "Penguin and Fly", "Fly", "not Bird")]
        for name in ("kb1", "kb2", "kb4"):
            stages = rankings[name].stages
            for c in pool:
                flags = [is_exceptional(c, e) for e in stages]
                first_clear = flags.index(False) if False in flags else len(flags)
                assert not any(flags[first_clear:])


class TestGuardedEntailment:
    def test_penguins_keep_nice_feathers(self, kb1_stages, kbs):
        defaults = {str(d): d for d in kbs["kb1"].defeasible}
        s = materialize([defaults["T(Penguin) <= not Fly"], defaults["T(Bird) <= HasNiceFeather"]])
        assert guarded_entails(kb1_stages[1], s, Penguin, HNF)

    def test_penguins_stay_possible(self, kb1_stages, kbs):
        defaults = {str(d): d for d in kbs["kb1"].defeasible}
        s = materialize([defaults["T(Penguin) <= not Fly"], defaults["T(Bird) <= HasNiceFeather"]])
        assert not guarded_entails(kb1_stages[1], s, Penguin, BOT)

    def test_vacuous_subject(self, kb1_stages):
        for stage in kb1_stages:
            assert guarded_entails(stage, TOP, BOT, Atom("Anything"))


class TestStrictQueries:
    def test_stated_axiom(self, kbs, rankings):
        assert strict_query_entails(kbs["kb1"], rankings["kb1"], parse_query("Penguin <= Bird"))

    def test_infinite_rank_default_is_strict(self):
        kb = parse_kb("T(A) <= Bot.")
        assert strict_query_entails(kb, compute_ranking(kb), parse_query("A <= Bot"))

    def test_defaults_are_not_strict(self, kbs, rankings):
        assert not strict_query_entails(kbs["kb1"], rankings["kb1"], parse_query("Bird <= Fly"))

    def test_rejects_typical_query(self, kbs, rankings):
        with pytest.raises(ValueError):
            strict_query_entails(kbs["kb1"], rankings["kb1"], parse_query("T(Bird) <= Fly"))


def test_reduction_matches_ranked_models():
    """Exceptionality by tableau equals 'no rank-0 member' in the oracle's ranked model."""
    rng = random.Random(11)
    for _ in range(60):
        kb = random_kb(rng, max_atoms=3, max_defaults=4)
        names = sorted(kb.atom_names())
        stage = TBoxStage(kb.strict, kb.defeasible)
        model = minimal_ranked_model(kb, [Atom(n) for n in names])
        pool = [small_concept(rng, names) for _ in range(5)] + [d.subject for d in kb.defeasible]
        for c in pool:
            rank0 = [x for x in model.extension(c) if model.global_rank[x] == 0]
            assert is_exceptional(c, stage) is (not rank0), (str(kb), str(c))
