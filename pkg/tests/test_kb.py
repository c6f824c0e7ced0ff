import itertools

from hypothesis import given
from hypothesis import strategies as st

from defeasible_alc.concepts import TOP, And, Atom, Not, Or
from defeasible_alc.kb import DefeasibleInclusion, KnowledgeBase, aspects, materialize
from defeasible_alc.parser import parse_kb

from strategies import concepts

Bird, Fly, Penguin = Atom("Bird"), Atom("Fly"), Atom("Penguin")


class TestMaterialize:
    def test_single(self):
        assert materialize([DefeasibleInclusion(Bird, Fly)]) == Or(Not(Bird), Fly)

    def test_empty(self):
        assert materialize([]) == TOP

    def test_two_defaults_sorted_by_printed_form(self):
        got = materialize(
            [DefeasibleInclusion(Penguin, Not(Fly)), DefeasibleInclusion(Bird, Fly)]
        )
        assert got == And(Or(Not(Bird), Fly), Or(Not(Penguin), Not(Fly)))

    def test_every_permutation_agrees(self):
        ds = [
            DefeasibleInclusion(Bird, Fly),
            DefeasibleInclusion(Penguin, Not(Fly)),
            DefeasibleInclusion(Bird, Atom("H")),
        ]
        results = {materialize(p) for p in itertools.permutations(ds)}
        assert len(results) == 1

    @given(st.lists(st.builds(DefeasibleInclusion, concepts(4), concepts(4)), max_size=4), st.randoms())
    def test_order_independent(self, ds, rng):
        shuffled = list(ds)
        rng.shuffle(shuffled)
        assert materialize(ds) == materialize(shuffled)


class TestAspects:
    def test_right_hand_sides_only(self, kbs):
        assert aspects(kbs["kb1"]) == [Atom("HasNiceFeather"), Fly, Not(Fly)]

    def test_no_defaults(self):
        assert aspects(parse_kb("A <= B.")) == []

    def test_shared_aspect(self):
        kb = parse_kb("T(Bird) <= Fly.\nT(Plane) <= Fly.")
        assert aspects(kb) == [Fly]


def test_kb_is_canonical_and_role_free_check():
    kb = KnowledgeBase.build(defeasible=[DefeasibleInclusion(Not(And(Bird, Fly)), Fly)])
    assert kb.defeasible[0].subject == Or(Not(Bird), Not(Fly))
    assert kb.is_role_free()
    assert not parse_kb("A <= exists r.B.").is_role_free()
