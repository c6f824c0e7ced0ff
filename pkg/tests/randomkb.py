"""Seeded generator of small role-free knowledge bases for property tests."""

from __future__ import annotations

import random

from defeasible_alc.concepts import TOP, And, Atom, Not, Or
from defeasible_alc.kb import DefeasibleInclusion, KnowledgeBase, Query, StrictInclusion

ATOMS = ("p", "q", "r")


def literal(rng: random.Random, names):
    a = Atom(rng.choice(names))
    return Not(a) if rng.random() < 0.4 else a


def small_concept(rng: random.Random, names):
    roll = rng.random()
    if roll < 0.55:
        return literal(rng, names)
    if roll < 0.8:
        return And(literal(rng, names), literal(rng, names))
    if roll < 0.95:
        return Or(literal(rng, names), literal(rng, names))
    return TOP


def random_kb(rng: random.Random, max_atoms: int = 3, max_defaults: int = 5) -> KnowledgeBase:
    names = ATOMS[: rng.randint(1, max_atoms)]
    strict = [
        StrictInclusion(small_concept(rng, names), literal(rng, names))
        for _ in range(rng.randint(0, 2))
    ]
    defaults = [
        DefeasibleInclusion(small_concept(rng, names), literal(rng, names))
        for _ in range(rng.randint(1, max_defaults))
    ]
    return KnowledgeBase.build(strict, defaults)


def typical_queries(rng: random.Random, kb: KnowledgeBase, count: int = 4) -> list[Query]:
    names = sorted(kb.atom_names()) or ["p"]
    subjects = [d.subject for d in kb.defeasible]
    out = []
    for _ in range(count):
        lhs = rng.choice(subjects) if rng.random() < 0.6 else small_concept(rng, names)
        out.append(Query(lhs, literal(rng, names), typical=True))
    return out
