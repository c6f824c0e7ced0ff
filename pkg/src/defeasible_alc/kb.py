"""Knowledge-base statements, queries and the materialization of defaults."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .concepts import (
    TOP,
    Concept,
    Not,
    Or,
    atoms,
    canonical,
    conjoin,
    roles,
    show,
)


class NamespaceError(ValueError):
    """A name is used both as a concept atom, a role or an individual."""


@dataclass(frozen=True)
class StrictInclusion:
    lhs: Concept
    rhs: Concept

    def __str__(self) -> str:
        return f"{show(self.lhs)} <= {show(self.rhs)}"

    def canonical(self) -> "StrictInclusion":
        return StrictInclusion(canonical(self.lhs), canonical(self.rhs))


@dataclass(frozen=True)
class DefeasibleInclusion:
    """``T(subject) <= aspect``: typical instances of ``subject`` are ``aspect``."""

    subject: Concept
    aspect: Concept

    def __str__(self) -> str:
        return f"T({show(self.subject)}) <= {show(self.aspect)}"

    def canonical(self) -> "DefeasibleInclusion":
        return DefeasibleInclusion(canonical(self.subject), canonical(self.aspect))

    def materialization(self) -> Concept:
        return Or(Not(self.subject), self.aspect)


@dataclass(frozen=True)
class Query:
    """A subsumption query ``lhs <= rhs``, or ``T(lhs) <= rhs`` when typical."""

    lhs: Concept
    rhs: Concept
    typical: bool = False

    def __str__(self) -> str:
        left = f"T({show(self.lhs)})" if self.typical else show(self.lhs)
        return f"{left} <= {show(self.rhs)}"


@dataclass(frozen=True)
class KnowledgeBase:
    """A TBox of strict and defeasible inclusions plus an ABox.

    All concepts are stored in canonical form.  ``strict`` is sorted and
    duplicate-free; ``defeasible`` keeps input order with duplicates
    dropped.
    """

    strict: tuple[StrictInclusion, ...] = ()
    defeasible: tuple[DefeasibleInclusion, ...] = ()
    concept_assertions: tuple[tuple[Concept, str], ...] = ()
    role_assertions: tuple[tuple[str, str, str], ...] = ()

    @classmethod
    def build(
        cls,
        strict: Iterable[StrictInclusion] = (),
        defeasible: Iterable[DefeasibleInclusion] = (),
        concept_assertions: Iterable[tuple[Concept, str]] = (),
        role_assertions: Iterable[tuple[str, str, str]] = (),
    ) -> "KnowledgeBase":
        """Canonicalise, deduplicate and check namespaces."""
        strict_set = {s.canonical() for s in strict}
        defaults: list[DefeasibleInclusion] = []
        seen = set()
        for d in defeasible:
            d = d.canonical()
            if d not in seen:
                seen.add(d)
                defaults.append(d)
        cas = sorted(
            {(canonical(c), a) for c, a in concept_assertions},
            key=lambda p: (p[1], show(p[0])),
        )
        ras = sorted(set(role_assertions))
        kb = cls(
            strict=tuple(sorted(strict_set, key=str)),
            defeasible=tuple(defaults),
            concept_assertions=tuple(cas),
            role_assertions=tuple(ras),
        )
        kb.check_namespaces()
        return kb

    def concepts(self) -> list[Concept]:
        out: list[Concept] = []
        for s in self.strict:
            out += [s.lhs, s.rhs]
        for d in self.defeasible:
            out += [d.subject, d.aspect]
        out += [c for c, _ in self.concept_assertions]
        return out

    def atom_names(self) -> set[str]:
        return set().union(*(atoms(c) for c in self.concepts()))

    def role_names(self) -> set[str]:
        names = set().union(*(roles(c) for c in self.concepts()))
        return names | {r for r, _, _ in self.role_assertions}

    def individuals(self) -> set[str]:
        names = {a for _, a in self.concept_assertions}
        for _, a, b in self.role_assertions:
            names |= {a, b}
        return names

    def check_namespaces(self) -> None:
        atom_names, role_names, inds = (
            self.atom_names(),
            self.role_names(),
            self.individuals(),
        )
        for label, clash in (
            ("concept and role", atom_names & role_names),
            ("concept and individual", atom_names & inds),
            ("role and individual", role_names & inds),
        ):
            if clash:
                raise NamespaceError(
                    f"names used as both {label}: {', '.join(sorted(clash))}"
                )

    def is_role_free(self) -> bool:
        return not self.role_names()

    def __str__(self) -> str:
        return print_kb(self)


def materialize(defaults: Iterable[DefeasibleInclusion]) -> Concept:
    """Conjunction of ``not C or D`` over the defaults ``T(C) <= D``.

    Conjuncts are sorted by printed form so the result does not depend on
    the order of the input; the empty set gives ``Top``.
    """
    parts = {d.materialization() for d in defaults}
    if not parts:
        return TOP
    return conjoin(sorted(parts, key=show))


def aspects(kb: KnowledgeBase) -> list[Concept]:
    """Distinct right-hand sides of the defeasible inclusions, in input order."""
    out: list[Concept] = []
    for d in kb.defeasible:
        a = canonical(d.aspect)
        if a not in out:
            out.append(a)
    return out


def print_kb(kb: KnowledgeBase) -> str:
    lines = [f"{s}." for s in kb.strict]
    lines += [f"{d}." for d in kb.defeasible]
    for c, a in kb.concept_assertions:
        lines.append(f"({show(c)})({a}).")
    for r, a, b in kb.role_assertions:
        lines.append(f"{r}({a}, {b}).")
    return "\n".join(lines) + ("\n" if lines else "")
