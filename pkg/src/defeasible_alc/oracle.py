"""Brute-force model checking on the role-free fragment.

Everything here works on truth tables and shares no reasoning code with
the tableau path, so it can serve as ground truth for the closures.

A domain element is a valuation (the set of atoms it makes true).  The
domain of a canonical model is every valuation that satisfies the strict
axioms and the materialization of the defaults of infinite rank.  Ranked
preferences are encoded as rank functions, so modularity and
well-foundedness hold by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .concepts import And, Atom, Bot, Concept, Exists, Forall, Not, Or, Top, atoms, canonical, roles
from .kb import DefeasibleInclusion, KnowledgeBase, Query

Valuation = frozenset  # of atom names that are true

DEFAULT_MAX_ATOMS = 5
DEFAULT_MAX_DOMAIN = 16


class OracleError(Exception):
    """Base class for oracle failures."""


class RoleBearingKB(OracleError, ValueError):
    """The oracle only handles KBs and queries without roles."""


class BoundsExceeded(OracleError):
    """Too many atoms, domain elements or rank levels for exhaustive search."""


class VerificationError(OracleError):
    """A constructed model failed re-verification; indicates an internal bug."""


@dataclass(frozen=True)
class OracleBounds:
    max_atoms: int = DEFAULT_MAX_ATOMS
    max_domain: int = DEFAULT_MAX_DOMAIN
    # highest global rank allowed in an S-enriched model; None keeps every
    # level a rank function on the domain can use
    max_level: int | None = None


def holds(c: Concept, v: Valuation) -> bool:
    if isinstance(c, Atom):
        return c.name in v
    if isinstance(c, Top):
        return True
    if isinstance(c, Bot):
        return False
    if isinstance(c, Not):
        return not holds(c.child, v)
    if isinstance(c, And):
        return holds(c.left, v) and holds(c.right, v)
    if isinstance(c, Or):
        return holds(c.left, v) or holds(c.right, v)
    if isinstance(c, (Exists, Forall)):
        raise RoleBearingKB(f"quantified concept in role-free evaluation: {c}")
    raise TypeError(f"not a concept: {c!r}")


def _respects(defaults: Iterable[DefeasibleInclusion], v: Valuation) -> bool:
    return all(not holds(d.subject, v) or holds(d.aspect, v) for d in defaults)


@dataclass
class OracleModel:
    """A finite role-free interpretation with rank functions.

    ``aspect_rank`` maps ``(aspect, valuation)`` to 0 or 1; it is empty for
    a plain ranked model.
    """

    atoms: tuple[str, ...]
    domain: tuple[Valuation, ...]
    global_rank: dict[Valuation, int]
    aspect_rank: dict[tuple[Concept, Valuation], int] = field(default_factory=dict)

    def extension(self, c: Concept) -> list[Valuation]:
        return [x for x in self.domain if holds(c, x)]

    def concept_rank(self, c: Concept) -> float:
        ranks = [self.global_rank[x] for x in self.extension(c)]
        return min(ranks) if ranks else float("inf")

    def typical(self, c: Concept) -> list[Valuation]:
        ext = self.extension(c)
        if not ext:
            return []
        low = min(self.global_rank[x] for x in ext)
        return [x for x in ext if self.global_rank[x] == low]

    def satisfies(self, q: Query) -> bool:
        members = self.typical(q.lhs) if q.typical else self.extension(q.lhs)
        return all(holds(q.rhs, x) for x in members)

    def key(self) -> tuple[int, ...]:
        return tuple(self.global_rank[x] for x in self.domain)

    def show_valuation(self, x: Valuation) -> str:
        return " and ".join(a if a in x else f"not {a}" for a in self.atoms)


def _check_role_free(kb: KnowledgeBase, extra: Iterable[Concept]) -> None:
    if not kb.is_role_free() or any(roles(c) for c in extra):
        raise RoleBearingKB("the semantic oracle needs a role-free KB and query")


def _universe(kb: KnowledgeBase, extra: Iterable[Concept], bounds: OracleBounds) -> tuple[str, ...]:
    extra = list(extra)
    _check_role_free(kb, extra)
    names = set(kb.atom_names())
    for c in extra:
        names |= atoms(c)
    if len(names) > bounds.max_atoms:
        raise BoundsExceeded(
            f"{len(names)} atoms exceed the oracle bound of {bounds.max_atoms}"
        )
    return tuple(sorted(names))


def _all_valuations(names: Sequence[str]) -> list[Valuation]:
    # ordered by the truth-value tuple over sorted atoms, false before true
    return [
        frozenset(a for a, bit in zip(names, bits) if bit)
        for bits in product((False, True), repeat=len(names))
    ]


def truth_table_stages(
    kb: KnowledgeBase, valuations: Sequence[Valuation]
) -> list[tuple[DefeasibleInclusion, ...]]:
    """Default sets of the exceptionality sequence, recomputed by truth tables.

    ``valuations`` must be those satisfying the strict axioms.  The last
    entry is the fixpoint (the defaults of infinite rank, possibly none).
    """

    def exceptional(c: Concept, stage) -> bool:
        return not any(holds(c, v) and _respects(stage, v) for v in valuations)

    stages = [kb.defeasible]
    while True:
        nxt = tuple(d for d in stages[-1] if exceptional(d.subject, stages[-1]))
        if nxt == stages[-1]:
            return stages
        stages.append(nxt)


def _strict_valuations(kb: KnowledgeBase, names: Sequence[str]) -> list[Valuation]:
    return [
        v
        for v in _all_valuations(names)
        if all(not holds(s.lhs, v) or holds(s.rhs, v) for s in kb.strict)
    ]


def enumerate_domain(
    kb: KnowledgeBase,
    extra: Iterable[Concept] = (),
    bounds: OracleBounds | None = None,
) -> list[Valuation]:
    """Valuations over the atoms of ``kb`` (and of ``extra``) consistent with ``kb``.

    These satisfy the strict axioms and every default of infinite rank;
    elements violating such a default cannot occur in any model.
    """
    bounds = bounds or OracleBounds()
    names = _universe(kb, extra, bounds)
    strict_vals = _strict_valuations(kb, names)
    infinite = truth_table_stages(kb, strict_vals)[-1]
    return [v for v in strict_vals if _respects(infinite, v)]


def minimal_ranked_model(
    kb: KnowledgeBase,
    extra: Iterable[Concept] = (),
    bounds: OracleBounds | None = None,
) -> OracleModel:
    """The pointwise-least canonical ranked model of ``kb``.

    Each valuation gets the first stage whose defaults it all satisfies.
    """
    bounds = bounds or OracleBounds()
    names = _universe(kb, extra, bounds)
    strict_vals = _strict_valuations(kb, names)
    stages = truth_table_stages(kb, strict_vals)
    domain = tuple(v for v in strict_vals if _respects(stages[-1], v))
    rank = {}
    for x in domain:
        rank[x] = next(i for i, s in enumerate(stages) if _respects(s, x))
    model = OracleModel(names, domain, rank)
    for d in kb.defeasible:
        if not model.satisfies(Query(d.subject, d.aspect, typical=True)):
            raise VerificationError(f"ranked model violates {d}")
    return model


def oracle_rc_entails(kb: KnowledgeBase, q: Query, bounds: OracleBounds | None = None) -> bool:
    return minimal_ranked_model(kb, (q.lhs, q.rhs), bounds).satisfies(q)


# S-enriched models


def aspect_ranks(
    kb: KnowledgeBase, domain: Sequence[Valuation]
) -> dict[tuple[Concept, Valuation], int]:
    """Two-level aspect ranks: 0 iff every default with that aspect is satisfied."""
    by_aspect: dict[Concept, list[DefeasibleInclusion]] = {}
    for d in kb.defeasible:
        by_aspect.setdefault(canonical(d.aspect), []).append(d)
    return {
        (a, x): 0 if _respects(ds, x) else 1
        for a, ds in by_aspect.items()
        for x in domain
    }


def weak_orders(n: int) -> Iterator[tuple[int, ...]]:
    """Every weak order on ``range(n)`` as a tuple of levels (0 = lowest)."""

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            used = set(prefix)
            if used == set(range(len(used))):
                yield prefix
            return
        for level in range(n):
            yield from extend(prefix + (level,))

    yield from extend(())


class _Search:
    """Constraint data shared by every candidate concept-rank order."""

    def __init__(self, kb: KnowledgeBase, domain: Sequence[Valuation], condition_a: bool):
        self.n = len(domain)
        index = range(self.n)
        self.aspect_rank = aspect_ranks(kb, domain)
        defaults = list(kb.defeasible)
        aspect = [canonical(d.aspect) for d in defaults]
        member = [[holds(d.subject, x) for x in domain] for d in defaults]
        self.members = [[i for i in index if row[i]] for row in member]
        self.violators = [
            [i for i in self.members[t] if not holds(d.aspect, domain[i])]
            for t, d in enumerate(defaults)
        ]
        # distinct non-empty subject extensions; defaults sharing one share its rank
        groups: list[tuple[int, ...]] = []
        self.group_of: list[int | None] = []
        for ext in self.members:
            key = tuple(ext)
            if not key:
                self.group_of.append(None)
                continue
            if key not in groups:
                groups.append(key)
            self.group_of.append(groups.index(key))
        self.groups = groups

        def below(t: int, i: int, j: int) -> bool:
            a = aspect[t]
            return self.aspect_rank[(a, domain[i])] < self.aspect_rank[(a, domain[j])]

        self.fixed_edges: list[tuple[int, int]] = []
        # (x, y, groups supporting x < y, groups opposing it)
        self.specificity: list[tuple[int, int, frozenset, frozenset]] = []
        for i in index:
            for j in index:
                if i == j:
                    continue
                pro = [t for t in range(len(defaults)) if below(t, i, j) and member[t][j]]
                con = [t for t in range(len(defaults)) if below(t, j, i) and member[t][i]]
                if pro:
                    self.specificity.append(
                        (
                            i,
                            j,
                            frozenset(self.group_of[t] for t in pro),
                            frozenset(self.group_of[t] for t in con),
                        )
                    )
                if condition_a:
                    some_better = any(below(t, i, j) for t in range(len(defaults)))
                    none_worse = not any(below(t, j, i) for t in range(len(defaults)))
                    if some_better and none_worse:
                        self.fixed_edges.append((i, j))

    def least_ranks(self, order: Sequence[int], enforce_order: bool = True) -> list[int] | None:
        """Least rank function meeting the requirements for subject-rank ``order``.

        With ``enforce_order`` the result must also realize ``order`` as the
        ranks of the subject groups; otherwise ``order`` only decides which
        specificity requirements apply.
        """
        edges = list(self.fixed_edges)
        for i, j, pro, con in self.specificity:
            top = max(order[g] for g in pro)
            if all(order[g] < top for g in con):
                edges.append((i, j))
        k = [0] * self.n
        groups = self.groups
        changed = True
        while changed:
            changed = False
            for i, j in edges:
                if k[j] <= k[i]:
                    k[j] = k[i] + 1
                    changed = True
            for members, violators in zip(self.members, self.violators):
                if violators:
                    floor = min(k[i] for i in members) + 1
                    for y in violators:
                        if k[y] < floor:
                            k[y] = floor
                            changed = True
            for g, gm in enumerate(groups if enforce_order else ()):
                low = min(k[i] for i in gm)
                for h, hm in enumerate(groups):
                    if h == g or order[h] < order[g]:
                        continue
                    floor = low + 1 if order[h] > order[g] else low
                    for z in hm:
                        if k[z] < floor:
                            k[z] = floor
                            changed = True
            if any(r >= self.n for r in k):
                return None
        return k


def _pointwise_minimal(models: list[OracleModel]) -> list[OracleModel]:
    keys = [m.key() for m in models]

    def dominated(a: tuple, b: tuple) -> bool:
        return all(p <= q for p, q in zip(b, a)) and b != a

    return [m for m, a in zip(models, keys) if not any(dominated(a, b) for b in keys)]


def minimal_s_enriched_models(
    kb: KnowledgeBase,
    extra: Iterable[Concept] = (),
    bounds: OracleBounds | None = None,
    condition_a: bool = True,
    reading: str = "model",
) -> list[OracleModel]:
    """All minimal canonical S-enriched models of a role-free ``kb``.

    Aspect ranks take the two-level minimal shape.  For each weak order of
    the subject concepts' ranks the specificity condition becomes a fixed
    set of ``x < y`` requirements, and the least rank function meeting
    them (together with typicality and the chosen order) is computed as a
    fixpoint; the pointwise-minimal results over all orders are returned.
    With ``condition_a=False`` the aspect-dominance requirement is left
    out of the search (the result is still checked against it).

    ``reading="rc"`` compares subject concepts in the specificity condition
    by their ranks in the minimal ranked model instead of by their ranks in
    the model being built; there is then a single least model.
    """
    if reading not in ("model", "rc"):
        raise ValueError(f"unknown reading {reading!r}")
    bounds = bounds or OracleBounds()
    domain = enumerate_domain(kb, extra, bounds)
    if len(domain) > bounds.max_domain:
        raise BoundsExceeded(
            f"{len(domain)} domain elements exceed the oracle bound of {bounds.max_domain}"
        )
    names = _universe(kb, extra, bounds)
    search = _Search(kb, domain, condition_a)
    found: dict[tuple[int, ...], OracleModel] = {}
    subject_ranks = None
    if reading == "rc":
        ranked = minimal_ranked_model(kb, extra, bounds)
        orders = [tuple(min(ranked.global_rank[domain[i]] for i in g) for g in search.groups)]
        subject_ranks = {d: ranked.concept_rank(d.subject) for d in kb.defeasible}
    else:
        orders = weak_orders(len(search.groups))
    for order in orders:
        k = search.least_ranks(order, enforce_order=reading == "model")
        if k is None:
            continue
        if bounds.max_level is not None and max(k, default=0) > bounds.max_level:
            continue
        model = OracleModel(
            names,
            tuple(domain),
            dict(zip(domain, k)),
            search.aspect_rank,
        )
        found.setdefault(model.key(), model)
    if not found:
        raise BoundsExceeded("no S-enriched rank function exists within the level bound")
    minimal = _pointwise_minimal([found[key] for key in sorted(found)])
    for model in minimal:
        problems = s_model_violations(kb, model, True, subject_ranks)
        if problems:
            raise VerificationError("; ".join(problems))
    return minimal


def s_model_violations(
    kb: KnowledgeBase,
    model: OracleModel,
    condition_a: bool = True,
    subject_ranks: dict | None = None,
) -> list[str]:
    """Conditions of an S-enriched canonical model that ``model`` breaks.

    Concept ranks in the specificity condition are read off ``model``
    unless ``subject_ranks`` supplies them.
    """
    problems: list[str] = []
    rank, domain = model.global_rank, model.domain
    expected = enumerate_domain(kb, (), OracleBounds(max_atoms=len(model.atoms) + 1))
    present = {x & frozenset(kb.atom_names()) for x in domain}
    if not set(expected) <= present:
        problems.append("domain is not canonical")
    for s in kb.strict:
        if any(holds(s.lhs, x) and not holds(s.rhs, x) for x in domain):
            problems.append(f"strict inclusion {s} fails")
    levels = sorted(set(rank.values()))
    if levels != list(range(len(levels))):
        problems.append("global ranks have gaps")

    def asp(d: DefeasibleInclusion, x: Valuation) -> int:
        return model.aspect_rank[(canonical(d.aspect), x)]

    for d in kb.defeasible:
        if not model.satisfies(Query(d.subject, d.aspect, typical=True)):
            problems.append(f"typical {d.subject} are not all {d.aspect}")
        ext = model.extension(d.subject)
        if ext:
            low = min(asp(d, x) for x in ext)
            if any(asp(d, x) == low and not holds(d.aspect, x) for x in ext):
                problems.append(f"aspect-typical {d.subject} are not all {d.aspect}")
    subject_rank = subject_ranks or {d: model.concept_rank(d.subject) for d in kb.defeasible}
    for x in domain:
        for y in domain:
            if x == y or rank[x] < rank[y]:
                continue
            pro = [d for d in kb.defeasible if asp(d, x) < asp(d, y) and holds(d.subject, y)]
            con = [d for d in kb.defeasible if asp(d, y) < asp(d, x) and holds(d.subject, x)]
            if pro and all(
                any(subject_rank[j] < subject_rank[k] for k in pro) for j in con
            ):
                problems.append(f"specificity requires {sorted(x)} < {sorted(y)}")
            if condition_a:
                better = any(asp(d, x) < asp(d, y) for d in kb.defeasible)
                worse = any(asp(d, y) < asp(d, x) for d in kb.defeasible)
                if better and not worse:
                    problems.append(f"aspect dominance requires {sorted(x)} < {sorted(y)}")
    return problems


def oracle_s_entails(
    kb: KnowledgeBase,
    q: Query,
    bounds: OracleBounds | None = None,
    condition_a: bool = True,
    reading: str = "model",
) -> bool:
    """``q`` holds in every minimal canonical S-enriched model."""
    models = minimal_s_enriched_models(kb, (q.lhs, q.rhs), bounds, condition_a, reading)
    return all(m.satisfies(q) for m in models)
