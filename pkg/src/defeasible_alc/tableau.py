"""Classical ALC satisfiability and subsumption with respect to a strict TBox.

Concepts are brought to canonical NNF and interned into a table whose ids
are assigned in post-order, so every sub-concept has a smaller id than
its parent.  Each strict axiom ``C <= D`` becomes the label member
``not C or D`` of every node.  The search itself runs in a kernel: the
compiled ``_kernel`` extension when it is built, the pure-Python
``_kernel_py`` otherwise (or when ``DEFEASIBLE_ALC_PURE`` is set).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from . import _kernel_py
from .concepts import (
    And,
    Atom,
    Bot,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    Top,
    canonical,
)
from .errors import ResourceLimitExceeded
from .kb import KnowledgeBase, Query, StrictInclusion

KERNELS = {"python": _kernel_py.Kernel}
try:
    from . import _kernel

    KERNELS["cython"] = _kernel.Kernel
except ImportError:  # extension not built
    pass

if os.environ.get("DEFEASIBLE_ALC_PURE") or "cython" not in KERNELS:
    BACKEND = "python"
else:
    BACKEND = "cython"

DEFAULT_MAX_NODES = 100_000


def default_max_nodes() -> int:
    """Node budget from ``DEFEASIBLE_ALC_MAX_NODES``, else 100 000."""
    raw = os.environ.get("DEFEASIBLE_ALC_MAX_NODES")
    if not raw:
        return DEFAULT_MAX_NODES
    value = int(raw)
    if value <= 0:
        raise ValueError("DEFEASIBLE_ALC_MAX_NODES must be a positive integer")
    return value


@dataclass
class ConceptTable:
    """Interned NNF sub-concepts, indexed by id."""

    ids: dict[Concept, int] = field(default_factory=dict)
    nodes: list[Concept] = field(default_factory=list)
    roles: dict[str, int] = field(default_factory=dict)

    def intern(self, c: Concept) -> int:
        found = self.ids.get(c)
        if found is not None:
            return found
        if isinstance(c, (And, Or)):
            self.intern(c.left)
            self.intern(c.right)
        elif isinstance(c, (Exists, Forall)):
            self.roles.setdefault(c.role, len(self.roles))
            self.intern(c.child)
        elif isinstance(c, Not) and not isinstance(c.child, Atom):
            raise ValueError(f"concept is not in NNF: {c!r}")
        self.ids[c] = len(self.nodes)
        self.nodes.append(c)
        return self.ids[c]

    def kernel(self, tbox: Iterable[int], budget: int, backend: str | None = None):
        ids = self.ids
        ands, ors, somes, alls, bots, clashes = [], [], [], [], [], []
        for i, c in enumerate(self.nodes):
            if isinstance(c, And):
                ands.append((i, ids[c.left], ids[c.right]))
            elif isinstance(c, Or):
                ors.append((i, ids[c.left], ids[c.right]))
            elif isinstance(c, Exists):
                somes.append((i, self.roles[c.role], ids[c.child]))
            elif isinstance(c, Forall):
                alls.append((i, self.roles[c.role], ids[c.child]))
            elif isinstance(c, Bot):
                bots.append(i)
            elif isinstance(c, Not) and c.child in ids:
                clashes.append((ids[c.child], i))
        ands.reverse()
        kernel_cls = KERNELS[backend or BACKEND]
        return kernel_cls(
            len(self.nodes), ands, ors, somes, alls, clashes, bots, sorted(set(tbox)), budget
        )


def internalize(strict: Iterable[StrictInclusion]) -> list[Concept]:
    """One canonical ``not C or D`` per strict axiom, deduplicated, trivial ones dropped."""
    out = {canonical(Or(Not(s.lhs), s.rhs)) for s in strict}
    out.discard(Top())
    return sorted(out, key=str)


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    steps: int


def check_satisfiable(
    c: Concept,
    strict: Iterable[StrictInclusion] = (),
    max_nodes: int | None = None,
    backend: str | None = None,
) -> SatResult:
    """Satisfiability of ``c`` w.r.t. ``strict`` plus the number of expansions used."""
    table = ConceptTable()
    tbox = [table.intern(t) for t in internalize(strict)]
    root = table.intern(canonical(c))
    budget = max_nodes if max_nodes is not None else default_max_nodes()
    kernel = table.kernel(tbox, budget, backend)
    sat = kernel.satisfiable([root])
    return SatResult(bool(sat), int(kernel.steps))


def is_satisfiable(
    c: Concept,
    strict: Iterable[StrictInclusion] = (),
    max_nodes: int | None = None,
    backend: str | None = None,
) -> bool:
    """True iff ``c`` has a model of ``strict``.

    Raises ResourceLimitExceeded when the node budget runs out.
    """
    return check_satisfiable(c, strict, max_nodes, backend).satisfiable


def entails(
    strict: Iterable[StrictInclusion],
    query: Query,
    max_nodes: int | None = None,
    backend: str | None = None,
) -> bool:
    """Classical subsumption: ``lhs <= rhs`` holds in every model of ``strict``."""
    if query.typical:
        raise ValueError("classical entailment needs a query without T(...)")
    return not is_satisfiable(And(query.lhs, Not(query.rhs)), strict, max_nodes, backend)


def abox_consistent(
    kb: KnowledgeBase, max_nodes: int | None = None, backend: str | None = None
) -> bool:
    """Classical consistency of the ABox together with the strict TBox.

    Named individuals are expanded jointly (with ``forall`` propagated over
    asserted role edges); each ``exists`` on a named individual is then
    checked as a fresh anonymous successor by the kernel.
    """
    table = ConceptTable()
    tbox = [table.intern(t) for t in internalize(kb.strict)]
    asserted = [(table.intern(canonical(c)), a) for c, a in kb.concept_assertions]
    for r, _, _ in kb.role_assertions:
        table.roles.setdefault(r, len(table.roles))
    budget = max_nodes if max_nodes is not None else default_max_nodes()
    kernel = table.kernel(tbox, budget, backend)

    inds = sorted(kb.individuals())
    tbox_bits = 0
    for t in tbox:
        tbox_bits |= 1 << t
    labels = {a: tbox_bits for a in inds}
    for i, a in asserted:
        labels[a] |= 1 << i
    edges = [(table.roles[r], a, b) for r, a, b in kb.role_assertions]

    ids, nodes = table.ids, table.nodes
    ands = [(i, ids[c.left], ids[c.right]) for i, c in reversed(list(enumerate(nodes))) if isinstance(c, And)]
    ors = [(i, ids[c.left], ids[c.right]) for i, c in enumerate(nodes) if isinstance(c, Or)]
    somes = [(i, table.roles[c.role], ids[c.child]) for i, c in enumerate(nodes) if isinstance(c, Exists)]
    alls = [(i, table.roles[c.role], ids[c.child]) for i, c in enumerate(nodes) if isinstance(c, Forall)]
    bots = [i for i, c in enumerate(nodes) if isinstance(c, Bot)]
    clashes = [
        (ids[c.child], i) for i, c in enumerate(nodes) if isinstance(c, Not) and c.child in ids
    ]

    def search(labels: dict[str, int]) -> bool:
        kernel.steps += 1
        if kernel.steps > budget:
            raise ResourceLimitExceeded(budget)
        changed = True
        while changed:
            changed = False
            for a in inds:
                lab = labels[a]
                for i, l, r in ands:
                    if lab >> i & 1:
                        lab |= 1 << l | 1 << r
                if lab != labels[a]:
                    labels[a] = lab
                    changed = True
            for role, a, b in edges:
                for j, role2, c in alls:
                    if role2 == role and labels[a] >> j & 1 and not labels[b] >> c & 1:
                        labels[b] |= 1 << c
                        changed = True
        for a in inds:
            lab = labels[a]
            if any(lab >> b & 1 for b in bots):
                return False
            if any(lab >> p & 1 and lab >> q & 1 for p, q in clashes):
                return False
        for a in inds:
            lab = labels[a]
            for i, l, r in ors:
                if lab >> i & 1 and not lab >> l & 1 and not lab >> r & 1:
                    if search({**labels, a: lab | 1 << l}):
                        return True
                    return search({**labels, a: lab | 1 << r})
        for a in inds:
            lab = labels[a]
            for i, role, child in somes:
                if not lab >> i & 1:
                    continue
                roots = [child] + [c for j, role2, c in alls if role2 == role and lab >> j & 1]
                if not kernel.satisfiable(roots):
                    return False
        return True

    return search(labels)
