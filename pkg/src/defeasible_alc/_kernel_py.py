"""Pure-Python tableau kernel.

Labels are Python ints used as bitsets over the ids of a compiled concept
table (see ``tableau.compile_table``).  The compiled extension
``_kernel`` implements the same search with identical rule order and step
accounting; this module is the fallback when it is not built.
"""

from __future__ import annotations

from .errors import ResourceLimitExceeded


class Kernel:
    """Satisfiability search over one compiled concept table.

    ``ands``/``ors``: ``(id, left, right)``; ``somes``/``alls``:
    ``(id, role, child)``; ``clashes``: complementary literal id pairs;
    ``bots``: ids of Bot; ``tbox``: ids added to every node label.
    ``ands`` must be ordered by decreasing id, the rest by increasing id.
    """

    def __init__(self, n, ands, ors, somes, alls, clashes, bots, tbox, budget):
        self.n = n
        self._ands = [(i, (1 << l) | (1 << r)) for i, l, r in ands]
        self._ors = [(i, l, r) for i, l, r in ors]
        self._somes = [(i, role, c) for i, role, c in somes]
        self._alls: dict[int, list[tuple[int, int]]] = {}
        for i, role, c in alls:
            self._alls.setdefault(role, []).append((i, c))
        self._clashes = [(1 << p) | (1 << q) for p, q in clashes]
        self._bots = 0
        for b in bots:
            self._bots |= 1 << b
        self._tbox = 0
        for t in tbox:
            self._tbox |= 1 << t
        self.budget = budget
        self.steps = 0
        self._path: list[int] = []

    def satisfiable(self, roots) -> bool:
        label = self._tbox
        for r in roots:
            label |= 1 << r
        self._path = []
        return self._sat(label)

    def _sat(self, label: int) -> bool:
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimitExceeded(self.budget)
        for i, kids in self._ands:
            if label >> i & 1:
                label |= kids
        if label & self._bots:
            return False
        for m in self._clashes:
            if label & m == m:
                return False
        for i, l, r in self._ors:
            if label >> i & 1 and not (label >> l & 1) and not (label >> r & 1):
                if self._sat(label | 1 << l):
                    return True
                return self._sat(label | 1 << r)
        # label is now complete; blocked nodes need no successors
        for anc in self._path:
            if label & ~anc == 0:
                return True
        path = self._path
        path.append(label)
        try:
            for i, role, child in self._somes:
                if not label >> i & 1:
                    continue
                succ = self._tbox | 1 << child
                for j, c in self._alls.get(role, ()):
                    if label >> j & 1:
                        succ |= 1 << c
                if not self._sat(succ):
                    return False
            return True
        finally:
            path.pop()
