"""ALC concept syntax trees, negation normal form and canonical ordering.

Concepts are immutable and hashable.  Two concepts are considered the same
when their canonical forms coincide: NNF, with the operands of ``and`` /
``or`` chains flattened, deduplicated, sorted by printed form and folded
to the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Bot:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    child: "Concept"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Exists:
    role: str
    child: "Concept"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Forall:
    role: str
    child: "Concept"

    def __str__(self) -> str:
        return show(self)


Concept = Union[Top, Bot, Atom, Not, And, Or, Exists, Forall]

TOP = Top()
BOT = Bot()

# binding strength used by the printer: or < and < not/quantifiers < primaries
_PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def _prec(c: Concept) -> int:
    if isinstance(c, Or):
        return _PREC_OR
    if isinstance(c, And):
        return _PREC_AND
    if isinstance(c, (Not, Exists, Forall)):
        return _PREC_UNARY
    return _PREC_ATOM


def _wrap(c: Concept, min_prec: int) -> str:
    text = show(c)
    return f"({text})" if _prec(c) < min_prec else text


@lru_cache(maxsize=65536)
def show(c: Concept) -> str:
    """Print ``c`` in the surface syntax accepted by the parser."""
    if isinstance(c, Top):
        return "Top"
    if isinstance(c, Bot):
        return "Bot"
    if isinstance(c, Atom):
        return c.name
    if isinstance(c, Not):
        return "not " + _wrap(c.child, _PREC_UNARY)
    if isinstance(c, And):
        # the parser folds to the right, so a left-nested chain needs parentheses
        return f"{_wrap(c.left, _PREC_AND + 1)} and {_wrap(c.right, _PREC_AND)}"
    if isinstance(c, Or):
        return f"{_wrap(c.left, _PREC_OR + 1)} or {_wrap(c.right, _PREC_OR)}"
    if isinstance(c, Exists):
        return f"exists {c.role}.{_body(c.child)}"
    if isinstance(c, Forall):
        return f"forall {c.role}.{_body(c.child)}"
    raise TypeError(f"not a concept: {c!r}")


def _is_primary(c: Concept) -> bool:
    if isinstance(c, Not):
        return _is_primary(c.child)
    return isinstance(c, (Top, Bot, Atom))


def _body(c: Concept) -> str:
    # quantifier bodies are primaries: literals, or parenthesised
    return show(c) if _is_primary(c) else f"({show(c)})"


def conjoin(parts: Iterable[Concept]) -> Concept:
    """Right-fold ``parts`` with ``And``; the empty conjunction is ``Top``."""
    items = list(parts)
    if not items:
        return TOP
    out = items[-1]
    for c in reversed(items[:-1]):
        out = And(c, out)
    return out


def disjoin(parts: Iterable[Concept]) -> Concept:
    items = list(parts)
    if not items:
        return BOT
    out = items[-1]
    for c in reversed(items[:-1]):
        out = Or(c, out)
    return out


@lru_cache(maxsize=65536)
def nnf(c: Concept) -> Concept:
    """Push negations down to atoms (and rewrite negated Top/Bot)."""
    if isinstance(c, (Top, Bot, Atom)):
        return c
    if isinstance(c, And):
        return And(nnf(c.left), nnf(c.right))
    if isinstance(c, Or):
        return Or(nnf(c.left), nnf(c.right))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.child))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.child))
    if isinstance(c, Not):
        return _negate(c.child)
    raise TypeError(f"not a concept: {c!r}")


def _negate(c: Concept) -> Concept:
    # NNF of Not(c)
    if isinstance(c, Top):
        return BOT
    if isinstance(c, Bot):
        return TOP
    if isinstance(c, Atom):
        return Not(c)
    if isinstance(c, Not):
        return nnf(c.child)
    if isinstance(c, And):
        return Or(_negate(c.left), _negate(c.right))
    if isinstance(c, Or):
        return And(_negate(c.left), _negate(c.right))
    if isinstance(c, Exists):
        return Forall(c.role, _negate(c.child))
    if isinstance(c, Forall):
        return Exists(c.role, _negate(c.child))
    raise TypeError(f"not a concept: {c!r}")


def _operands(c: Concept, kind: type) -> Iterator[Concept]:
    if isinstance(c, kind):
        yield from _operands(c.left, kind)
        yield from _operands(c.right, kind)
    else:
        yield c


@lru_cache(maxsize=65536)
def _canon(c: Concept) -> Concept:
    # c is already in NNF
    if isinstance(c, (And, Or)):
        kind = type(c)
        parts = {_canon(p) for p in _operands(c, kind)}
        ordered = sorted(parts, key=show)
        return conjoin(ordered) if kind is And else disjoin(ordered)
    if isinstance(c, Exists):
        return Exists(c.role, _canon(c.child))
    if isinstance(c, Forall):
        return Forall(c.role, _canon(c.child))
    return c


def canonical(c: Concept) -> Concept:
    """NNF with flattened, deduplicated and sorted commutative operands."""
    return _canon(nnf(c))


def negate(c: Concept) -> Concept:
    """Canonical form of the complement of ``c``."""
    return canonical(Not(c))


def same(a: Concept, b: Concept) -> bool:
    return canonical(a) == canonical(b)


def atoms(c: Concept) -> set[str]:
    out: set[str] = set()
    _collect(c, out, set())
    return out


def roles(c: Concept) -> set[str]:
    out: set[str] = set()
    _collect(c, set(), out)
    return out


def _collect(c: Concept, atom_names: set[str], role_names: set[str]) -> None:
    stack = [c]
    while stack:
        x = stack.pop()
        if isinstance(x, Atom):
            atom_names.add(x.name)
        elif isinstance(x, Not):
            stack.append(x.child)
        elif isinstance(x, (And, Or)):
            stack.append(x.left)
            stack.append(x.right)
        elif isinstance(x, (Exists, Forall)):
            role_names.add(x.role)
            stack.append(x.child)


def is_role_free(c: Concept) -> bool:
    return not roles(c)
