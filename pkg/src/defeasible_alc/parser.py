"""Hand-written tokenizer and recursive-descent parser for KB files.

Statements end with ``.``; ``#`` starts a comment::

    Penguin <= Bird.
    T(Bird) <= Fly.
    Bird(tweety).
    hasChild(anna, bob).

Concepts use ``not`` > ``and`` > ``or``; quantifiers are written
``exists r.C`` / ``forall r.C`` and bind like ``not``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .concepts import BOT, TOP, And, Atom, Concept, Exists, Forall, Not, Or
from .kb import (
    DefeasibleInclusion,
    KnowledgeBase,
    Query,
    StrictInclusion,
)

KEYWORDS = {"Top", "Bot", "not", "and", "or", "exists", "forall", "T"}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)"
    r"|(?P<nl>\n)"
    r"|(?P<comment>\#[^\n]*)"
    r"|(?P<subsumes><=|⊑)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[().,])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "<=", one of "().,", or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind == "subsumes":
            tokens.append(Token("<=", m.group(), line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message} (found {found})", tok.line, tok.column)

    def take(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            raise self.fail(f"expected {what or repr(kind)}")
        t = self.tok
        self.i += 1
        return t

    def at_kw(self, word: str) -> bool:
        return self.tok.kind == "kw" and self.tok.text == word

    # concept grammar

    def concept(self) -> Concept:
        parts = [self.conjunction()]
        while self.at_kw("or"):
            self.i += 1
            parts.append(self.conjunction())
        return _fold(Or, parts)

    def conjunction(self) -> Concept:
        parts = [self.unary()]
        while self.at_kw("and"):
            self.i += 1
            parts.append(self.unary())
        return _fold(And, parts)

    def unary(self) -> Concept:
        if self.at_kw("not"):
            self.i += 1
            return Not(self.unary())
        if self.at_kw("exists") or self.at_kw("forall"):
            kind = Exists if self.tok.text == "exists" else Forall
            self.i += 1
            role = self.take("ident", "a role name").text
            self.take(".", "'.' after the role name")
            return kind(role, self.unary())
        return self.primary()

    def primary(self) -> Concept:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return Atom(t.text)
        if self.at_kw("Top"):
            self.i += 1
            return TOP
        if self.at_kw("Bot"):
            self.i += 1
            return BOT
        if self.at_kw("T"):
            raise self.fail("typicality is only allowed as the whole left-hand side")
        if t.kind == "(":
            self.i += 1
            c = self.concept()
            self.take(")", "')'")
            return c
        raise self.fail("expected a concept")

    # statements

    def typical_lhs(self) -> Concept | None:
        if not (self.at_kw("T") and self.peek().kind == "("):
            return None
        self.i += 2
        c = self.concept()
        self.take(")", "')' closing T(")
        return c

    def statement(self, out: dict) -> None:
        subject = self.typical_lhs()
        if subject is not None:
            self.take("<=", "'<='")
            out["defeasible"].append(DefeasibleInclusion(subject, self.concept()))
            self.take(".", "'.' ending the statement")
            return
        start = self.tok
        lhs = self.concept()
        if self.tok.kind == "<=":
            self.i += 1
            out["strict"].append(StrictInclusion(lhs, self.concept()))
        elif self.tok.kind == "(":
            self.i += 1
            a = self.take("ident", "an individual name").text
            if self.tok.kind == ",":
                if not isinstance(lhs, Atom):
                    raise self.fail("role assertions need a role name", start)
                self.i += 1
                b = self.take("ident", "an individual name").text
                out["roles"].append((lhs.name, a, b))
            else:
                out["assertions"].append((lhs, a))
            self.take(")", "')'")
        else:
            raise self.fail("expected '<=' or an assertion '(individual)'")
        self.take(".", "'.' ending the statement")

    def kb(self) -> KnowledgeBase:
        out: dict = {"strict": [], "defeasible": [], "assertions": [], "roles": []}
        while self.tok.kind != "eof":
            self.statement(out)
        return KnowledgeBase.build(
            out["strict"], out["defeasible"], out["assertions"], out["roles"]
        )


def _fold(kind, parts: list[Concept]) -> Concept:
    out = parts[-1]
    for c in reversed(parts[:-1]):
        out = kind(c, out)
    return out


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a KB file.

    Raises ParseError on malformed input and NamespaceError when a name is
    used in two of the concept / role / individual namespaces.
    """
    return _Parser(text).kb()


def parse_concept(text: str) -> Concept:
    p = _Parser(text)
    c = p.concept()
    p.take("eof", "end of input")
    return c


def parse_query(text: str) -> Query:
    """Parse ``"T(C) <= D"`` or ``"C <= D"``."""
    p = _Parser(text)
    subject = p.typical_lhs()
    lhs = subject if subject is not None else p.concept()
    p.take("<=", "'<='")
    rhs = p.concept()
    p.take("eof", "end of input")
    return Query(lhs, rhs, typical=subject is not None)

