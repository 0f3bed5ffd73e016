"""Parser for the `.ppt` concrete format.

A program is a sequence of rules grouped by section directives
(`#initial.`, `#dynamic.`, `#final.`); the section before any directive
is initial.  Rules are `head.`, `head :- body.` or `:- body.` where the
head is a `|`-separated atom disjunction.  `%` starts a line comment.

Body grammar, in ascending precedence:

    disjunction   `or` or `;`
    conjunction   `and` or `,`
    temporal      `since`, `trigger`        (left-associative)
    unary         `not`, `prev`, `wprev`, `always_before`, `eventually_before`
    primary       atom, `true`, `false`, `initially`, `( body )`

Parsed bodies are expanded to core form.  Initial and final rule bodies
must be conjunctions of regular literals and final rules must have empty
heads; violations raise :class:`RestrictionError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, RestrictionError
from .syntax import (
    ATOM_RE, And, AtomRef, AlwaysBefore, EventuallyBefore, Falsum,
    InitialConst, Not, Or, Previous, Program, Rule, RuleKind, Since, Trigger,
    Verum, WeakPrevious, expand_derived, is_literal_conjunction,
)

__all__ = ["parse_program", "parse_formula"]

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>%[^\n]*)
      | (?P<arrow>:-)
      | (?P<punct>[,;|().#])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_RESERVED = frozenset({
    "not", "prev", "wprev", "since", "trigger", "always_before",
    "eventually_before", "initially", "true", "false", "and", "or",
})

_UNARY_OPS = {
    "not": Not,
    "prev": Previous,
    "wprev": WeakPrevious,
    "always_before": AlwaysBefore,
    "eventually_before": EventuallyBefore,
}

_CONSTANTS = {
    "true": Verum(),
    "false": Falsum(),
    "initially": InitialConst(),
}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "arrow", "punct", "ident", "eof"
    text: str
    line: int
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(src)
    while pos < n:
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ParseError(line, pos - line_start + 1,
                             f"unexpected character {src[pos]!r}")
        kind = match.lastgroup
        text = match.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, text, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = match.end()
    tokens.append(_Token("eof", "", line, n - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.text == text and tok.kind != "eof"

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def fail(self, message: str, *expected: str):
        tok = self.peek()
        raise ParseError(tok.line, tok.column, message, tuple(expected))

    def expect(self, text: str, *expected: str) -> _Token:
        if not self.at(text):
            shown = self.peek().text or "end of input"
            self.fail(f"unexpected {shown!r}", *(expected or (repr(text),)))
        return self.advance()

    # -- grammar -----------------------------------------------------------

    def atom_name(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected an atom, found {tok.text or 'end of input'!r}",
                      "atom")
        if tok.text in _RESERVED:
            self.fail(f"reserved word {tok.text!r} cannot be used as an atom",
                      "atom")
        if not ATOM_RE.match(tok.text):
            self.fail(f"invalid atom name {tok.text!r} "
                      "(must match [a-z][A-Za-z0-9_]*)", "atom")
        self.advance()
        return tok.text

    def primary(self):
        tok = self.peek()
        if self.eat("("):
            inner = self.disjunction()
            self.expect(")", "')'")
            return inner
        if tok.kind == "ident":
            if tok.text in _CONSTANTS:
                self.advance()
                return _CONSTANTS[tok.text]
            if tok.text in _UNARY_OPS:
                self.advance()
                return _UNARY_OPS[tok.text](self.unary())
            return AtomRef(self.atom_name())
        self.fail(f"expected a formula, found {tok.text or 'end of input'!r}",
                  "atom", "'('", "'not'", "'true'", "'false'")

    def unary(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text in _UNARY_OPS:
            self.advance()
            return _UNARY_OPS[tok.text](self.unary())
        return self.primary()

    def temporal(self):
        left = self.unary()
        while True:
            if self.eat("since"):
                left = Since(left, self.unary())
            elif self.eat("trigger"):
                left = Trigger(left, self.unary())
            else:
                return left

    def conjunction(self):
        left = self.temporal()
        while self.eat(",") or self.eat("and"):
            left = And(left, self.temporal())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.eat(";") or self.eat("or"):
            left = Or(left, self.conjunction())
        return left

    def head(self) -> tuple[str, ...]:
        atoms = [self.atom_name()]
        while self.eat("|") or self.eat(";") or self.eat("or"):
            atoms.append(self.atom_name())
        return tuple(atoms)

    def directive(self) -> RuleKind:
        self.expect("#", "'#'")
        tok = self.peek()
        names = {k.value: k for k in RuleKind}
        if tok.kind != "ident" or tok.text not in names:
            self.fail("expected a section name",
                      "'initial'", "'dynamic'", "'final'")
        self.advance()
        self.expect(".", "'.'")
        return names[tok.text]

    def rule(self, section: RuleKind, index: int) -> Rule:
        start = self.peek()
        head: tuple[str, ...] = ()
        if not self.at(":-"):
            head = self.head()
        body_tok = self.peek()
        if self.eat(":-"):
            body_tok = self.peek()
            surface = self.disjunction()
        else:
            surface = Verum()
        self.expect(".", "'.'")

        if section is RuleKind.FINAL and head:
            raise RestrictionError(start.line, start.column,
                                   "final rules cannot have a head")
        body = expand_derived(surface)
        if section is not RuleKind.DYNAMIC and not is_literal_conjunction(body):
            raise RestrictionError(
                body_tok.line, body_tok.column,
                f"{section.value} rule bodies must be conjunctions of "
                "regular literals")
        return Rule(section, head, body, index)

    def program(self) -> Program:
        rules: list[Rule] = []
        section = RuleKind.INITIAL
        while self.peek().kind != "eof":
            if self.at("#"):
                section = self.directive()
            else:
                rules.append(self.rule(section, len(rules)))
        return Program(tuple(rules))

    def formula(self):
        surface = self.disjunction()
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r} after formula",
                      "end of input")
        return expand_derived(surface)


def parse_program(src: str) -> Program:
    """Parse `.ppt` source text into a program."""
    return _Parser(src).program()


def parse_formula(src: str):
    """Parse a body formula and return its core form."""
    return _Parser(src).formula()
