"""Recursive-descent parser for the configuration query language.

Grammar:

    program  := (ruledef | querydef)*
    ruledef  := "pred" name "(" vars ")" ":=" formula "."
    querydef := "query" name ":=" formula "."
    formula  := disj
    disj     := conj ("or" conj)*
    conj     := unary ("and" unary)*
    unary    := "not" unary | "exists" vars ":" unary | "(" formula ")" | atom
    atom     := name "(" term ("," term)* ")"
    term     := VARIABLE | STRING

Variables start with an uppercase letter; predicate, rule and query names
with a lowercase letter or underscore. `#` starts a comment running to end
of line. `and`/`or` chains parse to flat n-ary nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from .ast import (
    And,
    Atom,
    Exists,
    Formula,
    Lit,
    Not,
    Or,
    Program,
    QueryDef,
    RuleDef,
    Term,
    Var,
    conj,
    disj,
)

KEYWORDS = frozenset({"pred", "query", "exists", "and", "or", "not"})

_NAME_RE = re.compile(r"[a-z_][A-Za-z0-9_]*")
_VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*")

# Escapes accepted inside string literals. Anything else after a backslash
# is rejected rather than passed through silently.
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, VAR, STRING, PUNCT, KEYWORD, EOF
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            chars: list[str] = []
            while True:
                if i >= n or text[i] == "\n":
                    raise ParseError("unterminated string literal", start_line, start_col)
                c = text[i]
                if c == '"':
                    i += 1
                    col += 1
                    break
                if c == "\\":
                    if i + 1 >= n:
                        raise ParseError("unterminated string literal", start_line, start_col)
                    esc = text[i + 1]
                    if esc not in _ESCAPES:
                        raise ParseError(f"unknown escape '\\{esc}' in string literal", line, col)
                    chars.append(_ESCAPES[esc])
                    i += 2
                    col += 2
                    continue
                chars.append(c)
                i += 1
                col += 1
            tokens.append(Token("STRING", "".join(chars), start_line, start_col))
            continue
        m = _VAR_RE.match(text, i)
        if m:
            tokens.append(Token("VAR", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            word = m.group()
            kind = "KEYWORD" if word in KEYWORDS else "NAME"
            tokens.append(Token(kind, word, line, col))
            col += len(word)
            i = m.end()
            continue
        if c in "(),.:":
            # ':=' is a single token; a lone ':' separates exists vars.
            if c == ":" and i + 1 < n and text[i + 1] == "=":
                tokens.append(Token("PUNCT", ":=", line, col))
                i += 2
                col += 2
                continue
            tokens.append(Token("PUNCT", c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def _fail(self, message: str) -> None:
        raise ParseError(message, self.cur.line, self.cur.col)

    def _advance(self) -> Token:
        tok = self.cur
        self.i += 1
        return tok

    def _expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.cur
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.kind != "EOF" else "end of input"
            self._fail(f"expected {want!r}, got {got!r}")
        return self._advance()

    def program(self) -> Program:
        rules: list[RuleDef] = []
        queries: list[QueryDef] = []
        while self.cur.kind != "EOF":
            tok = self.cur
            if tok.kind == "KEYWORD" and tok.text == "pred":
                rules.append(self.ruledef())
            elif tok.kind == "KEYWORD" and tok.text == "query":
                queries.append(self.querydef())
            else:
                self._fail("expected 'pred' or 'query'")
        return Program(tuple(rules), tuple(queries))

    def ruledef(self) -> RuleDef:
        start = self._expect("KEYWORD", "pred")
        name = self._expect("NAME").text
        self._expect("PUNCT", "(")
        params = [self._expect("VAR").text]
        while self.cur.text == ",":
            self._advance()
            params.append(self._expect("VAR").text)
        self._expect("PUNCT", ")")
        self._expect("PUNCT", ":=")
        body = self.formula()
        self._expect("PUNCT", ".")
        return RuleDef(name, tuple(params), body, (start.line, start.col))

    def querydef(self) -> QueryDef:
        start = self._expect("KEYWORD", "query")
        name = self._expect("NAME").text
        self._expect("PUNCT", ":=")
        body = self.formula()
        self._expect("PUNCT", ".")
        subject = body.vars[0] if isinstance(body, Exists) else None
        return QueryDef(name, subject, body, (start.line, start.col))

    def formula(self) -> Formula:
        return self.disj()

    def disj(self) -> Formula:
        pos = (self.cur.line, self.cur.col)
        parts = [self.conj()]
        while self.cur.kind == "KEYWORD" and self.cur.text == "or":
            self._advance()
            parts.append(self.conj())
        return disj(parts, pos) if len(parts) > 1 else parts[0]

    def conj(self) -> Formula:
        pos = (self.cur.line, self.cur.col)
        parts = [self.unary()]
        while self.cur.kind == "KEYWORD" and self.cur.text == "and":
            self._advance()
            parts.append(self.unary())
        return conj(parts, pos) if len(parts) > 1 else parts[0]

    def unary(self) -> Formula:
        tok = self.cur
        if tok.kind == "KEYWORD" and tok.text == "not":
            self._advance()
            return Not(self.unary(), (tok.line, tok.col))
        if tok.kind == "KEYWORD" and tok.text == "exists":
            self._advance()
            names = [self._expect("VAR").text]
            while self.cur.text == ",":
                self._advance()
                names.append(self._expect("VAR").text)
            self._expect("PUNCT", ":")
            return Exists(tuple(names), self.unary(), (tok.line, tok.col))
        if tok.kind == "PUNCT" and tok.text == "(":
            self._advance()
            inner = self.formula()
            self._expect("PUNCT", ")")
            return inner
        if tok.kind == "NAME":
            return self.atom()
        self._fail("expected a formula")
        raise AssertionError  # unreachable

    def atom(self) -> Atom:
        name = self._expect("NAME")
        self._expect("PUNCT", "(")
        args = [self.term()]
        while self.cur.text == ",":
            self._advance()
            args.append(self.term())
        self._expect("PUNCT", ")")
        return Atom(name.text, tuple(args), (name.line, name.col))

    def term(self) -> Term:
        tok = self.cur
        if tok.kind == "VAR":
            self._advance()
            return Var(tok.text, (tok.line, tok.col))
        if tok.kind == "STRING":
            self._advance()
            if not tok.text:
                raise ParseError("empty string literal", tok.line, tok.col)
            return Lit(tok.text, (tok.line, tok.col))
        self._fail("expected a variable or string literal")
        raise AssertionError  # unreachable


def parse_program(text: str) -> Program:
    """Parse source text into a Program. Raises ParseError with position."""
    return _Parser(_tokenize(text)).program()


def parse_formula(text: str) -> Formula:
    """Parse a bare formula (test/REPL convenience)."""
    p = _Parser(_tokenize(text))
    f = p.formula()
    p._expect("EOF")
    return f
