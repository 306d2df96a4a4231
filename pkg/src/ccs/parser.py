"""Textual syntax for CCS terms.

Grammar (CWB-style ASCII)::

    program ::= (IDENT "=" expr ";")* expr
    expr    ::= "rec" IDENT "." expr | sum
    sum     ::= par ("+" par)*
    par     ::= post ("|" post)*
    post    ::= pre ("\\" names | "[" relabs "]")*
    pre     ::= act "." (pre | "rec" ...) | atom
    atom    ::= "0" | IDENT | "(" expr ")" | "rec" IDENT "." expr
    act     ::= "tau" | name | "'" name
    names   ::= "{" [name ("," name)*] "}" | name
    relabs  ::= [lab "/" lab ("," lab "/" lab)*]

``+`` and ``|`` associate to the left.  ``#`` starts a comment that runs
to the end of the line.  Definitions bind process constants and are
inlined into the final expression; recursive references become ``rec``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CaptureRisk, ParseError
from .syntax import (
    KEYWORDS,
    NIL,
    TAU,
    Action,
    Label,
    Nil,
    Par,
    Prefix,
    Process,
    Rec,
    Relab,
    Relabeling,
    Restr,
    Sum,
    Var,
    free_vars,
)


class SourceSpan(NamedTuple):
    start_offset: int
    end_offset: int


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, ZERO, SYM, EOF
    text: str
    start: int
    end: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<NAME>[A-Za-z][A-Za-z0-9_-]*)
  | (?P<ZERO>0(?![0-9A-Za-z_]))
  | (?P<SYM>[.+|\\{},\[\]/()=;'])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text), len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("SYM", "NAME") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def fail(self, message: str, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.span, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}", [text])
        return self.advance()

    def name(self, what: str = "name") -> str:
        t = self.tok
        if t.kind != "NAME" or t.text in KEYWORDS:
            self.fail(f"expected {what}", [what])
        self.advance()
        return t.text

    # -- grammar

    def program(self) -> Process:
        defs: dict[str, Process] = {}
        while self.tok.kind == "NAME" and self.peek().text == "=" and self.peek().kind == "SYM":
            start = self.tok
            ident = self.name("identifier")
            self.expect("=")
            body = self.expr()
            self.expect(";")
            if ident in defs:
                raise ParseError(f"duplicate definition of {ident!r}", start.span)
            defs[ident] = body
        main = self.expr()
        if self.tok.kind != "EOF":
            self.fail("expected end of input", ["end of input"])
        return inline_definitions(main, defs) if defs else main

    def expr(self) -> Process:
        if self.at("rec"):
            return self.rec()
        return self.sum()

    def rec(self) -> Process:
        self.expect("rec")
        ident = self.name("identifier")
        self.expect(".")
        return Rec(ident, self.expr())

    def sum(self) -> Process:
        p = self.par()
        while self.at("+"):
            self.advance()
            p = Sum(p, self.par())
        return p

    def par(self) -> Process:
        p = self.post()
        while self.at("|"):
            self.advance()
            p = Par(p, self.post())
        return p

    def post(self) -> Process:
        p = self.pre()
        while True:
            if self.at("\\"):
                self.advance()
                p = Restr(self.restriction_names(), p)
            elif self.at("["):
                self.advance()
                p = Relab(p, self.relabeling())
            else:
                return p

    def restriction_names(self) -> frozenset[str]:
        if self.tok.kind == "NAME":
            if self.tok.text == "tau":
                self.fail("tau cannot be restricted", ["name"])
            return frozenset((self.name(),))
        self.expect("{")
        names = set()
        if not self.at("}"):
            while True:
                if self.at("tau"):
                    self.fail("tau cannot be restricted", ["name"])
                if self.at("'"):
                    self.advance()
                names.add(self.name())
                if not self.at(","):
                    break
                self.advance()
        self.expect("}")
        return frozenset(names)

    def label(self) -> Label:
        if self.at("tau"):
            self.fail("tau is not a label", ["name", "'name"])
        output = False
        if self.at("'"):
            self.advance()
            output = True
        return Label(self.name(), output)

    def relabeling(self) -> Relabeling:
        pairs = []
        start = self.tok
        if not self.at("]"):
            while True:
                new = self.label()
                self.expect("/")
                old = self.label()
                pairs.append((new, old))
                if not self.at(","):
                    break
                self.advance()
        self.expect("]")
        try:
            return Relabeling(tuple(pairs))
        except ValueError as exc:
            raise ParseError(str(exc), start.span) from None

    def _at_action(self) -> bool:
        t = self.tok
        if t.kind == "SYM" and t.text == "'":
            return True
        if t.kind == "NAME" and t.text != "rec":
            nxt = self.peek()
            return nxt.kind == "SYM" and nxt.text == "."
        return False

    def pre(self) -> Process:
        if not self._at_action():
            return self.atom()
        if self.at("tau"):
            self.advance()
            act = TAU
        else:
            act = Action(self.label())
        self.expect(".")
        if self.at("rec"):
            return Prefix(act, self.rec())
        return Prefix(act, self.pre())

    def atom(self) -> Process:
        t = self.tok
        if t.kind == "ZERO":
            self.advance()
            return NIL
        if self.at("("):
            self.advance()
            p = self.expr()
            self.expect(")")
            return p
        if self.at("rec"):
            return self.rec()
        if t.kind == "NAME" and t.text != "tau":
            self.advance()
            return Var(t.text)
        self.fail("expected a process", ["0", "(", "rec", "action", "identifier"])


def parse(text: str) -> Process:
    """Parse a term (optionally preceded by ``name = P;`` definitions)."""
    return _Parser(text).program()


def inline_definitions(main: Process, defs: dict[str, Process]) -> Process:
    """Replace free references to defined constants by their bodies.

    A constant that refers back to itself (directly or through others)
    is wrapped in ``rec NAME.`` at its outermost expansion point.
    """

    def expand(p: Process, bound: frozenset[str], stack: tuple[str, ...]) -> Process:
        if isinstance(p, Var):
            v = p.var
            if v in bound or v in stack or v not in defs:
                return p
            body = expand(defs[v], frozenset(), stack + (v,))
            result = Rec(v, body) if v in free_vars(body) else body
            captured = free_vars(result) & bound
            if captured:
                raise CaptureRisk(f"inlining {v!r} would capture {sorted(captured)[0]!r}")
            return result
        if isinstance(p, Nil):
            return p
        if isinstance(p, Prefix):
            return Prefix(p.action, expand(p.body, bound, stack))
        if isinstance(p, Sum):
            return Sum(expand(p.left, bound, stack), expand(p.right, bound, stack))
        if isinstance(p, Par):
            return Par(expand(p.left, bound, stack), expand(p.right, bound, stack))
        if isinstance(p, Restr):
            return Restr(p.labels, expand(p.body, bound, stack))
        if isinstance(p, Relab):
            return Relab(expand(p.body, bound, stack), p.rf)
        if isinstance(p, Rec):
            return Rec(p.var, expand(p.body, bound | {p.var}, stack))
        raise TypeError(f"not a process: {p!r}")

    return expand(main, frozenset(), ())


# -- rendering --------------------------------------------------------------

_REC, _SUM, _PAR, _POST, _PRE, _ATOM = -1, 0, 1, 2, 3, 4


def _level(p: Process) -> int:
    if isinstance(p, Rec):
        return _REC
    if isinstance(p, Sum):
        return _SUM
    if isinstance(p, Par):
        return _PAR
    if isinstance(p, (Restr, Relab)):
        return _POST
    if isinstance(p, Prefix):
        return _PRE
    return _ATOM


def _render(p: Process, ctx: int) -> str:
    s = _text(p)
    return f"({s})" if _level(p) < ctx else s


@lru_cache(maxsize=1 << 16)
def _text(p: Process) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Var):
        return p.var
    if isinstance(p, Prefix):
        return f"{p.action}.{_render(p.body, _PRE)}"
    if isinstance(p, Sum):
        return f"{_render(p.left, _SUM)} + {_render(p.right, _PAR)}"
    if isinstance(p, Par):
        return f"{_render(p.left, _PAR)} | {_render(p.right, _POST)}"
    if isinstance(p, Restr):
        return f"{_render(p.body, _POST)} \\ {{{', '.join(sorted(p.labels))}}}"
    if isinstance(p, Relab):
        return f"{_render(p.body, _POST)}{p.rf}"
    if isinstance(p, Rec):
        return f"rec {p.var}. {_render(p.body, _REC)}"
    raise TypeError(f"not a process: {p!r}")


def render(p: Process) -> str:
    return _render(p, _REC)
