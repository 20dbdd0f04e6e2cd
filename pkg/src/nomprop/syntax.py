"""Text syntax for both calculi.

Ordinal terms::

    term := tens (';' tens)*
    tens := atom ('*' atom)*
    atom := 'id' | 'sym' | 'sym' '(' INT ',' INT ')' | 'empty' | IDENT
          | '<' names ']' '{' nterm '}' '[' names '>'       (dia'd payload)
          | '(' term ')'

Nominal terms::

    nterm := ntens (';' ntens)*
    ntens := natom ('*' natom)*
    natom := 'id' '(' NAME ')' | 'd' '(' NAME ',' NAME ')' | 'empty'
           | '[' names '>' IDENT '<' names ']'
           | '[' names '>' '{' term '}' '<' names ']'       (boxed payload)
           | '(' NAME NAME ')' natom | '(' nterm ')'

Both binary operators associate to the left.  Terms are typechecked while
they are parsed so that a type error can point at the offending subterm.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .terms import (
    Delta, Dia, Empty, Gen, Id, NEmpty, NGen, NId, NmtTerm, NSeq, NTensor, PermApp, Seq,
    Signature, SmtTerm, Sym, Tensor, TermError, UnknownGenerator, nmt_type,
    smt_canonical_symmetry, smt_type,
)

SMT_KEYWORDS = frozenset({"id", "sym", "empty"})


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __str__(self):
        return f"{self.start}..{self.end}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, expected, found: str, text: str = ""):
        self.span = span
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected)) or "nothing"
        super().__init__(f"at {span}: expected {exp}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str        # IDENT, INT, EOF or the punctuation itself
    text: str
    start: int
    end: int

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([;*()\[\]<>,{}]))")


def _byte_offsets(text: str) -> list[int]:
    out, pos = [], 0
    for ch in text:
        out.append(pos)
        pos += len(ch.encode("utf-8"))
    out.append(pos)
    return out


def tokenize(text: str) -> list[Token]:
    offs = _byte_offsets(text)
    toks: list[Token] = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            toks.append(Token("EOF", "", offs[n], offs[n]))
            return toks
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(SourceSpan(offs[i], offs[i + 1]), {"a token"}, repr(text[i]))
        s, e = m.start(m.lastindex), m.end()
        word = m.group(m.lastindex)
        kind = {1: "IDENT", 2: "INT", 3: word}[m.lastindex]
        toks.append(Token(kind, word, offs[s], offs[e]))
        i = e


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature]):
        self.toks = tokenize(text)
        self.pos = 0
        self.sig = sig

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def fail(self, expected) -> ParseError:
        t = self.tok
        return ParseError(SourceSpan(t.start, t.end), expected, t.describe())

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail({"name" if kind == "IDENT" else repr(kind)})
        t = self.tok
        self.pos += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    def finish(self):
        if self.tok.kind != "EOF":
            raise self.fail({"';'", "'*'", "end of input"})

    def typed(self, t, start: int, typer):
        if self.sig is None:
            return t
        try:
            typer(t, self.sig)
        except TermError as e:
            e.span = SourceSpan(start, self.toks[self.pos - 1].end)
            raise
        return t

    def names(self, closers) -> tuple:
        out = []
        if self.tok.kind == "IDENT":
            out.append(self.expect("IDENT").text)
            while self.accept(","):
                out.append(self.expect("IDENT").text)
        elif self.tok.kind not in closers:
            raise self.fail({"name"} | {repr(c) for c in closers})
        return tuple(out)

    # -- ordinal terms

    def smt_term(self) -> SmtTerm:
        start = self.tok.start
        t = self.smt_tens()
        while self.accept(";"):
            t = self.typed(Seq(t, self.smt_tens()), start, smt_type)
        return t

    def smt_tens(self) -> SmtTerm:
        start = self.tok.start
        t = self.smt_atom()
        while self.accept("*"):
            t = self.typed(Tensor(t, self.smt_atom()), start, smt_type)
        return t

    def smt_atom(self) -> SmtTerm:
        t = self.tok
        if t.kind == "IDENT":
            self.pos += 1
            if t.text == "id":
                return Id()
            if t.text == "empty":
                return Empty()
            if t.text == "sym":
                if self.accept("("):
                    m = int(self.expect("INT").text)
                    self.expect(",")
                    n = int(self.expect("INT").text)
                    self.expect(")")
                    return smt_canonical_symmetry(m, n)
                return Sym()
            if self.sig is not None and t.text not in self.sig:
                err = UnknownGenerator(t.text)
                err.span = SourceSpan(t.start, t.end)
                raise err
            return Gen(t.text)
        if t.kind == "(":
            self.pos += 1
            inner = self.smt_term()
            self.expect(")")
            return inner
        if t.kind == "<":
            self.pos += 1
            a = self.names({"]"})
            self.expect("]")
            self.expect("{")
            body = self.nmt_term()
            self.expect("}")
            self.expect("[")
            b = self.names({">"})
            self.expect(">")
            return self.typed(Gen(Dia(a, body, b)), t.start, smt_type)
        raise self.fail({"'id'", "'sym'", "'empty'", "generator", "'('", "'<'"})

    # -- nominal terms

    def nmt_term(self) -> NmtTerm:
        start = self.tok.start
        t = self.nmt_tens()
        while self.accept(";"):
            t = self.typed(NSeq(t, self.nmt_tens()), start, nmt_type)
        return t

    def nmt_tens(self) -> NmtTerm:
        start = self.tok.start
        t = self.nmt_atom()
        while self.accept("*"):
            t = self.typed(NTensor(t, self.nmt_atom()), start, nmt_type)
        return t

    def nmt_atom(self) -> NmtTerm:
        t = self.tok
        if t.kind == "IDENT":
            if t.text == "empty":
                self.pos += 1
                return NEmpty()
            if t.text == "id" and self.peek(1).kind == "(":
                self.pos += 2
                a = self.expect("IDENT").text
                self.expect(")")
                return NId(a)
            if t.text == "d" and self.peek(1).kind == "(":
                self.pos += 2
                a = self.expect("IDENT").text
                self.expect(",")
                b = self.expect("IDENT").text
                self.expect(")")
                return Delta(a, b)
            raise self.fail({"'id('", "'d('", "'empty'", "'['", "'('"})
        if t.kind == "[":
            self.pos += 1
            a = self.names({">"})
            self.expect(">")
            if self.accept("{"):
                g = self.smt_term()
                self.expect("}")
            else:
                gt = self.expect("IDENT")
                if self.sig is not None and gt.text not in self.sig:
                    err = UnknownGenerator(gt.text)
                    err.span = SourceSpan(gt.start, gt.end)
                    raise err
                g = gt.text
            self.expect("<")
            b = self.names({"]"})
            self.expect("]")
            return self.typed(NGen(a, g, b), t.start, nmt_type)
        if t.kind == "(":
            if (self.peek(1).kind == "IDENT" and self.peek(2).kind == "IDENT"
                    and self.peek(3).kind == ")"):
                x, y = self.peek(1).text, self.peek(2).text
                self.pos += 4
                body = self.nmt_atom()
                return self.typed(PermApp((x, y), body), t.start, nmt_type)
            self.pos += 1
            inner = self.nmt_term()
            self.expect(")")
            return inner
        raise self.fail({"'id('", "'d('", "'empty'", "'['", "'('"})


def parse_smt(text: str, sig: Optional[Signature] = None) -> SmtTerm:
    """Parse an ordinal term; with ``sig`` it is also typechecked."""
    p = _Parser(text, sig)
    t = p.smt_term()
    p.finish()
    return t


def parse_nmt(text: str, sig: Optional[Signature] = None) -> NmtTerm:
    """Parse a nominal term; with ``sig`` it is also typechecked."""
    p = _Parser(text, sig)
    t = p.nmt_term()
    p.finish()
    return t


def parse_term(text: str, kind: str, sig: Optional[Signature] = None):
    return parse_smt(text, sig) if kind == "smt" else parse_nmt(text, sig)


def guess_kind(text: str) -> str:
    """Nominal text always mentions a name list, ``id(``, ``d(`` or ``empty`` alone."""
    try:
        toks = tokenize(text)
    except ParseError:
        return "smt"
    for i, t in enumerate(toks):
        if t.kind == "[" and (i == 0 or toks[i - 1].kind != "}"):
            return "nmt"
        if t.kind == "IDENT" and t.text in ("id", "d") and toks[i + 1].kind == "(":
            return "nmt"
        if t.kind == "<":
            return "smt"
    return "smt"


# ---------------------------------------------------------------- printing

_SEQ, _TENS, _ATOM = 0, 1, 2


def _names(xs) -> str:
    return ",".join(xs)


def _smt(t: SmtTerm, level: int) -> str:
    if isinstance(t, Seq):
        s = f"{_smt(t.left, _SEQ)} ; {_smt(t.right, _TENS)}"
        return s if level <= _SEQ else f"({s})"
    if isinstance(t, Tensor):
        s = f"{_smt(t.left, _TENS)} * {_smt(t.right, _ATOM)}"
        return s if level <= _TENS else f"({s})"
    if isinstance(t, Id):
        return "id"
    if isinstance(t, Sym):
        return "sym"
    if isinstance(t, Empty):
        return "empty"
    if isinstance(t, Gen):
        if isinstance(t.g, Dia):
            return f"<{_names(t.g.a)}] {{{_nmt(t.g.body, _SEQ)}}} [{_names(t.g.b)}>"
        return t.g
    raise TypeError(f"not an SMT term: {t!r}")


def _nmt(t: NmtTerm, level: int) -> str:
    if isinstance(t, NSeq):
        s = f"{_nmt(t.left, _SEQ)} ; {_nmt(t.right, _TENS)}"
        return s if level <= _SEQ else f"({s})"
    if isinstance(t, NTensor):
        s = f"{_nmt(t.left, _TENS)} * {_nmt(t.right, _ATOM)}"
        return s if level <= _TENS else f"({s})"
    if isinstance(t, NId):
        return f"id({t.a})"
    if isinstance(t, Delta):
        return f"d({t.a},{t.b})"
    if isinstance(t, NEmpty):
        return "empty"
    if isinstance(t, NGen):
        g = f"{{{_smt(t.g, _SEQ)}}}" if isinstance(t.g, SmtTerm) else t.g
        return f"[{_names(t.a)}> {g} <{_names(t.b)}]"
    if isinstance(t, PermApp):
        return f"({t.swap[0]} {t.swap[1]}) {_nmt(t.body, _ATOM)}"
    raise TypeError(f"not an NMT term: {t!r}")


def print_term(t) -> str:
    """Render with the fewest parentheses that parse back to ``t``."""
    if isinstance(t, SmtTerm):
        return _smt(t, _SEQ)
    return _nmt(t, _SEQ)
