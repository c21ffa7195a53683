"""Text format for cells and composition chains.

::

    # declarations
    ebm alpha { hyp a; pole b c; }          # [a -o (b c)]
    ebm tbot  { hyp; pole; }                # [-o ()]
    module m = alpha . beta;                # left fold of composition
    expect m o holds;                       # optional verdict annotation

Labels and names match ``[A-Za-z][A-Za-z0-9_']*``; ``#`` starts a line
comment; the keywords ``ebm module hyp pole expect holds fails`` are
reserved.  Interfaces in a chain are inferred from shared labels -- an
unmatched shared label is an error, never a renaming opportunity.

``parse`` and ``render`` are mutually inverse on every value both accept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownName
from .model import Ebm, Module, compose_chain, make_ebm

_KEYWORDS = {"ebm", "module", "hyp", "pole", "expect", "holds", "fails"}
_MODES = {"c", "o", "acyclic", "connectable"}

_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_']*|[{};=.]|#[^\n]*|\s+|.")


@dataclass(frozen=True)
class SourceFile:
    ebms: tuple[tuple[str, Ebm], ...]
    modules: tuple[tuple[str, tuple[str, ...]], ...]
    expectations: tuple[tuple[str, str, bool], ...] = ()

    def ebm(self, name: str) -> Ebm:
        for n, e in self.ebms:
            if n == name:
                return e
        raise UnknownName(name)


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        chunk = m.group(0)
        if not chunk.isspace() and not chunk.startswith("#"):
            toks.append(_Tok(chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], text: str):
        self.toks = toks
        self.pos = 0
        last_line = text.count("\n") + 1
        self.end = _Tok("", last_line, 1)

    def peek(self) -> _Tok:
        return self.toks[self.pos] if self.pos < len(self.toks) else self.end

    def next(self) -> _Tok:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            got = tok.text or "end of input"
            raise ParseError(tok.line, tok.col, f"expected {text!r}, got {got!r}")
        return tok

    def ident(self, what: str = "identifier") -> str:
        tok = self.next()
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_']*", tok.text) or tok.text in _KEYWORDS:
            got = tok.text or "end of input"
            raise ParseError(tok.line, tok.col, f"expected {what}, got {got!r}")
        return tok.text


def parse(text: str) -> SourceFile:
    cur = _Cursor(_lex(text), text)
    ebms: list[tuple[str, Ebm]] = []
    modules: list[tuple[str, tuple[str, ...]]] = []
    expectations: list[tuple[str, str, bool]] = []
    names: set[str] = set()
    while cur.peek().text:
        tok = cur.next()
        if tok.text == "ebm":
            name_tok = cur.peek()
            name = cur.ident("cell name")
            if name in names:
                raise ParseError(name_tok.line, name_tok.col, f"duplicate name {name!r}")
            names.add(name)
            cur.expect("{")
            cur.expect("hyp")
            hyps = _idents_until(cur, ";")
            poles = []
            while cur.peek().text == "pole":
                cur.next()
                poles.append(_idents_until(cur, ";"))
            if not poles:
                nxt = cur.peek()
                raise ParseError(nxt.line, nxt.col, "a cell needs at least one pole")
            cur.expect("}")
            ebms.append((name, make_ebm(hyps, poles)))
        elif tok.text == "module":
            name_tok = cur.peek()
            name = cur.ident("module name")
            if name in names:
                raise ParseError(name_tok.line, name_tok.col, f"duplicate name {name!r}")
            names.add(name)
            cur.expect("=")
            chain = [cur.ident("cell name")]
            while cur.peek().text == ".":
                cur.next()
                chain.append(cur.ident("cell name"))
            cur.expect(";")
            modules.append((name, tuple(chain)))
        elif tok.text == "expect":
            subject = cur.ident("declaration name")
            mode_tok = cur.next()
            if mode_tok.text not in _MODES:
                raise ParseError(
                    mode_tok.line, mode_tok.col, f"expected a mode, got {mode_tok.text!r}"
                )
            verdict = cur.next()
            if verdict.text not in ("holds", "fails"):
                raise ParseError(
                    verdict.line, verdict.col, "expected 'holds' or 'fails'"
                )
            cur.expect(";")
            expectations.append((subject, mode_tok.text, verdict.text == "holds"))
        else:
            got = tok.text or "end of input"
            raise ParseError(tok.line, tok.col, f"expected a declaration, got {got!r}")
    return SourceFile(tuple(ebms), tuple(modules), tuple(expectations))


def _idents_until(cur: _Cursor, stop: str) -> list[str]:
    out = []
    while cur.peek().text != stop:
        out.append(cur.ident("label"))
    cur.next()
    return out


def render(sf: SourceFile) -> str:
    lines = []
    for name, e in sf.ebms:
        hyp = "hyp" + ("".join(" " + h for h in e.hyps)) + ";"
        poles = " ".join(
            "pole" + ("".join(" " + c for c in pole)) + ";" for pole in e.poles
        )
        lines.append(f"ebm {name} {{ {hyp} {poles} }}")
    for name, chain in sf.modules:
        lines.append(f"module {name} = {' . '.join(chain)};")
    for subject, mode, holds in sf.expectations:
        lines.append(f"expect {subject} {mode} {'holds' if holds else 'fails'};")
    return "\n".join(lines) + "\n"


def build_modules(sf: SourceFile) -> dict[str, Module]:
    """Elaborate every module declaration by folding composition."""
    out = {}
    for name, chain in sf.modules:
        out[name] = compose_chain([sf.ebm(n) for n in chain])
    return out


def subject(sf: SourceFile) -> tuple[str, Module]:
    """The module a file is about: its last module declaration, else its
    sole cell declaration."""
    if sf.modules:
        name, _ = sf.modules[-1]
        return name, build_modules(sf)[name]
    if len(sf.ebms) == 1:
        name, e = sf.ebms[0]
        return name, compose_chain([e])
    raise UnknownName("<subject>")
