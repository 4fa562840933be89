"""Lexer and recursive-descent parser for ``.ced`` declaration files.

Identifiers starting with an uppercase letter are type variables, all others
term variables.  Bound occurrences resolve to the nearest enclosing binder of
the same namespace; anything else becomes a free :class:`Name` shared by every
occurrence of that spelling in the file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .decls import (CheckDirective, ConvDirective, Define, FailDirective,
                    NormDirective, SynthDirective)
from .diagnostics import Code, Diagnostic, SourceSpan
from .syntax import (STAR, AllTerm, AllType, App, AppTerm, AppType, Beta, BVar,
                     Chi, Delta, Eq, ErasedApp, Iota, Lam, Name, Namespace,
                     Pair, Phi, Pi, PiTerm, PiType, Proj1, Proj2, Rho, TBVar,
                     TLam, TVar, TyLamTerm, TyLamType, TypeApp, Var,
                     namespace_of)
from .stack import deep


class ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


# Token kinds for the alias words and symbols (canonical spelling first).
_WORDS = {
    "Pi": "PI", "All": "ALL", "iota": "IOTA", "lam": "LAM", "Lam": "BIGLAM",
    "beta": "BETA", "delta": "DELTA", "rho": "RHO", "chi": "CHI", "phi": "PHI",
    "def": "DEF",
}
_SYMBOLS = [
    ("★", "STAR"), ("*", "STAR"), ("Π", "PI"), ("∀", "ALL"), ("ι", "IOTA"),
    ("λ", "LAM"), ("Λ", "BIGLAM"), ("·", "TDOT"), ("@", "TDOT"),
    ("≃", "EQSIGN"), ("==", "EQSIGN"), ("≅", "CONV"), ("~=", "CONV"),
    ("β", "BETA"), ("δ", "DELTA"), ("ρ", "RHO"), ("χ", "CHI"), ("φ", "PHI"),
    (".1", "PROJ1"), (".2", "PROJ2"), (".", "DOT"), ("{", "LBRACE"),
    ("}", "RBRACE"), ("(", "LPAREN"), (")", "RPAREN"), ("[", "LBRACK"),
    ("]", "RBRACK"), (",", "COMMA"), (":", "COLON"), ("=", "EQUALS"),
    ("-", "MINUS"),
]
_DIRECTIVES = {"#check": "CHECK", "#fail": "FAIL", "#conv": "CONVD",
               "#norm": "NORM", "#synth": "SYNTH"}

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>--[^\n]*)"
    r"|(?P<directive>#[a-z]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>" + "|".join(re.escape(s) for s, _ in sorted(_SYMBOLS, key=lambda p: -len(p[0]))) + ")"
)
_SYMBOL_KIND = dict(_SYMBOLS)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _span(text: str, filename: str, start: int, end: int) -> SourceSpan:
    line, col = _line_col(text, start)
    end_line, end_col = _line_col(text, end)
    return SourceSpan(filename, start, end, line, col, end_line, end_col)


def tokenize(text: str, filename: str = "<input>") -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(Diagnostic(Code.PARSE_ERROR, f"unexpected character {text[pos]!r}",
                                        _span(text, filename, pos, pos + 1)))
        kind = m.lastgroup
        s = m.group()
        if kind == "ident":
            tokens.append(Token(_WORDS.get(s, "IDENT"), s, pos, m.end()))
        elif kind == "sym":
            tokens.append(Token(_SYMBOL_KIND[s], s, pos, m.end()))
        elif kind == "directive":
            if s not in _DIRECTIVES:
                raise ParseError(Diagnostic(Code.PARSE_ERROR, f"unknown directive {s}",
                                            _span(text, filename, pos, m.end())))
            tokens.append(Token(_DIRECTIVES[s], s, pos, m.end()))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text), len(text)))
    return tokens


_ATERM_START = {"IDENT", "LPAREN", "LBRACK", "BETA"}


class Parser:
    def __init__(self, text: str, filename: str = "<input>",
                 globals: Optional[dict[str, Name]] = None):
        self.text = text
        self.filename = filename
        self.tokens = tokenize(text, filename)
        self.i = 0
        self.globals = {} if globals is None else globals
        self.tscope: list[str] = []
        self.yscope: list[str] = []

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, kind: str) -> bool:
        return self.tok.kind == kind

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(Diagnostic(Code.PARSE_ERROR, message,
                                    _span(self.text, self.filename, tok.start, tok.end)))

    def expect(self, kind: str, what: str) -> Token:
        if not self.peek(kind):
            found = self.tok.text or "end of input"
            self.error(f"expected {what}, found {found!r}")
        return self.advance()

    def ident(self, ns: Optional[Namespace] = None) -> str:
        tok = self.expect("IDENT", "an identifier")
        if ns is not None and namespace_of(tok.text) is not ns:
            want = "term variable (lowercase)" if ns is Namespace.TERM else "type variable (uppercase)"
            self.error(f"expected a {want}, found {tok.text!r}", tok)
        return tok.text

    # -- names ---------------------------------------------------------------

    def global_name(self, spelling: str) -> Name:
        name = self.globals.get(spelling)
        if name is None:
            name = Name.fresh(namespace_of(spelling), spelling)
            self.globals[spelling] = name
        return name

    def resolve(self, spelling: str):
        ns = namespace_of(spelling)
        scope = self.tscope if ns is Namespace.TERM else self.yscope
        for depth, bound in enumerate(reversed(scope)):
            if bound == spelling:
                return BVar(depth) if ns is Namespace.TERM else TBVar(depth)
        name = self.global_name(spelling)
        return Var(name) if ns is Namespace.TERM else TVar(name)

    def under(self, spelling: str, parse):
        scope = self.tscope if namespace_of(spelling) is Namespace.TERM else self.yscope
        scope.append(spelling)
        try:
            return parse()
        finally:
            scope.pop()

    # -- kinds ---------------------------------------------------------------

    def kind(self):
        if self.peek("STAR"):
            self.advance()
            return STAR
        if self.peek("LPAREN"):
            self.advance()
            k = self.kind()
            self.expect("RPAREN", "')'")
            return k
        if self.peek("PI"):
            self.advance()
            x = self.ident()
            self.expect("COLON", "':'")
            if namespace_of(x) is Namespace.TYPE:
                c = self.kind()
                self.expect("DOT", "'.'")
                return PiType(c, self.under(x, self.kind), x)
            c = self.type()
            self.expect("DOT", "'.'")
            return PiTerm(c, self.under(x, self.kind), x)
        self.error(f"expected a kind, found {self.tok.text or 'end of input'!r}")

    # -- types ---------------------------------------------------------------

    def type(self):
        k = self.tok.kind
        if k in ("ALL", "PI", "IOTA", "LAM"):
            self.advance()
            x = self.ident()
            self.expect("COLON", "':'")
            if namespace_of(x) is Namespace.TYPE:
                if k not in ("ALL", "LAM"):
                    self.error(f"{'Π' if k == 'PI' else 'ι'} binds term variables; "
                               f"use ∀ to quantify over {x}")
                c = self.kind()
            else:
                c = self.type()
            self.expect("DOT", "'.'")
            body = self.under(x, self.type)
            if namespace_of(x) is Namespace.TYPE:
                cls = AllType if k == "ALL" else TyLamType
            else:
                cls = {"ALL": AllTerm, "PI": Pi, "IOTA": Iota, "LAM": TyLamTerm}[k]
            return cls(c, body, x)
        head = self.atype()
        while True:
            if self.peek("TDOT"):
                self.advance()
                head = AppType(head, self.atype())
            elif self.tok.kind in _ATERM_START and not self._is_type_ident():
                head = AppTerm(head, self.aterm())
            else:
                return head

    def _is_type_ident(self) -> bool:
        return self.peek("IDENT") and namespace_of(self.tok.text) is Namespace.TYPE

    def atype(self):
        if self.peek("IDENT"):
            tok = self.tok
            x = self.ident()
            if namespace_of(x) is not Namespace.TYPE:
                self.error(f"expected a type, found term variable {x!r}", tok)
            return self.resolve(x)
        if self.peek("LPAREN"):
            self.advance()
            t = self.type()
            self.expect("RPAREN", "')'")
            return t
        if self.peek("LBRACE"):
            self.advance()
            lhs = self.term()
            self.expect("EQSIGN", "'≃'")
            rhs = self.term()
            self.expect("RBRACE", "'}'")
            return Eq(lhs, rhs)
        self.error(f"expected a type, found {self.tok.text or 'end of input'!r}")

    # -- terms ---------------------------------------------------------------

    def term(self):
        if self.peek("LAM"):
            self.advance()
            x = self.ident(Namespace.TERM)
            if self.peek("COLON"):
                self.error("term-level λ takes no domain annotation")
            self.expect("DOT", "'.'")
            return Lam(self.under(x, self.term), x)
        if self.peek("BIGLAM"):
            self.advance()
            x = self.ident()
            self.expect("DOT", "'.'")
            return TLam(namespace_of(x), self.under(x, self.term), x)
        head = self.chain_head()
        while True:
            if self.peek("MINUS"):
                self.advance()
                head = ErasedApp(head, self.aterm())
            elif self.peek("TDOT"):
                self.advance()
                head = TypeApp(head, self.atype())
            elif self.tok.kind in _ATERM_START and not self._is_type_ident():
                head = App(head, self.aterm())
            else:
                return head

    def chain_head(self):
        k = self.tok.kind
        if k == "DELTA":
            self.advance()
            return Delta(self.aterm())
        if k == "RHO":
            self.advance()
            q = self.aterm()
            self.expect("MINUS", "'-'")
            return Rho(q, self.aterm())
        if k == "CHI":
            self.advance()
            t = self.atype()
            self.expect("MINUS", "'-'")
            return Chi(t, self.aterm())
        if k == "PHI":
            self.advance()
            q = self.aterm()
            self.expect("MINUS", "'-'")
            typed = self.aterm()
            self.expect("LBRACE", "'{'")
            target = self.term()
            self.expect("RBRACE", "'}'")
            return Phi(q, typed, target)
        return self.aterm()

    def aterm(self):
        t = self.atom()
        while self.tok.kind in ("PROJ1", "PROJ2"):
            t = Proj1(t) if self.advance().kind == "PROJ1" else Proj2(t)
        return t

    def atom(self):
        if self.peek("IDENT"):
            tok = self.tok
            x = self.ident()
            if namespace_of(x) is not Namespace.TERM:
                self.error(f"expected a term, found type variable {x!r}", tok)
            return self.resolve(x)
        if self.peek("LPAREN"):
            self.advance()
            t = self.term()
            self.expect("RPAREN", "')'")
            return t
        if self.peek("LBRACK"):
            self.advance()
            a = self.term()
            self.expect("COMMA", "','")
            b = self.term()
            self.expect("RBRACK", "']'")
            return Pair(a, b)
        if self.peek("BETA"):
            self.advance()
            self.expect("LBRACE", "'{'")
            w = self.term()
            self.expect("RBRACE", "'}'")
            return Beta(w)
        self.error(f"expected a term, found {self.tok.text or 'end of input'!r}")

    # -- declarations ----------------------------------------------------------

    def decl(self):
        start = self.tok.start
        k = self.tok.kind
        if k == "DEF":
            self.advance()
            x = self.ident()
            self.expect("COLON", "':'")
            if namespace_of(x) is Namespace.TYPE:
                classifier = self.kind()
                self.expect("EQUALS", "'='")
                body = self.type()
            else:
                classifier = self.type()
                self.expect("EQUALS", "'='")
                body = self.term()
            end = self.expect("DOT", "'.' ending the declaration").end
            return Define(self.global_name(x), classifier, body, self._span(start, end))
        if k in ("CHECK", "FAIL"):
            self.advance()
            t = self.term()
            self.expect("COLON", "':'")
            ty = self.type()
            end = self.expect("DOT", "'.' ending the directive").end
            cls = CheckDirective if k == "CHECK" else FailDirective
            return cls(t, ty, self._span(start, end))
        if k == "CONVD":
            self.advance()
            a = self.type()
            self.expect("CONV", "'≅'")
            b = self.type()
            end = self.expect("DOT", "'.' ending the directive").end
            return ConvDirective(a, b, self._span(start, end))
        if k in ("NORM", "SYNTH"):
            self.advance()
            t = self.term()
            end = self.expect("DOT", "'.' ending the directive").end
            cls = NormDirective if k == "NORM" else SynthDirective
            return cls(t, self._span(start, end))
        self.error(f"expected a declaration, found {self.tok.text!r}")

    def _span(self, start, end):
        return _span(self.text, self.filename, start, end)

    def file(self):
        decls = []
        while not self.peek("EOF"):
            start = self.tok
            try:
                decls.append(self.decl())
            except RecursionError:
                self.error("expression nests too deeply to parse", start)
        return decls

    def finish(self, result):
        if not self.peek("EOF"):
            self.error(f"unexpected {self.tok.text!r} after expression")
        return result


@deep
def parse_file(text: str, filename: str = "<input>",
               globals: Optional[dict[str, Name]] = None) -> list:
    return Parser(text, filename, globals).file()


@deep
def parse_term(text: str, globals: Optional[dict[str, Name]] = None):
    p = Parser(text, globals=globals)
    return p.finish(p.term())


@deep
def parse_type(text: str, globals: Optional[dict[str, Name]] = None):
    p = Parser(text, globals=globals)
    return p.finish(p.type())


@deep
def parse_kind(text: str, globals: Optional[dict[str, Name]] = None):
    p = Parser(text, globals=globals)
    return p.finish(p.kind())
