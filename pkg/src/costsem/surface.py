"""Concrete syntax for both languages: tokenizer, parsers, printers.

STLC::

    term  ::= 'fn' binder '=>' term | atom+
    atom  ::= IDENT | 'tt' | 'ff' | '(' term ')'
    binder::= '(' IDENT ':' type ')' | IDENT
    type  ::= 'bool' ['->' type] | '(' type ')' ['->' type]

Modernized Algol::

    cmd   ::= 'ret' exp | 'bnd' IDENT '<-' exp ';' cmd
            | 'while' '[' asg ']' '{' cmd '}' | 'get' '[' asg ']'
            | 'set' '[' asg ']' '(' exp ')' | 'dcl' IDENT ':=' exp 'in' cmd
            | '{' cmd '}'
    exp   ::= 'fn' binder '=>' exp
            | 'ifz' exp '{' 'zero' '=>' exp '|' 'suc' IDENT '=>' exp '}'
            | atom+
    atom  ::= IDENT | NUMBER | '(' ')' | 'zero' | 'suc' '(' exp ')' | 'tt' | 'ff'
            | 'cmd' '{' cmd '}' | '(' exp ')'
    asg   ::= IDENT | NUMBER
    type  ::= ('unit' | 'bool' | 'nat' | 'cmd' '(' type ')' | '(' type ')') ['->' type]

Binders are named here and resolved to indices; assignables may be named
by their ``dcl`` binder or given as a literal index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from costsem import stlc
from costsem.algol import syntax as ma


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: Iterable[str] = ()):
        self.line, self.col = line, col
        self.expected = sorted(set(expected))
        detail = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{line}:{col}: {message}{detail}")


class ScopeError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # 'id', 'num', 'sym', 'eof'
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+|--[^\n]*)|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+)"
    r"|(?P<sym>=>|->|<-|:=|[()\[\]{}:;|])"
)

KEYWORDS = {
    "fn", "tt", "ff", "bool", "unit", "nat", "cmd", "ifz", "zero", "suc",
    "ret", "bnd", "while", "get", "set", "dcl", "in",
}


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        text = m.group()
        if m.lastgroup != "ws":
            kind = "kw" if m.lastgroup == "id" and text in KEYWORDS else m.lastgroup
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("kw", "sym") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected: Iterable[str], message: Optional[str] = None):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(message or f"unexpected {found}", t.line, t.col, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail([repr(text)])
        return self.advance()

    def ident(self) -> Token:
        if self.tok.kind != "id":
            self.fail(["identifier"])
        return self.advance()

    def end(self) -> None:
        if self.tok.kind != "eof":
            self.fail(["end of input"])

    @staticmethod
    def lookup(names: Sequence[str], tok: Token, what: str) -> int:
        for ix, name in enumerate(names):
            if name == tok.text:
                return ix
        raise ScopeError(f"unbound {what} {tok.text!r}", tok.line, tok.col)


# -- STLC ------------------------------------------------------------------------


class _StlcParser(_Parser):
    ATOM_START = ("tt", "ff", "(")

    def type_(self) -> stlc.Ty:
        if self.at("bool"):
            self.advance()
            ty: stlc.Ty = stlc.BOOL
        elif self.at("("):
            self.advance()
            ty = self.type_()
            self.expect(")")
        else:
            self.fail(["'bool'", "'('"])
        if self.at("->"):
            self.advance()
            return stlc.Arrow(ty, self.type_())
        return ty

    def term(self, names: list[str]) -> stlc.Tm:
        if self.at("fn"):
            self.advance()
            ty = None
            if self.at("("):
                self.advance()
                name = self.ident().text
                self.expect(":")
                ty = self.type_()
                self.expect(")")
            else:
                name = self.ident().text
            self.expect("=>")
            return stlc.Lam(self.term([name, *names]), ty)
        e = self.atom(names)
        while self.tok.kind == "id" or self.at(*self.ATOM_START):
            e = stlc.Ap(e, self.atom(names))
        return e

    def atom(self, names: list[str]) -> stlc.Tm:
        t = self.tok
        if t.kind == "id":
            self.advance()
            return stlc.Var(self.lookup(names, t, "variable"))
        if self.at("tt"):
            self.advance()
            return stlc.TT()
        if self.at("ff"):
            self.advance()
            return stlc.FF()
        if self.at("("):
            self.advance()
            e = self.term(names)
            self.expect(")")
            return e
        self.fail(["identifier", "'tt'", "'ff'", "'('", "'fn'"])


def parse_stlc(src: str) -> stlc.Tm:
    p = _StlcParser(src)
    e = p.term([])
    p.end()
    return e


def print_stlc_type(ty: stlc.Ty) -> str:
    if isinstance(ty, stlc.Arrow):
        dom = print_stlc_type(ty.dom)
        if isinstance(ty.dom, stlc.Arrow):
            dom = f"({dom})"
        return f"{dom} -> {print_stlc_type(ty.cod)}"
    return "bool"


def print_stlc(e: stlc.Tm, names: Sequence[str] = ()) -> str:
    names = list(names)
    match e:
        case stlc.Var(ix):
            return names[ix] if ix < len(names) else f"?{ix}"
        case stlc.TT():
            return "tt"
        case stlc.FF():
            return "ff"
        case stlc.Lam(body, ty):
            x = f"x{len(names)}"
            binder = x if ty is None else f"({x}: {print_stlc_type(ty)})"
            return f"fn {binder} => {print_stlc(body, [x, *names])}"
        case stlc.Ap(f, a):
            fs = print_stlc(f, names)
            if isinstance(f, stlc.Lam):
                fs = f"({fs})"
            as_ = print_stlc(a, names)
            if isinstance(a, (stlc.Lam, stlc.Ap)):
                as_ = f"({as_})"
            return f"{fs} {as_}"
    raise TypeError(f"not a term: {e!r}")


# -- Modernized Algol --------------------------------------------------------------

CMD_START = ("ret", "bnd", "while", "get", "set", "dcl", "{")


class _MaParser(_Parser):
    ATOM_START = ("(", "zero", "suc", "tt", "ff", "cmd")

    def type_(self) -> ma.MaTy:
        if self.at("unit"):
            self.advance()
            ty: ma.MaTy = ma.UNIT
        elif self.at("bool"):
            self.advance()
            ty = ma.BOOL
        elif self.at("nat"):
            self.advance()
            ty = ma.NAT
        elif self.at("cmd"):
            self.advance()
            self.expect("(")
            ty = ma.CmdTy(self.type_())
            self.expect(")")
        elif self.at("("):
            self.advance()
            ty = self.type_()
            self.expect(")")
        else:
            self.fail(["'unit'", "'bool'", "'nat'", "'cmd'", "'('"])
        if self.at("->"):
            self.advance()
            return ma.Arrow(ty, self.type_())
        return ty

    def assignable(self, asgs: list[str]) -> int:
        self.expect("[")
        t = self.tok
        if t.kind == "num":
            self.advance()
            n = int(t.text)
        elif t.kind == "id":
            self.advance()
            n = self.lookup(asgs, t, "assignable")
        else:
            self.fail(["assignable name", "assignable index"])
        self.expect("]")
        return n

    def cmd(self, names: list[str], asgs: list[str]) -> ma.Cmd:
        if self.at("ret"):
            self.advance()
            return ma.Ret(self.exp(names, asgs))
        if self.at("bnd"):
            self.advance()
            x = self.ident().text
            self.expect("<-")
            e = self.exp(names, asgs)
            self.expect(";")
            return ma.Bnd(e, self.cmd([x, *names], asgs))
        if self.at("while"):
            self.advance()
            n = self.assignable(asgs)
            self.expect("{")
            body = self.cmd(names, asgs)
            self.expect("}")
            return ma.While(n, body)
        if self.at("get"):
            self.advance()
            return ma.Get(self.assignable(asgs))
        if self.at("set"):
            self.advance()
            n = self.assignable(asgs)
            self.expect("(")
            e = self.exp(names, asgs)
            self.expect(")")
            return ma.Set(n, e)
        if self.at("dcl"):
            self.advance()
            a = self.ident().text
            self.expect(":=")
            e = self.exp(names, asgs)
            self.expect("in")
            return ma.Dcl(e, self.cmd(names, [a, *asgs]))
        if self.at("{"):
            self.advance()
            m = self.cmd(names, asgs)
            self.expect("}")
            return m
        self.fail([repr(k) for k in CMD_START])

    def exp(self, names: list[str], asgs: list[str]) -> ma.Exp:
        if self.at("fn"):
            self.advance()
            ty = None
            if self.at("("):
                self.advance()
                name = self.ident().text
                self.expect(":")
                ty = self.type_()
                self.expect(")")
            else:
                name = self.ident().text
            self.expect("=>")
            return ma.Lam(self.exp([name, *names], asgs), ty)
        if self.at("ifz"):
            self.advance()
            s = self.exp(names, asgs)
            self.expect("{")
            self.expect("zero")
            self.expect("=>")
            z = self.exp(names, asgs)
            self.expect("|")
            self.expect("suc")
            x = self.ident().text
            self.expect("=>")
            n = self.exp([x, *names], asgs)
            self.expect("}")
            return ma.Ifz(s, z, n)
        e = self.atom(names, asgs)
        while self.tok.kind in ("id", "num") or self.at(*self.ATOM_START):
            e = ma.Ap(e, self.atom(names, asgs))
        return e

    def atom(self, names: list[str], asgs: list[str]) -> ma.Exp:
        t = self.tok
        if t.kind == "id":
            self.advance()
            return ma.Var(self.lookup(names, t, "variable"))
        if t.kind == "num":
            self.advance()
            return ma.numeral(int(t.text))
        if self.at("zero"):
            self.advance()
            return ma.Zero()
        if self.at("suc"):
            self.advance()
            self.expect("(")
            e = self.exp(names, asgs)
            self.expect(")")
            return ma.Suc(e)
        if self.at("tt"):
            self.advance()
            return ma.TT()
        if self.at("ff"):
            self.advance()
            return ma.FF()
        if self.at("cmd"):
            self.advance()
            self.expect("{")
            m = self.cmd(names, asgs)
            self.expect("}")
            return ma.CmdVal(m)
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return ma.Triv()
            e = self.exp(names, asgs)
            self.expect(")")
            return e
        self.fail(["identifier", "number", "'('", "'tt'", "'ff'", "'suc'", "'cmd'", "'fn'", "'ifz'"])


def parse_ma(src: str):
    """Parse a command, or an expression when the text does not start like one."""
    p = _MaParser(src)
    t = p.cmd([], []) if p.at(*CMD_START) else p.exp([], [])
    p.end()
    return t


def parse_ma_cmd(src: str) -> ma.Cmd:
    p = _MaParser(src)
    m = p.cmd([], [])
    p.end()
    return m


def print_ma_type(ty: ma.MaTy) -> str:
    match ty:
        case ma.Unit():
            return "unit"
        case ma.Bool():
            return "bool"
        case ma.Nat():
            return "nat"
        case ma.CmdTy(res):
            return f"cmd({print_ma_type(res)})"
        case ma.Arrow(dom, cod):
            d = print_ma_type(dom)
            if isinstance(dom, ma.Arrow):
                d = f"({d})"
            return f"{d} -> {print_ma_type(cod)}"
    raise TypeError(f"not a type: {ty!r}")


def _is_atom(e: ma.Exp) -> bool:
    if isinstance(e, ma.Suc):
        return True
    return isinstance(e, (ma.Var, ma.Triv, ma.Zero, ma.TT, ma.FF, ma.CmdVal))


def print_ma_exp(e: ma.Exp, names: Sequence[str] = (), asgs: Sequence[str] = ()) -> str:
    names = list(names)
    match e:
        case ma.Var(ix):
            return names[ix] if ix < len(names) else f"?{ix}"
        case ma.Triv():
            return "()"
        case ma.Zero():
            return "0"
        case ma.Suc():
            k, core = ma.peel_suc(e)
            if isinstance(core, ma.Zero):
                return str(k)
            out = print_ma_exp(core, names, asgs)
            for _ in range(k):
                out = f"suc({out})"
            return out
        case ma.TT():
            return "tt"
        case ma.FF():
            return "ff"
        case ma.Ifz(s, z, n):
            x = f"x{len(names)}"
            return (
                f"ifz {print_ma_exp(s, names, asgs)} {{ zero => {print_ma_exp(z, names, asgs)}"
                f" | suc {x} => {print_ma_exp(n, [x, *names], asgs)} }}"
            )
        case ma.Lam(body, ty):
            x = f"x{len(names)}"
            binder = x if ty is None else f"({x}: {print_ma_type(ty)})"
            return f"fn {binder} => {print_ma_exp(body, [x, *names], asgs)}"
        case ma.Ap(f, a):
            fs = print_ma_exp(f, names, asgs)
            if not (_is_atom(f) or isinstance(f, ma.Ap)):
                fs = f"({fs})"
            as_ = print_ma_exp(a, names, asgs)
            if not _is_atom(a):
                as_ = f"({as_})"
            return f"{fs} {as_}"
        case ma.CmdVal(m):
            return f"cmd {{ {print_ma_cmd(m, names, asgs)} }}"
    raise TypeError(f"not an expression: {e!r}")


def _asg(n: int, asgs: Sequence[str]) -> str:
    return asgs[n] if n < len(asgs) else str(n)


def print_ma_cmd(m: ma.Cmd, names: Sequence[str] = (), asgs: Sequence[str] = ()) -> str:
    names, asgs = list(names), list(asgs)
    match m:
        case ma.Ret(e):
            return f"ret {print_ma_exp(e, names, asgs)}"
        case ma.Bnd(e, body):
            x = f"x{len(names)}"
            return f"bnd {x} <- {print_ma_exp(e, names, asgs)}; {print_ma_cmd(body, [x, *names], asgs)}"
        case ma.While(n, body):
            return f"while[{_asg(n, asgs)}] {{ {print_ma_cmd(body, names, asgs)} }}"
        case ma.Get(n):
            return f"get[{_asg(n, asgs)}]"
        case ma.Set(n, e):
            return f"set[{_asg(n, asgs)}]({print_ma_exp(e, names, asgs)})"
        case ma.Dcl(e, body):
            a = f"a{len(asgs)}"
            return f"dcl {a} := {print_ma_exp(e, names, asgs)} in {print_ma_cmd(body, names, [a, *asgs])}"
    raise TypeError(f"not a command: {m!r}")


def print_ma(t) -> str:
    if isinstance(t, ma.CMD_TYPES):
        return print_ma_cmd(t)
    return print_ma_exp(t)
