"""Lexer, parser and printer for ``.tdp`` source files.

Grammar (``#`` starts a comment that runs to the end of the line)::

    document   = { statement } ;
    statement  = decl | ranking | relation | density ;
    decl       = ( "independent" | "field" ) ident { "," ident } ";"
               | "param" ident [ "!=" "0" ] ";" ;
    ranking    = "ranking" ( "degrevlex" "(" chain ")"
                           | "tdominant" "(" ident ";" [ chain ] ";" chain ")" ) ";" ;
    chain      = ident { ">" ident } ;
    relation   = "eq" ":" expr "=" expr ";"
               | "ineq" ":" expr "!=" expr ";" ;
    density    = "lagrangian" ":" expr ";" ;
    expr       = term { ( "+" | "-" ) term } ;
    term       = unary { ( "*" | "/" ) unary } ;
    unary      = "-" unary | power ;
    power      = atom [ "^" integer ] ;
    atom       = integer | symbol | "(" expr ")" ;
    symbol     = ident [ "[" ident { "," ident } "]" ] ;

``degrevlex(x > y > z)`` orders the derivations; fields are prioritised in
declaration order.  ``tdominant(t; x; u > v > w)`` names the time variable,
the order of the remaining derivations and the field priority.  A
derivative repeats an axis once per order: ``u[t,t,x]``.  Division is only
allowed by a nonzero constant.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParseError


@dataclass(frozen=True)
class Span:
    line: int
    column: int


def _span():
    return field(default=None, compare=False, repr=False)


# -- expression nodes ---------------------------------------------------------

@dataclass
class Num:
    value: int
    span: Span = _span()


@dataclass
class Sym:
    name: str
    axes: tuple = ()
    span: Span = _span()


@dataclass
class Neg:
    arg: object
    span: Span = _span()


@dataclass
class BinOp:
    op: str
    left: object
    right: object
    span: Span = _span()


@dataclass
class Pow:
    base: object
    exp: int
    span: Span = _span()


# -- statements ---------------------------------------------------------------

@dataclass
class Decl:
    kind: str  # independent | field
    names: tuple
    span: Span = _span()


@dataclass
class ParamDecl:
    name: str
    nonzero: bool
    span: Span = _span()


@dataclass
class RankingSpec:
    kind: str  # degrevlex | tdominant
    axes: tuple
    fields: tuple = ()
    time: str = None
    span: Span = _span()


@dataclass
class Relation:
    kind: str  # eq | ineq
    lhs: object
    rhs: object
    span: Span = _span()


@dataclass
class Density:
    expr: object
    span: Span = _span()


@dataclass
class SourceDocument:
    statements: list

    def of(self, cls):
        return [s for s in self.statements if isinstance(s, cls)]

    @property
    def independents(self):
        return tuple(n for d in self.of(Decl) if d.kind == "independent" for n in d.names)

    @property
    def fields(self):
        return tuple(n for d in self.of(Decl) if d.kind == "field" for n in d.names)

    @property
    def params(self):
        return self.of(ParamDecl)

    @property
    def ranking(self):
        rs = self.of(RankingSpec)
        return rs[0] if rs else None

    @property
    def relations(self):
        return self.of(Relation)

    @property
    def density(self):
        ds = self.of(Density)
        return ds[0] if ds else None


# -- lexer --------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>!=|[-+*/^()\[\],;:=>])
""", re.VERBOSE)

KEYWORDS = {"independent", "field", "param", "ranking", "eq", "ineq", "lagrangian"}


@dataclass
class Token:
    kind: str  # int | ident | op | eof
    text: str
    span: Span


def tokenize(text):
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, s, Span(line, col)))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", Span(line, col)))
    return out


# -- parser -------------------------------------------------------------------

class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {got}", tok.span.line, tok.span.column)

    def at(self, text):
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self, what="identifier"):
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.error(f"expected {what}")
        self.i += 1
        return t

    def integer(self):
        t = self.tok
        if t.kind != "int":
            self.error("expected an integer")
        self.i += 1
        return int(t.text)

    def document(self):
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return SourceDocument(stmts)

    def statement(self):
        t = self.tok
        if t.kind != "ident" or t.text not in KEYWORDS:
            self.error("expected a statement keyword")
        self.i += 1
        kw = t.text
        if kw in ("independent", "field"):
            names = [self.ident().text]
            while self.at(","):
                self.i += 1
                names.append(self.ident().text)
            self.expect(";")
            return Decl(kw, tuple(names), t.span)
        if kw == "param":
            name = self.ident().text
            nonzero = False
            if self.at("!="):
                self.i += 1
                if self.tok.kind != "int" or self.tok.text != "0":
                    self.error("expected 0")
                self.i += 1
                nonzero = True
            self.expect(";")
            return ParamDecl(name, nonzero, t.span)
        if kw == "ranking":
            return self.ranking(t)
        self.expect(":")
        if kw == "lagrangian":
            e = self.expr()
            self.expect(";")
            return Density(e, t.span)
        lhs = self.expr()
        self.expect("=" if kw == "eq" else "!=")
        rhs = self.expr()
        self.expect(";")
        return Relation(kw, lhs, rhs, t.span)

    def chain(self):
        out = [self.ident().text]
        while self.at(">"):
            self.i += 1
            out.append(self.ident().text)
        return tuple(out)

    def ranking(self, t):
        kind = self.ident("ranking kind").text
        if kind not in ("degrevlex", "tdominant"):
            self.error("expected 'degrevlex' or 'tdominant'", self.toks[self.i - 1])
        self.expect("(")
        if kind == "degrevlex":
            spec = RankingSpec(kind, self.chain(), span=t.span)
        else:
            time = self.ident().text
            self.expect(";")
            axes = () if self.at(";") else self.chain()
            self.expect(";")
            spec = RankingSpec(kind, axes, self.chain(), time, t.span)
        self.expect(")")
        self.expect(";")
        return spec

    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            t = self.tok
            self.i += 1
            left = BinOp(t.text, left, self.term(), t.span)
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            t = self.tok
            self.i += 1
            left = BinOp(t.text, left, self.unary(), t.span)
        return left

    def unary(self):
        if self.at("-"):
            t = self.tok
            self.i += 1
            return Neg(self.unary(), t.span)
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            t = self.tok
            self.i += 1
            return Pow(base, self.integer(), t.span)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text), t.span)
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.i += 1
            axes = ()
            if self.at("["):
                self.i += 1
                axes = [self.ident("derivation").text]
                while self.at(","):
                    self.i += 1
                    axes.append(self.ident("derivation").text)
                self.expect("]")
            return Sym(t.text, tuple(axes), t.span)
        self.error("expected an expression")


def _check_names(doc):
    def fail(msg, span):
        raise ParseError(msg, span.line if span else 0, span.column if span else 0)

    seen = {}
    for s in doc.statements:
        names = s.names if isinstance(s, Decl) else (s.name,) if isinstance(s, ParamDecl) else ()
        for n in names:
            if n in seen:
                fail(f"{n!r} is declared twice", s.span)
            seen[n] = s
    indep, fields = set(doc.independents), set(doc.fields)
    params = {p.name for p in doc.params}
    rs = doc.of(RankingSpec)
    if len(rs) > 1:
        fail("more than one ranking", rs[1].span)
    for r in rs:
        axes = set(r.axes) | ({r.time} if r.time else set())
        for a in axes - indep:
            fail(f"undeclared independent variable {a!r} in ranking", r.span)
        if r.kind == "tdominant" and r.time in r.axes:
            fail("the time variable may not be listed among the other derivations", r.span)
        for f in set(r.fields) - fields:
            fail(f"undeclared field {f!r} in ranking", r.span)

    def walk(e):
        if isinstance(e, Sym):
            if e.name in fields:
                for a in e.axes:
                    if a not in indep:
                        fail(f"undeclared independent variable {a!r}", e.span)
            elif e.name in params:
                if e.axes:
                    fail(f"parameter {e.name!r} cannot be differentiated", e.span)
            else:
                fail(f"undeclared symbol {e.name!r}", e.span)
        elif isinstance(e, Neg):
            walk(e.arg)
        elif isinstance(e, BinOp):
            walk(e.left)
            walk(e.right)
        elif isinstance(e, Pow):
            walk(e.base)

    for s in doc.statements:
        if isinstance(s, Relation):
            walk(s.lhs)
            walk(s.rhs)
        elif isinstance(s, Density):
            walk(s.expr)
    ds = doc.of(Density)
    if len(ds) > 1:
        fail("more than one lagrangian density", ds[1].span)
    if ds and doc.relations:
        fail("a file holds either a lagrangian or equations, not both", ds[0].span)


def parse(text):
    """Parse ``.tdp`` source into a :class:`SourceDocument` with source spans."""
    doc = Parser(text).document()
    _check_names(doc)
    return doc


def parse_expr(text):
    """Parse a single expression (no name resolution)."""
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error("expected end of expression")
    return e


# -- printer ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(e, prec=0):
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Sym):
        return f"{e.name}[{','.join(e.axes)}]" if e.axes else e.name
    if isinstance(e, Neg):
        s = "-" + format_expr(e.arg, 3)
        return f"({s})" if prec > 2 else s
    if isinstance(e, Pow):
        base = format_expr(e.base, 4)
        if isinstance(e.base, Pow):
            base = f"({base})"
        return f"{base}^{e.exp}"
    p = _PREC[e.op]
    # left-associative: the right operand needs parentheses at equal precedence
    s = f"{format_expr(e.left, p)} {e.op} {format_expr(e.right, p + 1)}"
    return f"({s})" if prec > p else s


def format_statement(s):
    if isinstance(s, Decl):
        return f"{s.kind} {', '.join(s.names)};"
    if isinstance(s, ParamDecl):
        return f"param {s.name}{' != 0' if s.nonzero else ''};"
    if isinstance(s, RankingSpec):
        if s.kind == "degrevlex":
            return f"ranking degrevlex({' > '.join(s.axes)});"
        return f"ranking tdominant({s.time}; {' > '.join(s.axes)}; {' > '.join(s.fields)});"
    if isinstance(s, Relation):
        op = "=" if s.kind == "eq" else "!="
        return f"{s.kind}: {format_expr(s.lhs)} {op} {format_expr(s.rhs)};"
    if isinstance(s, Density):
        return f"lagrangian: {format_expr(s.expr)};"
    raise TypeError(s)


def format_document(doc):
    return "".join(format_statement(s) + "\n" for s in doc.statements)


def evaluate(e, lookup):
    """Evaluate an expression tree with ``lookup(Sym)`` giving polynomials."""
    from .. import exactpoly as ep

    if isinstance(e, Num):
        return ep.Poly.const(e.value)
    if isinstance(e, Sym):
        return lookup(e)
    if isinstance(e, Neg):
        return -evaluate(e.arg, lookup)
    if isinstance(e, Pow):
        return evaluate(e.base, lookup) ** e.exp
    a, b = evaluate(e.left, lookup), evaluate(e.right, lookup)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not b.is_constant() or not b.terms:
        span = e.span or Span(0, 0)
        raise ParseError("division is only allowed by a nonzero constant", span.line, span.column)
    return a.scale(Fraction(1) / b.constant_value())
