"""Recursive-descent parser for Laurent polynomials over the series field.

The grammar (normative copy in ``docs/grammar.md``)::

    poly      = [sign] term { sign term } ;
    sign      = "+" | "-" ;
    term      = power { ( "*" power ) | ( "/" power ) } ;
    power     = atom [ "^" exponent ] ;
    exponent  = [ "-" ] INT | "(" [ "-" ] INT [ "/" INT ] ")" ;
    atom      = INT | "t" | "g" | VARIABLE | bigo | "(" poly ")" ;
    bigo      = "O" "(" ( "1" | "t" [ "^" exponent ] ) ")" ;

Only ``t`` takes rational exponents; everything else takes integer
exponents, negative ones only on monomials.  A divisor must be a nonzero
constant monomial ``c * t^e`` (a rational literal, a power of ``t``, or a
product of those); series inverses are operations, not syntax.  ``O(t^q)``
adds an unknown tail at ``t^q`` to the coefficient it multiplies.  ``g`` is
the generator of ``F_{p^k}`` for ``k > 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .fields import QQ
from .laurent import LaurentPoly
from .series import Series

__all__ = ["parse_poly", "parse_series", "parse_point", "parse_exponent", "tokenize", "Token"]

_TOKEN_RE = re.compile(r"\s+|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[-+*/^(),])")
_VAR_RE = re.compile(r"^(x|y|z|x[1-9][0-9]*)$")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", a symbol character, or "end"
    text: str
    line: int
    column: int


def tokenize(src):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col, ())
        text = m.group(0)
        if m.lastgroup == "int":
            tokens.append(Token("int", text, line, col))
        elif m.lastgroup == "ident":
            tokens.append(Token("ident", text, line, col))
        elif m.lastgroup == "sym":
            tokens.append(Token(text, text, line, col))
        for ch in text:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int
    tok: Token


@dataclass(frozen=True)
class TPow:
    exp: Fraction
    tok: Token


@dataclass(frozen=True)
class Gen:
    tok: Token


@dataclass(frozen=True)
class Var:
    name: str
    tok: Token


@dataclass(frozen=True)
class BigO:
    exp: Fraction
    tok: Token


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)
    tok: Token


@dataclass(frozen=True)
class Product:
    factors: tuple  # of (op, node) with op in "*", "/"
    tok: Token


@dataclass(frozen=True)
class Power:
    base: object
    exp: object  # int or Fraction
    tok: Token


class _Parser:
    def __init__(self, src):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def cur(self):
        return self.tokens[self.i]

    def error(self, expected, what=None):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        msg = what or f"expected {' or '.join(sorted(expected))}, found {found}"
        raise ParseError(msg, tok.line, tok.column, expected)

    def take(self, kind):
        if self.cur.kind != kind:
            self.error({_describe(kind)})
        tok = self.cur
        self.i += 1
        return tok

    def parse(self):
        node = self.poly()
        if self.cur.kind != "end":
            self.error({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"})
        return node

    def poly(self):
        tok = self.cur
        terms = []
        sign = "+"
        if self.cur.kind in ("+", "-"):
            sign = self.cur.kind
            self.i += 1
        terms.append((sign, self.term()))
        while self.cur.kind in ("+", "-"):
            sign = self.cur.kind
            self.i += 1
            terms.append((sign, self.term()))
        return Sum(tuple(terms), tok)

    def term(self):
        tok = self.cur
        factors = [("*", self.power())]
        while self.cur.kind in ("*", "/"):
            op = self.cur.kind
            self.i += 1
            factors.append((op, self.power()))
        return Product(tuple(factors), tok)

    def power(self):
        tok = self.cur
        base = self.atom()
        if self.cur.kind == "^":
            self.i += 1
            exp = self.exponent(rational=isinstance(base, TPow))
            if isinstance(base, TPow):
                return TPow(exp, tok)
            return Power(base, exp, tok)
        return base

    def exponent(self, rational):
        if self.cur.kind == "(":
            self.i += 1
            neg = self._minus()
            num = int(self.take("int").text)
            den = 1
            if self.cur.kind == "/":
                slash = self.cur
                self.i += 1
                den = int(self.take("int").text)
                if den == 0:
                    raise ParseError("zero denominator in exponent", slash.line, slash.column, ())
                if not rational and Fraction(num, den).denominator != 1:
                    raise ParseError(
                        "only t takes rational exponents", slash.line, slash.column, ()
                    )
            self.take(")")
            value = Fraction(-num if neg else num, den)
            return value if rational else int(value)
        neg = self._minus()
        num = int(self.take("int").text)
        value = -num if neg else num
        return Fraction(value) if rational else value

    def _minus(self):
        if self.cur.kind == "-":
            self.i += 1
            return True
        return False

    def atom(self):
        tok = self.cur
        if tok.kind == "int":
            self.i += 1
            return Num(int(tok.text), tok)
        if tok.kind == "(":
            self.i += 1
            node = self.poly()
            self.take(")")
            return node
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "t":
                return TPow(Fraction(1), tok)
            if tok.text == "g":
                return Gen(tok)
            if tok.text == "O":
                return self.bigo(tok)
            return Var(tok.text, tok)
        self.error({"integer", "'t'", "variable", "'('", "'O'"})

    def bigo(self, tok):
        self.take("(")
        if self.cur.kind == "int":
            one = self.take("int")
            if one.text != "1":
                raise ParseError("O(...) takes 1 or a power of t", one.line, one.column, ("'1'", "'t'"))
            exp = Fraction(0)
        elif self.cur.kind == "ident" and self.cur.text == "t":
            self.i += 1
            exp = Fraction(1)
            if self.cur.kind == "^":
                self.i += 1
                exp = self.exponent(rational=True)
        else:
            self.error({"'1'", "'t'"})
        self.take(")")
        return BigO(exp, tok)


def _describe(kind):
    return {"int": "integer", "ident": "identifier", "end": "end of input"}.get(kind, repr(kind))


def parse_expr(src):
    """Parse text to an AST (no field or variable interpretation yet)."""
    return _Parser(src).parse()


def _variables(node, acc):
    if isinstance(node, Var):
        acc.setdefault(node.name, node.tok)
    elif isinstance(node, Sum):
        for _, n in node.terms:
            _variables(n, acc)
    elif isinstance(node, Product):
        for _, n in node.factors:
            _variables(n, acc)
    elif isinstance(node, Power):
        _variables(node.base, acc)
    return acc


def _var_order(name):
    if name in ("x", "y", "z"):
        return (0, "xyz".index(name))
    return (1, int(name[1:]))


def infer_variables(names):
    """Default variable list for a set of names used in an expression."""
    names = set(names)
    indexed = {n for n in names if n not in ("x", "y", "z")}
    if indexed:
        if names - indexed:
            raise ValueError("cannot mix x, y, z with indexed variables x1, x2, ...")
        n = max(int(v[1:]) for v in indexed)
        return tuple(f"x{i}" for i in range(1, n + 1))
    if not names:
        return ("z",)
    return tuple(sorted(names, key=_var_order))


class _Evaluator:
    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.n = len(self.names)

    def const(self, series):
        return LaurentPoly(self.n, [((0,) * self.n, series)], self.field, self.names)

    def eval(self, node):
        f = self.field
        if isinstance(node, Num):
            return self.const(Series.constant(f(node.value), f))
        if isinstance(node, TPow):
            return self.const(Series.monomial(f.one, node.exp, f))
        if isinstance(node, BigO):
            return self.const(Series.zero(f, node.exp))
        if isinstance(node, Gen):
            if getattr(f, "k", 1) == 1:
                raise ParseError(
                    f"'g' names the generator of F_(p^k) with k > 1, not available over {f.name}",
                    node.tok.line,
                    node.tok.column,
                    (),
                )
            return self.const(Series.constant(f.generator(), f))
        if isinstance(node, Var):
            if node.name not in self.index:
                raise ParseError(
                    f"unknown variable {node.name!r}",
                    node.tok.line,
                    node.tok.column,
                    tuple(repr(n) for n in self.names),
                )
            return LaurentPoly.variable(self.index[node.name], self.n, f, self.names)
        if isinstance(node, Sum):
            acc = LaurentPoly(self.n, (), f, self.names)
            for sign, sub in node.terms:
                val = self.eval(sub)
                acc = acc - val if sign == "-" else acc + val
            return acc
        if isinstance(node, Product):
            acc = None
            for op, sub in node.factors:
                val = self.eval(sub)
                if op == "/":
                    val = self._reciprocal(val, sub)
                acc = val if acc is None else acc * val
            return acc
        if isinstance(node, Power):
            base = self.eval(node.base)
            try:
                return base ** node.exp
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), node.tok.line, node.tok.column, ()) from None
        raise TypeError(f"unknown node {node!r}")

    def _reciprocal(self, val, node):
        tok = node.tok
        zero = (0,) * self.n
        if len(val.terms) != 1 or val.terms[0][0] != zero:
            raise ParseError("can only divide by a rational literal or a power of t", tok.line, tok.column, ())
        c = val.terms[0][1]
        if not (c.is_exact() and c.is_monomial()):
            raise ParseError("can only divide by a rational literal or a power of t", tok.line, tok.column, ())
        return self.const(c.invert())


def parse_poly(src, field=QQ, variables=None):
    """Parse text to a :class:`LaurentPoly` over ``field``.

    ``variables`` fixes the variable list (and so ``nvars``); by default it is
    inferred: indexed names ``x1..xn`` give ``n`` variables, otherwise the
    names used among ``x, y, z`` in that order, and ``z`` if none is used.
    """
    if not isinstance(src, str):
        raise TypeError("parse_poly expects text")
    ast = parse_expr(src)
    used = _variables(ast, {})
    if variables is None:
        for name, tok in used.items():
            if not _VAR_RE.match(name):
                raise ParseError(
                    f"unknown identifier {name!r}", tok.line, tok.column, ("'t'", "'g'", "'O'", "variable")
                )
        try:
            names = infer_variables(used)
        except ValueError as exc:
            tok = next(iter(used.values()))
            raise ParseError(str(exc), tok.line, tok.column, ()) from None
    else:
        names = tuple(variables)
        if not names:
            raise ValueError("at least one variable is required")
    return _Evaluator(field, names).eval(ast)


def parse_series(src, field=QQ):
    """Parse a constant expression (no variables) to a :class:`Series`."""
    ast = parse_expr(src)
    used = _variables(ast, {})
    if used:
        name, tok = next(iter(used.items()))
        raise ParseError(f"a series cannot contain the variable {name!r}", tok.line, tok.column, ())
    poly = _Evaluator(field, ("z",)).eval(ast)
    return poly.coefficient((0,))


def parse_exponent(text):
    """A rational number written ``a`` or ``a/b`` (optionally signed)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", 1, 1, ("rational",)) from None


def parse_point(text):
    """Comma-separated rationals, e.g. ``"0,-1/2"``."""
    parts = text.split(",")
    return tuple(parse_exponent(p) for p in parts)
