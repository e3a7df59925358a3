"""A small expression language over ``Z[T]`` and ``Z[T][[u]]``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | factor
    factor := atom ("^" nat)?
    atom   := nat | "T" | "u" | "eps" "(" nat ")" | "L" "(" nat ")"
            | "inv" "(" expr ")" | "subst2" "(" expr ")"
            | "coeff" "(" expr "," nat ")" | "(" expr ")"

``subst2`` applies ``u -> u*T^2``. Values are polynomials until ``u`` enters,
after which they are series at the ambient truncation.

>>> render_value(evaluate(parse("eps(2)"), 4))
'1 + T + T^3 + T^4'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import chromatic, useries
from .exactpoly import ONE, ZERO, Polynomial, monomial, render as prender
from .useries import Series

Value = Union[Polynomial, Series]


class DSLError(Exception):
    pass


class DSLSyntaxError(DSLError):
    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"syntax error at offset {offset}: expected {expected}, found {found}")


class DSLEvalError(DSLError):
    pass


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Var:
    name: str  # "T" or "u"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"
    index: int | None = None  # second argument of coeff


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Int, Var, Call, BinOp, Neg, Pow]

_NAT_CALLS = {"eps", "L"}
_EXPR_CALLS = {"inv", "subst2"}


# -- lexer / parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "nat", "name", "sym", "end"
    text: str
    pos: int  # character offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        kind = ("nat", "name", "sym")[m.lastindex - 1]
        toks.append(_Tok(kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def _offset(self, tok: _Tok) -> int:
        return len(self.text[: tok.pos].encode("utf-8"))

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: str):
        tok = self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise DSLSyntaxError(self._offset(tok), expected, found)

    def accept(self, sym: str) -> bool:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym: str):
        if not self.accept(sym):
            self.fail(repr(sym))

    def nat(self) -> int:
        tok = self.peek()
        if tok.kind != "nat":
            self.fail("non-negative integer")
        self.i += 1
        return int(tok.text)

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek().kind != "end":
            self.fail("operator or end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = BinOp("+", e, self.term())
            elif self.accept("-"):
                e = BinOp("-", e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while self.accept("*"):
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return Pow(base, self.nat())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "nat":
            self.i += 1
            return Int(int(tok.text))
        if tok.kind == "name":
            name = tok.text
            if name in ("T", "u"):
                self.i += 1
                return Var(name)
            if name in _NAT_CALLS:
                self.i += 1
                self.expect("(")
                n = self.nat()
                self.expect(")")
                return Call(name, Int(n))
            if name in _EXPR_CALLS:
                self.i += 1
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Call(name, e)
            if name == "coeff":
                self.i += 1
                self.expect("(")
                e = self.expr()
                self.expect(",")
                n = self.nat()
                self.expect(")")
                return Call(name, e, n)
            self.fail("T, u, eps, L, inv, subst2 or coeff")
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail("integer, name or '('")


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- canonical rendering --------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def render(e: Expr, need: int = 0) -> str:
    """Canonical text with the minimum parentheses; ``parse(render(e)) == e``."""
    if isinstance(e, Int):
        s = str(e.value)
    elif isinstance(e, Var):
        s = e.name
    elif isinstance(e, Call):
        if e.func == "coeff":
            s = f"coeff({render(e.arg)}, {e.index})"
        else:
            s = f"{e.func}({render(e.arg)})"
    elif isinstance(e, BinOp):
        p = _PREC[e.op]
        s = f"{render(e.left, p)} {e.op} {render(e.right, p + 1)}"
    elif isinstance(e, Neg):
        s = "-" + render(e.operand, 3)
    elif isinstance(e, Pow):
        s = f"{render(e.base, 5)}^{e.exponent}"
    else:
        raise TypeError(f"not an expression node: {e!r}")
    return f"({s})" if _prec(e) < need else s


# -- evaluation -----------------------------------------------------------------


def _as_series(v: Value, trunc: int) -> Series:
    return v if isinstance(v, Series) else useries.constant(v, trunc)


def _binary(op: str, a: Value, b: Value, trunc: int) -> Value:
    if isinstance(a, Polynomial) and isinstance(b, Polynomial):
        if op == "+":
            return a + b
        return a - b if op == "-" else a * b
    a, b = _as_series(a, trunc), _as_series(b, trunc)
    if op == "+":
        return useries.add(a, b)
    if op == "-":
        return useries.add(a, -b)
    return useries.mul(a, b)


def evaluate(e: Expr, trunc: int) -> Value:
    """Evaluate bottom-up; ``u`` makes a series modulo ``u**(trunc+1)``."""
    if trunc < 0:
        raise DSLEvalError(f"negative truncation {trunc}")
    return _Evaluator(trunc).eval(e)


class _Evaluator:
    def __init__(self, trunc: int):
        self.trunc = trunc

    def eval(self, e: Expr) -> Value:
        if isinstance(e, Int):
            return Polynomial({0: e.value})
        if isinstance(e, Var):
            return monomial(1, 1) if e.name == "T" else useries.variable(self.trunc)
        if isinstance(e, Neg):
            return -self.eval(e.operand)
        if isinstance(e, BinOp):
            return _binary(e.op, self.eval(e.left), self.eval(e.right), self.trunc)
        if isinstance(e, Pow):
            if e.exponent < 0:
                raise DSLEvalError(f"negative exponent {e.exponent}")
            return self.eval(e.base) ** e.exponent
        if isinstance(e, Call):
            return self.call(e)
        raise TypeError(f"not an expression node: {e!r}")

    def call(self, e: Call) -> Value:
        if e.func in _NAT_CALLS:
            n = e.arg.value
            if n < 0:
                raise DSLEvalError(f"{e.func} needs a non-negative argument, got {n}")
            return chromatic.epsilon(n) if e.func == "eps" else chromatic.l_recursive(n)
        v = self.eval(e.arg)
        if e.func == "inv":
            if isinstance(v, Polynomial):
                # u-free: only +-1 are invertible
                if v == ONE or v == -ONE:
                    return v
                raise DSLEvalError(f"inv: constant term {prender(v)} is not a unit")
            try:
                return useries.invert(v)
            except useries.NonUnitError as exc:
                raise DSLEvalError(f"inv: {exc}") from None
        if e.func == "subst2":
            if isinstance(v, Polynomial):
                return v
            return useries.substitute_u_scale(v, monomial(1, 2))
        if e.func == "coeff":
            n = e.index
            if isinstance(v, Polynomial):
                return v if n == 0 else ZERO
            try:
                return useries.coefficient_at(v, n)
            except IndexError as exc:
                raise DSLEvalError(f"coeff: {exc}") from None
        raise DSLEvalError(f"unknown function {e.func}")


def render_value(v: Value) -> str:
    return prender(v) if isinstance(v, Polynomial) else useries.render(v)


def run(text: str, trunc: int = 16) -> Value:
    return evaluate(parse(text), trunc)
