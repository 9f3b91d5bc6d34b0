"""A small expression language for power series in ``t``.

Grammar (whitespace is insignificant)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    atom     := INTEGER | 't' | IDENT | IDENT '(' expr ')' | '(' expr ')'
    exponent := ('+' | '-')? INTEGER | IDENT

``^`` binds tighter than unary minus and does not associate.  An identifier
exponent is a rational parameter and is only accepted directly above the base
``(1+t)``.  The functions are ``exp`` and ``log1p`` (``log1p(u) = log(1+u)``).
A rational literal ``p/q`` is simply the quotient of two integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import UmbralError
from .series import (
    INFINITE,
    Number,
    Series,
    as_rat,
    binomial_series,
    compose,
    exp_series,
    log1p_series,
    mul_inverse,
    pow_int,
)

FUNCTIONS = ("exp", "log1p")
MAX_DEPTH = 100
# integer exponents beyond this blow up exact constants (2^10^12 has no place in memory)
MAX_EXPONENT = 10_000


class DSLError(UmbralError):
    pass


class DSLSyntaxError(DSLError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.message = message
        self.position = position


class DSLEvaluationError(DSLError, ValueError):
    pass


class DivisionByNonInvertible(DSLEvaluationError):
    pass


class Log1pArgumentError(DSLEvaluationError):
    pass


class ExpArgumentError(DSLEvaluationError):
    pass


class UnboundParameter(DSLEvaluationError):
    pass


# -- syntax tree ---------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Union[int, str]


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Param, Neg, BinOp, Pow, Call]
SeriesExpr = Expr

ONE_PLUS_T = (BinOp("+", Num(1), Var()), BinOp("+", Var(), Num(1)))


# -- tokenizer -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
_TRAILING_SPACE = re.compile(r"\s*")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        space = _TRAILING_SPACE.match(text, pos)
        if space.end() == len(text):
            tokens.append(Token("end", "", len(text)))
            return tokens
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = space.end()
            raise DSLSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


def _int_literal(tok: Token) -> int:
    try:
        return int(tok.text)
    except ValueError:  # longer than the interpreter's int-conversion digit limit
        raise DSLSyntaxError("integer literal too long", tok.pos) from None


# -- parser ----------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise DSLSyntaxError(f"expected {text!r}, found {self._describe()}", self.tok.pos)
        return self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise DSLSyntaxError("expression nested too deeply", self.tok.pos)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise DSLSyntaxError(f"unexpected {self._describe()}", self.tok.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            self._enter()
            node = Neg(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if not self.at("^"):
            return base
        self.advance()
        pos = self.tok.pos
        exponent = self.exponent()
        if isinstance(exponent, str) and base not in ONE_PLUS_T:
            raise DSLSyntaxError(
                "a parameter exponent is only allowed on the base (1+t)", pos
            )
        if self.at("^"):
            raise DSLSyntaxError("'^' is not associative; add parentheses", self.tok.pos)
        return Pow(base, exponent)

    def exponent(self) -> Union[int, str]:
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.advance().text == "-" else 1
            if self.tok.kind != "num":
                raise DSLSyntaxError("expected an integer after the sign", self.tok.pos)
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return sign * _int_literal(tok)
        if tok.kind == "ident" and tok.text not in FUNCTIONS and tok.text != "t":
            self.advance()
            return tok.text
        raise DSLSyntaxError(
            f"exponent must be an integer or a parameter name, found {self._describe()}", tok.pos
        )

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(_int_literal(tok))
        if tok.kind == "ident":
            self.advance()
            if self.at("("):
                if tok.text == "log":
                    raise DSLSyntaxError("unknown function 'log'; write log1p(u) for log(1+u)", tok.pos)
                if tok.text not in FUNCTIONS:
                    raise DSLSyntaxError(f"unknown function {tok.text!r}", tok.pos)
                self.advance()
                self._enter()
                arg = self.expr()
                self.depth -= 1
                self.expect(")")
                return Call(tok.text, arg)
            if tok.text == "t":
                return Var()
            if tok.text in FUNCTIONS or tok.text == "log":
                raise DSLSyntaxError(f"function {tok.text!r} needs an argument", tok.pos)
            return Param(tok.text)
        if self.at("("):
            self.advance()
            self._enter()
            node = self.expr()
            self.depth -= 1
            self.expect(")")
            return node
        raise DSLSyntaxError(f"unexpected {self._describe()}", tok.pos)


def parse(text: Union[str, bytes]) -> Expr:
    """Parse ``text`` into an expression tree or raise :class:`DSLSyntaxError`."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DSLSyntaxError("input is not valid UTF-8", exc.start) from None
    return _Parser(text).parse()


# -- printer ---------------------------------------------------------------------

def _prec(node: Expr) -> int:
    if isinstance(node, BinOp):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node: Expr) -> str:
    """Canonical text with minimal parentheses; ``parse(to_text(e)) == e``."""
    def wrap(child, needed):
        s = to_text(child)
        return f"({s})" if needed else s

    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        return "-" + wrap(node.operand, _prec(node.operand) < 3)
    if isinstance(node, Pow):
        return f"{wrap(node.base, _prec(node.base) < 5)}^{node.exponent}"
    if isinstance(node, BinOp):
        p = _prec(node)
        left = wrap(node.left, _prec(node.left) < p)
        right = wrap(node.right, _prec(node.right) <= p)
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ------------------------------------------------------------------

class _Evaluator:
    def __init__(self, bindings: Mapping[str, Number]):
        self.bindings = {k: as_rat(v) for k, v in bindings.items()}

    def param(self, name: str) -> Fraction:
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundParameter(f"parameter {name!r} is not bound") from None

    def eval(self, node: Expr, n: int) -> Series:
        if isinstance(node, Num):
            return Series.const(node.value, n)
        if isinstance(node, Var):
            return Series.monomial(1, n)
        if isinstance(node, Param):
            return Series.const(self.param(node.name), n)
        if isinstance(node, Neg):
            return -self.eval(node.operand, n)
        if isinstance(node, BinOp):
            if node.op == "/":
                return self.divide(node, n)
            left, right = self.eval(node.left, n), self.eval(node.right, n)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        if isinstance(node, Pow):
            if isinstance(node.exponent, str):
                return binomial_series(self.param(node.exponent), n)
            if abs(node.exponent) > MAX_EXPONENT:
                raise DSLEvaluationError(f"exponent {node.exponent} exceeds {MAX_EXPONENT}")
            base = self.eval(node.base, n)
            if node.exponent < 0 and not base[0]:
                raise DivisionByNonInvertible("negative power of a series without constant term")
            return pow_int(base, node.exponent)
        if isinstance(node, Call):
            arg = self.eval(node.arg, n)
            if arg[0]:
                if node.func == "log1p":
                    raise Log1pArgumentError("log1p needs an argument with zero constant term")
                raise ExpArgumentError("exp needs an argument with zero constant term")
            outer = exp_series(1, n) if node.func == "exp" else log1p_series(n)
            return compose(outer, arg)
        raise TypeError(f"not an expression node: {node!r}")

    def divide(self, node: BinOp, n: int) -> Series:
        den = self.eval(node.right, n)
        d = den.order
        m = n
        while d == INFINITE and m < 4 * n + 16:
            m = 2 * m + 2
            den = self.eval(node.right, m)
            d = den.order
        if d == INFINITE:
            raise DivisionByNonInvertible("denominator vanishes to every computed order")
        if d == 0:
            return self.eval(node.left, n) * mul_inverse(den.truncate(n))
        num = self.eval(node.left, n + d)
        den = self.eval(node.right, n + d)
        if num.order < d:
            raise DivisionByNonInvertible(
                f"numerator has order {num.order}, below the denominator's order {d}"
            )
        return num.shift_down(d) * mul_inverse(den.shift_down(d))


def evaluate(expr: Union[Expr, str], bindings: Mapping[str, Number] | None = None,
             trunc: int = 8) -> Series:
    """Expand an expression (tree or source text) to order ``trunc``."""
    if isinstance(expr, (str, bytes)):
        expr = parse(expr)
    return _Evaluator(bindings or {}).eval(expr, trunc)
