"""A tiny closed expression language for smooth fields.

Grammar (lowest precedence first):

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | atom ("^" uint)?
    atom   := number | "pi" | "x" uint | "(" expr ")" | fn "(" expr ")"
    fn     := "sin" | "cos" | "exp" | "log" | "sqrt"

Binary "+"/"-" and "*"/"/" associate left; "^" takes a nonnegative integer
literal and does not chain; unary "-" binds looser than "^" and tighter
than the binary operators, so -x0^2 means -(x0^2). A leading minus folds
into a constant where possible and otherwise desugars to (0 - expr).
Parsing is total over this grammar and ``parse(format_expr(ast)) == ast``
structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import math

from .dual import FUNCTIONS
from .fields import ScalarField


class ParseError(ValueError):
    """Syntax or range error, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class IntPow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Const | Var | Add | Sub | Mul | Div | IntPow | Call

_NUMBER = r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(rf"({_NUMBER})|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^])|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        number, name, op, junk = m.groups()
        if junk is not None:
            raise ParseError(f"unexpected character {junk!r}", m.start())
        if number is not None:
            tokens.append(("num", number, m.start()))
        elif name is not None:
            tokens.append(("name", name, m.start()))
        else:
            tokens.append(("op", op, m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, text, at = self.take()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text or 'end of input'!r}", at)

    def parse(self) -> Expr:
        node = self.expr()
        kind, text, at = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", at)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                node = Add(node, rhs) if text == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.take()
                rhs = self.factor()
                node = Mul(node, rhs) if text == "*" else Div(node, rhs)
            else:
                return node

    def factor(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            inner = self.factor()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Sub(Const(0.0), inner)
        node = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            node = IntPow(node, self.uint())
        return node

    def uint(self) -> int:
        kind, text, at = self.take()
        if kind != "num" or not text.isdigit():
            raise ParseError(f"expected integer exponent, found {text!r}", at)
        return int(text)

    def atom(self) -> Expr:
        kind, text, at = self.take()
        if kind == "num":
            return Const(float(text))
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            if text == "pi":
                return Const(math.pi)
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            m = re.fullmatch(r"x(\d+)", text)
            if m:
                index = int(m.group(1))
                if index >= self.dim:
                    raise ParseError(
                        f"variable x{index} out of range for dimension {self.dim}", at)
                return Var(index)
            raise ParseError(f"unknown name {text!r}", at)
        raise ParseError(f"unexpected token {text or 'end of input'!r}", at)


def parse_ast(text: str, dim: int) -> Expr:
    """Parse to an AST; raises ParseError with position on bad input."""
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    return _Parser(text, dim).parse()


_ADD, _MUL, _POW, _ATOM = 1, 2, 3, 4


def _level(node: Expr) -> int:
    if isinstance(node, (Add, Sub)):
        return _ADD
    if isinstance(node, (Mul, Div)):
        return _MUL
    if isinstance(node, IntPow):
        return _POW
    if isinstance(node, Const) and node.value < 0:
        # Prints with a leading minus, which binds like a unary factor:
        # fine everywhere except as a power base, where it needs parens.
        return _POW
    return _ATOM


def _fmt_const(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def format_expr(node: Expr) -> str:
    """Minimal-parenthesis text; re-parsing reproduces the AST exactly."""

    def wrap(child: Expr, minimum: int) -> str:
        text = format_expr(child)
        return f"({text})" if _level(child) < minimum else text

    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, Add):
        return f"{wrap(node.left, _ADD)} + {wrap(node.right, _ADD + 1)}"
    if isinstance(node, Sub):
        return f"{wrap(node.left, _ADD)} - {wrap(node.right, _ADD + 1)}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, _MUL)}*{wrap(node.right, _MUL + 1)}"
    if isinstance(node, Div):
        return f"{wrap(node.left, _MUL)}/{wrap(node.right, _MUL + 1)}"
    if isinstance(node, IntPow):
        return f"{wrap(node.base, _ATOM)}^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.fn}({format_expr(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def compile_ast(node: Expr):
    """Compile an AST to a carrier-generic body (closures, built once)."""
    if isinstance(node, Const):
        v = node.value
        return lambda coords: v
    if isinstance(node, Var):
        k = node.index
        return lambda coords: coords[k]
    if isinstance(node, Add):
        lf, rf = compile_ast(node.left), compile_ast(node.right)
        return lambda coords: lf(coords) + rf(coords)
    if isinstance(node, Sub):
        lf, rf = compile_ast(node.left), compile_ast(node.right)
        return lambda coords: lf(coords) - rf(coords)
    if isinstance(node, Mul):
        lf, rf = compile_ast(node.left), compile_ast(node.right)
        return lambda coords: lf(coords) * rf(coords)
    if isinstance(node, Div):
        lf, rf = compile_ast(node.left), compile_ast(node.right)
        return lambda coords: lf(coords) / rf(coords)
    if isinstance(node, IntPow):
        bf, n = compile_ast(node.base), node.exponent
        return lambda coords: bf(coords) ** n
    if isinstance(node, Call):
        fn, af = FUNCTIONS[node.fn], compile_ast(node.arg)
        return lambda coords: fn(af(coords))
    raise TypeError(f"not an expression node: {node!r}")


def field_from_ast(node: Expr, dim: int) -> ScalarField:
    return ScalarField(dim, compile_ast(node), label=format_expr(node))


def parse(text: str, dim: int) -> ScalarField:
    """Parse an expression into a smooth field of the given dimension."""
    return field_from_ast(parse_ast(text, dim), dim)
