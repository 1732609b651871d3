"""Tiny arithmetic expression language over the variables ``A`` and ``M``.

This is a model-configuration DSL, not a general calculator. Grammar (EBNF):

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := power
    power  := unary ("^" power)?
    unary  := "-" unary | atom
    atom   := number | "A" | "M" | "ln(" expr ")" | "exp(" expr ")" | "(" expr ")"

Binary ``+ - * /`` are left-associative, ``^`` is right-associative and binds
tighter than ``* /``. Variable names are case-sensitive; whitespace is ignored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union


class ExpressionError(ValueError):
    """Base class for problems with expression source text."""


class ExpressionSyntaxError(ExpressionError):
    """Malformed source, unknown identifier, or a statically invalid operand.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(ArithmeticError):
    """Evaluation left the real domain: division by zero, ln of a
    non-positive value, overflow, or a non-finite result."""


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "A" or "M"


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Call:
    func: str  # "ln" or "exp"
    arg: "ExprAst"


ExprAst = Union[Num, Var, Neg, BinOp, Call]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()]))"
)

_VARIABLES = ("A", "M")
_FUNCTIONS = ("ln", "exp")


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            # only whitespace may remain
            rest = source[pos:]
            if rest.strip():
                bad = pos + len(rest) - len(rest.lstrip())
                raise ExpressionSyntaxError(f"unexpected character {source[bad]!r}", bad)
            break
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, symbol: str) -> None:
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError(f"expected {symbol!r}, found end of input", len(self.source))
        if tok[0] != "op" or tok[1] != symbol:
            raise ExpressionSyntaxError(f"expected {symbol!r}, found {tok[1]!r}", tok[2])
        self.advance()

    def parse(self) -> ExprAst:
        if not self.tokens:
            raise ExpressionSyntaxError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExpressionSyntaxError(f"unexpected trailing token {tok[1]!r}", tok[2])
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "+-":
            op = self.advance()[1]
            rhs = self.term()
            node = self._binop(op, node, rhs, tok[2])
        return node

    def term(self) -> ExprAst:
        node = self.power()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "*/":
            op = self.advance()[1]
            rhs = self.power()
            node = self._binop(op, node, rhs, tok[2])
        return node

    def power(self) -> ExprAst:
        base = self.unary()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.advance()
            exponent = self.power()  # right-associative
            return self._binop("^", base, exponent, tok[2])
        return base

    def unary(self) -> ExprAst:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> ExprAst:
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of input", len(self.source))
        kind, text, pos = tok
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "ident":
            self.advance()
            if text in _VARIABLES:
                return Var(text)
            if text in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                if text == "ln":
                    const = const_value(arg)
                    if const is not None and const <= 0.0:
                        raise ExpressionSyntaxError("ln of a non-positive constant", pos)
                return Call(text, arg)
            raise ExpressionSyntaxError(f"unknown identifier {text!r}", pos)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExpressionSyntaxError(f"unexpected token {text!r}", pos)

    @staticmethod
    def _binop(op: str, left: ExprAst, right: ExprAst, pos: int) -> ExprAst:
        if op == "/":
            const = const_value(right)
            if const == 0.0:
                raise ExpressionSyntaxError("division by a constant zero", pos)
        return BinOp(op, left, right)


def parse_expression(source: str) -> ExprAst:
    """Parse ``source`` into an AST, raising ExpressionSyntaxError on bad input."""
    if not source or not source.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(source).parse()


def const_value(node: ExprAst) -> float | None:
    """Value of a variable-free subtree, or None if it references A or M.

    Subtrees that fail to evaluate (e.g. a constant 1/0 nested below) return
    None here; the dynamic evaluation error surfaces later.
    """
    if variables_in(node):
        return None
    try:
        return evaluate_ast(node, 0.0, 0.0)
    except EvaluationError:
        return None


def variables_in(node: ExprAst) -> set[str]:
    if isinstance(node, Num):
        return set()
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return variables_in(node.operand)
    if isinstance(node, Call):
        return variables_in(node.arg)
    return variables_in(node.left) | variables_in(node.right)


def evaluate_ast(node: ExprAst, A: float, M: float) -> float:
    """Evaluate the tree at (A, M). Raises EvaluationError on domain faults."""
    value = _eval(node, A, M)
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite result {value!r}")
    return value


def _eval(node: ExprAst, A: float, M: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return A if node.name == "A" else M
    if isinstance(node, Neg):
        return -_eval(node.operand, A, M)
    if isinstance(node, Call):
        arg = _eval(node.arg, A, M)
        if node.func == "ln":
            if arg <= 0.0:
                raise EvaluationError(f"ln of non-positive value {arg!r}")
            return math.log(arg)
        try:
            return math.exp(arg)
        except OverflowError as exc:
            raise EvaluationError(f"exp overflow at {arg!r}") from exc
    left = _eval(node.left, A, M)
    right = _eval(node.right, A, M)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        if right == 0.0:
            raise EvaluationError("division by zero")
        return left / right
    try:
        return math.pow(left, right)
    except (ValueError, OverflowError) as exc:
        raise EvaluationError(f"invalid power {left!r} ^ {right!r}") from exc


def to_source(node: ExprAst) -> str:
    """Render the tree as parseable source (fully parenthesized)."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    return f"({to_source(node.left)}{node.op}{to_source(node.right)})"
