"""Expression trees for functions on [0, 1] and their parser.

Grammar:
    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := NUMBER | "x" | "(" expr ")" | "-" factor
            | FUNC "(" expr ("," expr)? ")"
    FUNC   := "abs" | "min" | "max" | "sin" | "cos" | "exp"
    NUMBER := decimal literal or "p/q" rational

A NUMBER followed directly by "/" and another NUMBER is read as a single
rational constant; min/max take exactly two arguments, sin/cos/exp exactly
one.  The transcendental functions are accepted only when enabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExpressionSyntaxError, UnknownFunctionError


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Abs:
    arg: "Expr"


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
class Min:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Max:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sin:
    arg: "Expr"


@dataclass(frozen=True)
class Cos:
    arg: "Expr"


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


Expr = (
    Var | Const | Neg | Abs | Add | Sub | Mul | Div | Min | Max | Sin | Cos | Exp
)

_CORE_FUNCS = {"abs": 1, "min": 2, "max": 2}
_TRANS_FUNCS = {"sin": 1, "cos": 1, "exp": 1}


@dataclass(frozen=True)
class _Token:
    kind: str  # number | name | op | end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(_Token("number", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/(),":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], transcendentals: bool):
        self.tokens = tokens
        self.pos = 0
        self.transcendentals = transcendentals

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, text: str) -> _Token:
        token = self.peek()
        if token.kind == "op" and token.text == text:
            return self.advance()
        raise ExpressionSyntaxError(
            f"unexpected {token.text!r}" if token.kind != "end" else "unexpected end of input",
            token.pos,
            expected=repr(text),
        )

    def parse(self) -> Expr:
        node = self.expr()
        tail = self.peek()
        if tail.kind != "end":
            raise ExpressionSyntaxError(
                f"unexpected {tail.text!r}", tail.pos, expected="end of input"
            )
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            value = Fraction(token.text)
            # Rational constant p/q: a number directly followed by "/" number.
            nxt = self.peek()
            after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if (
                nxt.kind == "op"
                and nxt.text == "/"
                and after is not None
                and after.kind == "number"
            ):
                self.advance()
                den_tok = self.advance()
                den = Fraction(den_tok.text)
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator", den_tok.pos)
                value = value / den
            return Const(value)
        if token.kind == "name":
            self.advance()
            if token.text == "x":
                return Var()
            return self.call(token)
        if token.kind == "op" and token.text == "-":
            self.advance()
            return Neg(self.factor())
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExpressionSyntaxError(
            f"unexpected {token.text!r}" if token.kind != "end" else "unexpected end of input",
            token.pos,
            expected="a number, 'x', '(' or a function name",
        )

    def call(self, name_tok: _Token) -> Expr:
        name = name_tok.text
        if name in _TRANS_FUNCS and not self.transcendentals:
            raise UnknownFunctionError(name, name_tok.pos)
        if name not in _CORE_FUNCS and name not in _TRANS_FUNCS:
            raise UnknownFunctionError(name, name_tok.pos)
        arity = _CORE_FUNCS.get(name) or _TRANS_FUNCS[name]
        self.expect_op("(")
        first = self.expr()
        if arity == 1:
            self.expect_op(")")
            return {"abs": Abs, "sin": Sin, "cos": Cos, "exp": Exp}[name](first)
        self.expect_op(",")
        second = self.expr()
        self.expect_op(")")
        return {"min": Min, "max": Max}[name](first, second)


def parse(text: str, *, transcendentals: bool = False) -> Expr:
    """Parse an expression in the variable x.

    Raises ExpressionSyntaxError (with position and expected-token detail)
    or UnknownFunctionError.  sin/cos/exp require transcendentals=True.
    """
    return _Parser(_tokenize(text), transcendentals).parse()
