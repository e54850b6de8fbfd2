"""
Recursive-descent parser for complex expressions.

The grammar is GRAMMAR below; `zbar` is sugar for conj(z). Arithmetic on
literal operands is folded into a single Constant; an integral constant exponent becomes PowInt.
"""

import cmath
import math
import operator
import re
from dataclasses import dataclass
from typing import List

from ..errors import ExpressionSyntaxError, UnknownIdentifierError
from .nodes import Add, BinaryOp, Conj, Constant, Div, Expr, Fn, Mul, Neg, Pow, PowInt, Sub, VarZ

FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt", "conj")
BUILTIN_CONSTANTS = {"i": 1j, "pi": math.pi, "e": math.e}
MAX_DEPTH = 100  # bracket, unary and exponent nesting; flat chains are unlimited

GRAMMAR = """\
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-' unary | atom
    atom   := NUMBER | 'i' | 'pi' | 'e' | 'z' | 'zbar'
            | IDENT '(' expr ')' | '(' expr ')'
    IDENT  := exp | ln | sin | cos | sqrt | conj
"""

_ARITHMETIC = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}

ATOM_START = frozenset({"NUMBER", "i", "pi", "e", "z", "zbar", "(", "-"} | set(FUNCTIONS))

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, OP, END
    text: str
    offset: int  # byte offset into the UTF-8 source


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8", errors="surrogatepass"))


def tokenize(text: str) -> List[Token]:
    tokens = []
    index = 0
    while index < len(text):
        match = _TOKEN_RE.match(text, index)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[index]!r}", _byte_offset(text, index),
                                        ATOM_START | {"+", "*", "/", "^", ")"})
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token({"number": "NUMBER", "ident": "IDENT", "op": "OP"}[kind],
                                match.group(), _byte_offset(text, index)))
        index = match.end()
    tokens.append(Token("END", "", _byte_offset(text, len(text))))
    return tokens


def _fold(node: Expr) -> Expr:
    """Fold operators whose operands are all literal constants"""
    try:
        if isinstance(node, Neg) and isinstance(node.arg, Constant):
            value = -node.arg.value
        elif isinstance(node, BinaryOp) and isinstance(node.left, Constant) and isinstance(node.right, Constant):
            a, b = complex(node.left.value), complex(node.right.value)
            value = _ARITHMETIC[node.symbol](a, b)
        elif isinstance(node, PowInt) and isinstance(node.base, Constant):
            value = complex(node.base.value) ** node.exponent
        elif isinstance(node, Pow) and isinstance(node.base, Constant) and isinstance(node.exponent, Constant):
            value = complex(node.base.value) ** complex(node.exponent.value)
        else:
            return node
    except (ZeroDivisionError, OverflowError, ValueError):
        return node
    value = complex(value)
    if not cmath.isfinite(value):
        return node
    return Constant(value.real if value.imag == 0 else value)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.nesting = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _at(self, text: str) -> bool:
        return self.current.kind == "OP" and self.current.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise ExpressionSyntaxError(f"expected {text!r}", self.current.offset, {text})
        return self._advance()

    def _enter(self):
        self.nesting += 1
        if self.nesting > MAX_DEPTH:
            raise ExpressionSyntaxError("expression nests too deeply", self.current.offset)

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "END":
            raise ExpressionSyntaxError(f"unexpected {self.current.text!r}", self.current.offset,
                                        {"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            node = _fold((Add if op == "+" else Sub)(node, self.term()))
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._at("*") or self._at("/"):
            op = self._advance().text
            node = _fold((Mul if op == "*" else Div)(node, self.factor()))
        return node

    def factor(self) -> Expr:
        base = self.unary()
        if not self._at("^"):
            return base
        self._advance()
        self._enter()
        exponent = self.factor()  # right-associative
        self.nesting -= 1
        if isinstance(exponent, Constant):
            c = complex(exponent.value)
            if c.imag == 0 and math.isfinite(c.real) and c.real.is_integer():
                return _fold(PowInt(base, int(c.real)))
        return _fold(Pow(base, exponent))

    def unary(self) -> Expr:
        if self._at("-"):
            self._advance()
            self._enter()
            node = _fold(Neg(self.unary()))
            self.nesting -= 1
            return node
        return self.atom()

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "NUMBER":
            self._advance()
            return Constant(float(token.text))
        if token.kind == "IDENT":
            self._advance()
            name = token.text
            if name in BUILTIN_CONSTANTS:
                return Constant(BUILTIN_CONSTANTS[name])
            if name == "z":
                return VarZ()
            if name == "zbar":
                return Conj(VarZ())
            if name in FUNCTIONS:
                self._expect("(")
                self._enter()
                arg = self.expr()
                self.nesting -= 1
                self._expect(")")
                return Conj(arg) if name == "conj" else Fn(name, arg)
            raise UnknownIdentifierError(name, token.offset)
        if self._at("("):
            self._advance()
            self._enter()
            node = self.expr()
            self.nesting -= 1
            self._expect(")")
            return node
        what = "end of input" if token.kind == "END" else repr(token.text)
        raise ExpressionSyntaxError(f"unexpected {what}", token.offset, ATOM_START)


def parse(text: str) -> Expr:
    """Parse expression text into an AST (whitespace-insensitive)"""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ExpressionSyntaxError("input is not valid UTF-8", e.start) from e
    return _Parser(text).parse()
