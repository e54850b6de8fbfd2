"""
Immutable AST for complex expressions in z and conj(z).

Nodes are frozen dataclasses, so one parsed tree can be shared and evaluated
concurrently. ``format_expr`` emits canonical fully parenthesized text that
parses back to an equivalent tree.
"""

import math
from dataclasses import dataclass
from typing import Iterator, List


class Expr:
    """Base class of every AST node"""

    def children(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True)
class Constant(Expr):
    value: complex


@dataclass(frozen=True)
class VarZ(Expr):
    pass


@dataclass(frozen=True)
class Conj(Expr):
    arg: Expr

    def children(self) -> tuple:
        return (self.arg,)


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def children(self) -> tuple:
        return (self.arg,)


@dataclass(frozen=True)
class BinaryOp(Expr):
    left: Expr
    right: Expr
    symbol = "?"

    def children(self) -> tuple:
        return (self.left, self.right)


class Add(BinaryOp):
    symbol = "+"


class Sub(BinaryOp):
    symbol = "-"


class Mul(BinaryOp):
    symbol = "*"


class Div(BinaryOp):
    symbol = "/"


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    exponent: int

    def children(self) -> tuple:
        return (self.base,)


@dataclass(frozen=True)
class Pow(Expr):
    """Non-integer power, evaluated as exp(exponent * ln(base)) on the principal branch"""

    base: Expr
    exponent: Expr

    def children(self) -> tuple:
        return (self.base, self.exponent)


@dataclass(frozen=True)
class Fn(Expr):
    name: str
    arg: Expr

    def children(self) -> tuple:
        return (self.arg,)


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal without recursion"""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def postorder(e: Expr) -> Iterator[Expr]:
    """Children before parents, without recursion"""
    stack = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        stack.extend((child, False) for child in reversed(node.children()))


def contains_conj(e: Expr) -> bool:
    """True when the tree depends on conj(z)"""
    return any(isinstance(node, Conj) for node in walk(e))


def _format_real(x: float) -> str:
    if math.isnan(x):
        return "(0*1e999)"
    if math.isinf(x):
        return "1e999" if x > 0 else "(-1e999)"
    text = repr(float(x))
    return f"({text})" if text.startswith("-") else text


def _format_constant(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return _format_real(c.real)
    imag = f"{_format_real(abs(c.imag))}*i"
    if c.real == 0:
        return f"({imag})" if c.imag > 0 else f"(-{imag})"
    sign = "+" if c.imag > 0 else "-"
    return f"({_format_real(c.real)}{sign}{imag})"


def _format_node(e: Expr, args: List[str]) -> str:
    if isinstance(e, Constant):
        return _format_constant(e.value)
    if isinstance(e, VarZ):
        return "z"
    if isinstance(e, Conj):
        return f"conj({args[0]})"
    if isinstance(e, Neg):
        return f"(-{args[0]})"
    if isinstance(e, BinaryOp):
        return f"({args[0]}{e.symbol}{args[1]})"
    if isinstance(e, PowInt):
        return f"({args[0]}^{e.exponent})"
    if isinstance(e, Pow):
        return f"({args[0]}^{args[1]})"
    if isinstance(e, Fn):
        return f"{e.name}({args[0]})"
    raise TypeError(f"not an expression node: {e!r}")


def format_expr(e: Expr) -> str:
    """Canonical parenthesized text, e.g. z^2 + 1 -> ((z^2)+1)"""
    stack: List[str] = []
    for node in postorder(e):
        arity = len(node.children())
        args = stack[len(stack) - arity:]
        del stack[len(stack) - arity:]
        stack.append(_format_node(node, args))
    return stack[0]
