"""Jet evaluation of expression trees"""

import logging
from typing import Callable, List, Tuple

import numpy as np

from ..errors import DomainError, EvaluationError
from ..numerics.jet import ComplexLike, WirtingerJet, jet_apply, jet_power
from .nodes import BinaryOp, Conj, Constant, Expr, Fn, Neg, Pow, PowInt, VarZ, format_expr, postorder

logger = logging.getLogger(__name__)


def _combine(node: Expr, args: List[WirtingerJet], seed: WirtingerJet, scale: np.ndarray) -> WirtingerJet:
    if isinstance(node, VarZ):
        return seed
    if isinstance(node, Constant):
        return WirtingerJet.constant(node.value, like=seed)
    if isinstance(node, Conj):
        return args[0].conj()
    if isinstance(node, Neg):
        return -args[0]
    if isinstance(node, BinaryOp):
        left, right = args
        if node.symbol == "+":
            return left + right
        if node.symbol == "-":
            return left - right
        if node.symbol == "*":
            return left * right
        return left * jet_apply("recip", right, scale=scale, strict=False)
    if isinstance(node, PowInt):
        return jet_power(args[0], node.exponent, scale=scale)
    if isinstance(node, Pow):
        base, exponent = args
        return jet_apply("exp", exponent * jet_apply("ln", base, scale=scale, strict=False), scale=scale)
    if isinstance(node, Fn):
        return jet_apply(node.name, args[0], scale=scale, strict=False)
    raise TypeError(f"not an expression node: {node!r}")


def _eval(root: Expr, seed: WirtingerJet, scale: np.ndarray, strict: bool) -> WirtingerJet:
    stack: List[WirtingerJet] = []
    for node in postorder(root):
        arity = len(node.children())
        args = stack[len(stack) - arity:]
        del stack[len(stack) - arity:]
        result = _combine(node, args, seed, scale)
        if strict and node.children() and result.any_invalid:
            raise DomainError("evaluation within the guard radius of a pole or branch point",
                              point=complex(seed.value), subexpression=format_expr(node))
        stack.append(result)
    return stack[0]


def eval_jet(e: Expr, z: complex) -> WirtingerJet:
    """
    Value and both Wirtinger derivatives of e at a single point.

    Raises DomainError naming the offending subexpression when a pole or
    branch point is hit, EvaluationError when the result is not finite.
    """
    z = complex(z)
    with np.errstate(all="ignore"):
        jet = _eval(e, WirtingerJet.variable(z), np.asarray(z), strict=True).scalar()
    if not (np.isfinite(jet.value) and np.isfinite(jet.d_z) and np.isfinite(jet.d_zbar)):
        raise EvaluationError(f"non-finite jet for {format_expr(e)}", point=z)
    return jet


def evaluate(e: Expr, points: ComplexLike) -> WirtingerJet:
    """
    Vectorized jet evaluation over an array of points.

    Non-evaluable entries (guard-radius hits, overflow) are flagged in the
    returned jet's ``invalid`` mask and zeroed; callers count them as skips.
    """
    z = np.asarray(points, dtype=np.complex128)
    with np.errstate(all="ignore"):
        jet = _eval(e, WirtingerJet.variable(z), z, strict=False)
        jet = jet.with_nonfinite_flagged()
    n_bad = int(np.count_nonzero(jet.invalid))
    if n_bad:
        logger.debug("%s: %d of %d points not evaluable", format_expr(e), n_bad, z.size)
    return jet


def evaluate_values(e: Expr, points: ComplexLike) -> Tuple[np.ndarray, np.ndarray]:
    """(values, invalid mask) over an array of points"""
    jet = evaluate(e, points)
    return np.asarray(jet.value), np.asarray(jet.invalid, dtype=bool)


def as_function(e: Expr) -> Callable[[complex], complex]:
    """Pointwise callable z -> e(z), raising on non-evaluable points"""

    def f(z: complex) -> complex:
        return eval_jet(e, z).value

    return f
