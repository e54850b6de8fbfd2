"""
Expression language for w, K, A, B and phi: parser, AST and jet evaluator
"""

from .nodes import (Expr, Constant, VarZ, Conj, Neg, Add, Sub, Mul, Div, PowInt, Pow, Fn,
                    format_expr, contains_conj, walk, postorder)
from .parser import parse, tokenize, FUNCTIONS, GRAMMAR
from .evaluator import eval_jet, evaluate, evaluate_values, as_function

__all__ = [
    'Expr', 'Constant', 'VarZ', 'Conj', 'Neg', 'Add', 'Sub', 'Mul', 'Div', 'PowInt', 'Pow', 'Fn',
    'format_expr', 'contains_conj', 'walk', 'postorder',
    'parse', 'tokenize', 'FUNCTIONS', 'GRAMMAR',
    'eval_jet', 'evaluate', 'evaluate_values', 'as_function',
]
