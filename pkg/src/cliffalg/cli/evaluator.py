"""Evaluate expression trees over a signature."""

from __future__ import annotations

from ..blades import Signature
from ..errors import UndeclaredIndexError
from ..multivector import (
    Multivector,
    even_odd_project,
    geometric_product,
    grade_involution,
    grade_project,
    left_contraction,
    outer_product,
    reversion,
    right_contraction,
    scalar_product,
)
from .parser import Binary, Blade, ExprNode, Number, Unary, parse

_BINARY = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "gp": geometric_product,
    "op": outer_product,
    "lc": left_contraction,
    "rc": right_contraction,
    "sp": scalar_product,
}

_UNARY = {
    "neg": lambda x, _: -x,
    "rev": lambda x, _: reversion(x),
    "gi": lambda x, _: grade_involution(x),
    "grade": grade_project,
    "even": lambda x, _: even_odd_project(x, 0),
    "odd": lambda x, _: even_odd_project(x, 1),
}


def evaluate(node: ExprNode, sig: Signature) -> Multivector:
    if isinstance(node, Number):
        return Multivector.scalar(node.value, sig)
    if isinstance(node, Blade):
        for i in node.indices:
            if not sig.declares(i):
                raise UndeclaredIndexError(i)
        return Multivector.blade(node.indices, sig, node.sign)
    if isinstance(node, Unary):
        return _UNARY[node.op](evaluate(node.operand, sig), node.arg)
    if isinstance(node, Binary):
        return _BINARY[node.op](evaluate(node.left, sig), evaluate(node.right, sig))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str, sig: Signature) -> Multivector:
    return evaluate(parse(text), sig)

