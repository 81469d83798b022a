"""Command line calculator and verification driver."""

from ..multivector import format_multivector
from .evaluator import evaluate, evaluate_text
from .main import main
from .parser import Binary, Blade, ExprNode, Number, ParseError, Unary, parse

__all__ = [
    "Binary",
    "Blade",
    "ExprNode",
    "Number",
    "ParseError",
    "Unary",
    "evaluate",
    "evaluate_text",
    "format_multivector",
    "main",
    "parse",
]
