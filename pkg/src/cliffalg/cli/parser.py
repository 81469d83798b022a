"""Tokenizer and recursive-descent parser for multivector expressions.

Grammar::

    expr   := term { ("+" | "-") term } ;
    term   := unary { ("*" | "^" | "<|" | "|>" | ".") unary } ;
    unary  := "-" unary | atom ;
    atom   := number | blade | func "(" expr { "," integer } ")" | "(" expr ")" ;
    func   := "rev" | "gi" | "grade" | "even" | "odd" ;
    blade  := "e" digits | "e[" integer { "," integer } "]" ;
    number := integer [ "/" integer ] | decimal ;

All five products share one precedence level and associate to the left, so
``a ^ b * c`` is ``(a ^ b) * c``. Use parentheses to say anything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from ..blades import MAX_INDEX, IndexSet

BINARY_OPS = {"*": "gp", "^": "op", "<|": "lc", "|>": "rc", ".": "sp"}
# name -> number of trailing integer arguments
FUNCTIONS = {"rev": 0, "gi": 0, "grade": 1, "even": 0, "odd": 0}


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.message = message
        self.column = column

    def __str__(self) -> str:
        return f"column {self.column}: {self.message}"


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Blade:
    indices: IndexSet
    sign: int = 1


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a name from FUNCTIONS
    operand: "ExprNode"
    arg: Optional[int] = None


@dataclass(frozen=True)
class Binary:
    op: str  # "add", "sub" or a value of BINARY_OPS
    left: "ExprNode"
    right: "ExprNode"


ExprNode = Union[Number, Blade, Unary, Binary]


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "dec", "blade", "name", "op", "end"
    text: str
    column: int
    value: object = None


def _blade_from(indices: List[int], column: int) -> Blade:
    for i in indices:
        if i == 0:
            raise ParseError("blade index 0 is not allowed; indices start at 1", column)
        if i > MAX_INDEX:
            raise ParseError(f"blade index {i} is too large", column)
    if len(set(indices)) != len(indices):
        raise ParseError("duplicate index inside a blade literal", column)
    # parity of the sorting permutation, by counting inversions
    inversions = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices))
                     if indices[a] > indices[b])
    return Blade(IndexSet(indices), -1 if inversions % 2 else 1)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        col = pos + 1
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            if end + 1 < n and text[end] == "." and text[end + 1].isdigit():
                end += 1
                while end < n and text[end].isdigit():
                    end += 1
                tokens.append(Token("dec", text[pos:end], col))
            else:
                tokens.append(Token("int", text[pos:end], col))
            pos = end
        elif ch == "e" and pos + 1 < n and text[pos + 1] == "[":
            close = text.find("]", pos)
            if close < 0:
                raise ParseError("unterminated blade literal", col)
            body = text[pos + 2:close]
            parts = [p.strip() for p in body.split(",")]
            if not all(p.isdigit() for p in parts):
                raise ParseError("blade literal must list positive integers", col)
            tokens.append(Token("blade", text[pos:close + 1], col, _blade_from([int(p) for p in parts], col)))
            pos = close + 1
        elif ch.isalpha():
            end = pos
            while end < n and text[end].isalnum():
                end += 1
            word = text[pos:end]
            if word[0] == "e" and word[1:].isdigit():
                tokens.append(Token("blade", word, col, _blade_from([int(d) for d in word[1:]], col)))
            elif word in FUNCTIONS:
                tokens.append(Token("name", word, col))
            else:
                raise ParseError(f"unknown name {word!r}", col)
            pos = end
        elif text.startswith("<|", pos) or text.startswith("|>", pos):
            tokens.append(Token("op", text[pos:pos + 2], col))
            pos += 2
        elif ch in "+-*^./(),":
            tokens.append(Token("op", ch, col))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", col)
    tokens.append(Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect(self, op: str) -> Token:
        if not self.at_op(op):
            raise ParseError(f"expected {op!r}, found {self.tok.text or 'end of input'!r}", self.tok.column)
        return self.advance()

    def parse(self) -> ExprNode:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.column)
        return node

    def expr(self) -> ExprNode:
        node = self.term()
        while self.at_op("+", "-"):
            op = "add" if self.advance().text == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in BINARY_OPS:
            op = BINARY_OPS[self.advance().text]
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> ExprNode:
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.unary())
        return self.atom()

    def integer(self) -> int:
        negative = False
        if self.at_op("-"):
            self.advance()
            negative = True
        if self.tok.kind != "int":
            raise ParseError("expected an integer", self.tok.column)
        value = int(self.advance().text)
        return -value if negative else value

    def atom(self) -> ExprNode:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            if self.at_op("/"):
                self.advance()
                if self.tok.kind != "int":
                    raise ParseError("expected an integer denominator", self.tok.column)
                den = int(self.advance().text)
                if den == 0:
                    raise ParseError("zero denominator", tok.column)
                value /= den
            return Number(value)
        if tok.kind == "dec":
            self.advance()
            return Number(Fraction(tok.text))
        if tok.kind == "blade":
            self.advance()
            return tok.value
        if tok.kind == "name":
            self.advance()
            self.expect("(")
            operand = self.expr()
            arg = None
            if FUNCTIONS[tok.text]:
                self.expect(",")
                arg = self.integer()
            self.expect(")")
            return Unary(tok.text, operand, arg)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.column)


def parse(text: str) -> ExprNode:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()

