"""Brute-force reference implementations used to cross-check the fast paths.

Nothing here imports the product code in :mod:`cliffalg.multivector`; the
oracles only build their final answer as a :class:`Multivector` so results
can be compared directly.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence

from .blades import IndexSet, Signature, rational
from .errors import ScalarKindError, UndeclaredIndexError
from .multivector import Multivector

MAX_WORD_LENGTH = 16

# (position, rule) where rule is "swap" or "reduce"
Move = tuple


def applicable_moves(letters: Sequence[int]) -> List[Move]:
    """All adjacent rewrites available on ``letters``, left to right."""
    moves = []
    for k in range(len(letters) - 1):
        a, b = letters[k], letters[k + 1]
        if a > b:
            moves.append((k, "swap"))
        elif a == b:
            moves.append((k, "reduce"))
    return moves


def rewrite_word(
    word: Sequence[int],
    sig: Signature,
    choose: Optional[Callable[[List[Move]], Move]] = None,
) -> Multivector:
    """Reduce a product of generators ``e_{w1} e_{w2} ...`` to ``lambda * e_K``.

    Applies ``e_j e_i -> -e_i e_j`` (``i < j``) and ``e_i e_i -> q(i)`` to
    adjacent letters until the word is strictly increasing. ``choose`` picks
    which applicable rewrite to perform; the default is the leftmost one.
    """
    letters = list(word)
    if len(letters) > MAX_WORD_LENGTH:
        raise ValueError(f"words are limited to {MAX_WORD_LENGTH} letters, got {len(letters)}")
    for i in letters:
        if not sig.declares(i):
            raise UndeclaredIndexError(i)
    coef = sig.one
    while True:
        moves = applicable_moves(letters)
        if not moves:
            break
        k, rule = moves[0] if choose is None else choose(moves)
        if rule == "swap":
            letters[k], letters[k + 1] = letters[k + 1], letters[k]
            coef = -coef
        else:
            coef *= sig.q(letters[k])
            del letters[k:k + 2]
    return Multivector({IndexSet(letters): coef}, sig)


def alpha_bruteforce(H: IndexSet, J: IndexSet) -> int:
    """Sign ``(-1)**c`` counting pairs ``(i, j)`` in ``H x J`` with ``j < i``, by double loop."""
    sign = 1
    for i in H:
        for j in J:
            if j < i:
                sign = -sign
    return sign


def rank(rows: Sequence[Sequence]) -> int:
    """Row rank by Gaussian elimination over exact rationals."""
    if any(isinstance(x, float) for row in rows for x in row):
        raise ScalarKindError("rank oracle works over exact rationals only")
    m = [[rational(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = max(len(row) for row in m)
    for row in m:
        row.extend([rational(0)] * (ncols - len(row)))
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            f = m[i][col] / m[r][col]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r
