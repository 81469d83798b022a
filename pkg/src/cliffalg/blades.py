"""Index sets naming basis blades, diagonal signatures, and the sign and
reduction factors that define the blade product.

A blade ``e_K`` is named by a finite set ``K`` of positive integer indices.
Multiplying two blades ``e_H e_J`` reorders the concatenated generators
(each inversion contributes a factor -1, see :func:`alpha`) and reduces
repeated generators to their squares ``q(i)`` (see :func:`beta`); the result
is ``sigma(H, J) * e_{H symdiff J}``.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import UndeclaredIndexError

RATIONAL = "rational"
F64 = "f64"
SCALAR_KINDS = (RATIONAL, F64)

MAX_INDEX = 2**31 - 1

# exact rationals are gmpy2.mpq: canonical, interoperable with Fraction, much faster
Rational = type(mpq())
Scalar = Union[Rational, float]


def rational(value) -> Rational:
    """Exact rational from an int, Fraction, mpq, ``"a/b"`` or decimal string;
    floats go through their shortest repr so 0.1 means 1/10."""
    if isinstance(value, float):
        return mpq(repr(value))
    if isinstance(value, Fraction):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


def _check_index(i) -> int:
    if isinstance(i, bool) or not isinstance(i, int):
        raise TypeError(f"blade indices must be integers, got {i!r}")
    if not 1 <= i <= MAX_INDEX:
        raise ValueError(f"blade index {i} outside 1..{MAX_INDEX}")
    return i


class IndexSet:
    """A finite set of positive indices, stored as a strictly increasing tuple.

    The constructor accepts any iterable and canonicalizes it (sorted, with
    duplicates removed). Index sets order by grade first and then
    lexicographically, which is the canonical blade order used for printing.
    """

    __slots__ = ("indices", "_hash")

    def __init__(self, indices: Iterable[int] = ()):
        items = tuple(sorted({_check_index(i) for i in indices}))
        self.indices: Tuple[int, ...] = items
        self._hash = hash(items)

    @classmethod
    def _trusted(cls, items: Tuple[int, ...]) -> "IndexSet":
        obj = cls.__new__(cls)
        obj.indices = items
        obj._hash = hash(items)
        return obj

    @property
    def grade(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __bool__(self) -> bool:
        return bool(self.indices)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, IndexSet):
            return self.indices == other.indices
        return NotImplemented

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.indices), self.indices)

    def __lt__(self, other: "IndexSet") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "IndexSet") -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "IndexSet") -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: "IndexSet") -> bool:
        return self.sort_key() >= other.sort_key()

    def __repr__(self) -> str:
        return f"IndexSet({', '.join(map(str, self.indices))})"

    def issubset(self, other: "IndexSet") -> bool:
        return set(self.indices).issubset(other.indices)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        return IndexSet._trusted(tuple(sorted(set(self.indices) & set(other.indices))))

    def symdiff(self, other: "IndexSet") -> "IndexSet":
        return symdiff(self, other)


EMPTY = IndexSet._trusted(())


def as_index_set(value: Union[IndexSet, Iterable[int]]) -> IndexSet:
    return value if isinstance(value, IndexSet) else IndexSet(value)


@lru_cache(maxsize=1 << 16)
def merge(H: IndexSet, J: IndexSet) -> Tuple[int, IndexSet, Tuple[int, ...]]:
    """Walk two index sets once.

    Returns ``(sign, H symdiff J, H & J)`` where ``sign`` is :func:`alpha`.
    Memoized because products revisit the same blade pairs constantly.
    """
    hs, js = H.indices, J.indices
    nh, nj = len(hs), len(js)
    a = b = 0
    inversions = 0
    sym = []
    common = []
    while a < nh and b < nj:
        h, j = hs[a], js[b]
        if h < j:
            sym.append(h)
            inversions += b
            a += 1
        elif j < h:
            sym.append(j)
            b += 1
        else:
            common.append(h)
            inversions += b
            a += 1
            b += 1
    while a < nh:
        sym.append(hs[a])
        inversions += nj
        a += 1
    sym.extend(js[b:])
    sign = -1 if inversions & 1 else 1
    return sign, IndexSet._trusted(tuple(sym)), tuple(common)


def symdiff(H: IndexSet, J: IndexSet) -> IndexSet:
    """``(H | J) - (H & J)`` as a canonical index set."""
    return merge(H, J)[1]


def alpha(H: IndexSet, J: IndexSet) -> int:
    """``(-1)**c`` with ``c`` the number of pairs ``(i, j)`` in ``H x J`` with ``j < i``.

    Counted by a single merge pass over the two sorted sequences.
    """
    return merge(H, J)[0]


class Signature:
    """Diagonal bilinear form ``q(i) = B(e_i, e_i)`` over an explicit set of indices.

    ``q(i)`` may be positive, negative or zero. Looking up an index that was
    not declared raises :class:`UndeclaredIndexError`; there is no default.
    """

    __slots__ = ("_diag", "kind", "_hash")

    def __init__(self, diag: Mapping[int, object], kind: str = RATIONAL):
        if kind not in SCALAR_KINDS:
            raise ValueError(f"unknown scalar kind {kind!r}; expected one of {SCALAR_KINDS}")
        self.kind = kind
        self._diag = {_check_index(i): self._coerce(kind, v) for i, v in sorted(diag.items())}
        self._hash = hash((kind, tuple(self._diag.items())))

    @staticmethod
    def _coerce(kind: str, value) -> Scalar:
        if kind == RATIONAL:
            return rational(value)
        return float(value)

    @classmethod
    def from_diag(cls, values: Sequence[object], kind: str = RATIONAL) -> "Signature":
        """Indices ``1..len(values)`` with ``q(i) = values[i-1]``."""
        return cls({i: v for i, v in enumerate(values, start=1)}, kind)

    @classmethod
    def from_pqr(cls, p: int, q: int = 0, r: int = 0, kind: str = RATIONAL) -> "Signature":
        """``p`` indices squaring to +1, then ``q`` to -1, then ``r`` to 0."""
        if min(p, q, r) < 0:
            raise ValueError("p, q, r must be non-negative")
        return cls.from_diag([1] * p + [-1] * q + [0] * r, kind)

    def scalar(self, value) -> Scalar:
        """Coerce ``value`` to this signature's scalar kind."""
        return self._coerce(self.kind, value)

    @property
    def zero(self) -> Scalar:
        return mpq(0) if self.kind == RATIONAL else 0.0

    @property
    def one(self) -> Scalar:
        return mpq(1) if self.kind == RATIONAL else 1.0

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(self._diag)

    @property
    def dim(self) -> int:
        return len(self._diag)

    def declares(self, i: int) -> bool:
        return i in self._diag

    def q(self, i: int) -> Scalar:
        try:
            return self._diag[i]
        except KeyError:
            raise UndeclaredIndexError(i) from None

    def items(self):
        return self._diag.items()

    def with_kind(self, kind: str) -> "Signature":
        return Signature(self._diag, kind)

    def blades(self, max_grade: int | None = None) -> list:
        """All index sets over the declared indices, in canonical order."""
        top = self.dim if max_grade is None else min(max_grade, self.dim)
        out = []
        for r in range(top + 1):
            out.extend(IndexSet._trusted(c) for c in combinations(self.indices, r))
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Signature):
            return self.kind == other.kind and self._diag == other._diag
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v}" for i, v in self._diag.items())
        return f"Signature({{{body}}}, kind={self.kind!r})"


def beta(H: IndexSet, J: IndexSet, sig: Signature) -> Scalar:
    """Product of ``q(i)`` over ``H & J``; 1 when the sets are disjoint."""
    out = sig.one
    for i in merge(H, J)[2]:
        out *= sig.q(i)
    return out


def sigma(H: IndexSet, J: IndexSet, sig: Signature) -> Scalar:
    """Coefficient of ``e_{H symdiff J}`` in the blade product ``e_H e_J``."""
    b = beta(H, J, sig)
    return b if alpha(H, J) > 0 else -b
