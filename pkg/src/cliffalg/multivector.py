"""Sparse multivectors and the products of the geometric double algebra.

A :class:`Multivector` is a finitely supported map from :class:`IndexSet` to
scalars, living over a :class:`Signature`. Every product here is the
bilinear extension of a rule on blade pairs ``(e_H, e_J)``:

========================  =================================  ==========
product                   blade pairs kept                   operator
========================  =================================  ==========
geometric                 all                                ``X * Y``
outer (wedge)             ``H & J`` empty                    ``X ^ Y``
left contraction          ``H <= J``                         ``X << Y``
right contraction         ``H >= J``                         ``X >> Y``
scalar product            ``H == J``                         ``X.sp(Y)``
========================  =================================  ==========

Each kept pair contributes ``sigma(H, J) * e_{H symdiff J}``. For the wedge
this agrees with the geometric product of the zero form, since disjoint
sets never pick up a ``q(i)`` factor.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Optional, Union

from .blades import EMPTY, RATIONAL, IndexSet, Rational, Scalar, Signature, as_index_set, merge
from .errors import SignatureMismatchError, UndeclaredIndexError

_NUMBERS = (int, Fraction, Rational, float)

REL_TOL = 1e-9
ABS_TOL = 1e-12

BladeKey = Union[IndexSet, Iterable[int]]


class Multivector:
    """An immutable element of the algebra over ``sig``.

    Zero coefficients are never stored, so the zero multivector has no terms
    and equality is equality of the term mappings.
    """

    __slots__ = ("_terms", "sig")

    def __init__(self, terms: Optional[Mapping[BladeKey, object]], sig: Signature):
        clean: Dict[IndexSet, Scalar] = {}
        for key, value in (terms or {}).items():
            K = as_index_set(key)
            for i in K:
                if not sig.declares(i):
                    raise UndeclaredIndexError(i)
            c = sig.scalar(value)
            clean[K] = clean.get(K, sig.zero) + c
        self._terms = {K: c for K, c in clean.items() if c}
        self.sig = sig

    @classmethod
    def _wrap(cls, terms: Dict[IndexSet, Scalar], sig: Signature) -> "Multivector":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.sig = sig
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._wrap({}, sig)

    @classmethod
    def scalar(cls, value, sig: Signature) -> "Multivector":
        return cls({EMPTY: value}, sig)

    @classmethod
    def blade(cls, indices: BladeKey, sig: Signature, coef=1) -> "Multivector":
        return cls({as_index_set(indices): coef}, sig)

    @classmethod
    def vector(cls, coefficients, sig: Signature) -> "Multivector":
        """Grade-1 element from a mapping ``index -> coefficient`` or a
        sequence aligned with ``sig.indices``."""
        if isinstance(coefficients, Mapping):
            pairs = coefficients.items()
        else:
            coefficients = list(coefficients)
            if len(coefficients) != sig.dim:
                raise ValueError(f"expected {sig.dim} coefficients, got {len(coefficients)}")
            pairs = zip(sig.indices, coefficients)
        return cls({IndexSet._trusted((i,)): c for i, c in pairs}, sig)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[IndexSet, Scalar]:
        return MappingProxyType(self._terms)

    def __getitem__(self, key: BladeKey) -> Scalar:
        return self._terms.get(as_index_set(key), self.sig.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> frozenset:
        """Grades present in the support; empty for the zero multivector."""
        return frozenset(len(K) for K in self._terms)

    def is_pure_grade(self, r: int) -> bool:
        """True when every term has grade ``r`` (so always true for zero)."""
        return all(len(K) == r for K in self._terms)

    def is_vector(self) -> bool:
        return self.is_pure_grade(1)

    def scalar_part(self) -> Scalar:
        return self._terms.get(EMPTY, self.sig.zero)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._terms.items())))

    def isclose(
        self,
        other: "Multivector",
        rel_tol: float = REL_TOL,
        abs_tol: float = ABS_TOL,
        magnitude: float = 0.0,
    ) -> bool:
        """Exact equality for rational signatures.

        For floats each coefficient difference must be within ``abs_tol`` or
        within ``rel_tol`` times the largest coefficient of either operand, so
        terms that cancel to nearly zero are judged against the overall scale.
        ``magnitude`` raises that reference size, for comparisons against a
        value that is exactly zero.
        """
        _check_same(self, other)
        if self.sig.kind == RATIONAL:
            return self._terms == other._terms
        zero = self.sig.zero
        size = max((abs(c) for c in (*self._terms.values(), *other._terms.values())), default=0.0)
        limit = max(abs_tol, rel_tol * max(size, magnitude))
        return all(
            abs(self._terms.get(K, zero) - other._terms.get(K, zero)) <= limit
            for K in self._terms.keys() | other._terms.keys()
        )

    def __repr__(self) -> str:
        return f"Multivector({format_multivector(self)!r})"

    def __str__(self) -> str:
        return format_multivector(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            _check_same(self, other)
            return other
        if isinstance(other, _NUMBERS) and not isinstance(other, bool):
            return Multivector.scalar(other, self.sig)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        one = self.sig.one
        return linear_combine(one, self, one, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        one = self.sig.one
        return linear_combine(one, self, -one, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        one = self.sig.one
        return linear_combine(one, other, -one, self)

    def __neg__(self) -> "Multivector":
        return Multivector._wrap({K: -c for K, c in self._terms.items()}, self.sig)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, _NUMBERS) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _NUMBERS) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor) -> "Multivector":
        f = self.sig.scalar(factor)
        return Multivector._wrap({K: c * f for K, c in self._terms.items() if c * f}, self.sig)

    def __xor__(self, other: "Multivector") -> "Multivector":
        return outer_product(self, other)

    def __lshift__(self, other: "Multivector") -> "Multivector":
        return left_contraction(self, other)

    def __rshift__(self, other: "Multivector") -> "Multivector":
        return right_contraction(self, other)

    def __invert__(self) -> "Multivector":
        return reversion(self)

    def sp(self, other: "Multivector") -> "Multivector":
        return scalar_product(self, other)

    def grade(self, r: int) -> "Multivector":
        return grade_project(self, r)

    def rev(self) -> "Multivector":
        return reversion(self)

    def gi(self) -> "Multivector":
        return grade_involution(self)

    def even(self) -> "Multivector":
        return even_odd_project(self, 0)

    def odd(self) -> "Multivector":
        return even_odd_project(self, 1)


def _check_same(X: Multivector, Y: Multivector) -> None:
    if X.sig is not Y.sig and X.sig != Y.sig:
        raise SignatureMismatchError(f"operands live over different signatures: {X.sig!r} vs {Y.sig!r}")


def linear_combine(a, X: Multivector, b, Y: Multivector) -> Multivector:
    """``a*X + b*Y`` in canonical form."""
    _check_same(X, Y)
    sig = X.sig
    a, b = sig.scalar(a), sig.scalar(b)
    out = {K: a * c for K, c in X._terms.items()}
    zero = sig.zero
    for K, c in Y._terms.items():
        out[K] = out.get(K, zero) + b * c
    return Multivector._wrap({K: c for K, c in out.items() if c}, sig)


# Filters on (|H|, |J|, |H & J|) selecting which blade pairs a product keeps.
_Keep = Optional[Callable[[int, int, int], bool]]


def _product(X: Multivector, Y: Multivector, keep: _Keep) -> Multivector:
    _check_same(X, Y)
    sig = X.sig
    q = sig.q
    out: Dict[IndexSet, Scalar] = {}
    for H, a in X._terms.items():
        nh = len(H)
        for J, b in Y._terms.items():
            sign, K, common = merge(H, J)
            if keep is not None and not keep(nh, len(J), len(common)):
                continue
            c = a * b
            for i in common:
                c *= q(i)
            if not c:
                continue
            if sign < 0:
                c = -c
            if K in out:
                out[K] += c
            else:
                out[K] = c
    return Multivector._wrap({K: c for K, c in out.items() if c}, sig)


def geometric_product(X: Multivector, Y: Multivector) -> Multivector:
    """Clifford product: ``e_H e_J = sigma(H, J) e_{H symdiff J}``."""
    return _product(X, Y, None)


def outer_product(X: Multivector, Y: Multivector) -> Multivector:
    """Grassmann product; blades sharing an index contribute nothing."""
    return _product(X, Y, lambda nh, nj, nc: nc == 0)


def left_contraction(X: Multivector, Y: Multivector) -> Multivector:
    """Keeps blade pairs with ``H`` a subset of ``J``."""
    return _product(X, Y, lambda nh, nj, nc: nc == nh)


def right_contraction(X: Multivector, Y: Multivector) -> Multivector:
    """Keeps blade pairs with ``H`` a superset of ``J``."""
    return _product(X, Y, lambda nh, nj, nc: nc == nj)


def scalar_product(X: Multivector, Y: Multivector) -> Multivector:
    """Keeps blade pairs with ``H == J``; the result is always grade 0."""
    return _product(X, Y, lambda nh, nj, nc: nc == nh == nj)


def grade_project(X: Multivector, r: int) -> Multivector:
    if r < 0:
        return Multivector.zero(X.sig)
    return Multivector._wrap({K: c for K, c in X._terms.items() if len(K) == r}, X.sig)


def even_odd_project(X: Multivector, r: int) -> Multivector:
    """Terms whose grade has parity ``r`` (0 for even, 1 for odd)."""
    if r not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {r}")
    return Multivector._wrap({K: c for K, c in X._terms.items() if len(K) % 2 == r}, X.sig)


def grade_involution(X: Multivector) -> Multivector:
    """Main automorphism: ``e_K -> (-1)**|K| e_K``."""
    return Multivector._wrap(
        {K: (-c if len(K) % 2 else c) for K, c in X._terms.items()}, X.sig
    )


def reversion(X: Multivector) -> Multivector:
    """Anti-automorphism fixing vectors: ``e_K -> (-1)**(k(k-1)/2) e_K``, ``k = |K|``."""
    return Multivector._wrap(
        {K: (-c if len(K) % 4 in (2, 3) else c) for K, c in X._terms.items()}, X.sig
    )


# -- canonical text -------------------------------------------------------


def format_scalar(value: Scalar) -> str:
    """Rationals as ``a`` or ``a/b``; floats in positional notation that
    reads back to the same float."""
    if not isinstance(value, float):
        return str(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot format non-finite scalar {value!r}")
    text = format(Decimal(repr(float(value))), "f")
    if "." not in text:
        text += ".0"
    return text


def format_blade(K: IndexSet) -> str:
    return "e[" + ",".join(map(str, K.indices)) + "]"


def format_multivector(X: Multivector) -> str:
    """Canonical rendering, e.g. ``3 + e[1,2] - 1/2*e[3]``."""
    if not X._terms:
        return "0"
    parts = []
    for K in sorted(X._terms, key=IndexSet.sort_key):
        c = X._terms[K]
        negative = c < 0
        mag = -c if negative else c
        if not K:
            body = format_scalar(mag)
        elif mag == 1:
            body = format_blade(K)
        else:
            body = f"{format_scalar(mag)}*{format_blade(K)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


__all__ = [
    "Multivector",
    "even_odd_project",
    "format_blade",
    "format_multivector",
    "format_scalar",
    "geometric_product",
    "grade_involution",
    "grade_project",
    "left_contraction",
    "linear_combine",
    "outer_product",
    "reversion",
    "right_contraction",
    "scalar_product",
]
