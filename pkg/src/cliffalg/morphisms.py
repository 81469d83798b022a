"""Algebra morphisms built from generator images, Gram-matrix
orthogonalization, change of orthogonal basis, and the wedge test for
linear independence.

A linear map ``f`` from vectors into an algebra whose images satisfy
``f(x)**2 = B(x, x)`` extends to exactly one algebra morphism ``F`` with
``F(e_K) = f(e_k1) f(e_k2) ...`` (indices in increasing order).
:class:`MorphismTable` materializes that extension blade by blade.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .blades import EMPTY, RATIONAL, IndexSet, Scalar, Signature, rational
from .errors import (
    BasisError,
    MorphismError,
    ScalarKindError,
    SignatureMismatchError,
    UndeclaredIndexError,
)
from .multivector import Multivector

Matrix = List[List]


class MorphismTable:
    """Blade images of the morphism extending ``images`` over ``source``.

    ``blade_image`` memoizes lazily; a lock keeps concurrent readers
    consistent.
    """

    def __init__(self, source: Signature, images: Mapping[int, Multivector], target: Signature):
        self.source = source
        self.target = target
        self.images: Dict[int, Multivector] = dict(images)
        self._lock = threading.Lock()
        self._blades: Dict[IndexSet, Multivector] = {EMPTY: Multivector.scalar(1, target)}

    def blade_image(self, K) -> Multivector:
        K = K if isinstance(K, IndexSet) else IndexSet(K)
        with self._lock:
            return self._blade_image(K)

    def _blade_image(self, K: IndexSet) -> Multivector:
        cached = self._blades.get(K)
        if cached is not None:
            return cached
        for i in K:
            if not self.source.declares(i):
                raise UndeclaredIndexError(i)
        head = IndexSet._trusted(K.indices[:-1])
        value = self._blade_image(head) * self.images[K.indices[-1]]
        self._blades[K] = value
        return value

    @property
    def blade_images(self) -> Dict[IndexSet, Multivector]:
        """Every blade image over the declared source indices."""
        return {K: self.blade_image(K) for K in self.source.blades()}

    def __call__(self, X: Multivector) -> Multivector:
        return apply_morphism(self, X)


def extend_morphism(
    images: Mapping[int, Multivector],
    source: Signature,
    validate: bool = True,
) -> MorphismTable:
    """Extend generator images to an algebra morphism.

    With ``validate`` the images are checked for ``f(e_i)**2 = q(i)`` and
    ``f(e_i) f(e_j) = -f(e_j) f(e_i)``; over a field of characteristic 0 this
    is equivalent to ``f(x)**2 = B(x, x)`` for every vector ``x``.
    """
    missing = [i for i in source.indices if i not in images]
    if missing:
        raise MorphismError(f"no image given for generator(s) {missing}")
    extra = [i for i in images if not source.declares(i)]
    if extra:
        raise MorphismError(f"images given for undeclared generator(s) {extra}")
    targets = {img.sig for img in images.values()}
    if len(targets) > 1:
        raise SignatureMismatchError("generator images live over different signatures")
    if not targets:
        raise MorphismError("cannot extend a morphism from an empty signature")
    target = targets.pop()
    if validate:
        idx = source.indices
        for a, i in enumerate(idx):
            fi = images[i]
            square = fi * fi
            expected = Multivector.scalar(source.q(i), target)
            if not square.isclose(expected):
                raise MorphismError(
                    f"f(e{i})^2 = {square} but q({i}) = {source.scalar(source.q(i))}"
                )
            for j in idx[a + 1:]:
                left = fi * images[j]
                right = images[j] * fi
                if not left.isclose(-right):
                    raise MorphismError(
                        f"generators {i}, {j} do not anticommute: "
                        f"f(e{i})f(e{j}) = {left}, f(e{j})f(e{i}) = {right}"
                    )
    return MorphismTable(source, images, target)


def apply_morphism(F: MorphismTable, X: Multivector) -> Multivector:
    if X.sig != F.source:
        raise SignatureMismatchError("multivector does not live over the morphism's source")
    out = Multivector.zero(F.target)
    for K, c in X.terms.items():
        out = out + F.blade_image(K).scale(c)
    return out


def compose(G: MorphismTable, F: MorphismTable) -> MorphismTable:
    """``G o F`` as a table over ``F.source``."""
    if F.target != G.source:
        raise SignatureMismatchError("F's target is not G's source")
    images = {i: apply_morphism(G, img) for i, img in F.images.items()}
    return MorphismTable(F.source, images, G.target)


# -- Gram matrices ----------------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    entries: Tuple[Tuple, ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise BasisError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise BasisError(f"Gram matrix is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "GramMatrix":
        return cls(tuple(tuple(_scalar(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, text: str) -> "GramMatrix":
        """First line ``n``, then ``n`` rows of ``n`` rational literals."""
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise ValueError("first line of a Gram file must hold the dimension n")
        n = int(lines[0][0])
        rows = lines[1:]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n} rows of {n} entries")
        return cls.of([[rational(tok) for tok in r] for r in rows])

    @classmethod
    def read(cls, path) -> "GramMatrix":
        return cls.parse(Path(path).read_text())


def _scalar(x):
    return x if isinstance(x, float) else rational(x)


def orthogonalize(G) -> Tuple[Matrix, List]:
    """Find ``P`` invertible with ``P G P^T`` diagonal.

    Symmetric elimination with diagonal pivots. When every remaining diagonal
    entry is zero but an off-diagonal ``G[i][j]`` is not, basis vector ``i``
    is replaced by ``b_i + b_j``, whose square is ``2 G[i][j] != 0``.
    Returns ``(P, d)``; rows of ``P`` are the new basis in old coordinates.
    """
    if not isinstance(G, GramMatrix):
        G = GramMatrix.of(G)
    n = G.n
    A = [list(row) for row in G.entries]
    zero = 0.0 if any(isinstance(x, float) for row in A for x in row) else rational(0)
    one = zero + 1
    P = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def swap(a, b):
        if a == b:
            return
        A[a], A[b] = A[b], A[a]
        for row in A:
            row[a], row[b] = row[b], row[a]
        P[a], P[b] = P[b], P[a]

    def add_multiple(dst, src, f):
        # b_dst <- b_dst + f * b_src, applied congruently
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        for row in A:
            row[dst] += f * row[src]
        P[dst] = [x + f * y for x, y in zip(P[dst], P[src])]

    for k in range(n):
        pivot = next((p for p in range(k, n) if A[p][p] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(k, n) if i != j and A[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            add_multiple(i, j, one)
            pivot = i
        swap(k, pivot)
        for r in range(k + 1, n):
            if A[r][k] != 0:
                add_multiple(r, k, -A[r][k] / A[k][k])
    return P, [A[i][i] for i in range(n)]


def determinant(M: Sequence[Sequence]) -> Scalar:
    """Exact determinant by fraction-valued elimination."""
    m = [[rational(x) for x in row] for row in M]
    n = len(m)
    det = rational(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return rational(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in zip(*B)] for row in A]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


# -- change of orthogonal basis -------------------------------------------


@dataclass
class BasisChangeReport:
    passed: bool
    pairs_checked: int
    new_signature: Signature
    counterexample: Optional[Tuple[IndexSet, IndexSet, Multivector, Multivector]] = None
    morphism: Optional[MorphismTable] = field(default=None, repr=False)


def bilinear(sig: Signature, u: Sequence, v: Sequence):
    """``B(u, v)`` for coordinate rows aligned with ``sig.indices``."""
    out = sig.zero
    for i, a, b in zip(sig.indices, u, v):
        out += sig.scalar(a) * sig.scalar(b) * sig.q(i)
    return out


def change_of_basis_check(
    sig: Signature,
    P: Sequence[Sequence],
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> BasisChangeReport:
    """Rebuild the algebra on the orthogonal basis ``f_i = P[i]`` and confirm
    that the map sending its generators to ``f_i`` respects products.

    Checks every blade pair unless ``samples`` is given, in which case that
    many pairs are drawn with ``rng``.
    """
    n = sig.dim
    if len(P) != n or any(len(row) != n for row in P):
        raise BasisError(f"basis matrix must be {n}x{n}")
    for a in range(n):
        for b in range(a + 1, n):
            if bilinear(sig, P[a], P[b]) != 0:
                raise BasisError(f"basis rows {a + 1} and {b + 1} are not orthogonal")
    if sig.kind == RATIONAL and determinant(P) == 0:
        raise BasisError("basis matrix is singular")
    new_sig = Signature.from_diag([bilinear(sig, row, row) for row in P], sig.kind)
    images = {i: Multivector.vector(row, sig) for i, row in zip(new_sig.indices, P)}
    F = extend_morphism(images, new_sig, validate=True)

    blades = new_sig.blades()
    if samples is None:
        pairs = product(blades, blades)
    else:
        rng = rng or random.Random(0)
        pairs = ((rng.choice(blades), rng.choice(blades)) for _ in range(samples))
    checked = 0
    for H, J in pairs:
        checked += 1
        lhs = apply_morphism(F, Multivector.blade(H, new_sig) * Multivector.blade(J, new_sig))
        rhs = F.blade_image(H) * F.blade_image(J)
        if not lhs.isclose(rhs):
            return BasisChangeReport(False, checked, new_sig, (H, J, lhs, rhs), F)
    return BasisChangeReport(True, checked, new_sig, None, F)


def inverse_basis_morphism(report: BasisChangeReport, sig: Signature, P: Sequence[Sequence]) -> MorphismTable:
    """Morphism from ``sig``'s algebra back to the rebuilt one, ``e_i -> sum_j Pinv[i][j] f_j``."""
    Pinv = invert(P)
    images = {i: Multivector.vector(row, report.new_signature) for i, row in zip(sig.indices, Pinv)}
    return extend_morphism(images, sig, validate=True)


def invert(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [[rational(x) for x in row] + [rational(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise BasisError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


# -- independence -----------------------------------------------------------


def is_independent(vectors: Sequence[Multivector]) -> bool:
    """Vectors are linearly independent iff their wedge is nonzero."""
    if not vectors:
        return True
    sig = vectors[0].sig
    if sig.kind != RATIONAL:
        raise ScalarKindError("independence is decided exactly; use a rational signature")
    acc = Multivector.scalar(1, sig)
    for k, v in enumerate(vectors):
        if not isinstance(v, Multivector) or not v.is_vector():
            raise ValueError(f"argument {k + 1} is not a grade-1 multivector")
        acc = acc ^ v
    return not acc.is_zero()
