"""Randomized invariant suites, shared by ``cliffalg check`` and the tests.

Each suite is a function ``trial(rng, sig) -> Optional[str]`` returning
``None`` on success or a description of the failure. :func:`run_suites`
gives every trial its own generator seeded from ``(seed, suite, trial)``
so any failure can be replayed in isolation.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence

from . import oracle
from .blades import RATIONAL, IndexSet, Rational, Signature, alpha, beta, rational, sigma, symdiff
from .morphisms import (
    GramMatrix,
    apply_morphism,
    change_of_basis_check,
    determinant,
    extend_morphism,
    is_independent,
    matmul,
    orthogonalize,
    transpose,
)
from .multivector import (
    Multivector,
    even_odd_project,
    grade_involution,
    grade_project,
    reversion,
)

Trial = Callable[[random.Random, Signature], Optional[str]]


# -- random elements ------------------------------------------------------


def random_scalar(rng: random.Random, sig: Signature, bound: int = 5):
    if sig.kind == RATIONAL:
        return rational(rng.randint(-bound, bound)) / rng.randint(1, 3)
    return rng.uniform(-bound, bound)


def random_index_set(rng: random.Random, sig: Signature, grade: Optional[int] = None) -> IndexSet:
    idx = sig.indices
    if grade is None:
        return IndexSet(i for i in idx if rng.random() < 0.5)
    return IndexSet(rng.sample(idx, grade))


def random_multivector(
    rng: random.Random,
    sig: Signature,
    grade: Optional[int] = None,
    max_terms: int = 6,
) -> Multivector:
    """Sparse random element; pure grade ``grade`` when given."""
    if grade is not None and not 0 <= grade <= sig.dim:
        return Multivector.zero(sig)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[random_index_set(rng, sig, grade)] = random_scalar(rng, sig)
    return Multivector(terms, sig)


def random_vector(rng: random.Random, sig: Signature) -> Multivector:
    return Multivector.vector([random_scalar(rng, sig) for _ in sig.indices], sig)


def random_invertible(rng: random.Random, n: int, bound: int = 3) -> List[List[Rational]]:
    while True:
        M = [[rational(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if determinant(M) != 0:
            return M


def random_orthogonal_basis(rng: random.Random, sig: Signature) -> List[List[Rational]]:
    """Rows of an invertible matrix that are pairwise orthogonal under ``sig``.

    Takes a random invertible ``M``, orthogonalizes the Gram matrix of its
    rows, and returns ``P' M``.
    """
    exact = sig.with_kind(RATIONAL)
    M = random_invertible(rng, exact.dim)
    Q = [[exact.q(i) if i == j else rational(0) for j in exact.indices] for i in exact.indices]
    G = matmul(matmul(M, Q), transpose(M))
    P, _ = orthogonalize(GramMatrix.of(G))
    return matmul(P, M)


def vector_product(vectors: Sequence[Multivector], sig: Signature, wedge: bool = False) -> Multivector:
    one = Multivector.scalar(1, sig)
    if wedge:
        return reduce(lambda a, b: a ^ b, vectors, one)
    return reduce(lambda a, b: a * b, vectors, one)


def bilinear_vectors(x: Multivector, y: Multivector):
    """``B(x, y)`` for grade-1 multivectors over a diagonal form."""
    out = x.sig.zero
    for K, c in x.terms.items():
        (i,) = K.indices
        out += c * y[K] * x.sig.q(i)
    return out


def _diff(label: str, got: Multivector, want: Multivector, magnitude: float = 0.0) -> Optional[str]:
    if got.isclose(want, magnitude=magnitude):
        return None
    return f"{label}: got {got}, expected {want}"


def _size(X: Multivector) -> float:
    return max((abs(float(c)) for c in X.terms.values()), default=0.0)


def _first(*results: Optional[str]) -> Optional[str]:
    return next((r for r in results if r is not None), None)


# -- blade-level suites -----------------------------------------------------


def trial_cocycle(rng, sig):
    H, J, K = (random_index_set(rng, sig) for _ in range(3))
    if alpha(H, J) * alpha(symdiff(H, J), K) != alpha(H, symdiff(J, K)) * alpha(J, K):
        return f"alpha cocycle fails at {H}, {J}, {K}"
    for name, fn in (("beta", beta), ("sigma", sigma)):
        if fn(H, J, sig) * fn(symdiff(H, J), K, sig) != fn(H, symdiff(J, K), sig) * fn(J, K, sig):
            return f"{name} cocycle fails at {H}, {J}, {K}"
    return None


def trial_alpha_oracle(rng, sig):
    H, J = random_index_set(rng, sig), random_index_set(rng, sig)
    if alpha(H, J) != oracle.alpha_bruteforce(H, J):
        return f"alpha({H}, {J}) disagrees with double loop"
    return None


# -- algebra axioms ---------------------------------------------------------


def trial_associativity(rng, sig):
    X, Y, Z = (random_multivector(rng, sig) for _ in range(3))
    return _first(
        _diff("(XY)Z = X(YZ)", (X * Y) * Z, X * (Y * Z)),
        _diff("(X^Y)^Z = X^(Y^Z)", (X ^ Y) ^ Z, X ^ (Y ^ Z)),
    )


def trial_unit(rng, sig):
    X = random_multivector(rng, sig)
    one = Multivector.scalar(1, sig)
    return _first(_diff("1X = X", one * X, X), _diff("X1 = X", X * one, X))


def trial_vector_square(rng, sig):
    x = random_vector(rng, sig)
    return _diff("x^2 = B(x,x)", x * x, Multivector.scalar(bilinear_vectors(x, x), sig))


def trial_anticommutation(rng, sig):
    if sig.dim < 2:
        return None
    i, j = rng.sample(sig.indices, 2)
    ei, ej = Multivector.blade([i], sig), Multivector.blade([j], sig)
    return _diff(f"e{i}e{j} = -e{j}e{i}", ei * ej, -(ej * ei))


def trial_blade_factorization(rng, sig):
    K = random_index_set(rng, sig)
    gens = [Multivector.blade([i], sig) for i in K]
    return _diff(f"e_{K.indices} = product of generators", vector_product(gens, sig), Multivector.blade(K, sig))


def trial_grading(rng, sig):
    r, s = rng.randint(0, sig.dim), rng.randint(0, sig.dim)
    X, Y = random_multivector(rng, sig, r), random_multivector(rng, sig, s)
    if not (X ^ Y).is_pure_grade(r + s):
        return f"wedge of grades {r}, {s} is not pure grade {r + s}"
    A = even_odd_project(random_multivector(rng, sig), r % 2)
    B = even_odd_project(random_multivector(rng, sig), s % 2)
    if any(g % 2 != (r + s) % 2 for g in (A * B).grades()):
        return f"product of parities {r % 2}, {s % 2} has wrong parity"
    return None


def trial_alternation(rng, sig):
    p = rng.randint(2, max(2, min(5, sig.dim + 1)))
    xs = [random_vector(rng, sig) for _ in range(p)]
    k = rng.randrange(p - 1)
    swapped = xs[:k] + [xs[k + 1], xs[k]] + xs[k + 2:]
    base = vector_product(xs, sig, wedge=True)
    a, b = sorted(rng.sample(range(p), 2))
    repeated = xs[:b] + [xs[a]] + xs[b + 1:]
    return _first(
        _diff("adjacent swap negates wedge", vector_product(swapped, sig, wedge=True), -base),
        _diff(
            "repeated vector kills wedge",
            vector_product(repeated, sig, wedge=True),
            Multivector.zero(sig),
            magnitude=_size(vector_product(repeated, sig)),
        ),
    )


# -- contraction identities -------------------------------------------------


def trial_vector_split(rng, sig):
    x, X = random_vector(rng, sig), random_multivector(rng, sig)
    return _diff("xX = x^X + x<|X", x * X, (x ^ X) + (x << X))


def trial_reversion_grades(rng, sig):
    r = rng.randint(0, sig.dim)
    X = random_multivector(rng, sig, r)
    sign = -1 if (r * (r - 1) // 2) % 2 else 1
    return _diff(f"rev on grade {r}", reversion(X), X.scale(sign))


def trial_products_as_projections(rng, sig):
    X, Y = random_multivector(rng, sig), random_multivector(rng, sig)
    r, s = rng.randint(0, sig.dim), rng.randint(0, sig.dim)
    Xr, Ys = random_multivector(rng, sig, r), random_multivector(rng, sig, s)
    return _first(
        _diff("(X|>Y)~ = ~Y<|~X", reversion(X >> Y), reversion(Y) << reversion(X)),
        _diff("X.Y = <XY>_0", X.sp(Y), grade_project(X * Y, 0)),
        _diff("X^Y = <XY>_{r+s}", Xr ^ Ys, grade_project(Xr * Ys, r + s)),
    )


def trial_graded_products(rng, sig):
    r, s = rng.randint(0, sig.dim), rng.randint(0, sig.dim)
    X, Y = random_multivector(rng, sig, r), random_multivector(rng, sig, s)
    XY = X * Y
    parts = Multivector.zero(sig)
    for i in range(abs(r - s), r + s + 1, 2):
        parts = parts + grade_project(XY, i)
    return _first(
        _diff("X<|Y = <XY>_{s-r}", X << Y, grade_project(XY, s - r)),
        _diff("X|>Y = <XY>_{r-s}", X >> Y, grade_project(XY, r - s)),
        _diff("XY = sum of <XY>_i", XY, parts),
    )


def trial_wedge_contraction(rng, sig):
    X, Y, Z = (random_multivector(rng, sig) for _ in range(3))
    return _diff("(X^Y)<|Z = X<|(Y<|Z)", (X ^ Y) << Z, X << (Y << Z))


def trial_leibniz_geometric(rng, sig):
    x, y = random_vector(rng, sig), random_vector(rng, sig)
    X, Y = random_multivector(rng, sig), random_multivector(rng, sig)
    return _first(
        _diff("x<|y = B(x,y)", x << y, Multivector.scalar(bilinear_vectors(x, y), sig)),
        _diff("x<|(XY)", x << (X * Y), (x << X) * Y + grade_involution(X) * (x << Y)),
    )


def trial_leibniz_outer(rng, sig):
    x = random_vector(rng, sig)
    X, Y = random_multivector(rng, sig), random_multivector(rng, sig)
    return _diff("x<|(X^Y)", x << (X ^ Y), ((x << X) ^ Y) + (grade_involution(X) ^ (x << Y)))


def _expansion(rng, sig, wedge: bool) -> Optional[str]:
    p = rng.randint(1, 5)
    x = random_vector(rng, sig)
    xs = [random_vector(rng, sig) for _ in range(p)]
    total = Multivector.zero(sig)
    scale = 0.0  # summands may cancel to an exact zero
    for k in range(p):
        rest = vector_product(xs[:k] + xs[k + 1:], sig, wedge)
        term = rest.scale(bilinear_vectors(x, xs[k]))
        scale = max(scale, _size(term))
        total = total + (term if k % 2 == 0 else -term)
    label = "wedge" if wedge else "product"
    return _diff(f"x<| {label} of {p} vectors", x << vector_product(xs, sig, wedge), total, scale)


def trial_expansion_geometric(rng, sig):
    return _expansion(rng, sig, wedge=False)


def trial_expansion_outer(rng, sig):
    return _expansion(rng, sig, wedge=True)


def trial_orthogonal_product(rng, sig):
    rows = random_orthogonal_basis(rng, sig)
    p = rng.randint(1, sig.dim)
    picked = rng.sample(rows, p)
    xs = [Multivector.vector(row, sig).scale(rng.randint(-3, 3) or 1) for row in picked]
    return _diff("orthogonal vectors: product = wedge", vector_product(xs, sig), vector_product(xs, sig, wedge=True))


# -- involutions and morphisms ---------------------------------------------


def trial_involutions(rng, sig):
    X, Y = random_multivector(rng, sig), random_multivector(rng, sig)
    return _first(
        _diff("rev(rev X) = X", reversion(reversion(X)), X),
        _diff("(XY)~ = ~Y ~X", reversion(X * Y), reversion(Y) * reversion(X)),
        _diff("(XY)^ = ^X ^Y", grade_involution(X * Y), grade_involution(X) * grade_involution(Y)),
    )


def random_signed_permutation(rng, sig) -> Dict[int, Multivector]:
    """Generator images ``e_i -> +-e_pi(i)`` with ``pi`` preserving ``q``."""
    by_q: Dict[object, List[int]] = {}
    for i, qi in sig.items():
        by_q.setdefault(qi, []).append(i)
    images = {}
    for group in by_q.values():
        shuffled = rng.sample(group, len(group))
        for i, j in zip(group, shuffled):
            images[i] = Multivector.blade([j], sig, rng.choice((1, -1)))
    return images


def trial_morphism_law(rng, sig):
    F = extend_morphism(random_signed_permutation(rng, sig), sig)
    X, Y = random_multivector(rng, sig), random_multivector(rng, sig)
    return _first(
        _diff("F(XY) = F(X)F(Y)", apply_morphism(F, X * Y), apply_morphism(F, X) * apply_morphism(F, Y)),
        _diff("F(1) = 1", apply_morphism(F, Multivector.scalar(1, sig)), Multivector.scalar(1, sig)),
    )


def trial_basis_change(rng, sig):
    # orthogonality of the new basis is an exact condition
    sig = sig.with_kind(RATIONAL)
    P = random_orthogonal_basis(rng, sig)
    report = change_of_basis_check(sig, P, samples=8, rng=rng)
    if not report.passed:
        H, J, lhs, rhs = report.counterexample
        return f"basis change fails on {H}, {J}: {lhs} != {rhs}"
    return None


# -- oracles ----------------------------------------------------------------


def random_word(rng, sig, max_length: int = 8) -> List[int]:
    return [rng.choice(sig.indices) for _ in range(rng.randint(0, max_length))]


def trial_rewrite(rng, sig):
    word = random_word(rng, sig)
    direct = vector_product([Multivector.blade([i], sig) for i in word], sig)
    return _diff(f"rewrite {word}", oracle.rewrite_word(word, sig), direct)


def trial_confluence(rng, sig):
    word = random_word(rng, sig)
    randomized = oracle.rewrite_word(word, sig, choose=rng.choice)
    return _diff(f"randomized rewrite {word}", randomized, oracle.rewrite_word(word, sig))


def trial_independence(rng, sig):
    exact = sig.with_kind(RATIONAL)
    size = rng.randint(0, min(6, exact.dim + 1))
    rows = [[rational(rng.randint(-5, 5)) for _ in exact.indices] for _ in range(size)]
    # bias towards dependent sets
    if size >= 2 and rng.random() < 0.3:
        a, b = rng.sample(range(size), 2)
        rows[a] = [x * rng.randint(-2, 2) for x in rows[b]]
    vectors = [Multivector.vector(r, exact) for r in rows]
    wedge = is_independent(vectors)
    rank_says = oracle.rank(rows) == size
    if wedge != rank_says:
        return f"independence of {rows}: wedge says {wedge}, rank says {rank_says}"
    return None


def random_symmetric(rng, n: int, bound: int = 3) -> List[List[Rational]]:
    G = [[rational(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = rational(rng.randint(-bound, bound))
    return G


def congruence_error(G, P, d) -> Optional[str]:
    D = matmul(matmul(P, G), transpose(P))
    n = len(G)
    for i in range(n):
        for j in range(n):
            want = d[i] if i == j else 0
            if D[i][j] != want:
                return f"P G P^T entry ({i + 1},{j + 1}) is {D[i][j]}, expected {want}"
    if determinant(P) == 0:
        return "P is singular"
    return None


def trial_orthogonalize(rng, sig):
    G = random_symmetric(rng, rng.randint(1, 6))
    P, d = orthogonalize(G)
    return congruence_error(G, P, d)


SUITES: Dict[str, Trial] = {
    "cocycle": trial_cocycle,
    "alpha-oracle": trial_alpha_oracle,
    "associativity": trial_associativity,
    "unit": trial_unit,
    "vector-square": trial_vector_square,
    "anticommutation": trial_anticommutation,
    "blade-factorization": trial_blade_factorization,
    "grading": trial_grading,
    "alternation": trial_alternation,
    "vector-split": trial_vector_split,
    "reversion-grades": trial_reversion_grades,
    "products-as-projections": trial_products_as_projections,
    "graded-products": trial_graded_products,
    "wedge-contraction": trial_wedge_contraction,
    "leibniz-geometric": trial_leibniz_geometric,
    "leibniz-outer": trial_leibniz_outer,
    "expansion-geometric": trial_expansion_geometric,
    "expansion-outer": trial_expansion_outer,
    "orthogonal-product": trial_orthogonal_product,
    "involutions": trial_involutions,
    "morphism-law": trial_morphism_law,
    "basis-change": trial_basis_change,
    "rewrite": trial_rewrite,
    "confluence": trial_confluence,
    "independence": trial_independence,
    "orthogonalize": trial_orthogonalize,
}


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: List[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def trial_seed(seed: int, name: str, k: int) -> str:
    return f"{seed}:{name}:{k}"


def run_suite(name: str, sig: Signature, trials: int, seed: int) -> SuiteResult:
    fn = SUITES[name]
    failures = []
    for k in range(trials):
        tag = trial_seed(seed, name, k)
        msg = fn(random.Random(tag), sig)
        if msg is not None:
            failures.append(f"seed {tag}: {msg}")
    return SuiteResult(name, trials, failures)


def run_suites(
    sig: Signature,
    trials: int,
    seed: int,
    names: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> List[SuiteResult]:
    """Run the named suites (all by default); results come back in suite order."""
    names = list(SUITES) if names is None else list(names)
    if workers <= 1:
        return [run_suite(n, sig, trials, seed) for n in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_suite, n, sig, trials, seed) for n in names]
        return [f.result() for f in futures]
