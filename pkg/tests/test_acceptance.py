"""Exit criteria, one test per criterion, each run at its stated size and tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
import subprocess
import sys
from itertools import product

import pytest

from conftest import ACCEPTANCE_LINES

from cliffalg import (
    Multivector,
    Signature,
    alpha,
    beta,
    change_of_basis_check,
    extend_morphism,
    geometric_product,
    grade_involution,
    is_independent,
    orthogonalize,
    reversion,
    sigma,
    symdiff,
)
from cliffalg.blades import F64, rational
from cliffalg.cli import evaluate, parse
from cliffalg.multivector import format_multivector
from cliffalg import properties
from cliffalg.oracle import rank, rewrite_word
from cliffalg.properties import (
    congruence_error,
    random_multivector,
    random_orthogonal_basis,
    random_symmetric,
    random_word,
)

# q in {1, -1, 0, 2} assigned round-robin to indices 1..5
ROUND_ROBIN5 = Signature.from_diag([1, -1, 0, 2, 1])


def record(number, title, failures):
    status = "PASS" if not failures else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({len(failures)} failures)" if failures else ""))
    assert not failures, failures[:5]


def run_trials(name, sig, trials, tag):
    fn = properties.SUITES[name]
    failures = []
    for k in range(trials):
        seed = f"acceptance:{tag}:{name}:{k}"
        s = sig[k % len(sig)] if isinstance(sig, list) else sig
        msg = fn(random.Random(seed), s)
        if msg is not None:
            failures.append(f"{seed}: {msg}")
    return failures


def cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "cliffalg", *argv], capture_output=True, text=True, timeout=120
    )
    return proc.returncode, proc.stdout


def test_1_worked_example():
    failures = []
    for diag, expected in (("1,1,1", "-e[3]"), ("2,3,1", "-6*e[3]")):
        code, out = cli("eval", "--diag", diag, "e[1,2]*e3*e1*e2")
        if (code, out) != (0, expected + "\n"):
            failures.append(f"--diag {diag}: exit {code}, printed {out!r}")
    record(1, "worked example e[1,2]*e3*e1*e2", failures)


def test_2_cocycle_exhaustive():
    sig = ROUND_ROBIN5
    subsets = sig.blades()
    assert len(subsets) == 32
    fns = {
        "alpha": lambda H, J: alpha(H, J),
        "beta": lambda H, J: beta(H, J, sig),
        "sigma": lambda H, J: sigma(H, J, sig),
    }
    failures = []
    for H, J, K in product(subsets, repeat=3):
        HJ, JK = symdiff(H, J), symdiff(J, K)
        for name, psi in fns.items():
            if psi(H, J) * psi(HJ, K) != psi(H, JK) * psi(J, K):
                failures.append(f"{name} at {H}, {J}, {K}")
    record(2, "cocycle law for alpha, beta, sigma on 32^3 triples", failures)


def test_3_algebra_axioms():
    sig = Signature.from_diag([1, -1, 0, 2, 1, -1])
    failures = []
    for name in ("associativity", "unit", "vector-square", "anticommutation"):
        failures += run_trials(name, sig, 1000, "3")
    record(3, "associativity, unit, x^2 = B(x,x), anticommutation (dim 6, 1000 each)", failures)


CONTRACTION_SIGS = [
    Signature.from_diag([0]),
    Signature.from_diag([1, -1]),
    Signature.from_diag([2, 0, -1]),
    Signature.from_diag([1, -1, 0, 3]),
    Signature.from_diag([1, -1, 0, 2, 1]),
]
CONTRACTION_ITEMS = {
    "1": "vector-split",
    "3a": "products-as-projections",
    "3b": "graded-products",
    "4": "wedge-contraction",
    "5": "leibniz-geometric",
    "6": "leibniz-outer",
    "7": "expansion-geometric",
    "8": "expansion-outer",
    "9": "orthogonal-product",
}


@pytest.mark.parametrize("kind", ["rational", F64])
def test_4_contraction_identities(kind):
    sigs = [s.with_kind(kind) for s in CONTRACTION_SIGS]
    failures = []
    for item, name in CONTRACTION_ITEMS.items():
        failures += [f"item {item}: {m}" for m in run_trials(name, sigs, 500, f"4{kind}")]
    record(4, f"contraction identities, items 1-9 ({kind}, 500 each)", failures)


def test_5_involutions():
    sig = ROUND_ROBIN5
    blades = sig.blades()
    failures = []
    for K in blades:
        e = Multivector.blade(K, sig)
        k = len(K)
        if reversion(reversion(e)) != e:
            failures.append(f"rev rev {K}")
        if grade_involution(e) != e.scale((-1) ** k):
            failures.append(f"gi sign {K}")
        if reversion(e) != e.scale((-1) ** (k * (k - 1) // 2)):
            failures.append(f"rev sign {K}")
    for H, J in product(blades, repeat=2):
        eh, ej = Multivector.blade(H, sig), Multivector.blade(J, sig)
        if reversion(eh * ej) != reversion(ej) * reversion(eh):
            failures.append(f"(XY)~ at {H}, {J}")
        if grade_involution(eh * ej) != grade_involution(eh) * grade_involution(ej):
            failures.append(f"(XY)^ at {H}, {J}")
    failures += run_trials("involutions", sig, 200, "5")
    record(5, "involutions exhaustive on dim-5 blades plus 200 random pairs", failures)


BASIS_SIGS = [
    Signature.from_diag([0]),
    Signature.from_diag([1, -1]),
    Signature.from_diag([2, 0, -1]),
    Signature.from_diag([1, -1, 0, 3]),
]


def test_6_universality():
    failures = []
    rng = random.Random("acceptance:6")
    for sig in BASIS_SIGS:
        for b in range(50):
            P = random_orthogonal_basis(rng, sig)
            report = change_of_basis_check(sig, P)
            if not report.passed or report.pairs_checked != 4 ** sig.dim:
                failures.append(f"{sig} basis {b}: {report.counterexample}")
    sig = ROUND_ROBIN5
    F = extend_morphism({i: -Multivector.blade([i], sig) for i in sig.indices}, sig)
    for K in sig.blades():
        e = Multivector.blade(K, sig)
        if F.blade_image(K) != grade_involution(e):
            failures.append(f"extension of x -> -x differs from gi on {K}")
    record(6, "basis independence (dims 1-4, 50 bases each) and universal involution", failures)


def test_7_rewrite_oracle():
    sig = ROUND_ROBIN5
    rng = random.Random("acceptance:7")
    failures = []
    for _ in range(1000):
        word = random_word(rng, sig, 8)
        direct = Multivector.scalar(1, sig)
        for i in word:
            direct = geometric_product(direct, Multivector.blade([i], sig))
        if rewrite_word(word, sig) != direct:
            failures.append(f"word {word}")
    for _ in range(500):
        word = random_word(rng, sig, 8)
        if rewrite_word(word, sig, choose=rng.choice) != rewrite_word(word, sig):
            failures.append(f"confluence {word}")
    record(7, "word rewriting equals direct product (1000) and is confluent (500)", failures)


def test_8_independence_vs_rank():
    rng = random.Random("acceptance:8")
    failures = []
    for _ in range(500):
        dim, size = rng.randint(1, 6), rng.randint(0, 6)
        sig = Signature.from_pqr(dim)
        rows = [[rational(rng.randint(-5, 5)) for _ in range(dim)] for _ in range(size)]
        if size >= 2 and rng.random() < 0.3:
            a, b = rng.sample(range(size), 2)
            rows[a] = [x * rng.randint(-2, 2) for x in rows[b]]
        wedge = is_independent([Multivector.vector(r, sig) for r in rows])
        if wedge != (rank(rows) == size):
            failures.append(f"rows {rows}")
    record(8, "wedge independence agrees with rank (500 sets)", failures)


def test_9_orthogonalizer(tmp_path):
    rng = random.Random("acceptance:9")
    failures = []
    for _ in range(200):
        G = random_symmetric(rng, 6)
        P, d = orthogonalize(G)
        problem = congruence_error(G, P, d)
        if problem:
            failures.append(problem)
    path = tmp_path / "hyperbolic.txt"
    path.write_text("2\n0 1\n1 0\n")
    code, out = cli("orth", "--gram", str(path))
    if code != 0 or "congruence verified" not in out:
        failures.append(f"orth exit {code}: {out!r}")
    record(9, "orthogonalizer on 200 random 6x6 matrices and the orth command", failures)


def test_10_round_trip_and_determinism():
    failures = []
    rng = random.Random("acceptance:10")
    sig = Signature({1: 1, 2: -1, 3: 0, 4: 2, 11: rational("1/2")})
    for _ in range(500):
        X = random_multivector(rng, sig, max_terms=8)
        if evaluate(parse(format_multivector(X)), sig) != X:
            failures.append(format_multivector(X))
    args = ("check", "--diag", "1,-1,0", "--trials", "1000", "--seed", "42")
    first, second = cli(*args), cli(*args)
    if first[0] != 0:
        failures.append(f"check exited {first[0]}")
    if first != second:
        failures.append("check reports differ between runs")
    record(10, "format/parse round trip (500) and deterministic check --trials 1000", failures)
