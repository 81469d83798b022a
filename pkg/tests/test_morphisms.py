import random
import threading
from fractions import Fraction

import pytest

from cliffalg import (
    BasisError,
    GramMatrix,
    MorphismError,
    Multivector,
    ScalarKindError,
    Signature,
    apply_morphism,
    change_of_basis_check,
    extend_morphism,
    grade_involution,
    is_independent,
    orthogonalize,
)
from cliffalg.blades import F64
from cliffalg.morphisms import compose, determinant, inverse_basis_morphism, invert, matmul, transpose
from cliffalg.oracle import rank
from cliffalg.properties import congruence_error, random_orthogonal_basis, random_symmetric


def gens(sig, sign=1):
    return {i: Multivector.blade([i], sig, sign) for i in sig.indices}


class TestExtendMorphism:
    def test_negation_is_grade_involution(self):
        sig = Signature({1: 2, 2: -1, 3: 0, 4: 1, 5: 3})
        F = extend_morphism(gens(sig, -1), sig)
        for K in sig.blades():
            e = Multivector.blade(K, sig)
            assert F.blade_image(K) == grade_involution(e)

    def test_identity(self):
        sig = Signature.from_pqr(2, 1)
        F = extend_morphism(gens(sig), sig)
        X = Multivector({(): 2, (1, 3): Fraction(1, 2), (1, 2, 3): -1}, sig)
        assert apply_morphism(F, X) == X
        assert apply_morphism(F, Multivector.scalar(1, sig)) == Multivector.scalar(1, sig)

    def test_swap(self):
        sig = Signature.from_diag([3, 3])
        e1, e2 = (Multivector.blade([i], sig) for i in (1, 2))
        F = extend_morphism({1: e2, 2: e1}, sig)
        assert F.blade_image([1, 2]) == -Multivector.blade([1, 2], sig)

    def test_grade_involution_table_applied(self):
        sig = Signature.from_pqr(2)
        F = extend_morphism(gens(sig, -1), sig)
        X = Multivector.blade([1], sig) + Multivector.blade([1, 2], sig)
        assert apply_morphism(F, X) == -Multivector.blade([1], sig) + Multivector.blade([1, 2], sig)

    def test_bad_square_reported(self):
        sig = Signature.from_diag([1, -1])
        images = {1: Multivector.blade([2], sig), 2: Multivector.blade([2], sig)}
        with pytest.raises(MorphismError, match=r"f\(e1\)\^2"):
            extend_morphism(images, sig)

    def test_commuting_images_reported(self):
        sig = Signature.from_diag([1, 1])
        e1 = Multivector.blade([1], sig)
        with pytest.raises(MorphismError, match="generators 1, 2 do not anticommute"):
            extend_morphism({1: e1, 2: e1}, sig)
        # without validation the table is still built
        F = extend_morphism({1: e1, 2: e1}, sig, validate=False)
        assert F.blade_image([1, 2]) == Multivector.scalar(1, sig)

    def test_missing_image(self):
        sig = Signature.from_pqr(2)
        with pytest.raises(MorphismError):
            extend_morphism({1: Multivector.blade([1], sig)}, sig)

    def test_rederived_table_identical(self):
        sig = Signature.from_pqr(2, 1, 1)
        rng = random.Random(1)
        P = random_orthogonal_basis(rng, sig)
        report = change_of_basis_check(sig, P)
        first = report.morphism.blade_images
        again = extend_morphism(report.morphism.images, report.new_signature).blade_images
        assert first == again

    def test_concurrent_readers(self):
        sig = Signature.from_pqr(4)
        F = extend_morphism(gens(sig, -1), sig)
        blades = sig.blades()
        results = []

        def work():
            results.append([F.blade_image(K) for K in reversed(blades)])

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r == results[0] for r in results)


class TestOrthogonalize:
    def test_diagonal(self):
        P, d = orthogonalize([[2, 0], [0, -3]])
        assert P == [[1, 0], [0, 1]] and d == [2, -3]

    def test_hyperbolic_plane(self):
        G = [[0, 1], [1, 0]]
        P, d = orthogonalize(G)
        assert congruence_error(G, P, d) is None
        assert d[0] * d[1] < 0
        assert d == [2, Fraction(-1, 2)]

    def test_one_by_one(self):
        assert orthogonalize([[5]]) == ([[1]], [5])

    def test_zero_matrix(self):
        P, d = orthogonalize([[0, 0], [0, 0]])
        assert d == [0, 0] and determinant(P) != 0

    def test_non_symmetric(self):
        with pytest.raises(BasisError):
            orthogonalize([[1, 2], [3, 4]])

    def test_random(self):
        rng = random.Random(7)
        for _ in range(100):
            G = random_symmetric(rng, rng.randint(1, 6))
            P, d = orthogonalize(G)
            assert congruence_error(G, P, d) is None

    def test_float_path(self):
        G = [[0.0, 2.0], [2.0, 1.0]]
        P, d = orthogonalize(G)
        D = matmul(matmul(P, G), transpose(P))
        assert abs(D[0][1]) < 1e-12 and abs(D[1][0]) < 1e-12

    def test_gram_file(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("2\n0 1/2\n1/2 -3\n")
        G = GramMatrix.read(path)
        assert G.entries == ((0, Fraction(1, 2)), (Fraction(1, 2), -3))
        with pytest.raises(ValueError):
            GramMatrix.parse("2\n1 0\n")


class TestBasisChange:
    def test_identity(self):
        sig = Signature.from_pqr(2, 1)
        report = change_of_basis_check(sig, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert report.passed and report.pairs_checked == 64

    def test_permutation(self):
        sig = Signature.from_diag([2, -1, 0])
        report = change_of_basis_check(sig, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        assert report.passed
        assert [report.new_signature.q(i) for i in (1, 2, 3)] == [0, 2, -1]

    def test_not_orthogonal(self):
        sig = Signature.from_pqr(2)
        with pytest.raises(BasisError, match="not orthogonal"):
            change_of_basis_check(sig, [[1, 1], [1, 0]])

    def test_singular(self):
        sig = Signature.from_diag([1, 0])
        with pytest.raises(BasisError, match="singular"):
            change_of_basis_check(sig, [[1, 0], [0, 0]])

    def test_random_bases(self):
        rng = random.Random(3)
        for sig in (Signature.from_pqr(1, 1, 1), Signature.from_diag([2, -3, 0, 1])):
            for _ in range(5):
                assert change_of_basis_check(sig, random_orthogonal_basis(rng, sig)).passed

    def test_round_trip_is_identity(self):
        sig = Signature.from_diag([1, -1, 0])
        P = random_orthogonal_basis(random.Random(11), sig)
        report = change_of_basis_check(sig, P)
        G = inverse_basis_morphism(report, sig, P)
        both = compose(report.morphism, G)
        for K in sig.blades():
            assert both.blade_image(K) == Multivector.blade(K, sig)

    def test_invert(self):
        M = [[2, 1], [1, 1]]
        assert matmul(M, invert(M)) == [[1, 0], [0, 1]]


class TestIndependence:
    def vecs(self, rows, dim=None):
        sig = Signature.from_pqr(dim or len(rows[0]))
        return [Multivector.vector(r, sig) for r in rows]

    def test_examples(self):
        assert is_independent(self.vecs([[1, 0], [0, 1]]))
        assert not is_independent(self.vecs([[1, 0], [2, 0]]))
        assert not is_independent(self.vecs([[1, 2, 0], [3, -1, 0], [5, 5, 0]]))
        assert is_independent([])

    def test_rejects_non_vector(self):
        sig = Signature.from_pqr(2)
        with pytest.raises(ValueError):
            is_independent([Multivector.blade([1, 2], sig)])

    def test_rejects_floats(self):
        sig = Signature.from_pqr(2, kind=F64)
        with pytest.raises(ScalarKindError):
            is_independent([Multivector.blade([1], sig)])

    def test_agrees_with_rank(self):
        rng = random.Random(2)
        for _ in range(100):
            n, k = rng.randint(1, 5), rng.randint(0, 5)
            rows = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(k)]
            sig = Signature.from_pqr(n)
            assert is_independent([Multivector.vector(r, sig) for r in rows]) == (rank(rows) == k)
