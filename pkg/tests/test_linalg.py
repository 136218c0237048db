import random
from fractions import Fraction as F

from tautilt.fields import GF, QQ
from tautilt.linalg import (ExactMatrix, RowSpace, kernel_basis,
                            kernel_via_presolve, solve_factorization)


def test_kernel_identity_empty():
    assert ExactMatrix.identity(QQ, 2).right_kernel_basis().ncols == 0


def test_kernel_zero_matrix_full():
    K = ExactMatrix.zero(QQ, 2, 3).right_kernel_basis()
    assert K.ncols == 3
    assert K.rank() == 3


def test_kernel_rank_one():
    # [[1,1],[1,1]]: kernel spanned by (1,-1) up to scaling
    M = ExactMatrix.from_rows(QQ, [[F(1), F(1)], [F(1), F(1)]])
    K = M.right_kernel_basis()
    assert K.ncols == 1
    assert M.mul(K).is_zero()
    col = [K.entry(0, 0), K.entry(1, 0)]
    assert col[0] != 0 and col[0] == -col[1]


def test_solve_identity():
    g = ExactMatrix.from_rows(QQ, [[F(3), F(5)], [F(1), F(2)]])
    h = solve_factorization(ExactMatrix.identity(QQ, 2), g)
    assert h == g


def test_solve_zero_inconsistent():
    f = ExactMatrix.zero(QQ, 2, 2)
    g = ExactMatrix.from_rows(QQ, [[F(1), F(0)], [F(0), F(0)]])
    assert solve_factorization(f, g) is None


def test_solve_column():
    f = ExactMatrix.from_rows(QQ, [[F(1)], [F(1)]])
    g = ExactMatrix.from_rows(QQ, [[F(2)], [F(2)]])
    h = solve_factorization(f, g)
    assert h.to_lists() == [[F(2)]]


def test_empty_shapes_behave():
    empty = ExactMatrix.zero(QQ, 0, 3)
    assert empty.right_kernel_basis().ncols == 3
    tall = ExactMatrix.zero(QQ, 3, 0)
    assert tall.right_kernel_basis().ncols == 0
    assert empty.rank() == 0


def test_random_kernel_and_solve_exact():
    rng = random.Random(7)
    for _ in range(150):
        n, m = rng.randint(0, 5), rng.randint(0, 5)
        M = ExactMatrix.from_rows(
            QQ, [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
                 for _ in range(n)], ncols=m)
        K = M.right_kernel_basis()
        assert M.mul(K).is_zero()
        assert M.rank() + K.ncols == m
        H = ExactMatrix.from_rows(
            QQ, [[F(rng.randint(-3, 3)) for _ in range(2)] for _ in range(m)],
            ncols=2)
        G = M.mul(H)
        H2 = M.solve_right(G)
        assert H2 is not None
        assert M.mul(H2) == G  # bit-exact


def test_rref_canonical_under_row_shuffle():
    rng = random.Random(11)
    for _ in range(80):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[F(rng.randint(-4, 4)) for _ in range(m)] for _ in range(n)]
        M = ExactMatrix.from_rows(QQ, rows, ncols=m)
        shuffled = list(rows)
        rng.shuffle(shuffled)
        M2 = ExactMatrix.from_rows(QQ, shuffled, ncols=m)
        assert M.rref() == M2.rref()


def test_prime_field_kernel():
    F2 = GF(2)
    M = ExactMatrix.from_rows(F2, [[1, 1, 0], [0, 1, 1]])
    K = M.right_kernel_basis()
    assert K.ncols == 1
    assert M.mul(K).is_zero()


def test_presolve_kernel_matches_generic():
    rng = random.Random(3)
    for _ in range(200):
        n, m = rng.randint(0, 6), rng.randint(0, 6)
        rows = []
        for _ in range(n):
            row = {}
            for j in range(m):
                if rng.random() < 0.4:
                    v = F(rng.randint(-3, 3))
                    if v:
                        row[j] = v
            rows.append(row)
        mat = ExactMatrix.from_row_dicts(QQ, n, m, rows)
        generic = mat.right_kernel_basis()
        gvecs = [{i: generic.rows[i][k] for i in range(m)
                  if k in generic.rows[i]} for k in range(generic.ncols)]
        fast = kernel_via_presolve(QQ, rows, m)
        span_a = RowSpace(QQ, m, gvecs)
        span_b = RowSpace(QQ, m, fast)
        assert span_a.dim == span_b.dim == len(fast)
        assert all(span_a.contains(v) for v in fast)


def test_rowspace_reduce_and_contains():
    rows = [{0: F(1), 1: F(2)}, {2: F(1)}]
    sp = RowSpace(QQ, 3, rows)
    assert sp.dim == 2
    assert sp.contains({0: F(2), 1: F(4), 2: F(7)})
    assert not sp.contains({1: F(1)})
    assert sp.free_cols() == [1]


def test_inverse():
    A = ExactMatrix.from_rows(QQ, [[F(2), F(1)], [F(1), F(1)]])
    Ainv = A.inverse()
    assert A.mul(Ainv) == ExactMatrix.identity(QQ, 2)
    singular = ExactMatrix.from_rows(QQ, [[F(1), F(1)], [F(1), F(1)]])
    assert singular.inverse() is None


def test_kernel_basis_alias():
    M = ExactMatrix.from_rows(QQ, [[F(1), F(1)]])
    assert kernel_basis(M).ncols == 1
