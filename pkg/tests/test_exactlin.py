from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from dycoh.exactlin import (
    DimensionError,
    Mat,
    SpanSolver,
    inverse,
    kernel_basis,
    kernel_data,
    kron,
    permutation_matrix,
    q,
    qstr,
    rank,
    rank_mod_p,
    solve,
    solve_in_span,
    swap_matrix,
)

from oracle import dense


def small_mats(max_rows=6, max_cols=6, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_scalar_parsing():
    assert q("3/6") == Fraction(1, 2)
    assert q("4/2") == 2 and type(q("4/2")) is int
    assert qstr(Fraction(-2, 4)) == "-1/2"
    assert qstr(3) == "3/1"


def test_rank_examples():
    assert rank(Mat.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(Mat.identity(5)) == 5
    assert rank(Mat.zero(3, 4)) == 0
    assert rank(Mat.zero(0, 4)) == 0


def test_shape_mismatch_raises():
    with pytest.raises(DimensionError):
        Mat.identity(2) @ Mat.identity(3)
    with pytest.raises(DimensionError):
        Mat.identity(2) + Mat.identity(3)


@settings(max_examples=150, deadline=None)
@given(small_mats())
def test_rank_matches_sympy(rows):
    M = Mat.from_dense(rows)
    assert rank(M) == sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(small_mats(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_transpose(rows, rnd):
    M = Mat.from_dense(rows)
    pr = list(range(M.rows))
    pc = list(range(M.cols))
    rnd.shuffle(pr)
    rnd.shuffle(pc)
    P = permutation_matrix(pr)
    Q = permutation_matrix(pc)
    r = rank(M)
    assert rank(P @ M @ Q) == r
    assert rank(M.T) == r


@settings(max_examples=150, deadline=None)
@given(small_mats(lo=-5, hi=5))
def test_kernel_is_annihilated_and_complete(rows):
    M = Mat.from_dense(rows)
    K = kernel_basis(M)
    assert (M @ K).is_zero()
    assert K.cols == M.cols - rank(M)
    assert rank(K) == K.cols


@settings(max_examples=60, deadline=None)
@given(small_mats(lo=-5, hi=5))
def test_kernel_data_unit_positions(rows):
    M = Mat.from_dense(rows)
    K, free, scales = kernel_data(M)
    for j, f in enumerate(free):
        col = K.column(j)
        assert col.get(f, 0) != 0
        for j2 in range(K.cols):
            if j2 != j:
                assert K.column(j2).get(f, 0) == 0


@settings(max_examples=100, deadline=None)
@given(small_mats(), st.integers(0, 10 ** 6))
def test_modular_rank_agrees(rows, seed):
    M = Mat.from_dense(rows)
    assert rank(M, method="modular", seed=seed) == rank(M)
    assert rank(M, method="auto", seed=seed) == rank(M)


def test_modular_rank_can_undercount_at_a_bad_prime():
    M = Mat.from_dense([[1, 0], [0, 7]])
    assert rank_mod_p(M, [7]) == 1
    assert rank(M, method="auto") == 2


@settings(max_examples=60, deadline=None)
@given(small_mats(3, 3), small_mats(3, 3), small_mats(3, 3))
def test_kron_associative(a, b, c):
    A, B, C = Mat.from_dense(a), Mat.from_dense(b), Mat.from_dense(c)
    assert kron(kron(A, B), C) == kron(A, kron(B, C))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_kron_mixed_product(n, m, data):
    sq = lambda k: data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k),
                                      min_size=k, max_size=k))
    A, C = Mat.from_dense(sq(n)), Mat.from_dense(sq(n))
    B, D = Mat.from_dense(sq(m)), Mat.from_dense(sq(m))
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)


def test_swap_matrix_flips_tensor_factors():
    A = Mat.from_dense([[1, 2], [3, 4]])
    B = Mat.from_dense([[0, 1, 0], [5, 0, 0], [0, 0, 7]])
    P = swap_matrix(2, 3)
    assert P @ kron(A, B) == kron(B, A) @ P


@settings(max_examples=100, deadline=None)
@given(small_mats(5, 4), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_span_coordinates_recover_combination(rows, coeffs):
    M = Mat.from_dense(rows)
    assume(rank(M) == M.cols)
    cols = M.columns()
    target = {}
    for c, v in zip(coeffs, cols):
        for i, x in v.items():
            target[i] = target.get(i, 0) + c * x
    target = {i: x for i, x in target.items() if x}
    x = solve_in_span(cols, target)
    assert x is not None
    back = {}
    for c, v in zip(x, cols):
        for i, y in v.items():
            back[i] = back.get(i, 0) + c * y
    assert {i: y for i, y in back.items() if y} == target


def test_span_rejects_dependent_basis():
    with pytest.raises(ValueError):
        SpanSolver([{0: 1}, {0: 2}], 1)


def test_span_rejects_outside_vector():
    assert solve_in_span([{0: 1}], {1: 1}) is None
    assert SpanSolver([{0: 1, 1: 1}], 2).coordinates({0: 2, 1: 2}) == [2]


@settings(max_examples=100, deadline=None)
@given(small_mats(4, 4), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_solve_matches_sympy(rows, rhs):
    A = Mat.from_dense(rows)
    b = {i: v for i, v in enumerate(rhs[:A.rows]) if v}
    x = solve(A, b)
    S = sympy.Matrix(rows)
    bv = sympy.Matrix([rhs[i] for i in range(A.rows)])
    solvable = S.rank() == S.row_join(bv).rank()
    assert (x is not None) == solvable
    if x is not None:
        assert A.apply(x) == b


def test_inverse_and_singular():
    M = Mat.from_dense([[2, 1], [1, 1]])
    assert M @ inverse(M) == Mat.identity(2)
    with pytest.raises(ValueError):
        inverse(Mat.from_dense([[1, 2], [2, 4]]))


def test_dense_round_trip():
    M = Mat.from_dense([[0, Fraction(1, 3)], [2, 0]])
    assert dense(M) == sympy.Matrix([[0, sympy.Rational(1, 3)], [2, 0]])
    assert Mat.from_dense(M.to_dense()) == M
