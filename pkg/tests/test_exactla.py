from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from morita.exactla import (
    NotCommuting,
    NotSplitRational,
    SparseMatrix,
    Subspace,
    charpoly,
    fmt,
    frac,
    joint_eigenbasis,
    kernel,
    rank,
    rational_roots,
    solve,
    solve_sparse,
)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_frac_and_fmt():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(-2) == Fraction(-2)
    assert fmt(Fraction(6, 3)) == "2"
    assert fmt(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        frac(0.5)
    with pytest.raises(TypeError):
        frac(True)


def test_sparse_matrix_drops_zeros():
    m = SparseMatrix.from_dense([[1, 0], [0, 0]])
    assert m.entries == {(0, 0): Fraction(1)}
    assert SparseMatrix(1, 1, {(0, 0): Fraction(0)}).entries == {}
    with pytest.raises(IndexError):
        SparseMatrix(1, 1, {(1, 0): Fraction(1)})


def test_kernel_examples():
    assert kernel(SparseMatrix.identity(2)).dim == 0
    k = kernel(SparseMatrix.from_dense([[1, -1]]))
    assert k.dim == 1
    assert k.basis[0] == {0: 1, 1: 1}


def test_solve_examples():
    assert solve(SparseMatrix.identity(2), [Fraction(3, 2), -1]) == [Fraction(3, 2), -1]
    assert solve(SparseMatrix.from_dense([[1, 1], [1, 1]]), [1, 0]) is None


def test_rational_roots_examples():
    assert sorted(rational_roots([-1, 0, 1])) == [-1, 1]
    assert rational_roots([-2, 0, 1]) == []
    assert sorted(rational_roots([0, -1, 1])) == [0, 1]


def test_rational_roots_multiplicity():
    # (x - 1/2)^2 (x + 3) = x^3 + 2x^2 - 11/4 x + 3/4
    roots = rational_roots([Fraction(3, 4), Fraction(-11, 4), 2, 1])
    assert sorted(roots) == [-3, Fraction(1, 2), Fraction(1, 2)]


def test_joint_eigenbasis_examples():
    with pytest.raises(NotSplitRational) as e:
        joint_eigenbasis([SparseMatrix.identity(2)])
    assert e.value.reason == "degenerate"
    pairs = joint_eigenbasis([SparseMatrix.diag([1, 0]), SparseMatrix.diag([0, 1])])
    assert pairs == [({1: 1}, (0, 1)), ({0: 1}, (1, 0))]


def test_joint_eigenbasis_failures():
    with pytest.raises(NotSplitRational) as e:
        joint_eigenbasis([SparseMatrix.from_dense([[0, 2], [1, 0]])])
    assert e.value.reason == "irrational"
    with pytest.raises(NotSplitRational) as e:
        joint_eigenbasis([SparseMatrix.from_dense([[1, 1], [0, 1]])])
    assert e.value.reason == "not_diagonalizable"
    with pytest.raises(NotCommuting):
        joint_eigenbasis([SparseMatrix.from_dense([[1, 1], [0, 0]]), SparseMatrix.diag([1, 0])])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_kernel_against_sympy(rows):
    m = SparseMatrix.from_dense(rows)
    oracle = sympy.Matrix(rows)
    assert rank(m) == oracle.rank()
    k = kernel(m)
    assert k.dim == m.cols - oracle.rank()
    for v in k.basis:
        assert m.apply(v) == {}


@settings(max_examples=40, deadline=None)
@given(matrices(st.integers(1, 4), st.integers(1, 4)), st.lists(small, min_size=4, max_size=4))
def test_solve_residual(rows, xs):
    m = SparseMatrix.from_dense(rows)
    x = {i: c for i, c in enumerate(xs[: m.cols]) if c}
    rhs = m.apply(x)
    sol = solve_sparse(m, rhs)
    assert sol is not None
    assert m.apply(sol) == rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_against_sympy(rows):
    x = sympy.Symbol("x")
    oracle = sympy.Matrix(rows).charpoly(x).all_coeffs()[::-1]
    assert charpoly(rows) == [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in oracle]


@settings(max_examples=40, deadline=None)
@given(st.lists(small.filter(bool), min_size=1, max_size=4))
def test_rational_roots_recovers_product(roots):
    poly = [Fraction(1)]
    for r in roots:
        # multiply by (x - r)
        poly = [(-r * poly[0])] + [poly[i - 1] - r * poly[i] for i in range(1, len(poly))] + [poly[-1]]
    assert sorted(rational_roots(poly)) == sorted(roots)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_echelon_is_canonical(vectors):
    vs = [{i: c for i, c in enumerate(v) if c} for v in vectors]
    a = Subspace.span(vs, 4)
    b = Subspace.span(list(reversed(vs)) + [{}], 4)
    assert a.basis == b.basis
    for v in vs:
        assert a.contains(v)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_joint_eigenbasis_on_conjugated_diagonals(n, data):
    # distinct eigenvalues conjugated by a unipotent upper-triangular matrix
    vals = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n, unique=True))
    upper = {(i, j): Fraction(data.draw(st.integers(-2, 2))) for i in range(n) for j in range(i + 1, n)}
    upper = {k: v for k, v in upper.items() if v}
    t = SparseMatrix(n, n, {**{(i, i): Fraction(1) for i in range(n)}, **upper})
    t_inv = SparseMatrix.from_dense([[Fraction(str(x)) for x in row] for row in sympy.Matrix(t.to_dense()).inv().tolist()])
    op = t @ SparseMatrix.diag(vals) @ t_inv
    pairs = joint_eigenbasis([op])
    assert [p[1][0] for p in pairs] == sorted(vals)
    assert Subspace.span([v for v, _ in pairs], n).dim == n
    for v, (lam,) in pairs:
        assert op.apply(v) == {i: lam * c for i, c in v.items() if lam * c}
