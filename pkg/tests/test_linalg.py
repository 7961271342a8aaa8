"""Exact rational linear algebra: algebraic identities and solver behavior."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from grsatake import linalg


def frac():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(frac(), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def test_identity_and_shape():
    m = linalg.identity(3)
    assert linalg.shape(m) == (3, 3)
    assert m[0][0] == 1 and m[0][1] == 0


def test_mat_mul_known():
    a = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    b = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert linalg.mat_mul(a, b) == [[Fraction(2), Fraction(1)],
                                    [Fraction(4), Fraction(3)]]


@settings(max_examples=30, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_transpose_of_product(a, b):
    left = linalg.transpose(linalg.mat_mul(a, b))
    right = linalg.mat_mul(linalg.transpose(b), linalg.transpose(a))
    assert left == right


@settings(max_examples=30, deadline=None)
@given(matrices(2, 2), matrices(2, 2))
def test_kron_multiplicative(a, b):
    # (a (x) b)(a (x) b) = (aa) (x) (bb)
    k = linalg.kron(a, b)
    assert linalg.mat_mul(k, k) == linalg.kron(linalg.mat_mul(a, a),
                                               linalg.mat_mul(b, b))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_rref_idempotent_and_rank(a):
    r, pivots = linalg.rref(a)
    r2, pivots2 = linalg.rref(r)
    assert r == r2 and pivots == pivots2
    assert linalg.rank(a) == len(pivots)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_nullspace_annihilated(a):
    ns = linalg.nullspace(a)
    assert len(ns) == 4 - linalg.rank(a)
    for v in ns:
        assert all(x == 0 for x in linalg.mat_vec(a, v))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3), matrices(3, 2))
def test_solve_roundtrip(a, b):
    x = linalg.solve(a, b)
    if x is None:
        # inconsistent: b has a component outside the column span
        assert linalg.rank(a) < linalg.rank(linalg.hstack([a, b]))
    else:
        assert linalg.mat_mul(a, x) == b


def test_solve_inconsistent_returns_none():
    a = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(0)]]
    b = [[Fraction(0)], [Fraction(1)]]
    assert linalg.solve(a, b) is None


def test_mat_vec_skips_zeros():
    a = [[Fraction(0), Fraction(2)], [Fraction(3), Fraction(0)]]
    assert linalg.mat_vec(a, [Fraction(5), Fraction(7)]) == [Fraction(14),
                                                             Fraction(15)]


def test_hstack_vstack():
    a = linalg.identity(2)
    h = linalg.hstack([a, a])
    v = linalg.vstack([a, a])
    assert linalg.shape(h) == (2, 4)
    assert linalg.shape(v) == (4, 2)
    assert not linalg.is_zero(h)
    assert linalg.is_zero(linalg.zeros(3, 2))
