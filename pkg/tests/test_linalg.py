from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivlat.linalg import GF, Matrix, QQ, Subspace, image_basis, kernel_basis, rank, solve

FIELDS = [QQ, GF(2), GF(3), GF(5)]


@st.composite
def matrices(draw, max_dim=4):
    f = draw(st.sampled_from(FIELDS))
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    data = [[f.from_int(draw(st.integers(-3, 3))) for _ in range(cols)]
            for _ in range(rows)]
    return Matrix(f, rows, cols, data)


def mat_vec(m, vec):
    f = m.field
    out = []
    for i in range(m.rows):
        acc = f.zero()
        for j in range(m.cols):
            acc = f.add(acc, f.mul(m.entry(i, j), vec[j]))
        out.append(acc)
    return tuple(out)


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_solve_recovers_consistent_systems(m, data):
    f = m.field
    x = tuple(f.from_int(data.draw(st.integers(-3, 3))) for _ in range(m.cols))
    b = mat_vec(m, x)
    y = solve(m, b)
    assert y is not None
    assert mat_vec(m, y) == b


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate_and_count_matches_rank(m):
    f = m.field
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    zero = tuple(f.zero() for _ in range(m.rows))
    for v in basis:
        assert mat_vec(m, v) == zero
    assert len(set(basis)) == len(basis)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_image_basis_spans_the_column_space(m):
    cols = [tuple(m.entry(i, j) for i in range(m.rows)) for j in range(m.cols)]
    direct = Subspace(m.field, m.rows, cols)
    via_basis = Subspace(m.field, m.rows, image_basis(m))
    assert direct == via_basis
    assert via_basis.dim == rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_is_transpose_invariant(m):
    assert rank(m) == rank(m.transpose())


@st.composite
def two_subspaces(draw, ambient=4):
    f = draw(st.sampled_from(FIELDS))
    def space():
        n = draw(st.integers(0, 3))
        vecs = [tuple(f.from_int(draw(st.integers(-2, 2))) for _ in range(ambient))
                for _ in range(n)]
        return Subspace(f, ambient, vecs)
    return space(), space()


@settings(max_examples=150, deadline=None)
@given(two_subspaces())
def test_sum_and_intersection_dimensions_are_modular(pair):
    u, v = pair
    total = u.add(v)
    common = u.intersect(v)
    assert total.dim + common.dim == u.dim + v.dim
    assert total.contains_space(u) and total.contains_space(v)
    assert u.contains_space(common) and v.contains_space(common)


@settings(max_examples=150, deadline=None)
@given(two_subspaces())
def test_coords_reconstruct_members(pair):
    u, _ = pair
    f = u.field
    for vec in u.basis:
        cs = u.coords(vec)
        rebuilt = [f.zero()] * u.ambient
        for c, b in zip(cs, u.basis):
            for k in range(u.ambient):
                rebuilt[k] = f.add(rebuilt[k], f.mul(c, b[k]))
        assert tuple(rebuilt) == vec


def test_rational_arithmetic_is_exact():
    m = Matrix(QQ, 2, 2, [[Fraction(1, 3), Fraction(1)],
                          [Fraction(1), Fraction(4)]])
    sol = solve(m, (Fraction(1), Fraction(3)))
    assert sol == (Fraction(3), Fraction(0))
    assert kernel_basis(m) == []
    thirds = Matrix(QQ, 1, 2, [[Fraction(1, 3), Fraction(1, 7)]])
    (v,) = kernel_basis(thirds)
    assert mat_vec(thirds, v) == (Fraction(0),)


def test_prime_field_wraps_and_inverts():
    f = GF(5)
    assert f.from_int(-1) == 4
    assert f.mul(f.inv(3), 3) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ValueError):
        GF(6)


def test_subspace_canonical_basis_makes_equality_decidable():
    f = GF(2)
    a = Subspace(f, 3, [(1, 1, 0), (0, 0, 1)])
    b = Subspace(f, 3, [(1, 1, 1), (1, 1, 0)])
    assert a == b
    assert a.basis == b.basis
    assert hash(a) == hash(b)
    assert Subspace.zero(f, 3).dim == 0
    assert Subspace.full(f, 3).dim == 3


def test_zero_row_matrix_kernel_is_everything():
    m = Matrix(GF(2), 0, 3, [])
    assert len(kernel_basis(m)) == 3
    assert rank(m) == 0
