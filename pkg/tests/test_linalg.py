from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wqg.errors import FieldMismatch
from wqg.fields import GF, QQ
from wqg.linalg import (Matrix, Subspace, inverse, kernel, quotient_by, rref,
                        solve_linear, solve_vector)
from wqg import zoo


def brute_row_reduce(rows):
    """Independent rank oracle: plain fraction-free-ish elimination."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                q = rows[i][c] / rows[rank][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_rref_proportional_rows():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    res = rref(m)
    assert res.rank == 1
    assert res.pivots == (0,)
    assert res.reduced.data[0] == (Fraction(1), Fraction(2))


def test_rref_identity_f5():
    res = rref(Matrix.identity(GF(5), 3))
    assert res.rank == 3
    assert res.reduced == Matrix.identity(GF(5), 3)


def test_rref_pg2_table_rank():
    # flatten the multiplication tensor into a 4 x 16 matrix, one row per
    # left-multiplication operator; oracle rank computed independently
    h = zoo.pg2(QQ)
    rows = [[h.algebra.mul[i][j][k] for j in range(4) for k in range(4)]
            for i in range(4)]
    assert brute_row_reduce(rows) == 4
    m = Matrix.from_rows(QQ, rows)
    assert rref(m).rank == 4


def test_rref_mixed_fields():
    a = Matrix.from_rows(QQ, [[1]])
    b = Matrix.from_rows(GF(5), [[1]])
    with pytest.raises(FieldMismatch):
        a @ b


def test_solve_identity():
    x = solve_linear(Matrix.identity(QQ, 2),
                     Matrix.from_rows(QQ, [[3], [Fraction(5, 2)]]))
    assert x.column(0) == (Fraction(3), Fraction(5, 2))


def test_solve_inconsistent():
    a = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
    b = Matrix.from_rows(QQ, [[1], [0]])
    assert solve_linear(a, b) is None


def test_solve_modular():
    x = solve_vector(Matrix.from_rows(GF(7), [[3]]), (1,))
    assert x == (5,)


def test_quotient_trivial():
    q = quotient_by(QQ, 4, [])
    assert q.dim == 4
    assert q.projection == Matrix.identity(QQ, 4)


def test_quotient_one_relation():
    q = quotient_by(QQ, 2, [[1, -1]])
    assert q.dim == 1
    # the class of (1, 0) equals the class of (0, 1)
    assert q.project((1, 0)) == q.project((0, 1))
    assert q.project((1, -1)) == (Fraction(0),)


def test_quotient_mx_balancing_is_trivial():
    # H = MX, balancing over H_s = k.1: relations tgt(1) g (x) h - g (x) src(1) h
    # all vanish because 1 is central and unital, so the quotient is all of H (x) H
    from wqg.weakcore import counital_data
    h = zoo.mx(QQ)
    cd = counital_data(h)
    assert cd.h_s.dim == 1
    alg = h.algebra
    rels = []
    y = cd.h_s.basis.row(0)
    for g in range(2):
        for hh in range(2):
            gy = alg.product(alg.basis_vector(g), y)
            yh = alg.product(y, alg.basis_vector(hh))
            vec = [QQ.zero] * 4
            for k, x in enumerate(gy):
                vec[k * 2 + hh] += x
            for k, x in enumerate(yh):
                vec[g * 2 + k] -= x
            rels.append(vec)
    assert all(not any(v) for v in rels)
    q = quotient_by(QQ, 4, rels)
    assert q.dim == 4


def test_kernel_and_inverse():
    a = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    k = kernel(a)
    assert k.dim == 1
    assert a.apply(k.basis.row(0)) == (Fraction(0), Fraction(0))
    assert inverse(a) is None
    b = Matrix.from_rows(QQ, [[1, 1], [0, 1]])
    binv = inverse(b)
    assert b @ binv == Matrix.identity(QQ, 2)


small_entries = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, field):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    data = draw(st.lists(st.lists(small_entries, min_size=cols, max_size=cols),
                         min_size=rows, max_size=rows))
    return Matrix.from_rows(field, data)


@settings(deadline=None, max_examples=60)
@given(matrices(QQ))
def test_rref_idempotent_rational(m):
    red = rref(m).reduced
    assert rref(red).reduced == red


@settings(deadline=None, max_examples=60)
@given(matrices(GF(5)))
def test_rref_idempotent_prime(m):
    red = rref(m).reduced
    assert rref(red).reduced == red


@settings(deadline=None, max_examples=60)
@given(matrices(QQ), st.lists(small_entries, min_size=4, max_size=4))
def test_solve_is_exact(a, bvec):
    b = Matrix.from_rows(QQ, [[x] for x in bvec[:a.rows]])
    x = solve_linear(a, b)
    if x is not None:
        assert a @ x == b


@settings(deadline=None, max_examples=60)
@given(st.lists(st.lists(small_entries, min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(small_entries, min_size=4, max_size=4))
def test_projection_kills_exactly_relations(rel_rows, probe):
    q = quotient_by(QQ, 4, rel_rows)
    zero = tuple([QQ.zero] * q.dim)
    assert q.project(probe) == zero or not q.relations.contains(probe)
    if q.relations.contains(probe):
        assert q.project(probe) == zero
    assert q.projection @ q.section == Matrix.identity(QQ, q.dim)


def test_subspace_membership_and_coords():
    s = Subspace.from_spanning(QQ, 3, [[1, 0, 1], [0, 1, 1]])
    assert s.dim == 2
    assert s.contains((1, 1, 2))
    assert not s.contains((1, 1, 1))
    coords = s.coords_of((2, 3, 5))
    assert coords is not None
    assert s.vector_from_coords(coords) == (Fraction(2), Fraction(3), Fraction(5))
