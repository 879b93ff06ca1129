from fractions import Fraction

import pytest

from wqg.algcore import (FinDimAlgebra, FinDimCoalgebra, LinearMap, check_algebra,
                         check_algebra_hom, check_coalgebra, generated_subalgebra)
from wqg.errors import InvalidInput
from wqg.fields import QQ
from wqg.linalg import Matrix
from wqg.weakcore import WeakBialgebra, check_weak_bialgebra, counital_data, variant
from wqg import zoo


def brute_associator(alg):
    """Independent exhaustive associativity scan; yields failing triples."""
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ij = alg.product(alg.basis_vector(i), alg.basis_vector(j))
                left = alg.product(ij, alg.basis_vector(k))
                jk = alg.product(alg.basis_vector(j), alg.basis_vector(k))
                right = alg.product(alg.basis_vector(i), jk)
                if left != right:
                    yield (i, j, k)


def mutate_mul(alg, i, j, k, value):
    mul = [[list(row) for row in plane] for plane in alg.mul]
    mul[i][j][k] = alg.field.normalize(value)
    return FinDimAlgebra.build(alg.field, alg.dim, mul, alg.unit)


def test_check_algebra_pg2(pg2q):
    assert not list(brute_associator(pg2q.algebra))
    assert check_algebra(pg2q.algebra).overall


def test_check_algebra_mx(mxq):
    assert check_algebra(mxq.algebra).overall


def test_check_algebra_mutation_fails(pg2q, gidx):
    alg = pg2q.algebra
    bad = mutate_mul(alg, gidx["g12"], gidx["g21"], gidx["g11"], 0)
    failing = list(brute_associator(bad))
    assert failing  # oracle agrees something must fail
    rep = check_algebra(bad)
    assert not rep.overall
    item = rep.item("associativity")
    assert not item.passed
    assert item.witness is not None
    assert item.witness.indices == failing[0]


def test_check_coalgebra_grouplike(pg2q):
    assert check_coalgebra(pg2q.coalgebra).overall


def test_dual_coalgebra_of_pg2_algebra(pg2q):
    # transpose of the multiplication tensor is a coalgebra because the
    # algebra is associative and unital
    alg = pg2q.algebra
    n = alg.dim
    comul = tuple(tuple(tuple(alg.mul[a][b][i] for b in range(n)) for a in range(n))
                  for i in range(n))
    c = FinDimCoalgebra(QQ, n, comul, alg.unit)
    assert check_coalgebra(c).overall


def test_check_coalgebra_counit_mutation(pg2q, gidx):
    co = pg2q.coalgebra
    counit = list(co.counit)
    counit[gidx["g12"]] = QQ.zero
    bad = FinDimCoalgebra(QQ, co.dim, co.comul, tuple(counit))
    rep = check_coalgebra(bad)
    item = rep.item("counit-law")
    assert not item.passed
    assert item.witness.indices == (gidx["g12"],)


def test_variant_bop_swaps_counital_maps(pg2q):
    cd = counital_data(pg2q)
    cdb = counital_data(variant(pg2q, "bop"))
    assert cdb.eps_t == cd.eps_s
    assert cdb.eps_s == cd.eps_t
    assert cdb.h_t.basis == cd.h_s.basis


def test_variant_op_commutative_is_identity(k2q):
    assert variant(k2q, "op").same_structure(k2q)


def test_variant_involutions(pg2q):
    assert variant(variant(pg2q, "op"), "op").same_structure(pg2q)
    assert variant(variant(pg2q, "cop"), "cop").same_structure(pg2q)
    bop = variant(pg2q, "bop")
    assert bop.same_structure(variant(variant(pg2q, "op"), "cop"))
    assert bop.same_structure(variant(variant(pg2q, "cop"), "op"))


def test_variant_rejects_bad_input(pg2q):
    bad_alg = mutate_mul(pg2q.algebra, 1, 2, 1, 7)
    bad = WeakBialgebra(bad_alg, pg2q.coalgebra)
    with pytest.raises(InvalidInput):
        variant(bad, "op")


def test_subalgebra_inclusion_hom(pg2q, gidx):
    # span{g11, g22} -> PG2
    f = QQ
    cols = []
    for nm in ("g11", "g22"):
        col = [f.zero] * 4
        col[gidx[nm]] = f.one
        cols.append(col)
    inc = LinearMap(Matrix.from_columns(f, cols))
    sub = zoo.product_field_algebra(2, f)
    rep = check_algebra_hom(inc, sub, pg2q.algebra)
    assert rep.overall


def test_antipode_is_anti_hom(pg2q):
    rep = check_algebra_hom(LinearMap(pg2q.antipode), pg2q.algebra, pg2q.algebra,
                            anti=True)
    assert rep.overall
    # and it is not an ordinary homomorphism (PG2 is noncommutative)
    rep2 = check_algebra_hom(LinearMap(pg2q.antipode), pg2q.algebra, pg2q.algebra)
    assert not rep2.overall


def test_doubling_fails_unit_law(k2q):
    two = Matrix.identity(QQ, 2).scale(2)
    rep = check_algebra_hom(LinearMap(two), k2q.algebra, k2q.algebra)
    assert not rep.item("unit-preserved").passed


def test_generated_subalgebra_empty_seed(pg2q):
    s = generated_subalgebra(pg2q.algebra, [])
    assert s.dim == 1
    assert s.contains(pg2q.algebra.unit)


def test_generated_subalgebra_idempotent_seed(pg2q, gidx):
    seed = [QQ.zero] * 4
    seed[gidx["g11"]] = QQ.one
    s = generated_subalgebra(pg2q.algebra, [seed])
    assert s.dim == 2
    other = [QQ.zero] * 4
    other[gidx["g22"]] = QQ.one
    assert s.contains(other)  # 1 - g11 = g22


def test_generated_subalgebra_off_diagonal_seed(pg2q, gidx):
    # g12^2 = 0 and span{1, g12} is multiplicatively closed, so the unital
    # subalgebra generated by g12 alone is 2-dimensional
    seed = [QQ.zero] * 4
    seed[gidx["g12"]] = QQ.one
    s = generated_subalgebra(pg2q.algebra, [seed])
    assert s.dim == 2
    assert s.contains(pg2q.algebra.unit)
    assert s.contains(seed)


def test_generated_subalgebra_both_off_diagonals(pg2q, gidx):
    seeds = []
    for nm in ("g12", "g21"):
        v = [QQ.zero] * 4
        v[gidx[nm]] = QQ.one
        seeds.append(v)
    assert generated_subalgebra(pg2q.algebra, seeds).dim == 4


def test_dual_transpose_property(pg2q, k2q, mxq):
    # check_coalgebra(c) passes iff the transposed structure is an algebra
    for h in (pg2q, k2q, mxq):
        co = h.coalgebra
        n = co.dim
        mul = tuple(tuple(tuple(co.comul[k][i][j] for k in range(n)) for j in range(n))
                    for i in range(n))
        alg = FinDimAlgebra(QQ, n, mul, co.counit)
        assert check_algebra(alg).overall == check_coalgebra(co).overall
