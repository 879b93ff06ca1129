import pytest

from wqg.bialgebroid import bialgebroid_to_weak, weak_to_bialgebroid
from wqg.duality import (BialgebroidPairing, WeakPairing, canonical_pairing_candidate,
                         check_bialgebroid_skew_pairing, check_weak_skew_pairing,
                         descend_pairing, dual_weak_bialgebra, evaluation_pairing)
from wqg.fields import QQ
from wqg.hopf import solve_antipode
from wqg.linalg import Matrix
from wqg.weakcore import check_weak_bialgebra, counital_data, variant
from wqg import zoo


def test_dual_pg2_is_function_algebra(pg2q):
    d = dual_weak_bialgebra(pg2q)
    assert check_weak_bialgebra(d).overall
    assert d.algebra.is_commutative()
    # pointwise product of delta functions: d_g d_h = delta_{g,h} d_g
    for i in range(4):
        for j in range(4):
            row = d.algebra.mul[i][j]
            if i == j:
                assert row[i] == QQ.one and sum(1 for x in row if x) == 1
            else:
                assert not any(row)


def test_dual_k2_is_two_copies(k2q):
    d = dual_weak_bialgebra(k2q)
    assert check_weak_bialgebra(d).overall
    assert d.algebra.is_commutative()


def test_double_dual_identity(pg2q, k2q, mxq):
    for h in (pg2q, k2q, mxq):
        assert dual_weak_bialgebra(dual_weak_bialgebra(h)).same_structure(h)


def test_dual_antipode_is_transpose(pg2q):
    d = dual_weak_bialgebra(pg2q)
    assert d.antipode == pg2q.antipode.transpose()


def test_dual_swaps_axiom_pairs(pg2q, gidx):
    # breaking eq5 on the dual shows up as an eq3-family failure on the
    # original side and vice versa; check the cross-mapping on a mutation
    from wqg.algcore import FinDimCoalgebra
    from wqg.weakcore import WeakBialgebra, check_weak_bialgebra as cwb
    co = pg2q.coalgebra
    counit = list(co.counit)
    counit[gidx["g12"]] = QQ.zero
    mutated = WeakBialgebra(pg2q.algebra, FinDimCoalgebra(QQ, 4, co.comul, tuple(counit)))
    rep = cwb(mutated)
    failed = {it.axiom for it in rep.failed()}
    assert "eq3" in failed or "eq4" in failed
    # the dual of the mutation breaks the unit-coherence family (eq5/eq6)
    n = 4
    mul = tuple(tuple(tuple(co.comul[k][i][j] for k in range(n)) for j in range(n))
                for i in range(n))
    comul = tuple(tuple(tuple(pg2q.algebra.mul[a][b][i] for b in range(n))
                        for a in range(n)) for i in range(n))
    from wqg.algcore import FinDimAlgebra
    dual_mutated = WeakBialgebra(
        FinDimAlgebra(QQ, n, mul, tuple(counit)),
        FinDimCoalgebra(QQ, n, comul, pg2q.algebra.unit))
    drep = cwb(dual_mutated)
    dfailed = {it.axiom for it in drep.failed()}
    assert dfailed & {"eq5", "eq6", "algebra-unit-law"}


def test_counital_dimension_exchange(pg2q, pg3q, k2q, mxq):
    for h in (pg2q, pg3q, k2q, mxq):
        cd = counital_data(h)
        cdd = counital_data(dual_weak_bialgebra(h))
        assert cdd.h_s.dim == cd.h_t.dim
        assert cdd.h_t.dim == cd.h_s.dim


def test_evaluation_pairing_passes(pg2q, pg3q, k2q, mxq):
    for h in (pg2q, pg3q, k2q, mxq):
        p, (nl, nr) = evaluation_pairing(h)
        assert check_weak_skew_pairing(p).overall
        assert nl and nr


def test_unopped_arrangement_fails_on_pg2(pg2q):
    # evaluation without the op rearrangement: PG2 on the xi side, dual on the
    # h side; multiplicativity-in-lambda requires tau(xi zeta | .) to see the
    # reversed product, which fails since PG2 is noncommutative
    d = dual_weak_bialgebra(pg2q)
    p = WeakPairing(pg2q, d, Matrix.identity(QQ, 4))
    rep = check_weak_skew_pairing(p)
    assert not rep.overall
    assert not rep.item("pairing-multiplicative-in-lambda").passed
    # with the dual on the xi side the axioms do hold on PG2: its coalgebra is
    # cocommutative, so the dual algebra is commutative and op changes nothing
    p2 = WeakPairing(d, pg2q, Matrix.identity(QQ, 4))
    assert check_weak_skew_pairing(p2).overall


def test_unopped_same_arrangement_fails_on_function_algebra(pg2q):
    # the function algebra is not cocommutative, so there the lambda-side
    # arrangement also needs the op twist
    fn = dual_weak_bialgebra(pg2q)
    d = dual_weak_bialgebra(fn)
    p = WeakPairing(d, fn, Matrix.identity(QQ, 4))
    rep = check_weak_skew_pairing(p)
    assert not rep.item("pairing-multiplicative-in-lambda").passed
    p2, _ = evaluation_pairing(fn)
    assert check_weak_skew_pairing(p2).overall


def test_trivial_pairing_through_counits(k2q):
    f = QQ
    rows = [[f.mul(k2q.coalgebra.counit[i], k2q.coalgebra.counit[j])
             for j in range(2)] for i in range(2)]
    p = WeakPairing(k2q, k2q, Matrix.from_rows(f, rows))
    assert check_weak_skew_pairing(p).overall


def test_solve_antipode_commutes_with_dual(pg3q):
    s = solve_antipode(pg3q)
    sd = solve_antipode(dual_weak_bialgebra(pg3q))
    assert sd == s.transpose()


def test_canonical_bialgebroid_pairing_on_eb2(eb2q):
    p = canonical_pairing_candidate(eb2q)
    rep = check_bialgebroid_skew_pairing(p)
    outcomes = {it.axiom: it.passed for it in rep.items}
    # recorded outcome: the counit-derived candidate satisfies all five laws here
    assert outcomes == {
        "skp1-bimodule": True,
        "skp2-multiplicative-in-h": True,
        "skp2-unit": True,
        "skp3-multiplicative-in-lambda": True,
        "skp3-unit": True,
    }


def test_canonical_pairing_on_pg2_bialgebroid(pg2q):
    # recorded honest outcome: on PG2's own bialgebroid the counit-derived
    # candidate satisfies the two unit laws but fails the three
    # multiplicativity laws (first failures found by brute force below);
    # only on enveloping bialgebroids does the candidate pass everything
    l = weak_to_bialgebroid(pg2q)
    p = canonical_pairing_candidate(l)
    rep = check_bialgebroid_skew_pairing(p)
    outcomes = {it.axiom: it.passed for it in rep.items}
    assert outcomes == {
        "skp1-bimodule": False,
        "skp2-multiplicative-in-h": False,
        "skp2-unit": True,
        "skp3-multiplicative-in-lambda": False,
        "skp3-unit": True,
    }
    assert rep.item("skp1-bimodule").witness is not None


def test_base_q_pairing_reduces_to_weak(k2q):
    # base = k: a bialgebroid pairing over the trivial base is exactly a weak
    # skew pairing; compare the two checkers on the same data
    l = weak_to_bialgebroid(k2q)
    assert l.base.algebra.dim == 1
    p = canonical_pairing_candidate(l)
    rep = check_bialgebroid_skew_pairing(p)
    assert rep.overall
    w = descend_pairing(p, l.base)
    assert check_weak_skew_pairing(w).overall
    # phi = id on the 1-dimensional base, so tau0 equals tau
    for i in range(k2q.dim):
        for j in range(k2q.dim):
            assert w.tau0.data[i][j] == p.tau[i][j][0]


def test_descend_pairing_eb2(eb2q):
    p = canonical_pairing_candidate(eb2q)
    w = descend_pairing(p, eb2q.base)
    assert check_weak_skew_pairing(w).overall
    # unit law of the descended pairing recovers the derived counit
    h_w = bialgebroid_to_weak(eb2q)
    for i in range(h_w.dim):
        val = QQ.zero
        for j, u in enumerate(h_w.algebra.unit):
            if u:
                val = QQ.add(val, QQ.mul(u, w.tau0.data[i][j]))
        assert val == h_w.coalgebra.counit[i]
