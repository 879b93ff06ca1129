import json
import os
from fractions import Fraction

import pytest

from wqg.errors import (AxiomFailure, BadNormalization, NonInvertibleT, NotCommutative,
                        NotSeparable, Singular)
from wqg.fields import GF, QQ
from wqg.frobenius import (FrobeniusSystem, compare_frobenius_systems, find_ifs,
                           frobenius_automorphism, gram_matrix, matrix_algebra,
                           matrix_ifs, trace_ifs_commutative, twist_system,
                           verify_frobenius_system, verify_ifs)
from wqg.linalg import Matrix, inverse
from wqg import zoo

DATA = os.path.join(os.path.dirname(__file__), "data")


def m2_trace_system(field=QQ):
    """(tr, sum e_ij (x) e_ji) on M_2: Frobenius but nabla(e) = 2."""
    alg = matrix_algebra(2, field)
    phi = tuple(field.one if i in (0, 3) else field.zero for i in range(4))
    z, o = field.zero, field.one
    grid = [[z] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            grid[i * 2 + j][j * 2 + i] = o
    return FrobeniusSystem(alg, phi, Matrix.from_rows(field, grid))


def test_m2_trace_is_frobenius_not_ifs():
    s = m2_trace_system()
    rep = verify_frobenius_system(s)
    assert rep.overall
    # nabla(e) = sum e_ij e_ji = 2 . 1
    assert s.nabla_e() == tuple(QQ.normalize(x) for x in (2, 0, 0, 2))
    repi = verify_ifs(s)
    assert not repi.item("nabla-one").passed


def test_r2_idempotent_system_passes():
    r = zoo.r2(QQ)
    phi = (QQ.one, QQ.one)
    e = Matrix.identity(QQ, 2)
    s = FrobeniusSystem(r, phi, e)
    assert verify_frobenius_system(s).overall
    assert verify_ifs(s).overall


def test_r2_degenerate_phi_fails_dual_basis():
    r = zoo.r2(QQ)
    phi = (QQ.one, QQ.zero)  # ignores the second factor
    s = FrobeniusSystem(r, phi, Matrix.identity(QQ, 2))
    rep = verify_frobenius_system(s)
    assert not rep.overall
    assert not rep.item("dual-basis-left").passed
    assert rep.item("dual-basis-left").witness.indices == (1,)


def test_scaled_trace_ifs_m2():
    s = zoo.scaled_trace_ifs_m2(QQ)
    assert verify_ifs(s).overall
    assert s.phi == tuple(QQ.normalize(x) for x in (2, 0, 0, 2))


def test_theta_identity_for_symmetric_systems():
    s = trace_ifs_commutative(zoo.r2(QQ))
    assert frobenius_automorphism(s) == Matrix.identity(QQ, 2)


def test_theta_is_conjugation_for_twisted_trace():
    # phi = tr(u .), e = sum e_ij (x) u^-1 e_ji with u = diag(1, 2);
    # theta(x) = u x u^-1 since tr(u x y) = tr(u y (u x u^-1))
    f = QQ
    u = Matrix.from_rows(f, [[1, 0], [0, 2]])
    alg = matrix_algebra(2, f)
    phi = tuple(u.data[j][i] for i in range(2) for j in range(2))
    uinv = inverse(u)
    grid = [[f.zero] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for a in range(2):
                if uinv.data[a][j]:
                    grid[i * 2 + j][a * 2 + i] = uinv.data[a][j]
    s = FrobeniusSystem(alg, phi, Matrix.from_rows(f, grid))
    assert verify_frobenius_system(s).overall
    theta = frobenius_automorphism(s)
    # conjugation matrix on basis e_ij: u e_ij u^-1 has (a,b) entry u[a][i] uinv[j][b]
    conj_cols = []
    for i in range(2):
        for j in range(2):
            col = [f.zero] * 4
            for a in range(2):
                for b in range(2):
                    col[a * 2 + b] = f.mul(u.data[a][i], uinv.data[j][b])
            conj_cols.append(col)
    assert theta == Matrix.from_columns(f, conj_cols)
    assert theta != Matrix.identity(f, 4)


def test_theta_identity_for_pg2_target_ifs(pg2q):
    from wqg.weakcore import counital_data
    s = counital_data(pg2q).ifs_t
    assert frobenius_automorphism(s) == Matrix.identity(QQ, 2)
    assert s.flip_e() == s.e


def test_symmetry_three_way_equivalence():
    # theta = id <=> flip(e) = e <=> gram symmetric, across assorted systems
    from wqg.weakcore import counital_data
    systems = [
        trace_ifs_commutative(zoo.r2(QQ)),
        trace_ifs_commutative(zoo.r3(QQ)),
        zoo.scaled_trace_ifs_m2(QQ),
        twist_system(trace_ifs_commutative(zoo.r2(QQ)), (1, 3)),
        counital_data(zoo.pg2(QQ)).ifs_t,
        m2_trace_system(),
    ]
    u = Matrix.from_rows(QQ, [[3, 0], [0, Fraction(3, 2)]])
    systems.append(matrix_ifs(2, u, QQ))
    seen_nontrivial = False
    for s in systems:
        n = s.algebra.dim
        ident = Matrix.identity(QQ, n)
        theta_id = frobenius_automorphism(s) == ident
        flip = s.flip_e() == s.e
        g = gram_matrix(s)
        symmetric = g == g.transpose()
        assert theta_id == flip == symmetric
        seen_nontrivial = seen_nontrivial or not theta_id
    assert seen_nontrivial


def test_twist_closure_property():
    s = trace_ifs_commutative(zoo.r2(QQ))
    tw = twist_system(s, (2, 5))
    assert verify_frobenius_system(tw).overall


def test_compare_identical_systems():
    s = trace_ifs_commutative(zoo.r2(QQ))
    assert compare_frobenius_systems(s, s) == s.algebra.unit


def test_compare_recovers_planted_unit():
    s = trace_ifs_commutative(zoo.r2(QQ))
    t0 = tuple(QQ.normalize(x) for x in (1, 3))
    s2 = twist_system(s, t0)
    assert compare_frobenius_systems(s, s2) == t0


def test_compare_m2_conjugation_pair():
    # s = (2 tr, e/2), s2 twisted by u: compare returns u
    s = zoo.scaled_trace_ifs_m2(QQ)
    uvec = tuple(QQ.normalize(x) for x in (1, 0, 0, 2))  # diag(1, 2) in e_ij coordinates
    s2 = twist_system(s, uvec)
    assert compare_frobenius_systems(s, s2) == uvec


def test_compare_requires_same_algebra():
    s = trace_ifs_commutative(zoo.r2(QQ))
    s3 = trace_ifs_commutative(zoo.r3(QQ))
    with pytest.raises(Exception):
        compare_frobenius_systems(s, s3)


def test_compare_ifs_pair_satisfies_unit_law():
    s1 = zoo.scaled_trace_ifs_m2(QQ)
    u = Matrix.from_rows(QQ, [[3, 0], [0, Fraction(3, 2)]])
    s2 = matrix_ifs(2, u, QQ)
    t = compare_frobenius_systems(s1, s2)  # asserts e1 t^-1 e2 = 1 internally
    alg = s1.algebra
    assert alg.element_inverse(t) is not None


def test_trace_ifs_r2():
    s = trace_ifs_commutative(zoo.r2(QQ))
    assert s.phi == (QQ.one, QQ.one)
    assert s.e == Matrix.identity(QQ, 2)


def test_trace_ifs_dim1():
    f = QQ
    triv = zoo.product_field_algebra(1, f)
    s = trace_ifs_commutative(triv)
    assert s.phi == (f.one,)
    assert s.e.data == ((f.one,),)


def test_trace_ifs_dual_numbers_not_separable():
    # Q[x]/(x^2): nilpotents obstruct any separability element
    from wqg.algcore import FinDimAlgebra
    mul = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    dual_numbers = FinDimAlgebra.build(QQ, 2, mul, [1, 0])
    with pytest.raises(NotSeparable):
        trace_ifs_commutative(dual_numbers)


def test_trace_ifs_rejects_noncommutative():
    with pytest.raises(NotCommutative):
        trace_ifs_commutative(matrix_algebra(2, QQ))


def test_matrix_ifs_2i():
    s = matrix_ifs(2, Matrix.identity(QQ, 2).scale(2), QQ)
    assert verify_ifs(s).overall


def test_matrix_ifs_dim1():
    s = matrix_ifs(1, Matrix.identity(QQ, 1), QQ)
    assert s.phi == (QQ.one,)
    assert s.e.data == ((QQ.one,),)


def test_matrix_ifs_rejects_bad_normalization():
    with pytest.raises(BadNormalization):
        matrix_ifs(2, Matrix.identity(QQ, 2), QQ)  # tr(1) = 2


def test_matrix_ifs_rejects_singular():
    with pytest.raises(Singular):
        matrix_ifs(2, Matrix.zeros(QQ, 2, 2), QQ)


def test_casimir_holds_on_verified_systems():
    for s in (trace_ifs_commutative(zoo.r2(QQ)), zoo.scaled_trace_ifs_m2(QQ),
              m2_trace_system()):
        assert verify_frobenius_system(s).item("casimir").passed


def test_find_ifs_heuristic():
    assert find_ifs(zoo.r2(QQ)) is not None
    assert find_ifs(matrix_algebra(2, QQ)) is not None
    from wqg.algcore import FinDimAlgebra
    mul = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert find_ifs(FinDimAlgebra.build(QQ, 2, mul, [1, 0])) is None


def test_m2_f2_probe_artifact():
    """Characteristic-2 probe: the candidate on M_2 over F_2 with u^-1 = [[1,1],[1,0]].

    The recorded artifact asserts what the computation actually finds (all
    four IFS laws pass), documenting the tension with the folklore claim that
    M_2 over F_2 cannot carry an idempotent Frobenius system.
    """
    f2 = GF(2)
    uinv = Matrix.from_rows(f2, [[1, 1], [1, 0]])
    u = inverse(uinv)
    assert u is not None
    s = matrix_ifs(2, u, f2)  # would raise AxiomFailure if any law failed
    rep = verify_ifs(s)
    computed = {it.axiom: ("pass" if it.passed else "fail") for it in rep.items}
    with open(os.path.join(DATA, "m2_f2_ifs_probe.json")) as fh:
        recorded = json.load(fh)
    assert recorded["items"] == computed
    assert recorded["overall"] == ("pass" if rep.overall else "fail")
    assert recorded["u_inverse"] == [[1, 1], [1, 0]]
