"""Duals of weak bialgebras and skew pairings, scalar and base-valued.

The dual carries the dual algebra of the coalgebra and the dual coalgebra of
the algebra.  A weak skew pairing tau0: Lambda (x) H -> k satisfies

    tau0(xi | g h)   = tau0(xi_(1) | g) tau0(xi_(2) | h),   tau0(xi | 1) = eps(xi),
    tau0(xi zeta | h) = tau0(zeta | h_(1)) tau0(xi | h_(2)), tau0(1 | h)  = eps(h).

At the bialgebroid level the pairing takes values in the base R and the
multiplicativity laws thread source/target multiplications through tau.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import tensorops as tp
from .algcore import FinDimAlgebra, FinDimCoalgebra, comul_table
from .bialgebroid import FsBialgebroid, bialgebroid_to_weak, check_bialgebroid, gamma_sparse
from .errors import AxiomFailure, InvalidInput
from .fields import Value
from .frobenius import FrobeniusSystem
from .linalg import Matrix, rref
from .report import CheckReport, ReportBuilder
from .weakcore import WeakBialgebra, check_weak_bialgebra, variant


def dual_weak_bialgebra(h: WeakBialgebra) -> WeakBialgebra:
    """Dual weak bialgebra on the dual basis; antipode transposes when present."""
    if not check_weak_bialgebra(h).overall:
        raise InvalidInput("not a weak bialgebra")
    f = h.field
    n = h.dim
    mul = tuple(
        tuple(tuple(h.coalgebra.comul[k][i][j] for k in range(n)) for j in range(n))
        for i in range(n))
    comul = tuple(
        tuple(tuple(h.algebra.mul[a][b][i] for b in range(n)) for a in range(n))
        for i in range(n))
    alg = FinDimAlgebra(f, n, mul, h.coalgebra.counit)
    coalg = FinDimCoalgebra(f, n, comul, h.algebra.unit)
    antipode = h.antipode.transpose() if h.antipode is not None else None
    out = WeakBialgebra(alg, coalg, antipode)
    rep = check_weak_bialgebra(out)
    if not rep.overall:
        raise AxiomFailure("dual failed the weak bialgebra axioms", rep)
    if antipode is not None:
        from .hopf import verify_antipode
        arep = verify_antipode(out, antipode)
        if not arep.overall:
            raise AxiomFailure("transposed antipode failed verification", arep)
    return out


@dataclass(frozen=True)
class WeakPairing:
    """Bilinear form tau0 between two weak bialgebras (rows: Lambda, cols: H)."""

    lambda_side: WeakBialgebra
    h_side: WeakBialgebra
    tau0: Matrix

    def __post_init__(self):
        self.lambda_side.field.require_same(self.h_side.field)
        if self.tau0.rows != self.lambda_side.dim or self.tau0.cols != self.h_side.dim:
            raise InvalidInput("pairing matrix shape does not match the two sides")


def check_weak_skew_pairing(p: WeakPairing, all_witnesses: bool = False) -> CheckReport:
    """The four weak skew pairing axioms over all basis tuples."""
    lam, hh = p.lambda_side, p.h_side
    f = lam.field
    t = p.tau0.data
    rb = ReportBuilder(f, all_witnesses)
    cmt_l = comul_table(lam.coalgebra)
    cmt_h = comul_table(hh.coalgebra)
    mul_l = lam.algebra
    mul_h = hh.algebra

    def right_mult_failures():
        for xi in range(lam.dim):
            for g in range(mul_h.dim):
                for k in range(mul_h.dim):
                    lhs = f.zero
                    for m, v in enumerate(mul_h.mul[g][k]):
                        if v and t[xi][m]:
                            lhs = f.add(lhs, f.mul(v, t[xi][m]))
                    rhs = f.zero
                    for (a, b), v in cmt_l[xi].items():
                        if t[a][g] and t[b][k]:
                            rhs = f.add(rhs, f.mul(v, f.mul(t[a][g], t[b][k])))
                    if lhs != rhs:
                        yield (xi, g, k), {(): f.sub(lhs, rhs)}

    rb.check("pairing-multiplicative-in-h", right_mult_failures())

    def right_unit_failures():
        for xi in range(lam.dim):
            val = f.zero
            for m, u in enumerate(mul_h.unit):
                if u and t[xi][m]:
                    val = f.add(val, f.mul(u, t[xi][m]))
            if val != lam.coalgebra.counit[xi]:
                yield (xi,), {(): f.sub(val, lam.coalgebra.counit[xi])}

    rb.check("pairing-unit-in-h", right_unit_failures())

    def left_mult_failures():
        for xi in range(lam.dim):
            for zeta in range(lam.dim):
                for g in range(mul_h.dim):
                    lhs = f.zero
                    for m, v in enumerate(mul_l.mul[xi][zeta]):
                        if v and t[m][g]:
                            lhs = f.add(lhs, f.mul(v, t[m][g]))
                    rhs = f.zero
                    for (a, b), v in cmt_h[g].items():
                        if t[zeta][a] and t[xi][b]:
                            rhs = f.add(rhs, f.mul(v, f.mul(t[zeta][a], t[xi][b])))
                    if lhs != rhs:
                        yield (xi, zeta, g), {(): f.sub(lhs, rhs)}

    rb.check("pairing-multiplicative-in-lambda", left_mult_failures())

    def left_unit_failures():
        for g in range(mul_h.dim):
            val = f.zero
            for m, u in enumerate(mul_l.unit):
                if u and t[m][g]:
                    val = f.add(val, f.mul(u, t[m][g]))
            if val != hh.coalgebra.counit[g]:
                yield (g,), {(): f.sub(val, hh.coalgebra.counit[g])}

    rb.check("pairing-unit-in-lambda", left_unit_failures())
    return rb.build()


def evaluation_pairing(h: WeakBialgebra) -> tuple[WeakPairing, tuple[bool, bool]]:
    """Evaluation between the op of the dual and h, with nondegeneracy flags."""
    if not check_weak_bialgebra(h).overall:
        raise InvalidInput("not a weak bialgebra")
    lam = variant(dual_weak_bialgebra(h), "op")
    tau0 = Matrix.identity(h.field, h.dim)
    p = WeakPairing(lam, h, tau0)
    rk = rref(tau0).rank
    return p, (rk == lam.dim, rk == h.dim)


@dataclass(frozen=True)
class BialgebroidPairing:
    """R-valued pairing tau between two bialgebroids over one base."""

    lambda_side: FsBialgebroid
    h_side: FsBialgebroid
    tau: tuple[tuple[tuple[Value, ...], ...], ...]  # [xi][h] -> vector in R

    def __post_init__(self):
        if self.lambda_side.base.algebra != self.h_side.base.algebra:
            raise InvalidInput("both sides must share the base algebra")
        rdim = self.lambda_side.base.algebra.dim
        if len(self.tau) != self.lambda_side.total.dim or any(
                len(row) != self.h_side.total.dim or any(len(v) != rdim for v in row)
                for row in self.tau):
            raise InvalidInput("tau table shape mismatch")

    def tau_of(self, xi, hvec) -> tuple[Value, ...]:
        f = self.lambda_side.field
        rdim = self.lambda_side.base.algebra.dim
        out = [f.zero] * rdim
        for i, x in enumerate(xi):
            if not x:
                continue
            for j, y in enumerate(hvec):
                if not y:
                    continue
                c = f.mul(x, y)
                for k, v in enumerate(self.tau[i][j]):
                    if v:
                        out[k] = f.add(out[k], f.mul(c, v))
        return tuple(out)


def canonical_pairing_candidate(l: FsBialgebroid) -> BialgebroidPairing:
    """The evaluation-style candidate tau(xi | h) = C(xi h)(1) of a bialgebroid
    paired with itself.  Axiom outcomes are whatever they are; nothing is forced."""
    f = l.field
    n = l.total.dim
    runit = l.base.algebra.unit
    tau = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = l.total.product(l.total.basis_vector(i), l.total.basis_vector(j))
            row.append(l.counit_of(prod).apply(runit))
        tau.append(tuple(row))
    return BialgebroidPairing(l, l, tuple(tau))


def check_bialgebroid_skew_pairing(p: BialgebroidPairing,
                                   all_witnesses: bool = False) -> CheckReport:
    """Base-valued skew pairing laws, evaluated on normalized representatives."""
    lam, hh = p.lambda_side, p.h_side
    if not check_bialgebroid(lam).overall or not check_bialgebroid(hh).overall:
        raise InvalidInput("both sides must pass the bialgebroid axioms")
    f = lam.field
    ralg = lam.base.algebra
    rdim = ralg.dim
    rb = ReportBuilder(f, all_witnesses)
    nl, nh = lam.total.dim, hh.total.dim
    gl = gamma_sparse(lam)
    gh = gamma_sparse(hh)
    runit = ralg.unit

    def sandwich(l: FsBialgebroid, r_i, s_i, vec, t_i, u_i):
        # (b_r (x) ol b_s) vec (b_t (x) ol b_u)
        left = l.total.product(l.src.column(r_i), l.tgt.column(s_i))
        right = l.total.product(l.src.column(t_i), l.tgt.column(u_i))
        return l.total.product(l.total.product(left, vec), right)

    def skp1_failures():
        for r_i in range(rdim):
            for s_i in range(rdim):
                for t_i in range(rdim):
                    for u_i in range(rdim):
                        for xi in range(nl):
                            xiv = sandwich(lam, r_i, s_i, lam.total.basis_vector(xi), t_i, u_i)
                            for hi in range(nh):
                                base_val = p.tau_of(xiv, hh.total.basis_vector(hi))
                                for v_i in range(rdim):
                                    lhs = ralg.product(base_val, ralg.basis_vector(v_i))
                                    hv = sandwich(hh, t_i, v_i, hh.total.basis_vector(hi), u_i, s_i)
                                    rhs = ralg.product(
                                        ralg.basis_vector(r_i),
                                        p.tau_of(lam.total.basis_vector(xi), hv))
                                    diff = {k: f.sub(a, b)
                                            for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
                                    if diff:
                                        yield (r_i, s_i, t_i, u_i, xi, hi, v_i), diff

    rb.check("skp1-bimodule", skp1_failures())

    def skp2_failures():
        for xi in range(nl):
            for g in range(nh):
                for hi in range(nh):
                    prod = hh.total.product(hh.total.basis_vector(g), hh.total.basis_vector(hi))
                    lhs = p.tau_of(lam.total.basis_vector(xi), prod)
                    rhs = [f.zero] * rdim
                    for (a, b), v in gl[xi].items():
                        tval = p.tau_of(lam.total.basis_vector(b), hh.total.basis_vector(hi))
                        xi1 = lam.total.product(lam.tgt.apply(tval), lam.total.basis_vector(a))
                        term = p.tau_of(xi1, hh.total.basis_vector(g))
                        for k, x in enumerate(term):
                            if x:
                                rhs[k] = f.add(rhs[k], f.mul(v, x))
                    diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
                    if diff:
                        yield (xi, g, hi), diff

    rb.check("skp2-multiplicative-in-h", skp2_failures())

    def skp2_unit_failures():
        for xi in range(nl):
            lhs = p.tau_of(lam.total.basis_vector(xi), hh.total.unit)
            rhs = lam.counit_c[xi].apply(runit)
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
            if diff:
                yield (xi,), diff

    rb.check("skp2-unit", skp2_unit_failures())

    def skp3_failures():
        for xi in range(nl):
            for zeta in range(nl):
                prod = lam.total.product(lam.total.basis_vector(xi), lam.total.basis_vector(zeta))
                for g in range(nh):
                    lhs = p.tau_of(prod, hh.total.basis_vector(g))
                    rhs = [f.zero] * rdim
                    for (a, b), v in gh[g].items():
                        tval = p.tau_of(lam.total.basis_vector(zeta), hh.total.basis_vector(a))
                        g2 = hh.total.product(hh.src.apply(tval), hh.total.basis_vector(b))
                        term = p.tau_of(lam.total.basis_vector(xi), g2)
                        for k, x in enumerate(term):
                            if x:
                                rhs[k] = f.add(rhs[k], f.mul(v, x))
                    diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
                    if diff:
                        yield (xi, zeta, g), diff

    rb.check("skp3-multiplicative-in-lambda", skp3_failures())

    def skp3_unit_failures():
        for g in range(nh):
            lhs = p.tau_of(lam.total.unit, hh.total.basis_vector(g))
            rhs = hh.counit_c[g].apply(runit)
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
            if diff:
                yield (g,), diff

    rb.check("skp3-unit", skp3_unit_failures())
    return rb.build()


def descend_pairing(p: BialgebroidPairing, s: FrobeniusSystem) -> WeakPairing:
    """tau0 = phi . tau between the weak bialgebras built with the same IFS."""
    rep = check_bialgebroid_skew_pairing(p)
    if not rep.overall:
        raise AxiomFailure("input pairing fails the bialgebroid skew pairing laws", rep)
    lam_w = bialgebroid_to_weak(p.lambda_side, s)
    h_w = bialgebroid_to_weak(p.h_side, s)
    f = lam_w.field
    rows = [[s.phi_of(p.tau[i][j]) for j in range(h_w.dim)]
            for i in range(lam_w.dim)]
    out = WeakPairing(lam_w, h_w, Matrix.from_rows(f, rows))
    wrep = check_weak_skew_pairing(out)
    if not wrep.overall:
        raise AxiomFailure("descended pairing fails the weak skew pairing laws", wrep)
    return out
