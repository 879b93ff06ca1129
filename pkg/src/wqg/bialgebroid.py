"""Bialgebroids over a Frobenius-separable base, by idempotent projectors.

The base comes with a chosen IFS (phi, e).  Classes in the balanced tensor
H (x)~ H = H (x) H / < tgt(r) g (x) h - g (x) src(r) h > are identified with
their normalized representatives in the image of the idempotent

    Pi(g (x) h) = tgt(e1) g (x) src(e2) h,

and the comultiplication gamma is stored as a normalized representative
H -> H (x) H with Pi . gamma = gamma.  The counit C takes values in End(R),
stored as one matrix per basis element of the total algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import tensorops as tp
from .algcore import FinDimAlgebra, FinDimCoalgebra, LinearMap, check_algebra, check_algebra_hom
from .errors import (AxiomFailure, BadBase, BadTwist, InvalidInput, NotInvertible,
                     ProjectorNotIdempotent)
from .fields import Value
from .frobenius import FrobeniusSystem, verify_ifs
from .linalg import Matrix, SparseEchelon, Subspace, QuotientSpace, quotient_by, rref
from .report import CheckReport, ReportBuilder
from .weakcore import WeakBialgebra, check_weak_bialgebra, counital_data, delta1


@dataclass(frozen=True)
class FsBialgebroid:
    """Total algebra H over base R with source/target maps, gamma and counit C."""

    base: FrobeniusSystem          # the chosen IFS on R
    total: FinDimAlgebra           # H
    src: LinearMap                 # R -> H, algebra map
    tgt: LinearMap                 # R -> H, anti-algebra map
    gamma: LinearMap               # H -> H (x) H, flattened row-major, normalized
    counit_c: tuple[Matrix, ...]   # C(e_h) in End(R), one matrix per basis element

    def __post_init__(self):
        n, r = self.total.dim, self.base.algebra.dim
        if self.src.matrix.rows != n or self.src.matrix.cols != r:
            raise InvalidInput("src must map base coordinates into the total algebra")
        if self.tgt.matrix.rows != n or self.tgt.matrix.cols != r:
            raise InvalidInput("tgt must map base coordinates into the total algebra")
        if self.gamma.matrix.rows != n * n or self.gamma.matrix.cols != n:
            raise InvalidInput("gamma must map H into H (x) H")
        if len(self.counit_c) != n or any(m.rows != r or m.cols != r for m in self.counit_c):
            raise InvalidInput("counit must assign an r x r matrix to every basis element")

    @property
    def field(self):
        return self.total.field

    def counit_of(self, vec) -> Matrix:
        f = self.field
        r = self.base.algebra.dim
        out = Matrix.zeros(f, r, r)
        for i, x in enumerate(vec):
            if x:
                out = out + self.counit_c[i].scale(x)
        return out


@lru_cache(maxsize=None)
def gamma_sparse(l: FsBialgebroid) -> tuple[dict, ...]:
    n = l.total.dim
    out = []
    for h in range(n):
        col = l.gamma.column(h)
        out.append({divmod(k, n): v for k, v in enumerate(col) if v})
    return tuple(out)


@lru_cache(maxsize=None)
def projector_terms(total: FinDimAlgebra, src: LinearMap, tgt: LinearMap,
                    s: FrobeniusSystem) -> tuple:
    """Terms (coef, left-mult cols of tgt(e1), left-mult cols of src(e2)) of Pi."""
    terms = []
    for (i, j), v in s.e_sparse().items():
        cols_a = tp.left_mult_cols(total, tuple(tgt.column(i)))
        cols_b = tp.left_mult_cols(total, tuple(src.column(j)))
        terms.append((v, cols_a, cols_b))
    return tuple(terms)


def apply_projector_parts(total: FinDimAlgebra, src: LinearMap, tgt: LinearMap,
                          s: FrobeniusSystem, v: dict,
                          leg_a: int = 0, leg_b: int = 1) -> dict:
    f = total.field
    out: dict = {}
    for coef, cols_a, cols_b in projector_terms(total, src, tgt, s):
        w = tp.apply_cols_leg(f, cols_a, v, leg_a)
        w = tp.apply_cols_leg(f, cols_b, w, leg_b)
        tp.acc(f, out, w, coef)
    return out


def apply_projector(l: FsBialgebroid, v: dict, leg_a: int = 0, leg_b: int = 1,
                    s: FrobeniusSystem | None = None) -> dict:
    return apply_projector_parts(l.total, l.src, l.tgt, s or l.base, v, leg_a, leg_b)


@dataclass(frozen=True)
class TensorOverR:
    """The balanced tensor square of the total algebra, three ways at once."""

    projector: Matrix        # Pi on H (x) H, flattened row-major
    image: Subspace          # Im(Pi), the normalized representatives
    quotient: QuotientSpace  # H (x) H by the balancing relations


def balancing_relations(l: FsBialgebroid):
    """Sparse generators tgt(r) g (x) h - g (x) src(r) h over all basis r, g, h."""
    f = l.field
    n = l.total.dim
    rdim = l.base.algebra.dim
    for rr in range(rdim):
        cols_t = tp.left_mult_cols(l.total, tuple(l.tgt.column(rr)))
        cols_s = tp.left_mult_cols(l.total, tuple(l.src.column(rr)))
        for g in range(n):
            for hh in range(n):
                gen: dict = {}
                for k, x in cols_t[g].items():
                    gen[(k, hh)] = x
                for k, x in cols_s[hh].items():
                    gen[(g, k)] = f.sub(gen.get((g, k), f.zero), x)
                gen = {k: x for k, x in gen.items() if x}
                if gen:
                    yield gen


def tensor_over_r(l: FsBialgebroid) -> TensorOverR:
    """Projector, image and quotient presentations of H (x)~ H; checks they agree."""
    if not verify_ifs(l.base).overall:
        raise BadBase("base system is not an IFS")
    f = l.field
    n = l.total.dim
    cols = []
    for g in range(n):
        for hh in range(n):
            img = apply_projector(l, {(g, hh): f.one})
            cols.append(tp.to_dense(f, img, (n, n)))
    projector = Matrix.from_columns(f, cols)
    for j, col in enumerate(cols):
        again = apply_projector(l, {divmod(k, n): v for k, v in enumerate(col) if v})
        if tp.to_dense(f, again, (n, n)) != col:
            raise ProjectorNotIdempotent(f"Pi^2 != Pi at flattened column {j}")
    image = Subspace.from_spanning(f, n * n, cols)
    flat = {(g, hh): g * n + hh for g in range(n) for hh in range(n)}
    quot = quotient_by(f, n * n,
                       ({flat[k]: v for k, v in gen.items()} for gen in balancing_relations(l)))
    if image.dim != quot.dim:
        raise AxiomFailure(
            f"projector image dim {image.dim} != quotient dim {quot.dim}")
    return TensorOverR(projector, image, quot)


@lru_cache(maxsize=None)
def check_bialgebroid(l: FsBialgebroid, all_witnesses: bool = False) -> CheckReport:
    """Full axiom suite: maps, normalization, Takeuchi membership, comultiplication
    laws, coassociativity in the double-balanced quotient, and the counit laws."""
    f = l.field
    n = l.total.dim
    ralg = l.base.algebra
    rdim = ralg.dim
    rb = ReportBuilder(f, all_witnesses)
    rb.extend(verify_ifs(l.base), "base-")
    rb.extend(check_algebra(l.total), "total-")
    rb.extend(check_algebra(ralg), "basealg-")
    rb.extend(check_algebra_hom(l.src, ralg, l.total), "src-")
    rb.extend(check_algebra_hom(l.tgt, ralg, l.total, anti=True), "tgt-")

    def commute_failures():
        for i in range(rdim):
            si = l.src.column(i)
            for j in range(rdim):
                tj = l.tgt.column(j)
                lhs = l.total.product(si, tj)
                rhs = l.total.product(tj, si)
                diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
                if diff:
                    yield (i, j), diff

    rb.check("src-tgt-commute", commute_failures())

    gs = gamma_sparse(l)

    def normalized_failures():
        for h in range(n):
            diff = tp.sub(f, apply_projector(l, gs[h]), gs[h])
            if diff:
                yield (h,), diff

    rb.check("gamma-normalized", normalized_failures())

    def takeuchi_failures():
        for rr in range(rdim):
            rcols_t = tp.right_mult_cols(l.total, tuple(l.tgt.column(rr)))
            rcols_s = tp.right_mult_cols(l.total, tuple(l.src.column(rr)))
            for h in range(n):
                lhs = apply_projector(l, tp.apply_cols_leg(f, rcols_t, gs[h], 0))
                rhs = apply_projector(l, tp.apply_cols_leg(f, rcols_s, gs[h], 1))
                diff = tp.sub(f, lhs, rhs)
                if diff:
                    yield (rr, h), diff

    rb.check("takeuchi-membership", takeuchi_failures())

    def mult_failures():
        for g in range(n):
            for h in range(n):
                lhs = apply_projector(l, tp.tensor_mul(l.total, gs[g], gs[h]))
                rhs: dict = {}
                for k, v in enumerate(l.total.mul[g][h]):
                    if v:
                        tp.acc(f, rhs, gs[k], v)
                diff = tp.sub(f, lhs, rhs)
                if diff:
                    yield (g, h), diff

    rb.check("gamma-multiplicative", mult_failures())

    def unit_failures():
        lhs: dict = {}
        for i, x in enumerate(l.total.unit):
            if x:
                tp.acc(f, lhs, gs[i], x)
        one = tp.kron(f, tp.from_dense(l.total.unit), tp.from_dense(l.total.unit))
        diff = tp.sub(f, lhs, apply_projector(l, one))
        if diff:
            yield (), diff

    rb.check("gamma-unit", unit_failures())

    def bimodule_failures():
        for ri in range(rdim):
            si = tuple(l.src.column(ri))
            cols_si = tp.left_mult_cols(l.total, si)
            for rj in range(rdim):
                tj = tuple(l.tgt.column(rj))
                cols_tj = tp.left_mult_cols(l.total, tj)
                st = l.total.product(si, tj)
                for h in range(n):
                    x = l.total.product(st, l.total.basis_vector(h))
                    lhs: dict = {}
                    for k, v in enumerate(x):
                        if v:
                            tp.acc(f, lhs, gs[k], v)
                    rhs = tp.apply_cols_leg(f, cols_si, gs[h], 0)
                    rhs = tp.apply_cols_leg(f, cols_tj, rhs, 1)
                    rhs = apply_projector(l, rhs)
                    diff = tp.sub(f, lhs, rhs)
                    if diff:
                        yield (ri, rj, h), diff

    rb.check("gamma-bimodule-linear", bimodule_failures())

    def coassoc_failures():
        ech = SparseEchelon(f)
        for gen in balancing_relations(l):
            for k in range(n):
                ech.insert({(a, b, k): v for (a, b), v in gen.items()})
            for k in range(n):
                ech.insert({(k, a, b): v for (a, b), v in gen.items()})
        for h in range(n):
            lhs: dict = {}
            rhs: dict = {}
            for (a, b), v in gs[h].items():
                tp.acc(f, lhs, {(p, q, b): w for (p, q), w in gs[a].items()}, v)
                tp.acc(f, rhs, {(a, p, q): w for (p, q), w in gs[b].items()}, v)
            diff = ech.reduce(tp.sub(f, lhs, rhs))
            if diff:
                yield (h,), diff

    rb.check("coassociativity", coassoc_failures())

    ident_r = Matrix.identity(f, rdim)

    def counit_unit_failures():
        c1 = l.counit_of(l.total.unit)
        diff_m = c1 - ident_r
        if not diff_m.is_zero():
            yield (), {(i, j): x for i, row in enumerate(diff_m.data)
                       for j, x in enumerate(row) if x}

    rb.check("counit-unit", counit_unit_failures())

    def counit_mult_failures():
        for g in range(n):
            for h in range(n):
                prod = Matrix.zeros(f, rdim, rdim)
                for k, v in enumerate(l.total.mul[g][h]):
                    if v:
                        prod = prod + l.counit_c[k].scale(v)
                diff_m = (l.counit_c[g] @ l.counit_c[h]) - prod
                if not diff_m.is_zero():
                    yield (g, h), {(i, j): x for i, row in enumerate(diff_m.data)
                                   for j, x in enumerate(row) if x}

    rb.check("counit-multiplicative", counit_mult_failures())

    def counit_src_failures():
        for rr in range(rdim):
            lhs = l.counit_of(l.src.column(rr))
            rhs = ralg.left_mult(ralg.basis_vector(rr))
            diff_m = lhs - rhs
            if not diff_m.is_zero():
                yield (rr,), {(i, j): x for i, row in enumerate(diff_m.data)
                              for j, x in enumerate(row) if x}

    rb.check("counit-src", counit_src_failures())

    def counit_tgt_failures():
        for rr in range(rdim):
            lhs = l.counit_of(l.tgt.column(rr))
            rhs = ralg.right_mult(ralg.basis_vector(rr))
            diff_m = lhs - rhs
            if not diff_m.is_zero():
                yield (rr,), {(i, j): x for i, row in enumerate(diff_m.data)
                              for j, x in enumerate(row) if x}

    rb.check("counit-tgt", counit_tgt_failures())

    runit = ralg.unit

    def counit_left_failures():
        # src(C(h^(1))(1)) h^(2) = h
        for h in range(n):
            out = [f.zero] * n
            for (a, b), v in gs[h].items():
                val = l.src.apply(l.counit_c[a].apply(runit))
                term = l.total.product(val, l.total.basis_vector(b))
                for k, x in enumerate(term):
                    if x:
                        out[k] = f.add(out[k], f.mul(v, x))
            diff = {k: f.sub(x, y)
                    for k, (x, y) in enumerate(zip(out, l.total.basis_vector(h))) if x != y}
            if diff:
                yield (h,), diff

    rb.check("counit-left-law", counit_left_failures())

    def counit_right_failures():
        # tgt(C(h^(2))(1)) h^(1) = h
        for h in range(n):
            out = [f.zero] * n
            for (a, b), v in gs[h].items():
                val = l.tgt.apply(l.counit_c[b].apply(runit))
                term = l.total.product(val, l.total.basis_vector(a))
                for k, x in enumerate(term):
                    if x:
                        out[k] = f.add(out[k], f.mul(v, x))
            diff = {k: f.sub(x, y)
                    for k, (x, y) in enumerate(zip(out, l.total.basis_vector(h))) if x != y}
            if diff:
                yield (h,), diff

    rb.check("counit-right-law", counit_right_failures())
    return rb.build()


def weak_to_bialgebroid(h: WeakBialgebra) -> FsBialgebroid:
    """Bialgebroid over R = H_t: src = inclusion, tgt = eps_s', gamma = Delta,
    C(h) = (x -> eps_t(h x))."""
    rep = check_weak_bialgebra(h)
    if not rep.overall:
        raise InvalidInput("not a weak bialgebra")
    cd = counital_data(h)
    f = h.field
    n = h.dim
    r = cd.h_t.dim
    src_m = Matrix.from_columns(f, [cd.h_t.basis.row(i) for i in range(r)])
    tgt_m = cd.eps_s_prime @ src_m
    gamma_cols = []
    from .algcore import comul_table
    cmt = comul_table(h.coalgebra)
    for i in range(n):
        col = [f.zero] * (n * n)
        for (a, b), v in cmt[i].items():
            col[a * n + b] = v
        gamma_cols.append(col)
    gamma_m = Matrix.from_columns(f, gamma_cols)
    counits = []
    for i in range(n):
        cols = []
        for j in range(r):
            prod = h.algebra.product(h.algebra.basis_vector(i), cd.h_t.basis.row(j))
            coords = cd.to_target_coords(cd.eps_t.apply(prod))
            cols.append(coords)
        counits.append(Matrix.from_columns(f, cols))
    l = FsBialgebroid(cd.ifs_t, h.algebra, LinearMap(src_m), LinearMap(tgt_m),
                      LinearMap(gamma_m), tuple(counits))
    gs = gamma_sparse(l)
    for i in range(n):
        if tp.sub(f, apply_projector(l, gs[i]), gs[i]):
            raise AxiomFailure("Delta is not projector-normalized; corrupted input")
    return l


def bialgebroid_to_weak(l: FsBialgebroid, s: FrobeniusSystem | None = None) -> WeakBialgebra:
    """Weak bialgebra with Delta = Pi_s . gamma and eps(h) = phi(C(h)(1))."""
    if s is None:
        s = l.base
    if s.algebra != l.base.algebra:
        raise BadBase("IFS must live on the bialgebroid base algebra")
    if not verify_ifs(s).overall:
        raise BadBase("supplied system is not an IFS")
    f = l.field
    n = l.total.dim
    gs = gamma_sparse(l)
    comul = []
    for i in range(n):
        img = apply_projector(l, gs[i], s=s)
        plane = [[f.zero] * n for _ in range(n)]
        for (a, b), v in img.items():
            plane[a][b] = v
        comul.append(plane)
    runit = l.base.algebra.unit
    counit = tuple(s.phi_of(l.counit_c[i].apply(runit)) for i in range(n))
    coalg = FinDimCoalgebra.build(f, n, comul, counit)
    out = WeakBialgebra(l.total, coalg)
    rep = check_weak_bialgebra(out)
    if not rep.overall:
        raise AxiomFailure("translated structure fails the weak bialgebra axioms", rep)
    return out


def twist_weak(h: WeakBialgebra, t) -> WeakBialgebra:
    """Twist by an invertible t in H_t: Delta_psi(h) = h_(1) (x) t^-1 h_(2),
    eps_psi(h) = eps(t h).  Requires e1 t^-1 e2 = 1 for the canonical target IFS."""
    cd = counital_data(h)
    f = h.field
    n = h.dim
    t = tuple(f.normalize(x) for x in t)
    tc = cd.h_t.coords_of(t)
    if tc is None:
        raise InvalidInput("twist unit must lie in the target counital subalgebra")
    ralg = cd.ifs_t.algebra
    uc = ralg.element_inverse(tc)
    if uc is None:
        raise NotInvertible("twist unit is not invertible in H_t")
    # e1 t^-1 e2 = 1 in R
    acc_vec = [f.zero] * ralg.dim
    for (i, j), v in cd.ifs_t.e_sparse().items():
        term = ralg.product(ralg.product(ralg.basis_vector(i), uc), ralg.basis_vector(j))
        for k, x in enumerate(term):
            if x:
                acc_vec[k] = f.add(acc_vec[k], f.mul(v, x))
    if tuple(acc_vec) != ralg.unit:
        raise BadTwist("e1 t^-1 e2 != 1 for the canonical target IFS")
    tinv = cd.from_target_coords(uc)
    from .algcore import comul_table
    cmt = comul_table(h.coalgebra)
    cols_tinv = tp.left_mult_cols(h.algebra, tinv)
    comul = []
    for i in range(n):
        img = tp.apply_cols_leg(f, cols_tinv, cmt[i], 1)
        plane = [[f.zero] * n for _ in range(n)]
        for (a, b), v in img.items():
            plane[a][b] = v
        comul.append(plane)
    counit = tuple(
        h.coalgebra.counit_of(h.algebra.product(t, h.algebra.basis_vector(i)))
        for i in range(n))
    out = WeakBialgebra(h.algebra, FinDimCoalgebra.build(f, n, comul, counit))
    rep = check_weak_bialgebra(out)
    if not rep.overall:
        raise AxiomFailure("twisted structure fails the weak bialgebra axioms", rep)
    return out
