"""Antipodes: verification, construction through the canonical map, criteria.

The canonical map sends g (x) h to g_(1) (x) g_(2) h, from the quotient of
H (x) H by the balancing relations g y (x) h - g (x) y h (y in H_s) onto the
subspace Delta(1)(H (x) H).  It is bijective exactly when H has an antipode,
in which case S(h) = pi(beta^-1(1_(1) h (x) 1_(2))) with pi(g (x) h) = eps_s(g) h.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import tensorops as tp
from .bialgebroid import FsBialgebroid, check_bialgebroid, gamma_sparse, apply_projector
from .errors import AxiomFailure, IllDefined, InvalidInput
from .fields import RATIONAL, Value
from .linalg import (Matrix, Subspace, QuotientSpace, inverse, kernel, quotient_by, rref,
                     solve_linear)
from .report import CheckReport, ReportBuilder
from .weakcore import WeakBialgebra, check_weak_bialgebra, counital_data, delta1
from .algcore import comul_table


def verify_antipode(h: WeakBialgebra, s: Matrix, all_witnesses: bool = False) -> CheckReport:
    """The three antipode axioms plus the derived anti-homomorphism, unit and
    absorption identities, checked on every basis element/pair."""
    f = h.field
    n = h.dim
    alg = h.algebra
    cd = counital_data(h)
    cmt = comul_table(h.coalgebra)
    rb = ReportBuilder(f, all_witnesses)
    s_cols = [s.column(i) for i in range(n)]

    def convolve(i, left_s: bool):
        # left_s: S(h_(1)) h_(2); else h_(1) S(h_(2))
        out = [f.zero] * n
        for (a, b), v in cmt[i].items():
            term = alg.product(s_cols[a], alg.basis_vector(b)) if left_s else \
                alg.product(alg.basis_vector(a), s_cols[b])
            for k, x in enumerate(term):
                if x:
                    out[k] = f.add(out[k], f.mul(v, x))
        return out

    def ax1_failures():
        for i in range(n):
            got = convolve(i, True)
            want = cd.eps_s.column(i)
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(got, want)) if a != b}
            if diff:
                yield (i,), diff

    rb.check("antipode-source", ax1_failures())

    def ax2_failures():
        for i in range(n):
            got = convolve(i, False)
            want = cd.eps_t.column(i)
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(got, want)) if a != b}
            if diff:
                yield (i,), diff

    rb.check("antipode-target", ax2_failures())

    def sweedler3(i):
        out: dict = {}
        for (a, b), v in cmt[i].items():
            for (p, q), w in cmt[a].items():
                out[(p, q, b)] = f.add(out.get((p, q, b), f.zero), f.mul(v, w))
        return out

    def ax3_failures():
        for i in range(n):
            out = [f.zero] * n
            for (a, b, c), v in sweedler3(i).items():
                term = alg.product(alg.product(s_cols[a], alg.basis_vector(b)), s_cols[c])
                for k, x in enumerate(term):
                    if x:
                        out[k] = f.add(out[k], f.mul(v, x))
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(out, s_cols[i])) if a != b}
            if diff:
                yield (i,), diff

    rb.check("antipode-middle", ax3_failures())

    def antihom_failures():
        for i in range(n):
            for j in range(n):
                lhs = s.apply(alg.product(alg.basis_vector(i), alg.basis_vector(j)))
                rhs = alg.product(s_cols[j], s_cols[i])
                diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b}
                if diff:
                    yield (i, j), diff

    rb.check("antipode-anti-multiplicative", antihom_failures())

    def unit_failures():
        got = s.apply(alg.unit)
        diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(got, alg.unit)) if a != b}
        if diff:
            yield (), diff

    rb.check("antipode-unit", unit_failures())

    def absorb_failures(use_target: bool):
        for i in range(n):
            out = [f.zero] * n
            for (a, b), v in cmt[i].items():
                if use_target:
                    term = alg.product(s_cols[a], cd.eps_t.column(b))
                else:
                    term = alg.product(cd.eps_s.column(a), s_cols[b])
                for k, x in enumerate(term):
                    if x:
                        out[k] = f.add(out[k], f.mul(v, x))
            diff = {k: f.sub(a, b) for k, (a, b) in enumerate(zip(out, s_cols[i])) if a != b}
            if diff:
                yield (i,), diff

    rb.check("antipode-absorb-target", absorb_failures(True))
    rb.check("antipode-absorb-source", absorb_failures(False))
    return rb.build()


@dataclass(frozen=True)
class BetaData:
    """The canonical map from H (x)_{H_s} H onto Delta(1)(H (x) H)."""

    domain: QuotientSpace
    codomain: Subspace
    matrix: Matrix
    bijective: bool


def _hs_balancing(h: WeakBialgebra, balancers: Subspace):
    """Generators g y (x) h' - g (x) y h' for y running over a subspace basis."""
    f = h.field
    alg = h.algebra
    n = h.dim
    for b in range(balancers.dim):
        y = tuple(balancers.basis.row(b))
        rcols = tp.right_mult_cols(alg, y)
        lcols = tp.left_mult_cols(alg, y)
        for g in range(n):
            for hh in range(n):
                gen: dict = {}
                for k, x in rcols[g].items():
                    gen[k * n + hh] = x
                for k, x in lcols[hh].items():
                    gen[g * n + k] = f.sub(gen.get(g * n + k, f.zero), x)
                gen = {k: x for k, x in gen.items() if x}
                if gen:
                    yield gen


def _beta0_image(h: WeakBialgebra, vec) -> dict:
    """beta_0 of a dense vector in H (x) H (flattened): g (x) h -> g_(1) (x) g_(2) h."""
    f = h.field
    n = h.dim
    alg = h.algebra
    cmt = comul_table(h.coalgebra)
    out: dict = {}
    for idx, v in enumerate(vec):
        if not v:
            continue
        g, hh = divmod(idx, n)
        for (a, b), w in cmt[g].items():
            prod = alg.product(alg.basis_vector(b), alg.basis_vector(hh))
            tp.acc(f, out, {(a, k): x for k, x in enumerate(prod) if x}, f.mul(v, w))
    return out


def delta1_image(h: WeakBialgebra) -> Subspace:
    """The subspace Delta(1)(H (x) H)."""
    f = h.field
    n = h.dim
    d1 = dict(delta1(h))
    cols = []
    for g in range(n):
        for hh in range(n):
            img = tp.tensor_mul(h.algebra, d1, {(g, hh): f.one})
            cols.append(tp.to_dense(f, img, (n, n)))
    return Subspace.from_spanning(f, n * n, cols)


def beta_map(h: WeakBialgebra) -> BetaData:
    """Induce beta on the quotient by H_s-balancing and test bijectivity."""
    if not check_weak_bialgebra(h).overall:
        raise InvalidInput("not a weak bialgebra")
    cd = counital_data(h)
    f = h.field
    n = h.dim
    domain = quotient_by(f, n * n, _hs_balancing(h, cd.h_s))
    codomain = delta1_image(h)
    for i in range(domain.relations.dim):
        img = _beta0_image(h, domain.relations.basis.row(i))
        if img:
            raise IllDefined("beta_0 does not kill an H_s-balancing relation")
    cols = []
    for j in range(domain.dim):
        rep = domain.lift([f.one if k == j else f.zero for k in range(domain.dim)])
        img = tp.to_dense(f, _beta0_image(h, rep), (n, n))
        coords = codomain.coords_of(img)
        if coords is None:
            raise IllDefined("beta image left Delta(1)(H (x) H)")
        cols.append(coords)
    matrix = Matrix.from_columns(f, cols) if cols else Matrix.zeros(f, codomain.dim, 0)
    bijective = domain.dim == codomain.dim and rref(matrix).rank == codomain.dim
    return BetaData(domain, codomain, matrix, bijective)


@dataclass(frozen=True)
class NotHopf:
    """Bijectivity failure witness for the canonical map."""

    domain_dim: int
    codomain_dim: int
    rank: int


def solve_antipode(h: WeakBialgebra) -> Matrix | NotHopf:
    """S(h) = pi(beta^-1(1_(1) h (x) 1_(2))) when beta is bijective, else NotHopf."""
    bd = beta_map(h)
    if not bd.bijective:
        return NotHopf(bd.domain.dim, bd.codomain.dim, rref(bd.matrix).rank)
    cd = counital_data(h)
    f = h.field
    n = h.dim
    alg = h.algebra

    def pi_of(vec) -> tuple:
        out = [f.zero] * n
        for idx, v in enumerate(vec):
            if not v:
                continue
            g, hh = divmod(idx, n)
            term = alg.product(cd.eps_s.column(g), alg.basis_vector(hh))
            for k, x in enumerate(term):
                if x:
                    out[k] = f.add(out[k], f.mul(v, x))
        return tuple(out)

    for i in range(bd.domain.relations.dim):
        if any(pi_of(bd.domain.relations.basis.row(i))):
            raise IllDefined("pi does not kill an H_s-balancing relation")

    binv = inverse(bd.matrix)
    if binv is None:
        raise AxiomFailure("beta reported bijective but is not invertible")
    d1 = dict(delta1(h))
    cols = []
    for i in range(n):
        rcols = tp.right_mult_cols(alg, alg.basis_vector(i))
        v = tp.apply_cols_leg(f, rcols, d1, 0)  # 1_(1) h (x) 1_(2)
        coords = bd.codomain.coords_of(tp.to_dense(f, v, (n, n)))
        if coords is None:
            raise AxiomFailure("1_(1) h (x) 1_(2) left the codomain")
        w = binv.apply(coords)
        cols.append(pi_of(bd.domain.lift(w)))
    s = Matrix.from_columns(f, cols)
    rep = verify_antipode(h, s)
    if not rep.overall:
        raise AxiomFailure("constructed antipode failed verification", rep)
    return s


def check_tak_hopf(l: FsBialgebroid) -> bool:
    """Bijectivity of g (x) h -> g^(1) (x) g^(2) h from the tgt-balanced square
    onto the image of the separability projector."""
    if not check_bialgebroid(l).overall:
        raise InvalidInput("not a bialgebroid")
    f = l.field
    n = l.total.dim
    rdim = l.base.algebra.dim
    alg = l.total

    def relations():
        for rr in range(rdim):
            y = tuple(l.tgt.column(rr))
            rcols = tp.right_mult_cols(alg, y)
            lcols = tp.left_mult_cols(alg, y)
            for g in range(n):
                for hh in range(n):
                    gen: dict = {}
                    for k, x in rcols[g].items():
                        gen[k * n + hh] = x
                    for k, x in lcols[hh].items():
                        gen[g * n + k] = f.sub(gen.get(g * n + k, f.zero), x)
                    gen = {k: x for k, x in gen.items() if x}
                    if gen:
                        yield gen

    domain = quotient_by(f, n * n, relations())
    gs = gamma_sparse(l)
    cols_img = []
    for g in range(n):
        for hh in range(n):
            v = apply_projector(l, {(g, hh): f.one})
            cols_img.append(tp.to_dense(f, v, (n, n)))
    codomain = Subspace.from_spanning(f, n * n, cols_img)

    def canonical_image(vec) -> dict:
        out: dict = {}
        for idx, v in enumerate(vec):
            if not v:
                continue
            g, hh = divmod(idx, n)
            rcols = tp.right_mult_cols(alg, alg.basis_vector(hh))
            tp.acc(f, out, tp.apply_cols_leg(f, rcols, gs[g], 1), v)
        return apply_projector(l, out)

    for i in range(domain.relations.dim):
        if canonical_image(domain.relations.basis.row(i)):
            raise AxiomFailure("canonical map does not kill a balancing relation")
    cols = []
    for j in range(domain.dim):
        rep = domain.lift([f.one if k == j else f.zero for k in range(domain.dim)])
        img = tp.to_dense(f, canonical_image(rep), (n, n))
        coords = codomain.coords_of(img)
        if coords is None:
            raise AxiomFailure("canonical image left the projector image")
        cols.append(coords)
    matrix = Matrix.from_columns(f, cols) if cols else Matrix.zeros(f, codomain.dim, 0)
    return domain.dim == codomain.dim and rref(matrix).rank == codomain.dim


def intertwiner_search(field, act1: list[Matrix], act2: list[Matrix],
                       dim: int) -> tuple[bool | None, Matrix | None]:
    """Invertible F with F act1[y] = act2[y] F, by deterministic sampling.

    Over the rationals: kernel basis elements first, then 0/1 combinations
    (small spaces), then coefficients in -2..2, then seeded integer combos.
    Over F_p the space is exhausted when it has at most p^4 elements; larger
    spaces return None (undecided) when no sampled candidate is invertible.
    """
    f = field
    m2 = dim * dim
    rows = []
    for a1, a2 in zip(act1, act2):
        # F a1 - a2 F = 0, unknowns F[p][q] flattened p*dim+q
        for i in range(dim):
            for j in range(dim):
                row = [f.zero] * m2
                for q in range(dim):
                    if a1.data[q][j]:
                        row[i * dim + q] = f.add(row[i * dim + q], a1.data[q][j])
                for p in range(dim):
                    if a2.data[i][p]:
                        row[p * dim + j] = f.sub(row[p * dim + j], a2.data[i][p])
                if any(row):
                    rows.append(row)
    if rows:
        space = kernel(Matrix.from_rows(f, rows))
    else:
        space = Subspace.full(f, m2)
    k = space.dim
    if k == 0:
        return False, None

    def as_matrix(vec) -> Matrix:
        return Matrix.from_rows(f, [[vec[p * dim + q] for q in range(dim)]
                                    for p in range(dim)])

    def try_combos(combos) -> Matrix | None:
        for coeffs in combos:
            vec = [f.zero] * m2
            for c, row in zip(coeffs, space.basis.data):
                if c:
                    cc = f.from_int(c) if isinstance(c, int) else c
                    for idx, x in enumerate(row):
                        if x:
                            vec[idx] = f.add(vec[idx], f.mul(cc, x))
            cand = as_matrix(vec)
            if inverse(cand) is not None:
                return cand
        return None

    basis_combos = [[1 if i == b else 0 for i in range(k)] for b in range(k)]
    found = try_combos(basis_combos)
    if found is not None:
        return True, found
    if f.kind == RATIONAL:
        if k <= 4:
            found = try_combos(itertools.product(range(-2, 3), repeat=k))
        elif k <= 14:
            found = try_combos(itertools.product((0, 1), repeat=k))
        if found is None:
            # seeded deterministic integer combinations
            seq = []
            state = 1
            for trial in range(200):
                coeffs = []
                for _ in range(k):
                    state = (state * 48271) % 2147483647
                    coeffs.append(state % 7 - 3)
                seq.append(coeffs)
            found = try_combos(seq)
        return (True, found) if found is not None else (False, None)
    # prime field
    p = f.p
    if p ** k <= p ** 4:
        found = try_combos(itertools.product(range(p), repeat=k))
        return (True, found) if found is not None else (False, None)
    if k <= 14:
        found = try_combos(itertools.product((0, 1), repeat=k))
        if found is not None:
            return True, found
    return None, None


def sub_quotient_hopf_criterion(b: WeakBialgebra) -> tuple[bool | None, Matrix | None]:
    """Is right multiplication by B_s isomorphic to the eps_t-twisted action?

    Decides whether the two right B_s-module structures on B, x . y = x y and
    x . y = eps_t(y) x, admit an invertible intertwiner.  Interpreting a True
    answer as "B is a weak Hopf algebra" is valid only when B is a sub- or
    quotient weak bialgebra of a weak Hopf algebra, which is the caller's
    responsibility to know.
    """
    if not check_weak_bialgebra(b).overall:
        raise InvalidInput("not a weak bialgebra")
    cd = counital_data(b)
    alg = b.algebra
    act1 = []
    act2 = []
    for i in range(cd.h_s.dim):
        y = tuple(cd.h_s.basis.row(i))
        act1.append(alg.right_mult(y))
        act2.append(alg.left_mult(tuple(cd.eps_t.apply(y))))
    return intertwiner_search(b.field, act1, act2, b.dim)
