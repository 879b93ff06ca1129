"""Frobenius systems, separability idempotents and their comparison.

A Frobenius system on an algebra R is a functional phi together with an
element e = e1 (x) e2 of R (x) R satisfying the dual-basis laws
r = phi(r e1) e2 = e1 phi(e2 r).  When additionally nabla(e) = 1 the pair is
an idempotent Frobenius system (IFS) and e is a separability element.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import tensorops as tp
from .algcore import FinDimAlgebra, check_algebra_hom, LinearMap
from .errors import (AxiomFailure, BadNormalization, InvalidInput, NonInvertibleT,
                     NotCommutative, NotFrobenius, NotSeparable, Singular)
from .fields import FieldSpec, Value
from .linalg import Matrix, inverse, solve_vector
from .report import CheckReport, ReportBuilder


@dataclass(frozen=True)
class FrobeniusSystem:
    """Pair (phi, e) on a fixed algebra; e stored as its coefficient grid."""

    algebra: FinDimAlgebra
    phi: tuple[Value, ...]
    e: Matrix  # e = sum e[i][j] b_i (x) b_j

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.phi) != n or self.e.rows != n or self.e.cols != n:
            raise InvalidInput("phi/e dimensions do not match the algebra")
        self.algebra.field.require_same(self.e.field)

    def phi_of(self, x) -> Value:
        f = self.algebra.field
        acc = f.zero
        for xi, pi in zip(x, self.phi):
            if xi and pi:
                acc = f.add(acc, f.mul(xi, pi))
        return acc

    def e_sparse(self) -> dict:
        return {(i, j): v for i, row in enumerate(self.e.data)
                for j, v in enumerate(row) if v}

    def nabla_e(self) -> tuple[Value, ...]:
        f = self.algebra.field
        out = [f.zero] * self.algebra.dim
        for (i, j), v in self.e_sparse().items():
            prod = self.algebra.mul[i][j]
            for k, m in enumerate(prod):
                if m:
                    out[k] = f.add(out[k], f.mul(v, m))
        return tuple(out)

    def flip_e(self) -> Matrix:
        return self.e.transpose()


def gram_matrix(s: FrobeniusSystem) -> Matrix:
    """G[i][j] = phi(b_i b_j)."""
    a = s.algebra
    rows = [[s.phi_of(a.product(a.basis_vector(i), a.basis_vector(j)))
             for j in range(a.dim)] for i in range(a.dim)]
    return Matrix.from_rows(a.field, rows)


def verify_frobenius_system(s: FrobeniusSystem, all_witnesses: bool = False) -> CheckReport:
    """Dual-basis laws on every basis element, plus the derived Casimir law."""
    a = s.algebra
    f = a.field
    rb = ReportBuilder(f, all_witnesses)
    g = gram_matrix(s)
    ge = g @ s.e
    eg = s.e @ g
    ident = Matrix.identity(f, a.dim)

    def law_failures(m):
        for r in range(a.dim):
            diff = {j: f.sub(x, y) for j, (x, y) in enumerate(zip(m.data[r], ident.data[r]))
                    if x != y}
            if diff:
                yield (r,), diff

    rb.check("dual-basis-left", law_failures(ge))
    rb.check("dual-basis-right", law_failures(eg))

    es = s.e_sparse()

    def casimir_failures():
        for x in range(a.dim):
            cols_l = tp.left_mult_cols(a, a.basis_vector(x))
            cols_r = tp.right_mult_cols(a, a.basis_vector(x))
            lhs = tp.apply_cols_leg(f, cols_l, es, 0)
            rhs = tp.apply_cols_leg(f, cols_r, es, 1)
            diff = tp.sub(f, lhs, rhs)
            if diff:
                yield (x,), diff

    rb.check("casimir", casimir_failures())
    return rb.build()


def verify_ifs(s: FrobeniusSystem, all_witnesses: bool = False) -> CheckReport:
    """Frobenius laws plus nabla(e) = 1."""
    base = verify_frobenius_system(s, all_witnesses)
    f = s.algebra.field
    rb = ReportBuilder(f, all_witnesses)
    rb.extend(base)

    def nabla_failures():
        nab = s.nabla_e()
        diff = {k: f.sub(x, y) for k, (x, y) in enumerate(zip(nab, s.algebra.unit))
                if x != y}
        if diff:
            yield (), diff

    rb.check("nabla-one", nabla_failures())
    return rb.build()


def frobenius_automorphism(s: FrobeniusSystem) -> Matrix:
    """The algebra automorphism theta with phi(x y) = phi(y theta(x))."""
    if not verify_frobenius_system(s).overall:
        raise NotFrobenius("dual-basis laws fail; no Frobenius automorphism")
    a = s.algebra
    g = gram_matrix(s)
    ginv = inverse(g)
    if ginv is None:
        raise NotFrobenius("Frobenius form is degenerate")
    theta = ginv @ g.transpose()
    hom = check_algebra_hom(LinearMap(theta), a, a)
    es = s.e_sparse()
    f = a.field
    ok = hom.overall and inverse(theta) is not None
    for x in range(a.dim):
        # characterization: (1 (x) x) e = e (theta(x) (x) 1)
        lhs = tp.apply_cols_leg(f, tp.left_mult_cols(a, a.basis_vector(x)), es, 1)
        rhs = tp.apply_cols_leg(f, tp.right_mult_cols(a, theta.column(x)), es, 0)
        if tp.sub(f, lhs, rhs):
            ok = False
            break
    if not ok:
        raise AxiomFailure("theta fails its characterizing identities", hom)
    return theta


def compare_frobenius_systems(s: FrobeniusSystem, s2: FrobeniusSystem) -> tuple[Value, ...]:
    """The invertible unit t with s2.phi = s.phi(t .) and s2.e = (1 (x) t^-1) s.e."""
    if s.algebra != s2.algebra:
        raise InvalidInput("systems live on different algebras")
    if not verify_frobenius_system(s).overall or not verify_frobenius_system(s2).overall:
        raise NotFrobenius("both inputs must verify as Frobenius systems")
    a = s.algebra
    f = a.field
    t = [f.zero] * a.dim
    for (i, j), v in s.e_sparse().items():
        if s2.phi[i]:
            t[j] = f.add(t[j], f.mul(v, s2.phi[i]))
    t = tuple(t)
    tinv = a.element_inverse(t)
    if tinv is None:
        raise NonInvertibleT("comparison unit is not invertible")
    for j in range(a.dim):
        if s.phi_of(a.product(t, a.basis_vector(j))) != s2.phi[j]:
            raise AxiomFailure("psi(x) = phi(t x) failed; systems inconsistent")
    ftwist = tp.apply_cols_leg(f, tp.left_mult_cols(a, tinv), s.e_sparse(), 1)
    if ftwist != s2.e_sparse():
        raise AxiomFailure("f = (1 (x) t^-1) e failed; systems inconsistent")
    if verify_ifs(s).overall and verify_ifs(s2).overall:
        mid = tuple(a.product(a.product(a.basis_vector(i), tinv), a.basis_vector(j))
                    for i in range(a.dim) for j in range(a.dim))
        total = [f.zero] * a.dim
        for (i, j), v in s.e_sparse().items():
            for k, x in enumerate(mid[i * a.dim + j]):
                if x:
                    total[k] = f.add(total[k], f.mul(v, x))
        if tuple(total) != a.unit:
            raise AxiomFailure("e1 t^-1 e2 = 1 failed for two IFSs")
    return t


def twist_system(s: FrobeniusSystem, t) -> FrobeniusSystem:
    """New system (phi(t .), (1 (x) t^-1) e) for an invertible t."""
    a = s.algebra
    f = a.field
    t = tuple(f.normalize(x) for x in t)
    tinv = a.element_inverse(t)
    if tinv is None:
        raise NonInvertibleT("twist unit is not invertible")
    phi = tuple(s.phi_of(a.product(t, a.basis_vector(j))) for j in range(a.dim))
    cols = tp.left_mult_cols(a, tinv)
    e2 = tp.apply_cols_leg(f, cols, s.e_sparse(), 1)
    grid = [[f.zero] * a.dim for _ in range(a.dim)]
    for (i, j), v in e2.items():
        grid[i][j] = v
    return FrobeniusSystem(a, phi, Matrix.from_rows(f, grid))


def trace_ifs_commutative(r: FinDimAlgebra) -> FrobeniusSystem:
    """Trace-functional IFS of a commutative separable algebra.

    phi is the trace of left multiplication; e is solved from the linear
    system made of the Casimir, nabla(e) = 1 and both dual-basis families
    (free variables pinned to zero, so the output is deterministic).
    """
    if not r.is_commutative():
        raise NotCommutative("trace construction requires a commutative algebra")
    f = r.field
    n = r.dim
    phi = tuple(
        _sum(f, (r.mul[i][j][j] for j in range(n))) for i in range(n)
    )
    gram = [[_sum(f, (f.mul(r.mul[i][j][k], phi[k]) for k in range(n) if r.mul[i][j][k]))
             for j in range(n)] for i in range(n)]
    rows: list[list[Value]] = []
    rhs: list[Value] = []

    def var(i, j):
        return i * n + j

    # Casimir: (b_a (x) 1) e - e (1 (x) b_a) = 0
    for a_ in range(n):
        for k in range(n):
            for l in range(n):
                row = [f.zero] * (n * n)
                for i in range(n):
                    if r.mul[a_][i][k]:
                        row[var(i, l)] = f.add(row[var(i, l)], r.mul[a_][i][k])
                for j in range(n):
                    if r.mul[j][a_][l]:
                        row[var(k, j)] = f.sub(row[var(k, j)], r.mul[j][a_][l])
                if any(row):
                    rows.append(row)
                    rhs.append(f.zero)
    # nabla(e) = 1
    for k in range(n):
        row = [f.zero] * (n * n)
        for i in range(n):
            for j in range(n):
                if r.mul[i][j][k]:
                    row[var(i, j)] = f.add(row[var(i, j)], r.mul[i][j][k])
        rows.append(row)
        rhs.append(r.unit[k])
    # dual-basis laws with the trace functional
    one = Matrix.identity(f, n)
    for a_ in range(n):
        for j in range(n):
            row = [f.zero] * (n * n)
            for i in range(n):
                if gram[a_][i]:
                    row[var(i, j)] = gram[a_][i]
            rows.append(row)
            rhs.append(one.data[a_][j])
    for i in range(n):
        for a_ in range(n):
            row = [f.zero] * (n * n)
            for j in range(n):
                if gram[j][a_]:
                    row[var(i, j)] = gram[j][a_]
            rows.append(row)
            rhs.append(one.data[i][a_])

    sol = solve_vector(Matrix.from_rows(f, rows), rhs)
    if sol is None:
        raise NotSeparable("no separability element compatible with the trace functional")
    e = Matrix.from_rows(f, [[sol[var(i, j)] for j in range(n)] for i in range(n)])
    system = FrobeniusSystem(r, phi, e)
    rep = verify_ifs(system)
    if not rep.overall:
        raise NotSeparable("candidate system failed verification")
    return system


def matrix_algebra(n: int, field: FieldSpec) -> FinDimAlgebra:
    """Full matrix algebra M_n with basis e_ij ordered row-major."""
    z, o = field.zero, field.one
    dim = n * n
    mul = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        mul[i * n + j][k * n + l][i * n + l] = o
    unit = [z] * dim
    for i in range(n):
        unit[i * n + i] = o
    return FinDimAlgebra.build(field, dim, mul, unit)


def matrix_ifs(n: int, u: Matrix, field: FieldSpec) -> FrobeniusSystem:
    """Candidate IFS (tr(u .), sum e_ij (x) u^-1 e_ji) on M_n; verified before returning."""
    field.require_same(u.field)
    if u.rows != n or u.cols != n:
        raise InvalidInput(f"u must be {n}x{n}")
    uinv = inverse(u)
    if uinv is None:
        raise Singular("u is not invertible")
    f = field
    tr_uinv = _sum(f, (uinv.data[i][i] for i in range(n)))
    if tr_uinv != f.one:
        raise BadNormalization(f"tr(u^-1) = {f.format(tr_uinv)} != 1")
    alg = matrix_algebra(n, field)
    phi = tuple(u.data[j][i] for i in range(n) for j in range(n))
    dim = n * n
    grid = [[f.zero] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for a_ in range(n):
                if uinv.data[a_][j]:
                    grid[i * n + j][a_ * n + i] = uinv.data[a_][j]
    system = FrobeniusSystem(alg, phi, Matrix.from_rows(f, grid))
    rep = verify_ifs(system)
    if not rep.overall:
        raise AxiomFailure("matrix IFS candidate failed verification", rep)
    return system


def find_ifs(r: FinDimAlgebra, max_candidates: int = 64) -> FrobeniusSystem | None:
    """Heuristic IFS search: solve the affine space of separability elements,
    then solve linearly for phi on deterministically sampled candidates.

    Not a completeness guarantee; the bilinear system is only probed on the
    canonical particular solution and small integer perturbations along the
    solution space.
    """
    f = r.field
    n = r.dim

    def var(i, j):
        return i * n + j

    rows: list[list[Value]] = []
    rhs: list[Value] = []
    for a_ in range(n):
        for k in range(n):
            for l in range(n):
                row = [f.zero] * (n * n)
                for i in range(n):
                    if r.mul[a_][i][k]:
                        row[var(i, l)] = f.add(row[var(i, l)], r.mul[a_][i][k])
                for j in range(n):
                    if r.mul[j][a_][l]:
                        row[var(k, j)] = f.sub(row[var(k, j)], r.mul[j][a_][l])
                if any(row):
                    rows.append(row)
                    rhs.append(f.zero)
    for k in range(n):
        row = [f.zero] * (n * n)
        for i in range(n):
            for j in range(n):
                if r.mul[i][j][k]:
                    row[var(i, j)] = f.add(row[var(i, j)], r.mul[i][j][k])
        rows.append(row)
        rhs.append(r.unit[k])
    coeffs = Matrix.from_rows(f, rows)
    particular = solve_vector(coeffs, rhs)
    if particular is None:
        return None
    from .linalg import kernel
    null = kernel(coeffs)
    candidates = [particular]
    for b in range(null.dim):
        for c in (1, -1, 2, -2):
            vec = tuple(f.add(x, f.mul(f.from_int(c), y))
                        for x, y in zip(particular, null.basis.data[b]))
            candidates.append(vec)
            if len(candidates) >= max_candidates:
                break
        if len(candidates) >= max_candidates:
            break
    for evec in candidates:
        e = Matrix.from_rows(f, [[evec[var(i, j)] for j in range(n)] for i in range(n)])
        phi = _solve_phi_for_e(r, e)
        if phi is None:
            continue
        system = FrobeniusSystem(r, phi, e)
        if verify_ifs(system).overall:
            return system
    return None


def _solve_phi_for_e(r: FinDimAlgebra, e: Matrix) -> tuple[Value, ...] | None:
    f = r.field
    n = r.dim
    rows = []
    rhs = []
    one = Matrix.identity(f, n)
    for a_ in range(n):
        for j in range(n):
            row = [f.zero] * n
            for k in range(n):
                coef = f.zero
                for i in range(n):
                    if e.data[i][j] and r.mul[a_][i][k]:
                        coef = f.add(coef, f.mul(e.data[i][j], r.mul[a_][i][k]))
                row[k] = coef
            rows.append(row)
            rhs.append(one.data[a_][j])
    for i in range(n):
        for a_ in range(n):
            row = [f.zero] * n
            for k in range(n):
                coef = f.zero
                for j in range(n):
                    if e.data[i][j] and r.mul[j][a_][k]:
                        coef = f.add(coef, f.mul(e.data[i][j], r.mul[j][a_][k]))
                row[k] = coef
            rows.append(row)
            rhs.append(one.data[i][a_])
    return solve_vector(Matrix.from_rows(f, rows), rhs)


def _sum(f: FieldSpec, items) -> Value:
    acc = f.zero
    for x in items:
        acc = f.add(acc, x)
    return acc
