"""Finite-dimensional algebras and coalgebras by structure constants.

Conventions: for an algebra, ``mul[i][j][k]`` is the coefficient of basis
vector k in the product e_i e_j; for a coalgebra, ``comul[i][j][k]`` is the
coefficient of e_j (x) e_k in Delta(e_i).  All axiom checkers iterate every
basis tuple and report the lexicographically first failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInput
from .fields import FieldSpec, Value
from .linalg import Matrix, Subspace, SparseEchelon
from .report import CheckReport, ReportBuilder

Tensor3 = tuple[tuple[tuple[Value, ...], ...], ...]


def normalize_tensor3(field: FieldSpec, t) -> Tensor3:
    return tuple(tuple(tuple(field.normalize(x) for x in row) for row in plane) for plane in t)


def normalize_vector(field: FieldSpec, v) -> tuple[Value, ...]:
    return tuple(field.normalize(x) for x in v)


@dataclass(frozen=True)
class FinDimAlgebra:
    """Unital associative algebra given by structure constants."""

    field: FieldSpec
    dim: int
    mul: Tensor3
    unit: tuple[Value, ...]

    @classmethod
    def build(cls, field: FieldSpec, dim: int, mul, unit) -> "FinDimAlgebra":
        return cls(field, dim, normalize_tensor3(field, mul), normalize_vector(field, unit))

    def product(self, x, y) -> tuple[Value, ...]:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = f.mul(xi, yj)
                for k, m in enumerate(self.mul[i][j]):
                    if m:
                        out[k] = f.add(out[k], f.mul(c, m))
        return tuple(out)

    def left_mult(self, x) -> Matrix:
        """Matrix of y -> x y in the given basis."""
        cols = [self.product(x, _basis_vec(self.field, self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols)

    def right_mult(self, x) -> Matrix:
        cols = [self.product(_basis_vec(self.field, self.dim, j), x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mul[i][j] == self.mul[j][i] for i in range(n) for j in range(i + 1, n))

    def element_inverse(self, x) -> tuple[Value, ...] | None:
        """Two-sided inverse of x, or None."""
        from .linalg import solve_vector
        u = solve_vector(self.left_mult(x), self.unit)
        if u is None:
            return None
        if self.product(u, x) != self.unit:
            return None
        return u

    def basis_vector(self, i) -> tuple[Value, ...]:
        return _basis_vec(self.field, self.dim, i)


@dataclass(frozen=True)
class FinDimCoalgebra:
    """Coassociative counital coalgebra given by structure constants."""

    field: FieldSpec
    dim: int
    comul: Tensor3
    counit: tuple[Value, ...]

    @classmethod
    def build(cls, field: FieldSpec, dim: int, comul, counit) -> "FinDimCoalgebra":
        return cls(field, dim, normalize_tensor3(field, comul), normalize_vector(field, counit))

    def counit_of(self, x) -> Value:
        f = self.field
        acc = f.zero
        for xi, ei in zip(x, self.counit):
            if xi and ei:
                acc = f.add(acc, f.mul(xi, ei))
        return acc

    def basis_vector(self, i) -> tuple[Value, ...]:
        return _basis_vec(self.field, self.dim, i)


@dataclass(frozen=True)
class LinearMap:
    """Linear map between based spaces; matrix columns are images of source basis."""

    matrix: Matrix

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    def apply(self, vec) -> tuple[Value, ...]:
        return self.matrix.apply(vec)

    def column(self, j) -> tuple[Value, ...]:
        return self.matrix.column(j)


def _basis_vec(field: FieldSpec, n: int, i: int) -> tuple[Value, ...]:
    z = field.zero
    return tuple(field.one if j == i else z for j in range(n))


@lru_cache(maxsize=None)
def pair_table(a: FinDimAlgebra) -> tuple[tuple[dict, ...], ...]:
    """Sparse rows of the multiplication tensor: table[i][j] = {k: coeff}."""
    return tuple(
        tuple({k: v for k, v in enumerate(row) if v} for row in plane)
        for plane in a.mul
    )


@lru_cache(maxsize=None)
def comul_table(c: FinDimCoalgebra) -> tuple[dict, ...]:
    """Sparse comultiplication: table[i] = {(j, k): coeff}."""
    out = []
    for plane in c.comul:
        d = {}
        for j, row in enumerate(plane):
            for k, v in enumerate(row):
                if v:
                    d[(j, k)] = v
        out.append(d)
    return tuple(out)


@lru_cache(maxsize=None)
def check_algebra(a: FinDimAlgebra, all_witnesses: bool = False) -> CheckReport:
    """Associativity on all basis triples plus the two-sided unit law."""
    rb = ReportBuilder(a.field, all_witnesses)
    f = a.field
    n = a.dim
    table = pair_table(a)

    def assoc_failures():
        for i in range(n):
            for j in range(n):
                ij = table[i][j]
                for k in range(n):
                    diff: dict = {}
                    for m, c in ij.items():
                        _acc_sparse(f, diff, table[m][k], c)
                    jk = table[j][k]
                    for m, c in jk.items():
                        _acc_sparse(f, diff, table[i][m], f.neg(c))
                    diff = {p: v for p, v in diff.items() if v}
                    if diff:
                        yield (i, j, k), diff

    rb.check("associativity", assoc_failures())

    def unit_failures():
        for i in range(n):
            e = a.basis_vector(i)
            left = a.product(a.unit, e)
            right = a.product(e, a.unit)
            diff = {j: f.sub(x, y) for j, (x, y) in enumerate(zip(left, e)) if x != y}
            if diff:
                yield (i,), diff
                return
            diff = {j: f.sub(x, y) for j, (x, y) in enumerate(zip(right, e)) if x != y}
            if diff:
                yield (i,), diff

    rb.check("unit-law", unit_failures())
    return rb.build()


def _acc_sparse(f: FieldSpec, acc: dict, row: dict, coef: Value):
    for k, v in row.items():
        acc[k] = f.add(acc.get(k, f.zero), f.mul(coef, v))


@lru_cache(maxsize=None)
def check_coalgebra(c: FinDimCoalgebra, all_witnesses: bool = False) -> CheckReport:
    """Coassociativity and both counit laws on every basis element."""
    rb = ReportBuilder(c.field, all_witnesses)
    f = c.field
    n = c.dim
    table = comul_table(c)

    def coassoc_failures():
        for i in range(n):
            diff: dict = {}
            for (j, k), v in table[i].items():
                for (p, q), w in table[j].items():
                    key = (p, q, k)
                    diff[key] = f.add(diff.get(key, f.zero), f.mul(v, w))
                for (p, q), w in table[k].items():
                    key = (j, p, q)
                    diff[key] = f.sub(diff.get(key, f.zero), f.mul(v, w))
            diff = {p: v for p, v in diff.items() if v}
            if diff:
                yield (i,), diff

    rb.check("coassociativity", coassoc_failures())

    def counit_failures():
        for i in range(n):
            left = [f.zero] * n
            right = [f.zero] * n
            for (j, k), v in table[i].items():
                if c.counit[j]:
                    left[k] = f.add(left[k], f.mul(c.counit[j], v))
                if c.counit[k]:
                    right[j] = f.add(right[j], f.mul(c.counit[k], v))
            e = c.basis_vector(i)
            diff = {j: f.sub(x, y) for j, (x, y) in enumerate(zip(left, e)) if x != y}
            if diff:
                yield (i,), diff
                continue
            diff = {j: f.sub(x, y) for j, (x, y) in enumerate(zip(right, e)) if x != y}
            if diff:
                yield (i,), diff

    rb.check("counit-law", counit_failures())
    return rb.build()


def check_algebra_hom(fmap: LinearMap, a: FinDimAlgebra, b: FinDimAlgebra,
                      anti: bool = False, all_witnesses: bool = False) -> CheckReport:
    """f(xy) = f(x)f(y) (or f(y)f(x) when anti) on basis pairs, and f(1) = 1."""
    if fmap.source_dim != a.dim or fmap.target_dim != b.dim:
        raise InvalidInput("linear map dimensions do not match the algebras")
    a.field.require_same(b.field)
    rb = ReportBuilder(a.field, all_witnesses)
    f = a.field
    images = [fmap.column(i) for i in range(a.dim)]

    def mult_failures():
        for i in range(a.dim):
            for j in range(a.dim):
                fij = fmap.apply(a.product(a.basis_vector(i), a.basis_vector(j)))
                if anti:
                    prod = b.product(images[j], images[i])
                else:
                    prod = b.product(images[i], images[j])
                diff = {k: f.sub(x, y) for k, (x, y) in enumerate(zip(fij, prod)) if x != y}
                if diff:
                    yield (i, j), diff

    rb.check("anti-multiplicative" if anti else "multiplicative", mult_failures())

    def unit_failures():
        fu = fmap.apply(a.unit)
        diff = {k: f.sub(x, y) for k, (x, y) in enumerate(zip(fu, b.unit)) if x != y}
        if diff:
            yield (), diff

    rb.check("unit-preserved", unit_failures())
    return rb.build()


def generated_subalgebra(a: FinDimAlgebra, seeds) -> Subspace:
    """Smallest unital subalgebra containing the seed vectors (span fixpoint)."""
    f = a.field
    ech = SparseEchelon(f)
    frontier = [tuple(f.normalize(x) for x in v) for v in seeds]
    frontier.append(a.unit)
    for v in frontier:
        ech.insert({j: x for j, x in enumerate(v) if x})
    while True:
        basis = [tuple(r.get(j, f.zero) for j in range(a.dim))
                 for r in ech.canonical_rows()]
        grew = False
        for x in basis:
            for y in basis:
                p = a.product(x, y)
                if ech.insert({j: v for j, v in enumerate(p) if v}):
                    grew = True
        if not grew:
            return ech.to_subspace(a.dim)
