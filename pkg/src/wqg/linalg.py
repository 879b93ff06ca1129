"""Dense and sparse exact linear algebra over QQ and F_p.

Everything is deterministic: row echelon forms are the unique reduced ones,
solvers set free variables to zero, subspace bases are pivot-sorted RREF rows.
Dense matrices are tuples of tuples of raw field values; large tensor-space
computations use sparse vectors (dicts keyed by ints or index tuples) fed into
a :class:`SparseEchelon` accumulator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FieldMismatch, InvalidInput
from .fields import FieldSpec, Value


@dataclass(frozen=True)
class Matrix:
    """Dense matrix with exact entries, all over one field."""

    field: FieldSpec
    rows: int
    cols: int
    data: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise InvalidInput("matrix data does not match declared shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        data = tuple(tuple(field.normalize(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence]) -> "Matrix":
        return cls.from_rows(field, cols).transpose()

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple[Value, ...]:
        return self.data[i]

    def column(self, j) -> tuple[Value, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(zip(*self.data)) if self.data else tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def _same_field(self, other: "Matrix"):
        self.field.require_same(other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInput("shape mismatch in matrix addition")
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(add(a, b) for a, b in zip(ra, rb))
                            for ra, rb in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(sub(a, b) for a, b in zip(ra, rb))
                            for ra, rb in zip(self.data, other.data)))

    def scale(self, c) -> "Matrix":
        c = self.field.normalize(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(mul(c, x) for x in row) for row in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise InvalidInput("shape mismatch in matrix product")
        f = self.field
        bt = other.transpose().data
        out = []
        for ra in self.data:
            out.append(tuple(_dot(f, ra, rb) for rb in bt))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[Value]) -> tuple[Value, ...]:
        """Matrix times column coordinate vector."""
        if len(vec) != self.cols:
            raise InvalidInput("vector length does not match matrix columns")
        f = self.field
        return tuple(_dot(f, row, vec) for row in self.data)


def _dot(field: FieldSpec, a: Sequence[Value], b: Sequence[Value]) -> Value:
    acc = field.zero
    add, mul = field.add, field.mul
    for x, y in zip(a, b):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


@dataclass(frozen=True)
class RrefResult:
    rank: int
    reduced: Matrix
    pivots: tuple[int, ...]


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form, eliminating above and below each pivot."""
    f = m.field
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv_p = f.inv(rows[r][c])
        if rows[r][c] != f.one:
            rows[r] = [f.mul(inv_p, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                coef = rows[i][c]
                rows[i] = [f.sub(x, f.mul(coef, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = Matrix(f, nrows, ncols, tuple(tuple(row) for row in rows))
    return RrefResult(len(pivots), reduced, tuple(pivots))


def solve_linear(a: Matrix, b: Matrix) -> Matrix | None:
    """One exact solution x of a x = b with free variables set to zero, or None."""
    a._same_field(b)
    if a.rows != b.rows:
        raise InvalidInput("row count mismatch in solve_linear")
    f = a.field
    aug = Matrix(f, a.rows, a.cols + b.cols,
                 tuple(ra + rb for ra, rb in zip(a.data, b.data)))
    res = rref(aug)
    for p in res.pivots:
        if p >= a.cols:
            return None
    piv_of_col = {p: i for i, p in enumerate(res.pivots)}
    z = f.zero
    out = []
    for j in range(a.cols):
        if j in piv_of_col:
            out.append(res.reduced.data[piv_of_col[j]][a.cols:])
        else:
            out.append(tuple(z for _ in range(b.cols)))
    return Matrix(f, a.cols, b.cols, tuple(out))


def solve_vector(a: Matrix, b: Sequence[Value]) -> tuple[Value, ...] | None:
    x = solve_linear(a, Matrix.from_rows(a.field, [[v] for v in b]))
    return x.column(0) if x is not None else None


def kernel(a: Matrix) -> "Subspace":
    """Null space of a, as a canonical subspace of the column-coordinate space."""
    res = rref(a)
    f = a.field
    piv_of_col = {p: i for i, p in enumerate(res.pivots)}
    free = [j for j in range(a.cols) if j not in piv_of_col]
    vecs = []
    for fcol in free:
        v = [f.zero] * a.cols
        v[fcol] = f.one
        for p, i in piv_of_col.items():
            v[p] = f.neg(res.reduced.data[i][fcol])
        vecs.append(v)
    return Subspace.from_spanning(f, a.cols, vecs)


def inverse(a: Matrix) -> Matrix | None:
    if a.rows != a.cols:
        raise InvalidInput("only square matrices can be inverted")
    x = solve_linear(a, Matrix.identity(a.field, a.rows))
    if x is None:
        return None
    if (a @ x) != Matrix.identity(a.field, a.rows):
        return None
    return x


@dataclass(frozen=True)
class Subspace:
    """Subspace of k^n given by its pivot-sorted RREF basis (canonical)."""

    ambient_dim: int
    basis: Matrix  # one basis vector per row, in reduced echelon form

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for row in self.basis.data:
            for j, x in enumerate(row):
                if x:
                    out.append(j)
                    break
        return tuple(out)

    @classmethod
    def from_spanning(cls, field: FieldSpec, ambient_dim: int,
                      vectors: Iterable[Sequence[Value]]) -> "Subspace":
        ech = SparseEchelon(field)
        for v in vectors:
            ech.insert({j: field.normalize(x) for j, x in enumerate(v) if x})
        return ech.to_subspace(ambient_dim)

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(field, ambient_dim))

    def reduce(self, vec: Sequence[Value]) -> tuple[Value, ...]:
        """Residual of vec after eliminating all pivot coordinates."""
        f = self.basis.field
        v = list(vec)
        for row, p in zip(self.basis.data, self.pivots):
            c = v[p]
            if c:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[Value]) -> bool:
        return not any(self.reduce(vec))

    def coords_of(self, vec: Sequence[Value]) -> tuple[Value, ...] | None:
        """Coefficients of vec in the echelon basis, or None if not a member."""
        f = self.basis.field
        v = list(vec)
        coords = []
        for row, p in zip(self.basis.data, self.pivots):
            c = v[p]
            coords.append(c)
            if c:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def vector_from_coords(self, coords: Sequence[Value]) -> tuple[Value, ...]:
        return self.basis.transpose().apply(coords)


@dataclass(frozen=True)
class QuotientSpace:
    """k^n modulo a relation subspace, with a fixed projection/section pair.

    projection maps ambient coordinates to quotient coordinates (the free
    coordinates of the relation RREF); section sends a quotient coordinate
    vector to its canonical ambient representative.  projection @ section is
    the identity and kernel(projection) equals the relation subspace.
    """

    ambient_dim: int
    relations: Subspace
    projection: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return self.projection.rows

    def project(self, vec: Sequence[Value]) -> tuple[Value, ...]:
        return self.projection.apply(vec)

    def lift(self, qvec: Sequence[Value]) -> tuple[Value, ...]:
        return self.section.apply(qvec)


def quotient_by(field: FieldSpec, ambient_dim: int,
                relation_vectors: Iterable) -> QuotientSpace:
    """Quotient of k^ambient_dim by the span of the given relation vectors.

    Relation vectors may be dense sequences or sparse dicts {index: value}.
    """
    ech = SparseEchelon(field)
    for v in relation_vectors:
        if isinstance(v, dict):
            ech.insert(v)
        else:
            if len(v) != ambient_dim:
                raise InvalidInput("relation vector has wrong ambient dimension")
            ech.insert({j: field.normalize(x) for j, x in enumerate(v) if x})
    relations = ech.to_subspace(ambient_dim)
    return quotient_from_relations(field, ambient_dim, relations)


def quotient_from_relations(field: FieldSpec, ambient_dim: int,
                            relations: Subspace) -> QuotientSpace:
    pivots = set(relations.pivots)
    free = [j for j in range(ambient_dim) if j not in pivots]
    z, o = field.zero, field.one
    q = len(free)
    proj_rows = [[z] * ambient_dim for _ in range(q)]
    for a, fcol in enumerate(free):
        proj_rows[a][fcol] = o
    for row, p in zip(relations.basis.data, relations.pivots):
        for a, fcol in enumerate(free):
            if row[fcol]:
                proj_rows[a][p] = field.neg(row[fcol])
    sec_rows = [[z] * q for _ in range(ambient_dim)]
    for a, fcol in enumerate(free):
        sec_rows[fcol][a] = o
    projection = Matrix(field, q, ambient_dim, tuple(tuple(r) for r in proj_rows))
    section = Matrix(field, ambient_dim, q, tuple(tuple(r) for r in sec_rows))
    return QuotientSpace(ambient_dim, relations, projection, section)


class SparseEchelon:
    """Incremental row-space accumulator over sparse vectors.

    Rows are stored normalized (leading coefficient one) and keyed by their
    pivot, the smallest index in the support.  Keys may be ints or index
    tuples, as long as they are totally ordered.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.rows: dict = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of vec modulo the current row space (vec is not consumed)."""
        f = self.field
        v = {k: x for k, x in vec.items() if x}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return v
            c = v[p]
            for k, x in row.items():
                nv = f.sub(v.get(k, f.zero), f.mul(c, x))
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict) -> bool:
        """Add vec to the row space; returns True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv_c = self.field.inv(v[p])
        self.rows[p] = {k: self.field.mul(inv_c, x) for k, x in v.items()}
        return True

    def canonical_rows(self) -> list[dict]:
        """Fully back-eliminated rows in pivot order (the RREF basis)."""
        f = self.field
        out: list[dict] = []
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p])
            for done in out:
                dp = min(done)
                c = row.get(dp)
                if c:
                    for k, x in done.items():
                        nv = f.sub(row.get(k, f.zero), f.mul(c, x))
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            out.append(row)
        out.reverse()
        return out

    def to_subspace(self, ambient_dim: int, flatten=None) -> Subspace:
        """Canonical Subspace; flatten maps sparse keys to dense indices."""
        f = self.field
        z = f.zero
        rows = []
        for row in self.canonical_rows():
            dense = [z] * ambient_dim
            for k, x in row.items():
                dense[flatten(k) if flatten else k] = x
            rows.append(tuple(dense))
        basis = Matrix(f, len(rows), ambient_dim, tuple(rows))
        return Subspace(ambient_dim, basis)
