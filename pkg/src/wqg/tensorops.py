"""Sparse vectors in tensor powers of a based space.

A vector in H^(x k) is a dict mapping length-k index tuples to nonzero raw
field values.  These helpers keep the heavy axiom checks (which live in
spaces of dimension up to dim(H)^3) close to the sparsity of the structure
constants.
"""

from __future__ import annotations

from functools import lru_cache

from .algcore import FinDimAlgebra, FinDimCoalgebra, comul_table, pair_table
from .fields import FieldSpec, Value
from .linalg import Matrix


def acc(field: FieldSpec, target: dict, source: dict, coef: Value) -> None:
    """target += coef * source, dropping zeros."""
    if not coef:
        return
    add, mul, zero = field.add, field.mul, field.zero
    for k, v in source.items():
        nv = add(target.get(k, zero), mul(coef, v))
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def sub(field: FieldSpec, a: dict, b: dict) -> dict:
    out = dict(a)
    acc(field, out, b, field.neg(field.one))
    return out


def kron(field: FieldSpec, v: dict, w: dict) -> dict:
    out: dict = {}
    mul = field.mul
    for ka, va in v.items():
        for kb, vb in w.items():
            out[ka + kb] = mul(va, vb)
    return out


def from_dense(vec) -> dict:
    return {(i,): x for i, x in enumerate(vec) if x}


def to_dense(field: FieldSpec, v: dict, dims: tuple[int, ...]) -> tuple[Value, ...]:
    out = [field.zero] * _size(dims)
    for key, val in v.items():
        out[flatten(key, dims)] = val
    return tuple(out)


def flatten(key: tuple[int, ...], dims: tuple[int, ...]) -> int:
    idx = 0
    for k, d in zip(key, dims):
        idx = idx * d + k
    return idx


def unflatten(idx: int, dims: tuple[int, ...]) -> tuple[int, ...]:
    key = []
    for d in reversed(dims):
        key.append(idx % d)
        idx //= d
    return tuple(reversed(key))


def _size(dims) -> int:
    n = 1
    for d in dims:
        n *= d
    return n


def tensor_mul(alg: FinDimAlgebra, v: dict, w: dict) -> dict:
    """Componentwise product of two vectors in H^(x k) for the algebra H."""
    f = alg.field
    table = pair_table(alg)
    out: dict = {}
    for ka, va in v.items():
        for kb, vb in w.items():
            c = f.mul(va, vb)
            term = None
            for i, j in zip(ka, kb):
                row = table[i][j]
                if not row:
                    term = {}
                    break
                term = {(k,): x for k, x in row.items()} if term is None else \
                    {pk + (k,): f.mul(pv, x) for pk, pv in term.items() for k, x in row.items()}
            if term:
                acc(f, out, term, c)
    return out


@lru_cache(maxsize=None)
def left_mult_cols(alg: FinDimAlgebra, x: tuple) -> tuple[dict, ...]:
    """Sparse columns of left multiplication by the fixed element x."""
    f = alg.field
    table = pair_table(alg)
    cols = []
    for j in range(alg.dim):
        col: dict = {}
        for i, xi in enumerate(x):
            if xi:
                for k, v in table[i][j].items():
                    col[k] = f.add(col.get(k, f.zero), f.mul(xi, v))
        cols.append({k: v for k, v in col.items() if v})
    return tuple(cols)


@lru_cache(maxsize=None)
def right_mult_cols(alg: FinDimAlgebra, x: tuple) -> tuple[dict, ...]:
    """Sparse columns of right multiplication by the fixed element x."""
    f = alg.field
    table = pair_table(alg)
    cols = []
    for j in range(alg.dim):
        col: dict = {}
        for i, xi in enumerate(x):
            if xi:
                for k, v in table[j][i].items():
                    col[k] = f.add(col.get(k, f.zero), f.mul(xi, v))
        cols.append({k: v for k, v in col.items() if v})
    return tuple(cols)


@lru_cache(maxsize=None)
def matrix_cols_sparse(m: Matrix) -> tuple[dict, ...]:
    return tuple(
        {i: m.data[i][j] for i in range(m.rows) if m.data[i][j]}
        for j in range(m.cols)
    )


def apply_cols_leg(field: FieldSpec, cols, v: dict, leg: int) -> dict:
    """Apply a linear map (given by sparse columns) to one tensor leg."""
    out: dict = {}
    add, mul, zero = field.add, field.mul, field.zero
    for key, val in v.items():
        for k, c in cols[key[leg]].items():
            nk = key[:leg] + (k,) + key[leg + 1:]
            nv = add(out.get(nk, zero), mul(val, c))
            if nv:
                out[nk] = nv
            else:
                out.pop(nk, None)
    return out


def comul_leg(coalg: FinDimCoalgebra, v: dict, leg: int) -> dict:
    """Apply the comultiplication to one leg; keys grow by one position."""
    f = coalg.field
    table = comul_table(coalg)
    out: dict = {}
    for key, val in v.items():
        for (j, k), c in table[key[leg]].items():
            nk = key[:leg] + (j, k) + key[leg + 1:]
            nv = f.add(out.get(nk, f.zero), f.mul(val, c))
            if nv:
                out[nk] = nv
            else:
                out.pop(nk, None)
    return out


def counit_leg(coalg: FinDimCoalgebra, v: dict, leg: int) -> dict:
    """Contract one leg with the counit; keys shrink by one position."""
    f = coalg.field
    eps = coalg.counit
    out: dict = {}
    for key, val in v.items():
        e = eps[key[leg]]
        if not e:
            continue
        nk = key[:leg] + key[leg + 1:]
        nv = f.add(out.get(nk, f.zero), f.mul(val, e))
        if nv:
            out[nk] = nv
        else:
            out.pop(nk, None)
    return out
