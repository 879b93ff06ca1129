"""Self-describing JSON files for exact structures.

One document per object.  Scalars are strings ("3", "-5/7", residues), sparse
tensors are lists of [indices..., scalar] sorted lexicographically, and the
canonical serialization (sorted keys, fixed indentation, sorted entries,
trailing newline) makes save . load the identity on bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algcore import FinDimAlgebra, FinDimCoalgebra, LinearMap
from .bialgebroid import FsBialgebroid
from .duality import WeakPairing
from .errors import ParseError, SchemaError
from .fields import QQ, FieldSpec, PRIME, RATIONAL
from .frobenius import FrobeniusSystem
from .linalg import Matrix
from .repcat import CoalgComodule
from .weakcore import WeakBialgebra
from .zoo import FiniteGroupoid

FORMAT = "wqg/1"
KINDS = ("algebra", "coalgebra", "weak-bialgebra", "frobenius-system",
         "bialgebroid", "groupoid", "comodule", "pairing")


@dataclass
class LoadedStructure:
    kind: str
    obj: object
    names: tuple[str, ...] | None = None


def _field_to_json(f: FieldSpec) -> dict:
    return {"kind": "rational"} if f.kind == RATIONAL else {"kind": "prime", "p": f.p}


def _field_from_json(d, loc) -> FieldSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise SchemaError("field must be an object with a 'kind'", loc)
    if d["kind"] == "rational":
        return QQ
    if d["kind"] == "prime":
        try:
            return FieldSpec(PRIME, d.get("p"))
        except (ValueError, TypeError) as exc:
            raise SchemaError(str(exc), loc + ".p")
    raise SchemaError(f"unknown field kind {d['kind']!r}", loc + ".kind")


def _names(dim: int, names) -> list[str]:
    if names is None:
        return [f"e{i}" for i in range(dim)]
    return list(names)


def _entries_tensor3(f: FieldSpec, t) -> list:
    out = []
    for i, plane in enumerate(t):
        for j, row in enumerate(plane):
            for k, v in enumerate(row):
                if v:
                    out.append([i, j, k, f.format(v)])
    return out


def _entries_vector(f: FieldSpec, v) -> list:
    return [[i, f.format(x)] for i, x in enumerate(v) if x]


def _entries_matrix(f: FieldSpec, m: Matrix) -> list:
    return [[i, j, f.format(x)]
            for i, row in enumerate(m.data) for j, x in enumerate(row) if x]


def _read_entries(f: FieldSpec, entries, shape, loc) -> list:
    """Validate and parse sparse entries [i0..ik, scalar] against index bounds."""
    if not isinstance(entries, list):
        raise SchemaError("expected a list of entries", loc)
    out = []
    for pos, ent in enumerate(entries):
        where = f"{loc}[{pos}]"
        if not isinstance(ent, list) or len(ent) != len(shape) + 1:
            raise SchemaError(f"entry must be [{len(shape)} indices, scalar]", where)
        idx = ent[:-1]
        for d, (i, bound) in enumerate(zip(idx, shape)):
            if not isinstance(i, int) or not (0 <= i < bound):
                raise SchemaError(f"index {i!r} out of range 0..{bound - 1}", where)
        if not isinstance(ent[-1], str):
            raise ParseError("scalar must be a string", where)
        out.append((tuple(idx), f.parse(ent[-1], where)))
    return out


def _tensor3_from_entries(f: FieldSpec, entries, n):
    t = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in entries:
        t[i][j][k] = f.add(t[i][j][k], v)
    return t


def _vector_from_entries(f: FieldSpec, entries, n):
    v = [f.zero] * n
    for (i,), x in entries:
        v[i] = f.add(v[i], x)
    return v


def _matrix_from_entries(f: FieldSpec, entries, rows, cols) -> Matrix:
    m = [[f.zero] * cols for _ in range(rows)]
    for (i, j), x in entries:
        m[i][j] = f.add(m[i][j], x)
    return Matrix.from_rows(f, m)


def _algebra_body(f: FieldSpec, a: FinDimAlgebra, names) -> dict:
    return {
        "dim": a.dim,
        "basis": _names(a.dim, names),
        "mul": sorted(_entries_tensor3(f, a.mul)),
        "unit": sorted(_entries_vector(f, a.unit)),
    }


def _algebra_from_body(f: FieldSpec, d, loc) -> tuple[FinDimAlgebra, tuple[str, ...]]:
    n = _get_dim(d, loc)
    names = _get_basis(d, n, loc)
    mul = _tensor3_from_entries(f, _read_entries(f, _get(d, "mul", loc), (n, n, n), loc + ".mul"), n)
    unit = _vector_from_entries(f, _read_entries(f, _get(d, "unit", loc), (n,), loc + ".unit"), n)
    return FinDimAlgebra.build(f, n, mul, unit), names


def _coalgebra_body(f: FieldSpec, c: FinDimCoalgebra, names) -> dict:
    return {
        "dim": c.dim,
        "basis": _names(c.dim, names),
        "comul": sorted(_entries_tensor3(f, c.comul)),
        "counit": sorted(_entries_vector(f, c.counit)),
    }


def _coalgebra_from_body(f: FieldSpec, d, loc) -> tuple[FinDimCoalgebra, tuple[str, ...]]:
    n = _get_dim(d, loc)
    names = _get_basis(d, n, loc)
    comul = _tensor3_from_entries(
        f, _read_entries(f, _get(d, "comul", loc), (n, n, n), loc + ".comul"), n)
    counit = _vector_from_entries(
        f, _read_entries(f, _get(d, "counit", loc), (n,), loc + ".counit"), n)
    return FinDimCoalgebra.build(f, n, comul, counit), names


def _get(d, key, loc):
    if key not in d:
        raise SchemaError(f"missing key {key!r}", loc)
    return d[key]


def _get_dim(d, loc) -> int:
    n = _get(d, "dim", loc)
    if not isinstance(n, int) or n < 0:
        raise SchemaError("dim must be a nonnegative integer", loc + ".dim")
    return n


def _get_basis(d, n, loc) -> tuple[str, ...]:
    basis = _get(d, "basis", loc)
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(x, str) for x in basis):
        raise SchemaError("basis must list one name per dimension", loc + ".basis")
    return tuple(basis)


def _frobenius_body(s: FrobeniusSystem, names) -> dict:
    f = s.algebra.field
    body = _algebra_body(f, s.algebra, names)
    body["phi"] = sorted(_entries_vector(f, s.phi))
    body["e"] = sorted(_entries_matrix(f, s.e))
    return body


def _frobenius_from_body(f: FieldSpec, d, loc) -> tuple[FrobeniusSystem, tuple[str, ...]]:
    alg, names = _algebra_from_body(f, d, loc)
    n = alg.dim
    phi = _vector_from_entries(f, _read_entries(f, _get(d, "phi", loc), (n,), loc + ".phi"), n)
    e = _matrix_from_entries(f, _read_entries(f, _get(d, "e", loc), (n, n), loc + ".e"), n, n)
    return FrobeniusSystem(alg, tuple(phi), e), names


def to_document(kind: str, obj, names=None) -> dict:
    """Build the JSON document for a structure."""
    if kind == "algebra":
        doc = {"format": FORMAT, "kind": kind, "field": _field_to_json(obj.field)}
        doc.update(_algebra_body(obj.field, obj, names))
        return doc
    if kind == "coalgebra":
        doc = {"format": FORMAT, "kind": kind, "field": _field_to_json(obj.field)}
        doc.update(_coalgebra_body(obj.field, obj, names))
        return doc
    if kind == "weak-bialgebra":
        f = obj.field
        doc = {"format": FORMAT, "kind": kind, "field": _field_to_json(f)}
        doc.update(_algebra_body(f, obj.algebra, names))
        doc["comul"] = sorted(_entries_tensor3(f, obj.coalgebra.comul))
        doc["counit"] = sorted(_entries_vector(f, obj.coalgebra.counit))
        if obj.antipode is not None:
            doc["antipode"] = sorted(_entries_matrix(f, obj.antipode))
        return doc
    if kind == "frobenius-system":
        doc = {"format": FORMAT, "kind": kind, "field": _field_to_json(obj.algebra.field)}
        doc.update(_frobenius_body(obj, names))
        return doc
    if kind == "bialgebroid":
        f = obj.field
        names_total = names
        return {
            "format": FORMAT, "kind": kind, "field": _field_to_json(f),
            "base": _frobenius_body(obj.base, None),
            "total": _algebra_body(f, obj.total, names_total),
            "src": sorted(_entries_matrix(f, obj.src.matrix)),
            "tgt": sorted(_entries_matrix(f, obj.tgt.matrix)),
            "gamma": sorted(
                [a, b, h, f.format(v)]
                for h in range(obj.total.dim)
                for (a, b), v in (
                    ((divmod(kk, obj.total.dim)), vv)
                    for kk, vv in enumerate(obj.gamma.column(h)) if vv)
            ),
            "counit_c": sorted(
                [h, i, j, f.format(x)]
                for h, m in enumerate(obj.counit_c)
                for i, row in enumerate(m.data) for j, x in enumerate(row) if x),
        }
    if kind == "groupoid":
        g = obj
        return {
            "format": FORMAT, "kind": kind,
            "objects": g.objects,
            "arrows": [[g.name_of(i), s, t] for i, (s, t) in enumerate(g.arrows)],
            "compose": sorted([a, b, g.compose[a][b]]
                              for a in range(g.size) for b in range(g.size)
                              if g.compose[a][b] is not None),
            "inverse": [[a, g.inverse[a]] for a in range(g.size)],
            "identities": list(g.identities),
        }
    if kind == "comodule":
        c = obj
        f = c.h.field
        return {
            "format": FORMAT, "kind": kind, "field": _field_to_json(f),
            "over": to_document("weak-bialgebra", c.h, None),
            "dim": c.dim,
            "basis": _names(c.dim, names),
            "delta": sorted(
                [a, i, j, f.format(v)]
                for j in range(c.dim)
                for (a, i), v in c.delta_sparse(j).items()),
        }
    if kind == "pairing":
        p = obj
        f = p.lambda_side.field
        return {
            "format": FORMAT, "kind": kind, "field": _field_to_json(f),
            "level": "weak",
            "lambda": to_document("weak-bialgebra", p.lambda_side, None),
            "h": to_document("weak-bialgebra", p.h_side, None),
            "tau0": sorted(_entries_matrix(f, p.tau0)),
        }
    raise SchemaError(f"unknown kind {kind!r}", "kind")


def from_document(doc) -> LoadedStructure:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object", "$")
    kind = _get(doc, "kind", "$")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}", "$.kind")
    if kind == "groupoid":
        return _groupoid_from_document(doc)
    f = _field_from_json(_get(doc, "field", "$"), "$.field")
    if kind == "algebra":
        alg, names = _algebra_from_body(f, doc, "$")
        return LoadedStructure(kind, alg, names)
    if kind == "coalgebra":
        coalg, names = _coalgebra_from_body(f, doc, "$")
        return LoadedStructure(kind, coalg, names)
    if kind == "weak-bialgebra":
        return LoadedStructure(kind, *_weak_bialgebra_from_document(f, doc, "$"))
    if kind == "frobenius-system":
        s, names = _frobenius_from_body(f, doc, "$")
        return LoadedStructure(kind, s, names)
    if kind == "bialgebroid":
        base, _ = _frobenius_from_body(f, _get(doc, "base", "$"), "$.base")
        total, names = _algebra_from_body(f, _get(doc, "total", "$"), "$.total")
        n, r = total.dim, base.algebra.dim
        src = _matrix_from_entries(
            f, _read_entries(f, _get(doc, "src", "$"), (n, r), "$.src"), n, r)
        tgt = _matrix_from_entries(
            f, _read_entries(f, _get(doc, "tgt", "$"), (n, r), "$.tgt"), n, r)
        gcols = [[f.zero] * (n * n) for _ in range(n)]
        for (a, b, h), v in _read_entries(f, _get(doc, "gamma", "$"), (n, n, n), "$.gamma"):
            gcols[h][a * n + b] = f.add(gcols[h][a * n + b], v)
        gamma = LinearMap(Matrix.from_columns(f, gcols))
        cmats = [[[f.zero] * r for _ in range(r)] for _ in range(n)]
        for (h, i, j), v in _read_entries(f, _get(doc, "counit_c", "$"), (n, r, r), "$.counit_c"):
            cmats[h][i][j] = f.add(cmats[h][i][j], v)
        counit_c = tuple(Matrix.from_rows(f, m) for m in cmats)
        obj = FsBialgebroid(base, total, LinearMap(src), LinearMap(tgt), gamma, counit_c)
        return LoadedStructure(kind, obj, names)
    if kind == "comodule":
        over = from_document(_get(doc, "over", "$"))
        if over.kind != "weak-bialgebra":
            raise SchemaError("comodule 'over' must embed a weak-bialgebra", "$.over")
        h = over.obj
        m = _get_dim(doc, "$")
        names = _get_basis(doc, m, "$")
        cols = [[f.zero] * (h.dim * m) for _ in range(m)]
        for (a, i, j), v in _read_entries(f, _get(doc, "delta", "$"),
                                          (h.dim, m, m), "$.delta"):
            cols[j][a * m + i] = f.add(cols[j][a * m + i], v)
        obj = CoalgComodule(h, m, LinearMap(Matrix.from_columns(f, cols)))
        return LoadedStructure(kind, obj, names)
    if kind == "pairing":
        lam_doc = doc.get("lambda")
        h_doc = doc.get("h")
        lam = from_document(lam_doc).obj if lam_doc else None
        hh = from_document(h_doc).obj if h_doc else None
        entries = _read_entries(
            f, _get(doc, "tau0", "$"),
            (lam.dim if lam else 1 << 30, hh.dim if hh else 1 << 30), "$.tau0")
        if lam is not None and hh is not None:
            tau0 = _matrix_from_entries(f, entries, lam.dim, hh.dim)
            return LoadedStructure(kind, WeakPairing(lam, hh, tau0), None)
        return LoadedStructure(kind, ("partial-pairing", f, tuple(entries)), None)
    raise SchemaError(f"unhandled kind {kind!r}", "$.kind")


def _weak_bialgebra_from_document(f, doc, loc):
    alg, names = _algebra_from_body(f, doc, loc)
    n = alg.dim
    comul = _tensor3_from_entries(
        f, _read_entries(f, _get(doc, "comul", loc), (n, n, n), loc + ".comul"), n)
    counit = _vector_from_entries(
        f, _read_entries(f, _get(doc, "counit", loc), (n,), loc + ".counit"), n)
    coalg = FinDimCoalgebra.build(f, n, comul, counit)
    antipode = None
    if "antipode" in doc:
        antipode = _matrix_from_entries(
            f, _read_entries(f, doc["antipode"], (n, n), loc + ".antipode"), n, n)
    return WeakBialgebra(alg, coalg, antipode), names


def _groupoid_from_document(doc) -> LoadedStructure:
    objects = _get(doc, "objects", "$")
    arrows_raw = _get(doc, "arrows", "$")
    if not isinstance(objects, int) or objects < 0:
        raise SchemaError("objects must be a nonnegative integer", "$.objects")
    if not isinstance(arrows_raw, list):
        raise SchemaError("arrows must be a list", "$.arrows")
    names, arrows = [], []
    for pos, a in enumerate(arrows_raw):
        if (not isinstance(a, list) or len(a) != 3 or not isinstance(a[0], str)
                or not all(isinstance(x, int) and 0 <= x < objects for x in a[1:])):
            raise SchemaError("arrow must be [name, source, target]", f"$.arrows[{pos}]")
        names.append(a[0])
        arrows.append((a[1], a[2]))
    size = len(arrows)
    comp = [[None] * size for _ in range(size)]
    for pos, ent in enumerate(_get(doc, "compose", "$")):
        if (not isinstance(ent, list) or len(ent) != 3
                or not all(isinstance(x, int) and 0 <= x < size for x in ent)):
            raise SchemaError("compose entry must be [a, b, c]", f"$.compose[{pos}]")
        comp[ent[0]][ent[1]] = ent[2]
    inverse = [None] * size
    for pos, ent in enumerate(_get(doc, "inverse", "$")):
        if (not isinstance(ent, list) or len(ent) != 2
                or not all(isinstance(x, int) and 0 <= x < size for x in ent)):
            raise SchemaError("inverse entry must be [a, b]", f"$.inverse[{pos}]")
        inverse[ent[0]] = ent[1]
    if any(x is None for x in inverse):
        raise SchemaError("inverse table must cover every arrow", "$.inverse")
    identities = _get(doc, "identities", "$")
    if (not isinstance(identities, list)
            or not all(isinstance(x, int) and 0 <= x < size for x in identities)):
        raise SchemaError("identities must list arrow indices", "$.identities")
    g = FiniteGroupoid(objects, tuple(arrows), tuple(tuple(r) for r in comp),
                       tuple(inverse), tuple(identities), tuple(names))
    return LoadedStructure("groupoid", g, tuple(names))


def dumps(kind: str, obj, names=None) -> str:
    return json.dumps(to_document(kind, obj, names), sort_keys=True, indent=1) + "\n"


def loads(text: str) -> LoadedStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", f"line {exc.lineno} column {exc.colno}")
    return from_document(doc)


def save(kind: str, obj, path: str, names=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(kind, obj, names))


def load(path: str) -> LoadedStructure:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
