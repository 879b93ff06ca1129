"""Deterministic test-instance generators: groupoids, monoid bialgebras,
enveloping bialgebroids, and the named fixtures used across the suite.

Fixtures are always produced by the generators from combinatorial data,
never hardcoded as tensors, so a generator bug trips the axiom suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import tensorops as tp
from .algcore import FinDimAlgebra, FinDimCoalgebra, LinearMap
from .bialgebroid import FsBialgebroid, apply_projector_parts
from .errors import AxiomFailure, BadBase, InvalidGroupoid, InvalidInput, NotAssociative
from .fields import QQ, FieldSpec
from .frobenius import FrobeniusSystem, matrix_algebra, matrix_ifs, trace_ifs_commutative, verify_ifs
from .linalg import Matrix
from .report import CheckReport, ReportBuilder
from .weakcore import WeakBialgebra, check_weak_bialgebra


@dataclass(frozen=True)
class FiniteGroupoid:
    """Small category with all arrows invertible, as explicit tables.

    arrows[i] = (source, target); compose[a][b] = index of a after b, defined
    exactly when target(b) = source(a); identities[o] = identity arrow at o.
    """

    objects: int
    arrows: tuple[tuple[int, int], ...]
    compose: tuple[tuple[int | None, ...], ...]
    inverse: tuple[int, ...]
    identities: tuple[int, ...]
    names: tuple[str, ...] | None = dc_field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.arrows)

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else f"a{i}"


def check_groupoid(g: FiniteGroupoid, all_witnesses: bool = False) -> CheckReport:
    """Category axioms, identity laws and the two inverse laws, exhaustively."""
    rb = ReportBuilder(QQ, all_witnesses)
    n = g.size

    def domain_failures():
        for a in range(n):
            for b in range(n):
                defined = g.compose[a][b] is not None
                composable = g.arrows[b][1] == g.arrows[a][0]
                if defined != composable:
                    yield (a, b), {(): QQ.one}
                elif defined:
                    c = g.compose[a][b]
                    if g.arrows[c] != (g.arrows[b][0], g.arrows[a][1]):
                        yield (a, b), {(): QQ.one}

    rb.check("composability", domain_failures())

    def identity_failures():
        if len(g.identities) != g.objects:
            yield (), {(): QQ.one}
            return
        for o, e in enumerate(g.identities):
            if g.arrows[e] != (o, o):
                yield (o,), {(): QQ.one}
                return
        for a in range(n):
            s, t = g.arrows[a]
            if g.compose[a][g.identities[s]] != a or g.compose[g.identities[t]][a] != a:
                yield (a,), {(): QQ.one}

    rb.check("identity-laws", identity_failures())

    def assoc_failures():
        for a in range(n):
            for b in range(n):
                if g.compose[a][b] is None:
                    continue
                for c in range(n):
                    if g.compose[b][c] is None:
                        continue
                    if g.compose[g.compose[a][b]][c] != g.compose[a][g.compose[b][c]]:
                        yield (a, b, c), {(): QQ.one}

    rb.check("associativity", assoc_failures())

    def inverse_failures():
        for a in range(n):
            ai = g.inverse[a]
            s, t = g.arrows[a]
            if g.arrows[ai] != (t, s):
                yield (a,), {(): QQ.one}
                continue
            if g.compose[a][ai] != g.identities[t] or g.compose[ai][a] != g.identities[s]:
                yield (a,), {(): QQ.one}

    rb.check("inverse-laws", inverse_failures())
    return rb.build()


def groupoid_algebra(g: FiniteGroupoid, field: FieldSpec) -> WeakBialgebra:
    """Arrows as basis, composition as product, grouplike comultiplication,
    inversion as antipode."""
    if not check_groupoid(g).overall:
        raise InvalidGroupoid("input fails the groupoid axioms")
    f = field
    n = g.size
    z, o = f.zero, f.one
    mul = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            c = g.compose[a][b]
            if c is not None:
                mul[a][b][c] = o
    unit = [z] * n
    for e in g.identities:
        unit[e] = o
    comul = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        comul[a][a][a] = o
    counit = [o] * n
    s_cols = []
    for a in range(n):
        col = [z] * n
        col[g.inverse[a]] = o
        s_cols.append(col)
    wb = WeakBialgebra(
        FinDimAlgebra.build(f, n, mul, unit),
        FinDimCoalgebra.build(f, n, comul, counit),
        Matrix.from_columns(f, s_cols),
    )
    rep = check_weak_bialgebra(wb)
    if not rep.overall:
        raise AxiomFailure("groupoid algebra failed the weak bialgebra axioms", rep)
    return wb


def groupoid_function_algebra(g: FiniteGroupoid, field: FieldSpec) -> WeakBialgebra:
    """Functions on the arrows: the dual of the groupoid algebra."""
    from .duality import dual_weak_bialgebra
    return dual_weak_bialgebra(groupoid_algebra(g, field))


def monoid_bialgebra(table, field: FieldSpec) -> WeakBialgebra:
    """Grouplike-basis bialgebra of a finite monoid given by its table."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise InvalidInput("monoid table is not square")
    if any(not (0 <= x < n) for row in table for x in row):
        raise InvalidInput("monoid table entry out of range")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAssociative(f"({a}, {b}, {c})")
    e = None
    for cand in range(n):
        if all(table[cand][x] == x == table[x][cand] for x in range(n)):
            e = cand
            break
    if e is None:
        raise InvalidInput("monoid table has no identity element")
    f = field
    z, o = f.zero, f.one
    mul = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            mul[a][b][table[a][b]] = o
    unit = [z] * n
    unit[e] = o
    comul = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        comul[a][a][a] = o
    counit = [o] * n
    wb = WeakBialgebra(
        FinDimAlgebra.build(f, n, mul, unit),
        FinDimCoalgebra.build(f, n, comul, counit),
    )
    rep = check_weak_bialgebra(wb)
    if not rep.overall:
        raise AxiomFailure("monoid bialgebra failed the weak bialgebra axioms", rep)
    return wb


def enveloping_bialgebroid(r: FinDimAlgebra, s: FrobeniusSystem) -> FsBialgebroid:
    """R (x) R^op as a bialgebroid: src(r) = r (x) ol 1, tgt(r) = 1 (x) ol r,
    gamma(r (x) ol s) = (r (x) ol 1) (x) (1 (x) ol s), C(r (x) ol s)(x) = r x s."""
    if s.algebra != r:
        raise BadBase("Frobenius system must live on the given base algebra")
    if not verify_ifs(s).overall:
        raise BadBase("Frobenius system is not an IFS")
    f = r.field
    nr = r.dim
    n = nr * nr
    z = f.zero

    def idx(i, j):
        return i * nr + j

    mul = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a in range(nr):
        for b in range(nr):
            for c in range(nr):
                for d in range(nr):
                    # (a (x) ol b)(c (x) ol d) = a c (x) ol(d b)
                    for k in range(nr):
                        vac = r.mul[a][c][k]
                        if not vac:
                            continue
                        for l in range(nr):
                            vdb = r.mul[d][b][l]
                            if vdb:
                                mul[idx(a, b)][idx(c, d)][idx(k, l)] = f.add(
                                    mul[idx(a, b)][idx(c, d)][idx(k, l)], f.mul(vac, vdb))
    unit = [z] * n
    for i in range(nr):
        for j in range(nr):
            v = f.mul(r.unit[i], r.unit[j])
            if v:
                unit[idx(i, j)] = v
    total = FinDimAlgebra(f, n, tuple(tuple(tuple(p) for p in plane) for plane in mul),
                          tuple(unit))
    src_cols = []
    tgt_cols = []
    for a in range(nr):
        scol = [z] * n
        tcol = [z] * n
        for j in range(nr):
            if r.unit[j]:
                scol[idx(a, j)] = r.unit[j]
                tcol[idx(j, a)] = r.unit[j]
        src_cols.append(scol)
        tgt_cols.append(tcol)
    src = LinearMap(Matrix.from_columns(f, src_cols))
    tgt = LinearMap(Matrix.from_columns(f, tgt_cols))
    gamma_cols = []
    for a in range(nr):
        for b in range(nr):
            raw = tp.kron(f, tp.from_dense(src_cols[a]), tp.from_dense(tgt_cols[b]))
            norm = apply_projector_parts(total, src, tgt, s, raw)
            col = [z] * (n * n)
            for (p, q), v in norm.items():
                col[p * n + q] = v
            gamma_cols.append(col)
    gamma = LinearMap(Matrix.from_columns(f, gamma_cols))
    counits = []
    for a in range(nr):
        la = r.left_mult(r.basis_vector(a))
        for b in range(nr):
            rb_ = r.right_mult(r.basis_vector(b))
            counits.append(la @ rb_)
    return FsBialgebroid(s, total, src, tgt, gamma, tuple(counits))


# -- named fixtures --------------------------------------------------------


def pair_groupoid(objects: int) -> FiniteGroupoid:
    """One arrow between every ordered pair of objects; arrows sorted by
    (source, target), the arrow s -> t named g{t+1}{s+1}."""
    arrows = [(s, t) for s in range(objects) for t in range(objects)]
    index = {a: i for i, a in enumerate(arrows)}
    compose = []
    for (sa, ta) in arrows:
        row = []
        for (sb, tb) in arrows:
            row.append(index[(sb, ta)] if tb == sa else None)
        compose.append(tuple(row))
    inverse = tuple(index[(t, s)] for (s, t) in arrows)
    identities = tuple(index[(o, o)] for o in range(objects))
    names = tuple(f"g{t + 1}{s + 1}" for (s, t) in arrows)
    return FiniteGroupoid(objects, tuple(arrows), tuple(compose), inverse, identities, names)


def cyclic_group_groupoid(order: int) -> FiniteGroupoid:
    """Z/order as a one-object groupoid."""
    arrows = tuple((0, 0) for _ in range(order))
    compose = tuple(tuple((a + b) % order for b in range(order)) for a in range(order))
    inverse = tuple((-a) % order for a in range(order))
    names = tuple("e" if a == 0 else f"u{a}" if order > 2 else "u" for a in range(order))
    return FiniteGroupoid(1, arrows, compose, inverse, (0,), names)


def disjoint_union_groupoid(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    off_obj, off = g1.objects, g1.size
    arrows = g1.arrows + tuple((s + off_obj, t + off_obj) for (s, t) in g2.arrows)
    compose = []
    for a in range(len(arrows)):
        row = []
        for b in range(len(arrows)):
            if a < off and b < off:
                row.append(g1.compose[a][b])
            elif a >= off and b >= off:
                c = g2.compose[a - off][b - off]
                row.append(None if c is None else c + off)
            else:
                row.append(None)
        compose.append(tuple(row))
    inverse = tuple(list(g1.inverse) + [i + off for i in g2.inverse])
    identities = tuple(list(g1.identities) + [i + off for i in g2.identities])
    names = tuple([f"L.{g1.name_of(i)}" for i in range(off)]
                  + [f"R.{g2.name_of(i)}" for i in range(g2.size)])
    return FiniteGroupoid(g1.objects + g2.objects, arrows, tuple(compose),
                          inverse, identities, names)


def pg2(field: FieldSpec = QQ) -> WeakBialgebra:
    return groupoid_algebra(pair_groupoid(2), field)


def pg3(field: FieldSpec = QQ) -> WeakBialgebra:
    return groupoid_algebra(pair_groupoid(3), field)


def k2(field: FieldSpec = QQ) -> WeakBialgebra:
    return groupoid_algebra(cyclic_group_groupoid(2), field)


MX_TABLE = ((0, 1), (1, 1))  # monoid {1, x} with x^2 = x


def mx(field: FieldSpec = QQ) -> WeakBialgebra:
    return monoid_bialgebra(MX_TABLE, field)


def product_field_algebra(copies: int, field: FieldSpec = QQ) -> FinDimAlgebra:
    """k x ... x k with idempotent basis."""
    z, o = field.zero, field.one
    mul = [[[o if i == j == k else z for k in range(copies)] for j in range(copies)]
           for i in range(copies)]
    return FinDimAlgebra.build(field, copies, mul, [o] * copies)


def r2(field: FieldSpec = QQ) -> FinDimAlgebra:
    return product_field_algebra(2, field)


def r3(field: FieldSpec = QQ) -> FinDimAlgebra:
    return product_field_algebra(3, field)


def m2q(field: FieldSpec = QQ) -> FinDimAlgebra:
    return matrix_algebra(2, field)


def scaled_trace_ifs_m2(field: FieldSpec = QQ) -> FrobeniusSystem:
    """The IFS (2 tr, half of the flip Casimir element) on M_2."""
    two = field.from_int(2)
    u = Matrix.from_rows(field, [[two, field.zero], [field.zero, two]])
    return matrix_ifs(2, u, field)


def eb2(field: FieldSpec = QQ) -> FsBialgebroid:
    base = r2(field)
    return enveloping_bialgebroid(base, trace_ifs_commutative(base))


def ebm2(field: FieldSpec = QQ) -> FsBialgebroid:
    return enveloping_bialgebroid(m2q(field), scaled_trace_ifs_m2(field))
