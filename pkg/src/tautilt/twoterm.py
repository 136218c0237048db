"""Two-term complexes of projectives and their homotopy category.

A complex lives in degrees -1 and 0: P^{-1} -> P^0, both sums of
indecomposable projectives listed by vertex, with the differential as a
matrix of algebra elements (entry (target t, source s) lies in
e_{vt} A e_{vs}, acting by left multiplication).

Everything mutation-shaped runs through mapping cones of approximations.
A cone of a map of two-term complexes transiently occupies three
degrees; stripping contractible pairs (unit entries between equal
projectives) reduces it back, and whether the extreme degree empties is
exactly the test for the mutation direction staying two-term.
"""

import random

from .algebra import AlgebraError
from .linalg import ExactMatrix, RowSpace, kernel_via_presolve
from .modrep import (ProjSum, minimal_projective_presentation,
                     quotient_rep)
from . import splitting


class AlgMatrix:
    """Matrix of algebra elements: map (+) e_{col[j]} A -> (+) e_{row[i]} A."""

    __slots__ = ("alg", "row_verts", "col_verts", "entries")

    def __init__(self, alg, row_verts, col_verts, entries=None):
        self.alg = alg
        self.row_verts = tuple(row_verts)
        self.col_verts = tuple(col_verts)
        self.entries = {}
        if entries:
            for (i, j), e in entries.items():
                if e:
                    self.set(i, j, e)

    def set(self, i, j, elem):
        if not self.alg.elem_in_corner(elem, self.row_verts[i], self.col_verts[j]):
            raise AlgebraError("entry outside its corner space")
        if elem:
            self.entries[(i, j)] = elem
        else:
            self.entries.pop((i, j), None)

    def get(self, i, j):
        return self.entries.get((i, j), {})

    def matmul(self, other):
        """Composite self . other (other first)."""
        if other.row_verts != self.col_verts:
            raise AlgebraError("composition mismatch")
        alg = self.alg
        out = AlgMatrix(alg, self.row_verts, other.col_verts)
        acc = {}
        for (i, j), a in self.entries.items():
            for (j2, k), b in other.entries.items():
                if j2 != j:
                    continue
                prod = alg.elem_mul(a, b)
                if prod:
                    key = (i, k)
                    acc[key] = alg.elem_add(acc.get(key, {}), prod)
        for key, e in acc.items():
            if e:
                out.entries[key] = e
        return out

    def add(self, other):
        out = AlgMatrix(self.alg, self.row_verts, self.col_verts, self.entries)
        for key, e in other.entries.items():
            s = self.alg.elem_add(out.entries.get(key, {}), e)
            if s:
                out.entries[key] = s
            else:
                out.entries.pop(key, None)
        return out

    def neg(self):
        return AlgMatrix(self.alg, self.row_verts, self.col_verts,
                         {k: self.alg.elem_neg(e) for k, e in self.entries.items()})

    def sub(self, other):
        return self.add(other.neg())

    @staticmethod
    def identity(alg, verts):
        out = AlgMatrix(alg, verts, verts)
        for i, v in enumerate(verts):
            out.entries[(i, i)] = alg.idempotent_elem(v)
        return out

    def is_zero(self):
        return not self.entries

    def serialize(self):
        alg = self.alg
        items = []
        for (i, j) in sorted(self.entries):
            e = self.entries[(i, j)]
            items.append((i, j, tuple(sorted(
                (b, alg.field.to_string(c)) for b, c in e.items()))))
        return tuple(items)

    def realize(self):
        """Vertex matrices (ProjSum(col) -> ProjSum(row)) of this map."""
        src = ProjSum(self.alg, self.col_verts)
        tgt = ProjSum(self.alg, self.row_verts)
        entries = {(i, j): e for (i, j), e in self.entries.items()}
        f = src.realize_alg_map(tgt, {(i, j): e for (i, j), e in entries.items()})
        return src, tgt, f


class TwoTermComplex:
    """P^{-1} -> P^0 with algebra-entry differential."""

    __slots__ = ("alg", "p1", "p0", "d", "_ser")

    def __init__(self, alg, p1, p0, d=None):
        self.alg = alg
        self.p1 = tuple(p1)
        self.p0 = tuple(p0)
        if d is None:
            d = AlgMatrix(alg, self.p0, self.p1)
        if d.row_verts != self.p0 or d.col_verts != self.p1:
            raise AlgebraError("differential shape mismatch")
        self.d = d
        self._ser = None

    def is_zero(self):
        return not self.p1 and not self.p0

    def serialize(self):
        if self._ser is None:
            self._ser = (self.p1, self.p0, self.d.serialize())
        return self._ser

    def __repr__(self):
        labels = self.alg.vertex_labels
        p1 = "+".join(f"P{labels[v]}" for v in self.p1) or "0"
        p0 = "+".join(f"P{labels[v]}" for v in self.p0) or "0"
        return f"({p1} -> {p0})"


def stalk_complex(alg, verts, shift=0):
    """Projective stalk (+)P_v in degree 0, or its shift [1] in degree -1."""
    if shift == 0:
        return TwoTermComplex(alg, (), tuple(verts))
    if shift == 1:
        return TwoTermComplex(alg, tuple(verts), ())
    raise ValueError("only shifts 0 and 1 are two-term")


def algebra_stalk(alg, shift=0):
    return stalk_complex(alg, range(alg.n), shift)


def direct_sum_complex(summands):
    summands = list(summands)
    if not summands:
        raise ValueError("empty direct sum needs an algebra; use TwoTermComplex")
    alg = summands[0].alg
    p1, p0 = [], []
    entries = {}
    r_off = c_off = 0
    for s in summands:
        for (i, j), e in s.d.entries.items():
            entries[(r_off + i, c_off + j)] = e
        p0.extend(s.p0)
        p1.extend(s.p1)
        r_off += len(s.p0)
        c_off += len(s.p1)
    d = AlgMatrix(alg, tuple(p0), tuple(p1), entries)
    return TwoTermComplex(alg, tuple(p1), tuple(p0), d)


def g_vector(T):
    """[P^0] - [P^-1] in the projective basis of K_0."""
    g = [0] * T.alg.n
    for v in T.p0:
        g[v] += 1
    for v in T.p1:
        g[v] -= 1
    return tuple(g)


def g_matrix(summands):
    """Columns are the summand g-vectors, in the given order."""
    return tuple(g_vector(s) for s in summands)


# -- three-degree chains and stripping -----------------------------------

class Chain3:
    """low -> mid -> high with composite zero; used for cone bookkeeping."""

    def __init__(self, alg, low, mid, high, d_low, d_high):
        self.alg = alg
        self.low = list(low)
        self.mid = list(mid)
        self.high = list(high)
        self.d_low = {k: v for k, v in d_low.items() if v}    # (mid, low) -> elem
        self.d_high = {k: v for k, v in d_high.items() if v}  # (high, mid) -> elem

    def check_composite_zero(self):
        alg = self.alg
        acc = {}
        for (h, m), e in self.d_high.items():
            for (m2, l), f in self.d_low.items():
                if m2 != m:
                    continue
                prod = alg.elem_mul(e, f)
                if prod:
                    acc[(h, l)] = alg.elem_add(acc.get((h, l), {}), prod)
        return all(not v for v in acc.values())

    def _find_unit(self, table, row_verts, col_verts):
        best = None
        for (i, j) in table:
            if row_verts[i] != col_verts[j]:
                continue
            if self.alg.elem_scalar_part(table[(i, j)], row_verts[i]) != 0:
                if best is None or (i, j) < best:
                    best = (i, j)
        return best

    def strip(self):
        """Remove all contractible pairs; leaves the minimal chain."""
        while True:
            hit = self._find_unit(self.d_low, self.mid, self.low)
            if hit is not None:
                self._strip_low(*hit)
                continue
            hit = self._find_unit(self.d_high, self.high, self.mid)
            if hit is not None:
                self._strip_high(*hit)
                continue
            break
        return self

    def _strip_low(self, m0, l0):
        alg = self.alg
        v = self.mid[m0]
        c = self.d_low[(m0, l0)]
        cinv = alg.local_inverse(c, v)
        row_m0 = {l: e for (m, l), e in self.d_low.items() if m == m0 and l != l0}
        col_l0 = {m: e for (m, l), e in self.d_low.items() if l == l0 and m != m0}
        # d_low corrections: new[m][l] -= d[m][l0] . c^-1 . d[m0][l]
        for m, a in col_l0.items():
            fac = alg.elem_mul(a, cinv)
            for l, b in row_m0.items():
                delta = alg.elem_mul(fac, b)
                if delta:
                    cur = self.d_low.get((m, l), {})
                    nv = alg.elem_add(cur, alg.elem_neg(delta))
                    if nv:
                        self.d_low[(m, l)] = nv
                    else:
                        self.d_low.pop((m, l), None)
        # d_high: transformed column m0 must vanish by the chain condition
        for h in range(len(self.high)):
            e0 = self.d_high.get((h, m0), {})
            acc = dict(e0)
            for m, a in col_l0.items():
                eh = self.d_high.get((h, m), {})
                if eh:
                    acc = alg.elem_add(acc, alg.elem_mul(
                        eh, alg.elem_mul(a, cinv)))
            if acc:
                raise AssertionError("strip: residual differential into "
                                     "a cancelled mid summand")
        self._delete(mid=m0, low=l0)

    def _strip_high(self, h0, m0):
        alg = self.alg
        v = self.high[h0]
        c = self.d_high[(h0, m0)]
        cinv = alg.local_inverse(c, v)
        row_h0 = {m: e for (h, m), e in self.d_high.items() if h == h0 and m != m0}
        col_m0 = {h: e for (h, m), e in self.d_high.items() if m == m0 and h != h0}
        for h, a in col_m0.items():
            fac = alg.elem_mul(a, cinv)
            for m, b in row_h0.items():
                delta = alg.elem_mul(fac, b)
                if delta:
                    cur = self.d_high.get((h, m), {})
                    nv = alg.elem_add(cur, alg.elem_neg(delta))
                    if nv:
                        self.d_high[(h, m)] = nv
                    else:
                        self.d_high.pop((h, m), None)
        # d_low: transformed row m0 must vanish by the chain condition
        for l in range(len(self.low)):
            e0 = self.d_low.get((m0, l), {})
            acc = dict(e0)
            for m, b in row_h0.items():
                el = self.d_low.get((m, l), {})
                if el:
                    acc = alg.elem_add(acc, alg.elem_mul(
                        alg.elem_mul(cinv, b), el))
            if acc:
                raise AssertionError("strip: residual differential out of "
                                     "a cancelled mid summand")
        self._delete(high=h0, mid=m0)

    def _delete(self, low=None, mid=None, high=None):
        def drop(verts, idx):
            return verts[:idx] + verts[idx + 1:]

        def remap(table, ridx, cidx):
            out = {}
            for (i, j), e in table.items():
                if i == ridx or j == cidx:
                    continue
                out[(i - (1 if ridx is not None and i > ridx else 0),
                     j - (1 if cidx is not None and j > cidx else 0))] = e
            return out

        if low is not None or mid is not None:
            self.d_low = remap(self.d_low, mid, low)
        if mid is not None or high is not None:
            self.d_high = remap(self.d_high, high, mid)
        if low is not None:
            self.low = drop(self.low, low)
        if mid is not None:
            self.mid = drop(self.mid, mid)
        if high is not None:
            self.high = drop(self.high, high)


def strip_contractible(T):
    """Minimal representative of a two-term complex."""
    ch = Chain3(T.alg, (), T.p1, T.p0,
                {}, {(i, j): e for (i, j), e in T.d.entries.items()})
    ch.strip()
    d = AlgMatrix(T.alg, tuple(ch.high), tuple(ch.mid),
                  {k: v for k, v in ch.d_high.items()})
    return TwoTermComplex(T.alg, tuple(ch.mid), tuple(ch.high), d)


class ChainMap:
    """Strict chain map between two-term complexes: degree blocks f1, f0."""

    __slots__ = ("source", "target", "f1", "f0")

    def __init__(self, source, target, f1, f0):
        self.source = source
        self.target = target
        self.f1 = f1  # AlgMatrix rows=target.p1 cols=source.p1
        self.f0 = f0  # AlgMatrix rows=target.p0 cols=source.p0

    def is_chain_map(self):
        return self.f0.matmul(self.source.d).sub(
            self.target.d.matmul(self.f1)).is_zero()

    def compose(self, other):
        """self . other (other first)."""
        return ChainMap(other.source, self.target,
                        self.f1.matmul(other.f1), self.f0.matmul(other.f0))


def mapping_cone_chain(f):
    """Cone of f: X -> Y as a three-degree chain (X.p1, X.p0 + Y.p1, Y.p0)."""
    X, Y = f.source, f.target
    alg = X.alg
    low = list(X.p1)
    mid = list(X.p0) + list(Y.p1)
    high = list(Y.p0)
    nx0 = len(X.p0)
    d_low = {}
    for (i, j), e in X.d.entries.items():
        d_low[(i, j)] = alg.elem_neg(e)
    for (i, j), e in f.f1.entries.items():
        d_low[(nx0 + i, j)] = e
    d_high = {}
    for (i, j), e in f.f0.entries.items():
        d_high[(i, j)] = e
    for (i, j), e in Y.d.entries.items():
        d_high[(i, nx0 + j)] = e
    ch = Chain3(alg, low, mid, high, d_low, d_high)
    return ch


def cone_two_term(f):
    """Cone of a chain map out of a degree-0 stalk; two-term by shape."""
    if f.source.p1:
        raise AlgebraError("cone_two_term needs a stalk complex source")
    ch = mapping_cone_chain(f)
    ch.strip()
    if ch.low:
        raise AssertionError("stalk cone left a degree -2 part")
    d = AlgMatrix(f.source.alg, tuple(ch.high), tuple(ch.mid), ch.d_high)
    return TwoTermComplex(f.source.alg, tuple(ch.mid), tuple(ch.high), d)


# -- homotopy Hom spaces --------------------------------------------------

class _BlockCoords:
    """Flat coordinates for a grid of corner spaces e_{rv[i]} A e_{cv[j]}."""

    def __init__(self, alg, row_verts, col_verts, offset=0):
        self.alg = alg
        self.row_verts = row_verts
        self.col_verts = col_verts
        self.index = {}
        k = offset
        for i, rv in enumerate(row_verts):
            for j, cv in enumerate(col_verts):
                for b in alg.corner_basis(rv, cv):
                    self.index[(i, j, b)] = k
                    k += 1
        self.end = k

    def matrix_to_vec(self, m, vec):
        for (i, j), e in m.entries.items():
            for b, c in e.items():
                vec[self.index[(i, j, b)]] = c
        return vec

    def vec_to_matrix(self, vec):
        if not hasattr(self, "rev"):
            self.rev = {k: ijb for ijb, k in self.index.items()}
        m = AlgMatrix(self.alg, self.row_verts, self.col_verts)
        acc = {}
        for k, c in vec.items():
            ijb = self.rev.get(k)
            if ijb is not None and c:
                i, j, b = ijb
                acc.setdefault((i, j), {})[b] = c
        for key, e in acc.items():
            m.entries[key] = e
        return m


class _ProductCache:
    """Memoized one-sided products of algebra basis elements with entries."""

    def __init__(self, alg):
        self.alg = alg
        self.one = alg.field.one
        self.left = {}
        self.right = {}

    def lmul(self, b, ekey, e):
        # basis element b times entry e (entry identified by position key)
        key = (b, ekey)
        r = self.left.get(key)
        if r is None:
            r = self.alg.elem_mul({b: self.one}, e)
            self.left[key] = r
        return r

    def rmul(self, ekey, e, b):
        key = (ekey, b)
        r = self.right.get(key)
        if r is None:
            r = self.alg.elem_mul(e, {b: self.one})
            self.right[key] = r
        return r


class HomotopyHom:
    """Hom in the homotopy category between two-term complexes, one shift.

    For shift 0 carries raw chain-map representatives and supports
    composition through canonical class coordinates; for shifts +-1 only
    dimensions and representatives are exposed.
    """

    def __init__(self, T, U, shift=0):
        if T.alg is not U.alg:
            raise AlgebraError("complexes over different algebras")
        self.T = T
        self.U = U
        self.shift = shift
        alg = T.alg
        self.alg = alg
        if abs(shift) >= 2:
            self.dim = 0
            self.reps = []
            return
        if shift == 0:
            self._build_shift0()
        elif shift == 1:
            self._build_shift1()
        else:
            self._build_shift_minus1()

    # shift 0: chain maps (f1, f0) with f0 d_T = d_U f1, modulo
    # f1 = h d_T, f0 = d_U h for h: T^0 -> U^{-1}
    def _build_shift0(self):
        alg, F = self.alg, self.alg.field
        T, U = self.T, self.U
        cache = _ProductCache(alg)
        self.c1 = _BlockCoords(alg, U.p1, T.p1)
        self.c0 = _BlockCoords(alg, U.p0, T.p0, offset=self.c1.end)
        nunk = self.c0.end
        eq = _BlockCoords(alg, U.p0, T.p1)
        rows = [{} for _ in range(eq.end)]
        eqx = eq.index
        by_vertex_U_p0 = {}
        for r, v in enumerate(U.p0):
            by_vertex_U_p0.setdefault(v, []).append(r)
        # f0 . d_T: unknown f0[r][m] times known d_T[m][c]
        for (m, c), e in T.d.entries.items():
            tv = T.p0[m]
            for uv, rlist in by_vertex_U_p0.items():
                for b0 in alg.corner_basis(uv, tv):
                    prod = cache.lmul(b0, (0, m, c), e)
                    if not prod:
                        continue
                    for r in rlist:
                        col = self.c0.index[(r, m, b0)]
                        for b, cval in prod.items():
                            row = rows[eqx[(r, c, b)]]
                            cur = row.get(col)
                            nv = cval if cur is None else F.add(cur, cval)
                            if nv == 0:
                                row.pop(col, None)
                            else:
                                row[col] = nv
        by_vertex_T_p1 = {}
        for c, v in enumerate(T.p1):
            by_vertex_T_p1.setdefault(v, []).append(c)
        # - d_U . f1: known d_U[r][m'] times unknown f1[m'][c]
        for (r, m), e in U.d.entries.items():
            uv = U.p1[m]
            for tv, clist in by_vertex_T_p1.items():
                for b1 in alg.corner_basis(uv, tv):
                    prod = cache.rmul((1, r, m), e, b1)
                    if not prod:
                        continue
                    for c in clist:
                        col = self.c1.index[(m, c, b1)]
                        for b, cval in prod.items():
                            row = rows[eqx[(r, c, b)]]
                            cur = row.get(col)
                            nv = F.neg(cval) if cur is None else F.sub(cur, cval)
                            if nv == 0:
                                row.pop(col, None)
                            else:
                                row[col] = nv
        raw = kernel_via_presolve(F, rows, nunk)
        # homotopy image: h single basis entry at (m: U.p1, c: T.p0, b)
        d_T_by_row = {}
        for (m, c), e in T.d.entries.items():
            d_T_by_row.setdefault(m, []).append((c, e))
        d_U_by_col = {}
        for (r, m), e in U.d.entries.items():
            d_U_by_col.setdefault(m, []).append((r, e))
        by_vertex_T_p0 = {}
        for c, v in enumerate(T.p0):
            by_vertex_T_p0.setdefault(v, []).append(c)
        hvecs = []
        for m, uv in enumerate(U.p1):
            for tv, clist in by_vertex_T_p0.items():
                corner = alg.corner_basis(uv, tv)
                if not corner:
                    continue
                for c in clist:
                    for b in corner:
                        vec = {}
                        for (c2, e) in d_T_by_row.get(c, ()):
                            prod = cache.lmul(b, (0, c, c2), e)
                            for bb, cval in prod.items():
                                key = self.c1.index[(m, c2, bb)]
                                cur = vec.get(key)
                                nv = cval if cur is None else F.add(cur, cval)
                                if nv == 0:
                                    vec.pop(key, None)
                                else:
                                    vec[key] = nv
                        for (r, e) in d_U_by_col.get(m, ()):
                            prod = cache.rmul((1, r, m), e, b)
                            for bb, cval in prod.items():
                                key = self.c0.index[(r, c, bb)]
                                cur = vec.get(key)
                                nv = cval if cur is None else F.add(cur, cval)
                                if nv == 0:
                                    vec.pop(key, None)
                                else:
                                    vec[key] = nv
                        if vec:
                            hvecs.append(vec)
        self.homotopies = RowSpace(F, nunk, hvecs)
        reduced = [self.homotopies.reduce(v) for v in raw]
        self.classes = RowSpace(F, nunk, [v for v in reduced if v])
        self.dim = self.classes.dim
        self.reps = []
        for row in self.classes.reduced:
            f1 = self.c1.vec_to_matrix(row)
            f0 = self.c0.vec_to_matrix({k: v for k, v in row.items()
                                        if k >= self.c1.end})
            self.reps.append(ChainMap(self.T, self.U, f1, f0))

    def chain_map_class(self, cm):
        """Canonical class coordinates of a strict chain map."""
        vec = {}
        self.c1.matrix_to_vec(cm.f1, vec)
        self.c0.matrix_to_vec(cm.f0, vec)
        red = self.homotopies.reduce(vec)
        coords = {}
        for idx, pc in enumerate(self.classes.pivots):
            c = red.get(pc)
            if c:
                coords[idx] = c
        # sanity: the reduced vector must lie in the class row space
        chk = dict(red)
        F = self.alg.field
        for idx, c in coords.items():
            for k, v in self.classes.reduced[idx].items():
                cur = chk.get(k, F.zero)
                nv = F.sub(cur, F.mul(c, v))
                if nv == 0:
                    chk.pop(k, None)
                else:
                    chk[k] = nv
        if chk:
            raise AssertionError("chain map outside the computed Hom space")
        return coords

    # shift 1: all maps T^{-1} -> U^0 modulo d_U h' + h d_T
    def _build_shift1(self):
        alg, F = self.alg, self.alg.field
        T, U = self.T, self.U
        cache = _ProductCache(alg)
        self.c = _BlockCoords(alg, U.p0, T.p1)
        d_T_by_row = {}
        for (m, c), e in T.d.entries.items():
            d_T_by_row.setdefault(m, []).append((c, e))
        d_U_by_col = {}
        for (r, m), e in U.d.entries.items():
            d_U_by_col.setdefault(m, []).append((r, e))
        hvecs = []
        # d_U . h1 for h1: T^{-1} -> U^{-1} single entries
        for m, uv in enumerate(U.p1):
            if m not in d_U_by_col:
                continue
            for cidx, tv in enumerate(T.p1):
                for b in alg.corner_basis(uv, tv):
                    vec = {}
                    for (r, e) in d_U_by_col[m]:
                        prod = cache.rmul((1, r, m), e, b)
                        for bb, cval in prod.items():
                            key = self.c.index[(r, cidx, bb)]
                            cur = vec.get(key)
                            nv = cval if cur is None else F.add(cur, cval)
                            if nv == 0:
                                vec.pop(key, None)
                            else:
                                vec[key] = nv
                    if vec:
                        hvecs.append(vec)
        # h0 . d_T for h0: T^0 -> U^0 single entries
        for r, uv in enumerate(U.p0):
            for m, tv in enumerate(T.p0):
                if m not in d_T_by_row:
                    continue
                for b in alg.corner_basis(uv, tv):
                    vec = {}
                    for (c, e) in d_T_by_row[m]:
                        prod = cache.lmul(b, (0, m, c), e)
                        for bb, cval in prod.items():
                            key = self.c.index[(r, c, bb)]
                            cur = vec.get(key)
                            nv = cval if cur is None else F.add(cur, cval)
                            if nv == 0:
                                vec.pop(key, None)
                            else:
                                vec[key] = nv
                    if vec:
                        hvecs.append(vec)
        self.homotopies = RowSpace(F, self.c.end, hvecs)
        self.dim = self.c.end - self.homotopies.dim
        self.reps = []
        for col in self.homotopies.free_cols():
            self.reps.append(self.c.vec_to_matrix({col: F.one}))

    # shift -1: maps T^0 -> U^{-1} with both composites zero, no homotopies
    def _build_shift_minus1(self):
        alg, F = self.alg, self.alg.field
        T, U = self.T, self.U
        self.c = _BlockCoords(alg, U.p1, T.p0)
        rows_low = _BlockCoords(alg, U.p0, T.p0)   # d_U . psi
        rows_high = _BlockCoords(alg, U.p1, T.p1)  # psi . d_T
        rows = [{} for _ in range(rows_low.end + rows_high.end)]
        for (r, m), e in U.d.entries.items():
            for cidx in range(len(T.p0)):
                for b1 in alg.corner_basis(U.p1[m], T.p0[cidx]):
                    prod = alg.elem_mul(e, {b1: F.one})
                    col = self.c.index[(m, cidx, b1)]
                    for b, cval in prod.items():
                        row = rows[rows_low.index[(r, cidx, b)]]
                        row[col] = F.add(row.get(col, F.zero), cval)
        for (m, cidx), e in T.d.entries.items():
            for r in range(len(U.p1)):
                for b1 in alg.corner_basis(U.p1[r], T.p0[m]):
                    prod = alg.elem_mul({b1: F.one}, e)
                    col = self.c.index[(r, m, b1)]
                    for b, cval in prod.items():
                        key = rows_low.end + rows_high.index[(r, cidx, b)]
                        rows[key][col] = F.add(rows[key].get(col, F.zero), cval)
        vecs = kernel_via_presolve(F, rows, self.c.end)
        self.dim = len(vecs)
        self.reps = [self.c.vec_to_matrix(v) for v in vecs]


_HOM_CACHE = {}
_HOM_CACHE_MAX = 24


def hom_homotopy(T, U, shift=0):
    """Hom_{K^b(proj)}(T, U[shift]) for two-term T, U (memoized)."""
    key = (id(T.alg), shift, T.serialize(), U.serialize())
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    hs = HomotopyHom(T, U, shift)
    if len(_HOM_CACHE) >= _HOM_CACHE_MAX:
        _HOM_CACHE.pop(next(iter(_HOM_CACHE)))
    _HOM_CACHE[key] = hs
    return hs


def is_presilting(T):
    """Hom(T, T[1]) = 0; higher shifts vanish for two-term complexes."""
    return hom_homotopy(T, T, 1).dim == 0


def is_two_term_silting(T, seed=0):
    if not is_presilting(T):
        return False
    return len(decompose_complex(T, seed=seed)) == T.alg.n


# -- strict decomposition --------------------------------------------------

def _strict_end_basis(T):
    """Basis of strict chain endomorphisms (e1, e0) with e0 d = d e1."""
    alg, F = T.alg, T.alg.field
    cache = _ProductCache(alg)
    c1 = _BlockCoords(alg, T.p1, T.p1)
    c0 = _BlockCoords(alg, T.p0, T.p0, offset=c1.end)
    eq = _BlockCoords(alg, T.p0, T.p1)
    eqx = eq.index
    rows = [{} for _ in range(eq.end)]
    for (m, c), e in T.d.entries.items():
        for r in range(len(T.p0)):
            for b0 in alg.corner_basis(T.p0[r], T.p0[m]):
                prod = cache.lmul(b0, (m, c), e)
                col = c0.index[(r, m, b0)]
                for b, cval in prod.items():
                    row = rows[eqx[(r, c, b)]]
                    cur = row.get(col)
                    nv = cval if cur is None else F.add(cur, cval)
                    if nv == 0:
                        row.pop(col, None)
                    else:
                        row[col] = nv
    for (r, m), e in T.d.entries.items():
        for c in range(len(T.p1)):
            for b1 in alg.corner_basis(T.p1[m], T.p1[c]):
                prod = cache.rmul((r, m), e, b1)
                col = c1.index[(m, c, b1)]
                for b, cval in prod.items():
                    row = rows[eqx[(r, c, b)]]
                    cur = row.get(col)
                    nv = F.neg(cval) if cur is None else F.sub(cur, cval)
                    if nv == 0:
                        row.pop(col, None)
                    else:
                        row[col] = nv
    basis = []
    for vec in kernel_via_presolve(F, rows, c0.end):
        e1 = c1.vec_to_matrix(vec)
        e0 = c0.vec_to_matrix({kk: v for kk, v in vec.items() if kk >= c1.end})
        basis.append((e1, e0))
    return basis


def _realize_endo_total(T, e1, e0):
    """Strict chain endo as one block-diagonal matrix on the total space."""
    F = T.alg.field
    src1, _, m1 = e1.realize()
    src0, _, m0 = e0.realize()
    blocks = list(m1) + list(m0)
    total = sum(b.nrows for b in blocks)
    rows = [{} for _ in range(total)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j, v in b.rows[i].items():
                rows[off + i][off + j] = v
        off += b.nrows
    return ExactMatrix(F, total, total, rows)


def _scalar_part_matrix(alg, m):
    """Vertex-diagonal scalar parts of an AlgMatrix as an ExactMatrix."""
    F = alg.field
    rows = [{} for _ in range(len(m.row_verts))]
    for (i, j), e in m.entries.items():
        if m.row_verts[i] == m.col_verts[j]:
            c = alg.elem_scalar_part(e, m.row_verts[i])
            if c != 0:
                rows[i][j] = c
    return ExactMatrix(F, len(m.row_verts), len(m.col_verts), rows)


def _scalar_to_alg(alg, verts_r, verts_c, m):
    out = AlgMatrix(alg, verts_r, verts_c)
    for i, row in enumerate(m.rows):
        for j, c in row.items():
            if verts_r[i] != verts_c[j]:
                raise AssertionError("scalar base change must preserve vertices")
            out.entries[(i, j)] = alg.elem_scale(c, alg.idempotent_elem(verts_r[i]))
    return out


def _diagonalize_scalar_idempotent(field, S, verts):
    """P, Pinv, diag for an idempotent scalar matrix, vertex blocks only.

    Pinv columns are an image basis then a kernel basis of S, computed
    per vertex group so the base change respects the grading.
    """
    n = S.nrows
    groups = {}
    for i, v in enumerate(verts):
        groups.setdefault(v, []).append(i)
    diag = [0] * n
    pinv_rows = [{} for _ in range(n)]
    for v, idxs in sorted(groups.items()):
        sub = ExactMatrix.from_rows(
            field, [[S.entry(i, j) for j in idxs] for i in idxs],
            ncols=len(idxs))
        # S acts on columns: image = column space, kernel = right kernel
        img = sub.transpose().row_space_rows()
        ker = sub.right_kernel_basis().transpose()
        local_cols = [dict(r) for r in img.rows] + [dict(r) for r in ker.rows]
        if len(local_cols) != len(idxs):
            raise AssertionError("idempotent diagonalization rank mismatch")
        # the group's new basis vectors stay at the group's own index
        # positions, keeping the base change vertex-homogeneous
        for k, col in enumerate(local_cols):
            for local_i, val in col.items():
                pinv_rows[idxs[local_i]][idxs[k]] = val
            diag[idxs[k]] = 1 if k < img.nrows else 0
    Pinv = ExactMatrix(field, n, n, pinv_rows)
    P = Pinv.inverse()
    if P is None:
        raise AssertionError("idempotent diagonalization produced a "
                             "singular base change")
    return P, Pinv, diag


def _alg_matrix_inverse_unipotent(alg, m):
    """Inverse of an AlgMatrix congruent to the identity modulo the radical.

    m = I - N with radical entries N, so the inverse is the finite
    geometric series sum N^k.
    """
    ident = AlgMatrix.identity(alg, m.row_verts)
    N = ident.sub(m)
    out = ident
    term = ident
    for _ in range(len(m.row_verts) * (alg.dim + 1) + 1):
        term = N.matmul(term)
        if term.is_zero():
            return out
        out = out.add(term)
    raise AssertionError("matrix is not unipotent")



def _split_by_idempotent(T, e1, e0):
    """Split T along a strict idempotent chain endomorphism.

    Conjugates (e1, e0) degree-wise to a 0/1 diagonal: first a scalar
    base change diagonalizing the scalar part, then the standard unit
    u = e'D + (1-e')(1-D), whose conjugation takes e' exactly to D.  The
    transported differential then has vanishing cross blocks and the two
    diagonal blocks are the summands.
    """
    alg = T.alg
    F = alg.field
    degree_data = []
    for verts, e in (((T.p1), e1), ((T.p0), e0)):
        S = _scalar_part_matrix(alg, e)
        P, Pinv, diag = _diagonalize_scalar_idempotent(F, S, verts)
        P_a = _scalar_to_alg(alg, verts, verts, P)
        Pinv_a = _scalar_to_alg(alg, verts, verts, Pinv)
        e_prime = P_a.matmul(e).matmul(Pinv_a)
        D = AlgMatrix(alg, verts, verts)
        for i, dv in enumerate(diag):
            if dv:
                D.entries[(i, i)] = alg.idempotent_elem(verts[i])
        ident = AlgMatrix.identity(alg, verts)
        u = e_prime.matmul(D).add(
            ident.sub(e_prime).matmul(ident.sub(D)))
        uinv = _alg_matrix_inverse_unipotent(alg, u)
        check = uinv.matmul(e_prime).matmul(u)
        if check.serialize() != D.serialize():
            raise AssertionError("idempotent conjugation failed")
        # total base change Q with Q e Q^-1 = D:  Q = u^-1 P
        Q = uinv.matmul(P_a)
        Qinv = Pinv_a.matmul(u)
        degree_data.append((verts, diag, Q, Qinv))
    (v1, diag1, Q1, Q1inv), (v0, diag0, Q0, Q0inv) = degree_data
    d_new = Q0.matmul(T.d).matmul(Q1inv)
    for (i, j), e in d_new.entries.items():
        if diag0[i] != diag1[j] and e:
            raise AssertionError("differential does not respect the split")
    out = []
    for keep in (1, 0):
        idx1 = [j for j, dv in enumerate(diag1) if dv == keep]
        idx0 = [i for i, dv in enumerate(diag0) if dv == keep]
        sub_p1 = tuple(v1[j] for j in idx1)
        sub_p0 = tuple(v0[i] for i in idx0)
        pos1 = {j: k for k, j in enumerate(idx1)}
        pos0 = {i: k for k, i in enumerate(idx0)}
        entries = {}
        for (i, j), e in d_new.entries.items():
            if i in pos0 and j in pos1:
                entries[(pos0[i], pos1[j])] = e
        d = AlgMatrix(alg, sub_p0, sub_p1, entries)
        out.append(TwoTermComplex(alg, sub_p1, sub_p0, d))
    return out


def decompose_complex(T, seed=0):
    """Indecomposable summands of T in the homotopy category.

    Strips contractibles, then splits along strict idempotents: for
    minimal complexes, strict and homotopy-category decompositions agree.
    """
    if T.alg.field.characteristic != 0:
        raise AlgebraError("decompose_complex requires the rationals")
    T = strip_contractible(T)
    if T.is_zero():
        return []
    basis = _strict_end_basis(T)
    if len(basis) == 1:
        return [T]
    mats = [_realize_endo_total(T, e1, e0) for (e1, e0) in basis]
    total = mats[0].nrows if mats else 0
    e = splitting.find_idempotent(T.alg.field, mats, total, seed=seed)
    if e is None:
        return [T]
    # express the found idempotent over the strict basis to get its
    # algebra-entry form
    flat = []
    for m in mats:
        vec = {}
        n = m.ncols
        for i, row in enumerate(m.rows):
            for j, v in row.items():
                vec[i * n + j] = v
        flat.append(vec)
    stacked = ExactMatrix.from_row_dicts(
        T.alg.field, len(flat), total * total, flat)
    evec = {}
    for i, row in enumerate(e.rows):
        for j, v in row.items():
            evec[i * total + j] = v
    target = ExactMatrix.from_row_dicts(T.alg.field, 1, total * total, [evec])
    sol = stacked.solve_left(target)
    if sol is None:
        raise AssertionError("idempotent escaped the strict endomorphism algebra")
    e1 = AlgMatrix(T.alg, T.p1, T.p1)
    e0 = AlgMatrix(T.alg, T.p0, T.p0)
    for k in range(len(basis)):
        c = sol.rows[0].get(k)
        if not c:
            continue
        b1, b0 = basis[k]
        scaled1 = AlgMatrix(T.alg, T.p1, T.p1,
                            {kk: T.alg.elem_scale(c, ee)
                             for kk, ee in b1.entries.items()})
        scaled0 = AlgMatrix(T.alg, T.p0, T.p0,
                            {kk: T.alg.elem_scale(c, ee)
                             for kk, ee in b0.entries.items()})
        e1 = e1.add(scaled1)
        e0 = e0.add(scaled0)
    out = []
    for part in _split_by_idempotent(T, e1, e0):
        out.extend(decompose_complex(part, seed=seed + 1))
    out.sort(key=lambda c: (g_vector(c), c.serialize()))
    return out


def complexes_isomorphic(T, U, seed=0):
    """Homotopy-equivalence test: some map has a cone that strips to zero."""
    T = strip_contractible(T)
    U = strip_contractible(U)
    if g_vector(T) != g_vector(U):
        return False
    if (tuple(sorted(T.p0)), tuple(sorted(T.p1))) != \
       (tuple(sorted(U.p0)), tuple(sorted(U.p1))):
        return False
    hs = hom_homotopy(T, U, 0)
    if hs.dim == 0:
        return T.is_zero() and U.is_zero()

    def contractible_cone(cm):
        ch = mapping_cone_chain(cm)
        ch.strip()
        return not ch.low and not ch.mid and not ch.high

    for cm in hs.reps:
        if contractible_cone(cm):
            return True
    F = T.alg.field
    rng = random.Random(seed)
    for _ in range(60):
        f1 = AlgMatrix(T.alg, U.p1, T.p1)
        f0 = AlgMatrix(T.alg, U.p0, T.p0)
        any_term = False
        for cm in hs.reps:
            c = F.from_int(rng.randint(-2, 2))
            if c == 0:
                continue
            any_term = True
            for (i, j), e in cm.f1.entries.items():
                cur = f1.entries.get((i, j), {})
                s = T.alg.elem_add(cur, T.alg.elem_scale(c, e))
                if s:
                    f1.entries[(i, j)] = s
                else:
                    f1.entries.pop((i, j), None)
            for (i, j), e in cm.f0.entries.items():
                cur = f0.entries.get((i, j), {})
                s = T.alg.elem_add(cur, T.alg.elem_scale(c, e))
                if s:
                    f0.entries[(i, j)] = s
                else:
                    f0.entries.pop((i, j), None)
        if any_term and contractible_cone(ChainMap(T, U, f1, f0)):
            return True
    return False


# -- translation between pairs and complexes ------------------------------

def presentation_complex(M):
    """Two-term complex of a minimal projective presentation of M."""
    alg = M.alg
    pres = minimal_projective_presentation(M)
    d = AlgMatrix(alg, pres.P0.verts, pres.P1.verts,
                  {(t, s): e for (t, s), e in pres.entries.items()})
    return TwoTermComplex(alg, pres.P1.verts, pres.P0.verts, d)


def pair_to_complex(M, proj_mults):
    """Complex of the pair (M, P): presentation of M plus P[1] summands."""
    alg = M.alg
    parts = [presentation_complex(M)]
    shift_verts = [v for v in range(alg.n) for _ in range(proj_mults[v])]
    if shift_verts:
        parts.append(stalk_complex(alg, shift_verts, shift=1))
    return direct_sum_complex(parts)


def complex_h0(T):
    """H^0(T) = coker(d) as a representation."""
    alg = T.alg
    src, tgt, f = T.d.realize()
    img_rows = [f[v].rows for v in range(alg.n)]
    Q, _ = quotient_rep(tgt.rep, img_rows)
    return Q


def complex_to_pair(T):
    """(M, P-multiplicities) with M = H^0(T), P the shifted summand."""
    alg = T.alg
    T = strip_contractible(T)
    M = complex_h0(T)
    pres = minimal_projective_presentation(M)
    counts = [0] * alg.n
    for v in T.p1:
        counts[v] += 1
    for v in pres.P1.verts:
        counts[v] -= 1
    if any(c < 0 for c in counts):
        raise AlgebraError("complex is not presilting: H^0 presentation "
                           "does not split off")
    return M, tuple(counts)


# -- minimal approximations ------------------------------------------------

class _AddTarget:
    """Hom data of one indecomposable target R_j for approximations."""

    def __init__(self, R):
        self.R = R
        self.end = None  # HomotopyHom(R, R) built on demand


def _end_radical_reps(R, end_hom):
    """Representatives of rad End_K(R) as strict chain maps."""
    F = R.alg.field
    dim = end_hom.dim
    if dim == 0:
        return []
    table = {}
    for i in range(dim):
        for j in range(dim):
            comp = end_hom.reps[i].compose(end_hom.reps[j])
            table[(i, j)] = end_hom.chain_map_class(comp)
    rad_coeff = splitting.radical_from_mult_table(F, table, dim)
    reps = []
    for row in rad_coeff:
        f1 = AlgMatrix(R.alg, R.p1, R.p1)
        f0 = AlgMatrix(R.alg, R.p0, R.p0)
        for k, c in row.items():
            src = end_hom.reps[k]
            for (i, j), e in src.f1.entries.items():
                cur = f1.entries.get((i, j), {})
                s = R.alg.elem_add(cur, R.alg.elem_scale(c, e))
                if s:
                    f1.entries[(i, j)] = s
                else:
                    f1.entries.pop((i, j), None)
            for (i, j), e in src.f0.entries.items():
                cur = f0.entries.get((i, j), {})
                s = R.alg.elem_add(cur, R.alg.elem_scale(c, e))
                if s:
                    f0.entries[(i, j)] = s
                else:
                    f0.entries.pop((i, j), None)
        reps.append(ChainMap(R, R, f1, f0))
    return reps


def minimal_left_approximation_summands(X, targets):
    """Chosen maps realizing the minimal left add(targets)-approximation.

    targets: pairwise non-isomorphic indecomposable complexes.  Returns a
    list of (target_index, ChainMap X -> targets[j]).
    """
    homs = [hom_homotopy(X, R, 0) for R in targets]
    cross = {}
    ends = {}
    for j, R in enumerate(targets):
        for l, Rl in enumerate(targets):
            if l == j:
                continue
            cross[(l, j)] = hom_homotopy(Rl, R, 0)
        ends[j] = hom_homotopy(R, R, 0)
    chosen = []
    for j, R in enumerate(targets):
        hs = homs[j]
        if hs.dim == 0:
            continue
        wall = []
        for l in range(len(targets)):
            if l == j:
                reps_l = _end_radical_reps(R, ends[j])
            else:
                reps_l = cross[(l, j)].reps
            if not reps_l:
                continue
            for u in homs[l].reps if l != j else homs[j].reps:
                for v in reps_l:
                    comp = v.compose(u)
                    wall.append(_class_vec(hs, comp))
        covered = RowSpace(X.alg.field, _class_dim(hs), [w for w in wall if w])
        end_reps = ends[j].reps
        for cand in hs.reps:
            vec = _class_vec(hs, cand)
            if covered.contains(vec):
                continue
            chosen.append((j, cand))
            orbit = [_class_vec(hs, e.compose(cand)) for e in end_reps]
            covered = RowSpace(
                X.alg.field, _class_dim(hs),
                list(covered.reduced) + [o for o in orbit if o])
    return chosen


def minimal_right_approximation_summands(X, targets):
    """Chosen maps realizing the minimal right add(targets)-approximation.

    Returns a list of (target_index, ChainMap targets[j] -> X).
    """
    homs = [hom_homotopy(R, X, 0) for R in targets]
    cross = {}
    ends = {}
    for j, R in enumerate(targets):
        for l, Rl in enumerate(targets):
            if l == j:
                continue
            cross[(j, l)] = hom_homotopy(R, Rl, 0)
        ends[j] = hom_homotopy(R, R, 0)
    chosen = []
    for j, R in enumerate(targets):
        hs = homs[j]
        if hs.dim == 0:
            continue
        wall = []
        for l in range(len(targets)):
            if l == j:
                reps_l = _end_radical_reps(R, ends[j])
                outer = homs[j].reps
            else:
                reps_l = cross[(j, l)].reps
                outer = homs[l].reps
            if not reps_l:
                continue
            for v in outer:
                for u in reps_l:
                    comp = v.compose(u)
                    wall.append(_class_vec(hs, comp))
        covered = RowSpace(X.alg.field, _class_dim(hs), [w for w in wall if w])
        end_reps = ends[j].reps
        for cand in hs.reps:
            vec = _class_vec(hs, cand)
            if covered.contains(vec):
                continue
            chosen.append((j, cand))
            orbit = [_class_vec(hs, cand.compose(e)) for e in end_reps]
            covered = RowSpace(
                X.alg.field, _class_dim(hs),
                list(covered.reduced) + [o for o in orbit if o])
    return chosen


def _class_dim(hs):
    return hs.classes.ambient


def _class_vec(hs, cm):
    vec = {}
    hs.c1.matrix_to_vec(cm.f1, vec)
    hs.c0.matrix_to_vec(cm.f0, vec)
    return hs.homotopies.reduce(vec)


def assemble_left_approximation(X, targets, chosen):
    """Stack chosen maps into one chain map X -> (+) chosen targets."""
    alg = X.alg
    parts = [targets[j] for j, _ in chosen]
    if not parts:
        tgt = TwoTermComplex(alg, (), ())
        return ChainMap(X, tgt,
                        AlgMatrix(alg, (), X.p1), AlgMatrix(alg, (), X.p0))
    tgt = direct_sum_complex(parts)
    f1 = AlgMatrix(alg, tgt.p1, X.p1)
    f0 = AlgMatrix(alg, tgt.p0, X.p0)
    off1 = off0 = 0
    for (j, cm) in chosen:
        R = targets[j]
        for (i, jj), e in cm.f1.entries.items():
            f1.entries[(off1 + i, jj)] = e
        for (i, jj), e in cm.f0.entries.items():
            f0.entries[(off0 + i, jj)] = e
        off1 += len(R.p1)
        off0 += len(R.p0)
    return ChainMap(X, tgt, f1, f0)


def assemble_right_approximation(X, targets, chosen):
    """Stack chosen maps into one chain map (+) chosen targets -> X."""
    alg = X.alg
    parts = [targets[j] for j, _ in chosen]
    if not parts:
        src = TwoTermComplex(alg, (), ())
        return ChainMap(src, X,
                        AlgMatrix(alg, X.p1, ()), AlgMatrix(alg, X.p0, ()))
    src = direct_sum_complex(parts)
    f1 = AlgMatrix(alg, X.p1, src.p1)
    f0 = AlgMatrix(alg, X.p0, src.p0)
    off1 = off0 = 0
    for (j, cm) in chosen:
        R = targets[j]
        for (i, jj), e in cm.f1.entries.items():
            f1.entries[(i, off1 + jj)] = e
        for (i, jj), e in cm.f0.entries.items():
            f0.entries[(i, off0 + jj)] = e
        off1 += len(R.p1)
        off0 += len(R.p0)
    return ChainMap(src, X, f1, f0)


def minimal_left_approximation(X, T, seed=0):
    """Minimal left add(T)-approximation of X, as a chain map X -> T'."""
    targets = []
    for s in decompose_complex(T, seed=seed):
        if not any(complexes_isomorphic(s, t, seed=seed) for t in targets):
            targets.append(s)
    chosen = minimal_left_approximation_summands(X, targets)
    return assemble_left_approximation(X, targets, chosen)


def factors_through(g, f):
    """Whether g: X -> T'' factors through f: X -> T' in the homotopy category."""
    hs_tt = hom_homotopy(f.target, g.target, 0)
    hs_xt = hom_homotopy(g.source, g.target, 0)
    gvec = _class_vec(hs_xt, g)
    image = [_class_vec(hs_xt, r.compose(f)) for r in hs_tt.reps]
    return RowSpace(g.source.alg.field, _class_dim(hs_xt),
                    [v for v in image if v]).contains(gvec)


def complex_to_json_dict(T):
    """JSON form: per-vertex multiplicities and the differential as
    coefficient lists over the path basis, rows indexed by degree -1
    summands."""
    alg = T.alg
    F = alg.field
    p1 = [0] * alg.n
    for v in T.p1:
        p1[v] += 1
    p0 = [0] * alg.n
    for v in T.p0:
        p0[v] += 1
    d = []
    for j in range(len(T.p1)):
        row = []
        for i in range(len(T.p0)):
            e = T.d.get(i, j)
            row.append([F.to_string(e.get(b, F.zero))
                        for b in range(alg.dim)])
        d.append(row)
    return {"p_minus1": p1, "p_zero": p0, "d": d}
