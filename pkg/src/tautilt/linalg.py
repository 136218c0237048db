"""Exact sparse linear algebra over Q or GF(p).

Matrices are immutable-by-convention sparse row dicts.  The single
elimination engine picks pivots by minimizing scalar bit-size (ties by
(row, col) position) through a lazy heap, which keeps coefficient growth
and fill-in low on the very sparse, mostly-unit systems this package
produces.  All reduced outputs are canonicalized to the reduced row
echelon form of the row space, so results do not depend on the pivot
order.

0 x n and n x 0 matrices are legal and behave as empty maps.
"""

import heapq


class ExactMatrix:
    """Sparse exact matrix: list of {col: scalar} rows over a field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rows(field, data, ncols=None):
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            rows.append({j: v for j, v in enumerate(r) if v != 0})
        return ExactMatrix(field, nrows, ncols, rows)

    @staticmethod
    def zero(field, nrows, ncols):
        return ExactMatrix(field, nrows, ncols, [{} for _ in range(nrows)])

    @staticmethod
    def identity(field, n):
        one = field.one
        return ExactMatrix(field, n, n, [{i: one} for i in range(n)])

    @staticmethod
    def from_row_dicts(field, nrows, ncols, rows):
        return ExactMatrix(field, nrows, ncols, [dict(r) for r in rows])

    # -- basics ---------------------------------------------------------

    def entry(self, i, j):
        return self.rows[i].get(j, self.field.zero)

    def to_lists(self):
        z = self.field.zero
        return [[self.rows[i].get(j, z) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def is_zero(self):
        return all(not r for r in self.rows)

    def copy_rows(self):
        return [dict(r) for r in self.rows]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field!r})"

    # -- arithmetic -----------------------------------------------------

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        F = self.field
        add, mul = F.add, F.mul
        out = []
        orows = other.rows
        for r in self.rows:
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    c = mul(a, b)
                    if j in acc:
                        s = add(acc[j], c)
                        if s == 0:
                            del acc[j]
                        else:
                            acc[j] = s
                    elif c != 0:
                        acc[j] = c
            out.append(acc)
        return ExactMatrix(F, self.nrows, other.ncols, out)

    def add(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix sum")
        F = self.field
        out = []
        for r, s in zip(self.rows, other.rows):
            acc = dict(r)
            for j, v in s.items():
                if j in acc:
                    t = F.add(acc[j], v)
                    if t == 0:
                        del acc[j]
                    else:
                        acc[j] = t
                else:
                    acc[j] = v
            out.append(acc)
        return ExactMatrix(F, self.nrows, self.ncols, out)

    def neg(self):
        F = self.field
        return ExactMatrix(F, self.nrows, self.ncols,
                           [{j: F.neg(v) for j, v in r.items()} for r in self.rows])

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        F = self.field
        if c == 0:
            return ExactMatrix.zero(F, self.nrows, self.ncols)
        return ExactMatrix(F, self.nrows, self.ncols,
                           [{j: F.mul(c, v) for j, v in r.items()} for r in self.rows])

    def transpose(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return ExactMatrix(self.field, self.ncols, self.nrows, rows)

    @staticmethod
    def vstack(field, mats, ncols=None):
        mats = list(mats)
        if ncols is None:
            if not mats:
                raise ValueError("vstack of nothing needs ncols")
            ncols = mats[0].ncols
        rows = []
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack width mismatch")
            rows.extend(dict(r) for r in m.rows)
        return ExactMatrix(field, len(rows), ncols, rows)

    @staticmethod
    def hstack(field, mats, nrows=None):
        mats = list(mats)
        if nrows is None:
            if not mats:
                raise ValueError("hstack of nothing needs nrows")
            nrows = mats[0].nrows
        rows = [{} for _ in range(nrows)]
        off = 0
        for m in mats:
            if m.nrows != nrows:
                raise ValueError("hstack height mismatch")
            for i, r in enumerate(m.rows):
                for j, v in r.items():
                    rows[i][off + j] = v
            off += m.ncols
        return ExactMatrix(field, nrows, off, rows)

    # -- elimination-backed queries --------------------------------------

    def rref(self):
        """Canonical reduced row echelon form of the row space.

        Returns (pivot_cols, rows) with rows sorted by pivot column; this
        is the unique RREF basis of the row space, independent of pivot
        strategy.
        """
        pivots, rows, _ = _row_reduce(self.field, self.copy_rows())
        return pivots, rows

    def rank(self):
        return len(self.rref()[0])

    def right_kernel_basis(self):
        """Columns spanning {x : self . x = 0}; rank + kernel cols = ncols."""
        pivots, rows = self.rref()
        pivot_of = {c: r for r, c in enumerate(pivots)}
        F = self.field
        free = [j for j in range(self.ncols) if j not in pivot_of]
        cols = []
        for j in free:
            vec = {j: F.one}
            for c in pivots:
                v = rows[pivot_of[c]].get(j)
                if v is not None:
                    vec[c] = F.neg(v)
            cols.append(vec)
        out = [{} for _ in range(self.ncols)]
        for k, vec in enumerate(cols):
            for i, v in vec.items():
                out[i][k] = v
        return ExactMatrix(F, self.ncols, len(cols), out)

    def left_kernel_rows(self):
        """Rows spanning {v : v . self = 0}."""
        return self.transpose().right_kernel_basis().transpose()

    def row_space_rows(self):
        """Canonical (RREF) basis of the row space as a matrix."""
        pivots, rows = self.rref()
        return ExactMatrix(self.field, len(rows), self.ncols, rows)

    def solve_right(self, g):
        """One h with self . h = g (reduced-echelon particular solution) or None."""
        if g.nrows != self.nrows:
            raise ValueError("row counts incompatible in solve")
        F = self.field
        r = self.ncols
        aug = []
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for j, v in g.rows[i].items():
                row[r + j] = v
            aug.append(row)
        pivots, rows, leftover = _row_reduce(F, aug, pivot_limit=r)
        if any(leftover):
            return None  # a row with no coefficient support stayed nonzero
        h_rows = [{} for _ in range(r)]
        for pcol, row in zip(pivots, rows):
            for j, v in row.items():
                if j >= r:
                    h_rows[pcol][j - r] = v
        return ExactMatrix(F, r, g.ncols, h_rows)

    def solve_left(self, g):
        """One h with h . self = g, or None."""
        ht = self.transpose().solve_right(g.transpose())
        return None if ht is None else ht.transpose()

    def inverse(self):
        if self.nrows != self.ncols:
            return None
        h = self.solve_right(ExactMatrix.identity(self.field, self.nrows))
        if h is None or h.mul(self) != ExactMatrix.identity(self.field, self.nrows):
            return None
        return h


def solve_factorization(f, g):
    """Given f and g with equal row counts, one h with g = f . h, or None."""
    return f.solve_right(g)


def kernel_basis(m):
    """Columns spanning the right kernel of m."""
    return m.right_kernel_basis()


def _row_reduce(field, rows, pivot_limit=None):
    """Destructive sparse RREF engine.

    Pivot selection: the live entry minimizing (bit_size, row, col),
    through a lazy heap (stale entries are skipped).  Only columns below
    `pivot_limit` are pivot-eligible (None: all).  Returns
    (pivot_cols, pivot_rows, leftover_rows): pivot rows are the canonical
    RREF of the pivotable part sorted by pivot column, leftovers are the
    (reduced) rows supported entirely on non-eligible columns.
    """
    bit = field.bit_size
    sub, mul, neg = field.sub, field.mul, field.neg
    eligible = (lambda c: True) if pivot_limit is None else (lambda c: c < pivot_limit)

    cols = {}  # col -> set of active row ids having an entry there
    heap = []
    for i, r in enumerate(rows):
        for j, v in r.items():
            cols.setdefault(j, set()).add(i)
            if eligible(j):
                heap.append((bit(v), i, j))
    heapq.heapify(heap)

    active = [bool(r) for r in rows]
    pivot_seq = []  # (pivot_col, row dict) in retirement order

    while heap:
        b, i, j = heapq.heappop(heap)
        if not active[i]:
            continue
        v = rows[i].get(j)
        if v is None or bit(v) != b:
            continue  # stale heap entry
        # pivot at (i, j): normalize, eliminate the column, retire the row
        row = rows[i]
        if v != field.one:
            inv = field.inv(v)
            for c in list(row):
                row[c] = mul(inv, row[c])
        active[i] = False
        for c in row:
            s = cols.get(c)
            if s is not None:
                s.discard(i)
        others = cols.get(j)
        if others:
            for k in list(others):
                if not active[k]:
                    others.discard(k)
                    continue
                rk = rows[k]
                factor = rk.get(j)
                if factor is None:
                    others.discard(k)
                    continue
                for c, pv in row.items():
                    delta = mul(factor, pv)
                    cur = rk.get(c)
                    if cur is None:
                        nv = neg(delta)
                        if nv != 0:
                            rk[c] = nv
                            cols.setdefault(c, set()).add(k)
                            if eligible(c):
                                heapq.heappush(heap, (bit(nv), k, c))
                    else:
                        nv = sub(cur, delta)
                        if nv == 0:
                            del rk[c]
                            cs = cols.get(c)
                            if cs is not None:
                                cs.discard(k)
                        else:
                            rk[c] = nv
                            if eligible(c):
                                heapq.heappush(heap, (bit(nv), k, c))
                if not rk:
                    active[k] = False
        pivot_seq.append((j, row))

    # Canonicalization: the forward phase yields a low-fill basis of the
    # pivotable row space; a leftmost-pivot ascending sweep turns it into
    # the unique RREF, independent of the pivot order used above.  A live
    # column index is required because eliminations move entries around;
    # fill-in only lands at columns right of the current pivot, so one
    # ascending sweep (with pushed fill-in columns) is exhaustive.
    work = [r for _, r in pivot_seq]
    nwork = len(work)
    used = [False] * nwork
    live = {}  # col -> set of unpivoted work-row ids currently having col
    colheap = []
    for idx, r in enumerate(work):
        for c in r:
            if eligible(c):
                live.setdefault(c, set()).add(idx)
    colheap = sorted(live)
    heapq.heapify(colheap)
    seen_cols = set(colheap)
    done = []

    while colheap:
        c = heapq.heappop(colheap)
        cand = sorted(i for i in live.get(c, ()) if not used[i] and c in work[i])
        if not cand:
            continue
        i0 = cand[0]
        row = work[i0]
        used[i0] = True
        for cc in row:
            s = live.get(cc)
            if s is not None:
                s.discard(i0)
        v = row[c]
        if v != field.one:
            inv = field.inv(v)
            for cc in list(row):
                row[cc] = mul(inv, row[cc])
        for i in list(live.get(c, set())):
            if used[i]:
                live[c].discard(i)
                continue
            _eliminate(field, work[i], c, row, live, i, eligible, colheap, seen_cols)
        for k in range(len(done)):
            if c in done[k][1]:
                _eliminate(field, done[k][1], c, row, None, None, eligible, None, None)
        done.append((c, row))

    leftover = [rows[i] for i in range(len(rows)) if active[i] and rows[i]]
    for idx, r in enumerate(work):
        if used[idx] or not r:
            continue
        if any(eligible(c) for c in r):
            raise AssertionError("canonical pass missed an eligible row")
        leftover.append(r)
    done.sort(key=lambda t: t[0])
    return [c for c, _ in done], [r for _, r in done], leftover


def _eliminate(field, target, c, pivot_row, live, row_id, eligible, colheap, seen_cols):
    """target -= target[c] * pivot_row, maintaining the live column index."""
    factor = target.get(c)
    if factor is None:
        return
    sub, mul, neg = field.sub, field.mul, field.neg
    for cc, pv in pivot_row.items():
        delta = mul(factor, pv)
        cur = target.get(cc)
        if cur is None:
            nv = neg(delta)
            if nv != 0:
                target[cc] = nv
                if live is not None and eligible(cc):
                    live.setdefault(cc, set()).add(row_id)
                    if cc not in seen_cols:
                        seen_cols.add(cc)
                        heapq.heappush(colheap, cc)
        else:
            nv = sub(cur, delta)
            if nv == 0:
                del target[cc]
                if live is not None:
                    s = live.get(cc)
                    if s is not None:
                        s.discard(row_id)
            else:
                target[cc] = nv


class RowSpace:
    """A subspace of k^n spanned by rows, with reduction and membership."""

    def __init__(self, field, ambient, rows=()):
        self.field = field
        self.ambient = ambient
        if isinstance(rows, ExactMatrix):
            work = rows.copy_rows()
        else:
            work = [dict(r) for r in rows]
        pivots, reduced, _ = _row_reduce(field, work)
        self.pivots = pivots
        self.pivot_of = {c: i for i, c in enumerate(pivots)}
        self.reduced = reduced

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Reduce a {col: val} vector modulo the subspace (canonical rep)."""
        F = self.field
        out = dict(vec)
        for c in sorted(set(out) & set(self.pivot_of)):
            factor = out.get(c)
            if not factor:
                continue
            row = self.reduced[self.pivot_of[c]]
            for cc, pv in row.items():
                cur = out.get(cc, F.zero)
                nv = F.sub(cur, F.mul(factor, pv))
                if nv == 0:
                    out.pop(cc, None)
                else:
                    out[cc] = nv
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def free_cols(self):
        return [j for j in range(self.ambient) if j not in self.pivot_of]


def kernel_via_presolve(field, rows, ncols):
    """Right-kernel basis vectors of a sparse homogeneous system.

    Rows with one or two entries pin variables to zero or identify them
    up to a scalar through a weighted union-find; longer rows are
    rewritten over the surviving class representatives and the (small)
    residual system runs through the generic eliminator.  Built for the
    chain-map systems, which are almost entirely two-term unit equations.

    Returns a list of {col: val} kernel vectors, RREF-canonicalized.
    """
    parent = list(range(ncols))
    one = field.one
    mult = [one] * ncols  # var = mult[var] * parent[var]
    is_zero = [False] * ncols

    def resolve(x):
        p = parent[x]
        if p == x:
            return x, one
        if parent[p] == p:
            return p, mult[x]
        # path compression, deepest first so multipliers compose correctly
        chain = [x]
        x2 = p
        while parent[x2] != x2:
            chain.append(x2)
            x2 = parent[x2]
        root = x2
        for y in reversed(chain):
            p2 = parent[y]
            if p2 != root:
                mp = mult[p2]
                if mp != one:
                    mult[y] = field.mul(mult[y], mp)
                parent[y] = root
        return root, mult[x]

    def pin_zero(x):
        r, _ = resolve(x)
        is_zero[r] = True

    def link(x, a, y, b):
        # a x + b y = 0
        rx, mx = resolve(x)
        ry, my = resolve(y)
        ca = a if mx == one else field.mul(a, mx)
        cb = b if my == one else field.mul(b, my)
        if rx == ry:
            if field.add(ca, cb) != 0:
                is_zero[rx] = True
            return
        if is_zero[rx] or is_zero[ry]:
            is_zero[rx] = is_zero[ry] = True
        # attach the larger root under the smaller for determinism
        if rx > ry:
            rx, ry, ca, cb = ry, rx, cb, ca
        # now attach ry under rx: ry = -(ca/cb) rx
        parent[ry] = rx
        mult[ry] = field.neg(field.div(ca, cb))
        if is_zero[rx]:
            is_zero[ry] = True

    pending = [dict(r) for r in rows if r]
    residual = []
    for _ in range(ncols + 2):
        nxt = []
        changed = False
        for row in pending:
            # rewrite over representatives
            acc = {}
            for x, c in row.items():
                r, m = resolve(x)
                if is_zero[r]:
                    continue
                cm = c if m == one else field.mul(c, m)
                cur = acc.get(r)
                nv = cm if cur is None else field.add(cur, cm)
                if nv == 0:
                    acc.pop(r, None)
                else:
                    acc[r] = nv
            if not acc:
                continue
            if len(acc) == 1:
                (x, _), = acc.items()
                pin_zero(x)
                changed = True
            elif len(acc) == 2:
                (x, a), (y, b) = acc.items()
                link(x, a, y, b)
                changed = True
            else:
                nxt.append(acc)
        pending = nxt
        if not changed:
            residual = pending
            break
    else:
        residual = pending

    # residual system over surviving roots
    live = set()
    for x in range(ncols):
        r, _ = resolve(x)
        if not is_zero[r]:
            live.add(r)
    live_roots = sorted(live)
    root_pos = {r: i for i, r in enumerate(live_roots)}
    res_rows = []
    for row in residual:
        acc = {}
        for x, c in row.items():
            r, m = resolve(x)
            if is_zero[r]:
                continue
            cm = c if m == one else field.mul(c, m)
            pos = root_pos[r]
            cur = acc.get(pos)
            nv = cm if cur is None else field.add(cur, cm)
            if nv == 0:
                acc.pop(pos, None)
            else:
                acc[pos] = nv
        if acc:
            res_rows.append(acc)
    if res_rows:
        res_mat = ExactMatrix.from_row_dicts(
            field, len(res_rows), len(live_roots), res_rows)
        ker = res_mat.right_kernel_basis()
        root_solutions = []
        for k in range(ker.ncols):
            root_solutions.append(
                {live_roots[i]: ker.rows[i][k]
                 for i in range(len(live_roots)) if k in ker.rows[i]})
    else:
        root_solutions = [{r: field.one} for r in live_roots]

    # expand each root solution across its class members
    members = {}
    for x in range(ncols):
        r, m = resolve(x)
        if is_zero[r]:
            continue
        members.setdefault(r, []).append((x, m))
    vectors = []
    for sol in root_solutions:
        vec = {}
        for r, val in sol.items():
            for (x, m) in members.get(r, ()):
                v = val if m == one else field.mul(m, val)
                if v != 0:
                    vec[x] = v
        if vec:
            vectors.append(vec)
    # canonical basis of the kernel space
    pivots, reduced, _ = _row_reduce(field, [dict(v) for v in vectors])
    return reduced
