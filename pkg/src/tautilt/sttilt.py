"""Support tau-tilting pairs: rigidity, completions, mutation, Hasse quiver.

A pair is stored as its two-term silting-side avatar: a list of stripped
indecomposable complexes, each either a shifted projective Q[1] (empty
degree 0) or the minimal presentation of an indecomposable module.  The
module-side data (H^0 summands, projective part) is derived on demand.

Mutation runs on the complex side.  Removing one summand and forming the
cone over the minimal left approximation into the rest gives the down
mutation whenever that cone strips back to two terms; otherwise the
other completion lies upward and is reached through the dual cocone.
Exactly one of the two directions stays two-term, which orients every
exchange without any order computation.

Enumeration is a BFS through down mutations from the pair (A, 0); in the
tau-tilting finite case a finite connected component is the whole poset,
and every node is reachable downward from the maximum, so termination
with an exhausted frontier certifies completeness.
"""

import json
from collections import deque

from .algebra import AlgebraError
from .linalg import ExactMatrix
from . import modrep as mr
from . import twoterm as tt


class NotTauRigidError(AlgebraError):
    pass


class InvariantViolation(RuntimeError):
    """A certified internal invariant failed; enumeration aborts."""


# -- pairs ----------------------------------------------------------------

class TauRigidPair:
    """Basic tau-rigid pair, carried by indecomposable complex summands."""

    __slots__ = ("alg", "summands", "_gmat", "_modules", "_proj")

    def __init__(self, alg, summands):
        self.alg = alg
        self.summands = tuple(sorted(
            summands, key=lambda c: (tt.g_vector(c), c.serialize())))
        self._gmat = None
        self._modules = None
        self._proj = None

    @property
    def size(self):
        return len(self.summands)

    def g_matrix(self):
        if self._gmat is None:
            self._gmat = tt.g_matrix(self.summands)
        return self._gmat

    def key(self):
        """Canonical dedup key: the column-sorted g-matrix."""
        return tuple(sorted(self.g_matrix()))

    def module_summands(self):
        """H^0 of the non-shift summands (each indecomposable)."""
        if self._modules is None:
            mods = []
            for c in self.summands:
                if c.p0:
                    mods.append(tt.complex_h0(c))
            self._modules = mods
        return self._modules

    def projective_part(self):
        """Multiplicity vector of the shifted summands Q[1]."""
        if self._proj is None:
            mults = [0] * self.alg.n
            for c in self.summands:
                if not c.p0:
                    for v in c.p1:
                        mults[v] += 1
            self._proj = tuple(mults)
        return self._proj

    def module(self):
        return mr.direct_sum(self.alg, self.module_summands())

    def whole_complex(self):
        if not self.summands:
            return tt.TwoTermComplex(self.alg, (), ())
        return tt.direct_sum_complex(self.summands)

    def __repr__(self):
        return f"TauRigidPair({list(self.summands)!r})"


def pair_from_module_data(alg, M, proj_mults, seed=0, check=True):
    """Build a basic pair from a module and projective multiplicities.

    Decomposes M, drops duplicate summands (basic closure), validates
    tau-rigidity unless check=False.
    """
    summands = []
    groups = mr.group_by_iso(mr.decompose(M, seed=seed), seed=seed)
    basic = [g[0] for g in groups]
    for part in basic:
        summands.append(tt.strip_contractible(tt.presentation_complex(part)))
    for v in range(alg.n):
        if proj_mults[v] >= 1:
            summands.append(tt.stalk_complex(alg, (v,), shift=1))
    pair = TauRigidPair(alg, summands)
    if check and not is_tau_rigid_pair(M, proj_mults):
        raise NotTauRigidError("pair is not tau-rigid")
    return pair


def is_tau_rigid_pair(M, proj_mults):
    """Hom(M, tau M) = 0 and Hom(P, M) = 0 for P = (+) P_v^{mults}."""
    alg = M.alg
    tm = mr.tau(M)
    if mr.hom_space(M, tm):
        return False
    # Hom(P_v, M) = M e_v, so the projective part only needs support checks
    for v in range(alg.n):
        if proj_mults[v] > 0 and M.dims[v] != 0:
            return False
    return True


def tau_tilting_pair_from_summands(alg, summands):
    pair = TauRigidPair(alg, summands)
    if pair.size != alg.n:
        raise NotTauRigidError(
            f"expected {alg.n} summands, got {pair.size}")
    return pair


def pairs_isomorphic(p, q, seed=0):
    """Isomorphism of pairs: equal projective parts, matched module summands."""
    if p.alg is not q.alg or p.size != q.size:
        return False
    if p.projective_part() != q.projective_part():
        return False
    mods_p = list(p.module_summands())
    mods_q = list(q.module_summands())
    if len(mods_p) != len(mods_q):
        return False
    used = [False] * len(mods_q)
    for mp in mods_p:
        for i, mq in enumerate(mods_q):
            if not used[i] and mr.modules_isomorphic(mp, mq, seed=seed):
                used[i] = True
                break
        else:
            return False
    return True


# -- completions ------------------------------------------------------------

def _basic_summand_union(alg, complexes, seed=0):
    """Iso-dedup a list of stripped indecomposable complexes."""
    out = []
    for c in complexes:
        if not any(tt.complexes_isomorphic(c, d, seed=seed) for d in out):
            out.append(c)
    return out


def _pair_targets(pair, seed=0):
    return _basic_summand_union(pair.alg, list(pair.summands), seed=seed)


def bongartz_completion(pair, seed=0):
    """Maximum completion: cocone of the minimal right approximation of A[1]."""
    alg = pair.alg
    _require_tau_rigid(pair)
    shifted = tt.algebra_stalk(alg, 1)
    targets = _pair_targets(pair, seed=seed)
    chosen = tt.minimal_right_approximation_summands(shifted, targets)
    f = tt.assemble_right_approximation(shifted, targets, chosen)
    ch = tt.mapping_cone_chain(f)  # degrees (-1, 0, +1) after [-1]
    ch.strip()
    if ch.high:
        raise AssertionError("Bongartz cocone failed to stay two-term")
    Z = tt.TwoTermComplex(
        alg, tuple(ch.low), tuple(ch.mid),
        tt.AlgMatrix(alg, tuple(ch.mid), tuple(ch.low), ch.d_low))
    new_summands = tt.decompose_complex(Z, seed=seed)
    summands = _basic_summand_union(
        alg, list(pair.summands) + new_summands, seed=seed)
    return tau_tilting_pair_from_summands(alg, summands)


def minimal_completion(pair, seed=0):
    """Minimum completion: cone of the minimal left approximation of A."""
    alg = pair.alg
    _require_tau_rigid(pair)
    stalk = tt.algebra_stalk(alg, 0)
    targets = _pair_targets(pair, seed=seed)
    chosen = tt.minimal_left_approximation_summands(stalk, targets)
    f = tt.assemble_left_approximation(stalk, targets, chosen)
    Z = tt.cone_two_term(f)
    Z = tt.strip_contractible(Z)
    new_summands = tt.decompose_complex(Z, seed=seed)
    summands = _basic_summand_union(
        alg, list(pair.summands) + new_summands, seed=seed)
    return tau_tilting_pair_from_summands(alg, summands)


def _require_tau_rigid(pair):
    M = pair.module()
    if not is_tau_rigid_pair(M, pair.projective_part()):
        raise NotTauRigidError("input pair is not tau-rigid")


# -- mutation ----------------------------------------------------------------

def _mutate_summands(alg, summands, index, seed=0):
    """Exchange one summand; returns (new_summand, direction)."""
    X = summands[index]
    rest = [c for k, c in enumerate(summands) if k != index]
    # down attempt: cone over the minimal left approximation into add(rest)
    chosen = tt.minimal_left_approximation_summands(X, rest)
    f = tt.assemble_left_approximation(X, rest, chosen)
    ch = tt.mapping_cone_chain(f)  # degrees (-2, -1, 0)
    ch.strip()
    if not ch.low:
        new = tt.TwoTermComplex(
            alg, tuple(ch.mid), tuple(ch.high),
            tt.AlgMatrix(alg, tuple(ch.high), tuple(ch.mid), ch.d_high))
        if new.is_zero():
            raise InvariantViolation("mutation produced a zero summand")
        return new, "down"
    # up: cocone over the minimal right approximation from add(rest)
    chosen = tt.minimal_right_approximation_summands(X, rest)
    f = tt.assemble_right_approximation(X, rest, chosen)
    ch = tt.mapping_cone_chain(f)  # degrees (-1, 0, +1)
    ch.strip()
    if ch.high:
        raise InvariantViolation(
            "neither mutation direction stayed two-term")
    new = tt.TwoTermComplex(
        alg, tuple(ch.low), tuple(ch.mid),
        tt.AlgMatrix(alg, tuple(ch.mid), tuple(ch.low), ch.d_low))
    if new.is_zero():
        raise InvariantViolation("mutation produced a zero summand")
    return new, "up"


def mutate(pair, index, seed=0):
    """Replace summand `index` (1-based) by the other completion.

    Returns (pair, direction), direction "down" when the result is
    smaller in the order.
    """
    if not 1 <= index <= pair.size:
        raise AlgebraError(f"summand index {index} out of range")
    if pair.size != pair.alg.n:
        raise NotTauRigidError("mutation needs a tau-tilting pair")
    new, direction = _mutate_summands(
        pair.alg, list(pair.summands), index - 1, seed=seed)
    rest = [c for k, c in enumerate(pair.summands) if k != index - 1]
    return TauRigidPair(pair.alg, rest + [new]), direction


# -- order -------------------------------------------------------------------

def leq(U, T, seed=0):
    """U <= T in the support tau-tilting order: Fac(M_U) inside Fac(M_T)."""
    MT = T.module()
    for s in U.module_summands():
        if not mr.in_fac(s, MT):
            return False
    return True


def silting_leq(U, T):
    """U <= T on the silting side: Hom(T, U[1]) = 0."""
    return tt.hom_homotopy(T.whole_complex(), U.whole_complex(), 1).dim == 0


# -- Hasse quiver -------------------------------------------------------------

class HasseGraph:
    """Nodes, labeled edges and flags of the enumerated mutation quiver."""

    def __init__(self, alg, pairs, edges, complete, seed=0):
        self.alg = alg
        order = sorted(range(len(pairs)), key=lambda i: pairs[i].key())
        relabel = {old: new for new, old in enumerate(order)}
        self.nodes = [pairs[i] for i in order]
        self.edges = sorted(
            (relabel[s], relabel[d], i) for (s, d, i) in edges)
        self.complete = complete
        self.max_node = self._find_key(
            TauRigidPair(alg, [tt.stalk_complex(alg, (v,), 0)
                               for v in range(alg.n)]).key())
        self.min_node = self._find_key(
            TauRigidPair(alg, [tt.stalk_complex(alg, (v,), 1)
                               for v in range(alg.n)]).key())

    def _find_key(self, key):
        for i, p in enumerate(self.nodes):
            if p.key() == key:
                return i
        return None

    def node_count(self):
        return len(self.nodes)

    def to_json_dict(self, include_matrices=True):
        nodes = []
        for i, p in enumerate(self.nodes):
            entry = {
                "id": i,
                "g_matrix": [list(col) for col in p.g_matrix()],
                "module_summands": [
                    _module_json(m, include_matrices)
                    for m in p.module_summands()],
                "projective_part": list(p.projective_part()),
            }
            nodes.append(entry)
        return {
            "nodes": nodes,
            "edges": [{"src": s, "dst": d, "index": i + 1}
                      for (s, d, i) in self.edges],
            "flags": {"complete": self.complete},
        }

    def to_json(self, include_matrices=True):
        return json.dumps(self.to_json_dict(include_matrices),
                          indent=2, sort_keys=True)

    def to_dot(self):
        lines = ["digraph sttilt {"]
        for i, p in enumerate(self.nodes):
            label = ";".join(
                ",".join(str(x) for x in col) for col in p.g_matrix())
            lines.append(f'  n{i} [label="[{label}]"];')
        for (s, d, i) in self.edges:
            lines.append(f'  n{s} -> n{d} [label="{i + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _module_json(M, include_matrices=True):
    out = {"dim_vector": list(M.dims)}
    if include_matrices:
        arrows = {}
        F = M.alg.field
        for ai, arrow in enumerate(M.alg.arrows):
            mat = M.maps[ai]
            arrows[arrow.name] = [
                [F.to_string(mat.entry(i, j)) for j in range(mat.ncols)]
                for i in range(mat.nrows)]
        out["arrows"] = arrows
    return out


def enumerate_sttilt(alg, max_nodes=10 ** 6, max_depth=None, seed=0):
    """BFS of the Hasse quiver by down mutations from the pair (A, 0).

    Nodes are deduplicated by the column-sorted g-matrix, with an
    isomorphism check confirming every collision; a true collision of
    non-isomorphic pairs aborts the run.  If the frontier exhausts within
    the limits, the graph is the complete Hasse quiver.
    """
    top = TauRigidPair(
        alg, [tt.stalk_complex(alg, (v,), 0) for v in range(alg.n)])
    pairs = [top]
    ids = {top.key(): 0}
    edges = []
    # queue entries carry the index of the summand created on arrival:
    # mutating there provably returns the parent (an almost complete pair
    # has exactly two completions), so that direction is skipped
    queue = deque([(0, 0, None)])
    complete = True
    while queue:
        node_id, depth, skip = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            complete = False
            continue
        pair = pairs[node_id]
        for i in range(alg.n):
            if i == skip:
                continue
            new, direction = _mutate_summands(
                alg, list(pair.summands), i, seed=seed)
            if direction != "down":
                continue  # the up edge is discovered from the other end
            rest = [c for k, c in enumerate(pair.summands) if k != i]
            child = TauRigidPair(alg, rest + [new])
            key = child.key()
            known = ids.get(key)
            if known is None:
                if len(pairs) >= max_nodes:
                    complete = False
                    continue
                ids[key] = len(pairs)
                pairs.append(child)
                known = ids[key]
                born_at = next(k for k, c in enumerate(child.summands)
                               if c is new)
                queue.append((known, depth + 1, born_at))
            else:
                if not pairs_isomorphic(pairs[known], child, seed=seed):
                    raise InvariantViolation(
                        "distinct pairs share a g-matrix; this collision "
                        "contradicts the enumeration's canonical key")
            edges.append((node_id, known, i))
    return HasseGraph(alg, pairs, edges, complete, seed=seed)


class FinitenessResult:
    def __init__(self, kind, count=None, graph=None):
        self.kind = kind  # "finite" | "unknown"
        self.count = count
        self.graph = graph

    def __repr__(self):
        if self.kind == "finite":
            return f"Finite({self.count})"
        return "Unknown(bound exceeded)"


def is_tau_tilting_finite(alg, max_nodes=10 ** 6, seed=0):
    """Finite(count) when the enumeration completes, Unknown otherwise."""
    graph = enumerate_sttilt(alg, max_nodes=max_nodes, seed=seed)
    if graph.complete:
        return FinitenessResult("finite", graph.node_count(), graph)
    return FinitenessResult("unknown", graph=graph)


# -- classical tilting ---------------------------------------------------------

def annihilator_dim(M):
    """Dimension of the annihilator of M in A."""
    alg = M.alg
    F = alg.field
    rows = []
    for b in range(alg.dim):
        act = M.path_matrix(b)
        vec = {}
        s, t = alg.basis_source[b], alg.basis_target[b]
        for i in range(act.nrows):
            for j, v in act.rows[i].items():
                vec[(s, t, i, j)] = v
        rows.append(vec)
    # re-key the sparse coordinates densely
    keys = {}
    for vec in rows:
        for k in vec:
            if k not in keys:
                keys[k] = len(keys)
    mat_rows = [{keys[k]: v for k, v in vec.items()} for vec in rows]
    mat = ExactMatrix.from_row_dicts(F, alg.dim, len(keys), mat_rows)
    return mat.left_kernel_rows().nrows


def is_classical_tilting(M, seed=0):
    """Faithful tau-tilting module test."""
    alg = M.alg
    if M.total_dim == 0:
        return alg.n == 0
    if annihilator_dim(M) != 0:
        return False
    if not is_tau_rigid_pair(M, (0,) * alg.n):
        return False
    groups = mr.group_by_iso(mr.decompose(M, seed=seed), seed=seed)
    return len(groups) == alg.n
