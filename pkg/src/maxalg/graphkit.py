"""Graph side of max algebra: the weighted digraph D(A), its strongly
connected components, maximum cycle means, elementary circuits and the
critical graph.

Vertices are 0-based throughout the library; only the CLI prints 1-based.
"""

from collections.abc import Sequence
from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .config import DEFAULT_CIRCUIT_CAP, get_eps
from .errors import CircuitCapError, InconsistencyError, NoCircuitError, ReducibleMatrixError
from .maxcore import BOTTOM, MaxMatrix, kleene_star

# usable by every module that wants a "no limit" cap
UNLIMITED = None


@dataclass(frozen=True)
class WeightedDigraph:
    """Adjacency of D(A): ``edges[i]`` is a tuple of ``(j, log a_ij)`` for a_ij > 0."""

    n: int
    edges: tuple

    def successors(self, i):
        return [j for j, _ in self.edges[i]]

    def edge_count(self):
        return sum(len(e) for e in self.edges)

    def log_matrix(self):
        """Dense log-domain weight matrix of the graph."""
        w = np.full((self.n, self.n), BOTTOM)
        for i, row in enumerate(self.edges):
            for j, lw in row:
                w[i, j] = lw
        return w


@dataclass(frozen=True, order=True)
class Circuit:
    """Elementary circuit ``(i1, ..., ik)`` with edges i1->i2, ..., ik->i1.

    Stored in canonical rotation (smallest vertex first). ``log_product`` is
    the log of the circuit product; comparison orders by length, then by
    the vertex sequence.
    """

    length: int
    vertices: tuple
    log_product: float

    @classmethod
    def from_vertices(cls, vertices, weights):
        """Build a circuit from any rotation of its vertex cycle.

        ``weights`` is a log-domain matrix (array or MaxMatrix); a missing
        edge raises ValueError.
        """
        w = weights.log if isinstance(weights, MaxMatrix) else np.asarray(weights)
        vs = tuple(int(v) for v in vertices)
        if not vs or len(set(vs)) != len(vs):
            raise ValueError(f"not an elementary circuit: {vs}")
        k = vs.index(min(vs))
        vs = vs[k:] + vs[:k]
        total = 0.0
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if w[a, b] == BOTTOM:
                raise ValueError(f"edge ({a}, {b}) is not in the graph")
            total += float(w[a, b])
        return cls(len(vs), vs, total)

    @property
    def geo_mean(self):
        """Log of the circuit geometric mean."""
        return self.log_product / self.length

    def edges(self):
        vs = self.vertices
        return list(zip(vs, vs[1:] + vs[:1]))

    def mask(self):
        """Vertex set as an integer bitmask."""
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def one_based(self):
        return tuple(v + 1 for v in self.vertices)


class CircuitSet(Sequence):
    """Ordered, immutable circuit collection backed by flat arrays.

    Circuit k has vertices ``flat[offsets[k]:offsets[k + 1]]`` and log
    product ``log_products[k]``. Items are materialized as Circuit objects
    on access, so large enumerations stay cheap. ``truncated`` marks an
    incomplete enumeration.
    """

    def __init__(self, flat, offsets, log_products, truncated=False):
        self.flat = _frozen(np.asarray(flat, dtype=np.int64))
        self.offsets = _frozen(np.asarray(offsets, dtype=np.int64))
        self.log_products = _frozen(np.asarray(log_products, dtype=np.float64))
        self.lengths = _frozen(np.diff(self.offsets))
        self.truncated = bool(truncated)

    @classmethod
    def from_circuits(cls, circuits, truncated=False):
        circuits = list(circuits)
        flat = [v for c in circuits for v in c.vertices]
        offsets = np.concatenate([[0], np.cumsum([c.length for c in circuits], dtype=np.int64)])
        return cls(flat, offsets, [c.log_product for c in circuits], truncated)

    def __len__(self):
        return len(self.log_products)

    def vertices(self, k):
        return tuple(int(v) for v in self.flat[self.offsets[k]:self.offsets[k + 1]])

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError("circuit index out of range")
        vs = self.vertices(k)
        return Circuit(len(vs), vs, float(self.log_products[k]))

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"CircuitSet({len(self)} circuits{flag})"

    @property
    def geo_means(self):
        """Log geometric mean of every circuit."""
        return self.log_products / self.lengths

    def touches(self, vertex_flags):
        """Boolean per circuit: does it visit any vertex with a true flag?"""
        if not len(self):
            return np.zeros(0, dtype=bool)
        hit = np.asarray(vertex_flags, dtype=bool)[self.flat]
        return np.logical_or.reduceat(hit, self.offsets[:-1])

    def index_of(self, vertices):
        """Position of the circuit with this canonical vertex tuple, or -1."""
        target = np.asarray(vertices, dtype=np.int64)
        cands = np.flatnonzero((self.lengths == len(target)) & (self.flat[self.offsets[:-1]] == target[0]))
        for k in cands:
            if np.array_equal(self.flat[self.offsets[k]:self.offsets[k + 1]], target):
                return int(k)
        return -1


def _frozen(arr):
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


def _canonical_order(flat, offsets):
    """Permutation sorting circuits by (length, vertex sequence).

    The kernels emit circuits in lexicographic order of their vertex
    sequences (start vertices ascending, successors ascending, a circuit
    before its extensions), so a stable sort on length suffices.
    """
    return np.argsort(np.diff(offsets), kind="stable")


def _reorder(flat, offsets, products, order):
    lengths = np.diff(offsets)[order]
    starts = offsets[:-1][order]
    new_offsets = np.concatenate([[0], np.cumsum(lengths)])
    idx = np.repeat(starts - new_offsets[:-1], lengths) + np.arange(int(new_offsets[-1]))
    return flat[idx], new_offsets, products[order]


@dataclass(frozen=True)
class CriticalStructure:
    """Critical graph data of an irreducible matrix.

    ``mu`` is the value-domain maximum cycle geometric mean. ``components``
    lists the strongly connected components of the critical graph ordered
    by smallest vertex, and ``disjoint_circuits[s]`` is the chosen critical
    circuit inside ``components[s]``.
    """

    mu: float
    log_mu: float
    critical_vertices: tuple
    critical_edges: tuple
    critical_matrix: MaxMatrix
    components: tuple
    disjoint_circuits: tuple

    @property
    def r(self):
        return len(self.components)


def digraph_of(a):
    edges = []
    for i in range(a.n):
        row = a.log[i]
        js = np.flatnonzero(row != BOTTOM)
        edges.append(tuple((int(j), float(row[j])) for j in js))
    return WeightedDigraph(a.n, tuple(edges))


def _as_digraph(g):
    return digraph_of(g) if isinstance(g, MaxMatrix) else g


def strongly_connected_components(g):
    """Tarjan's algorithm, iterative. Components are sorted tuples, ordered by smallest vertex."""
    g = _as_digraph(g)
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(g.successors(w))))
                    pushed = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def is_irreducible(a):
    if a.n == 1:
        return bool(a.log[0, 0] != BOTTOM)
    return len(strongly_connected_components(a)) == 1


def require_irreducible(a):
    if not is_irreducible(a):
        raise ReducibleMatrixError(strongly_connected_components(a))


def log_max_cycle_mean(a):
    """Log of mu(A) by Karp's algorithm applied to each strongly connected component."""
    best = BOTTOM
    lw = a.log
    for comp in strongly_connected_components(a):
        idx = np.asarray(comp)
        sub = lw[np.ix_(idx, idx)]
        if len(comp) == 1 and sub[0, 0] == BOTTOM:
            continue
        best = max(best, kernels.karp_log_mean(np.ascontiguousarray(sub)))
    if best == BOTTOM:
        raise NoCircuitError("the digraph of the matrix has no circuit")
    return best


def max_cycle_geometric_mean(a):
    """mu(A): the maximum circuit geometric mean (value domain)."""
    return math.exp(log_max_cycle_mean(a))


def enumerate_elementary_circuits(g, cap=DEFAULT_CIRCUIT_CAP):
    """All elementary circuits of ``g`` ordered by length then vertex sequence.

    At most ``cap`` circuits are returned; when more exist the returned
    CircuitSet has ``truncated = True``. ``cap=None`` means no limit.
    """
    g = _as_digraph(g)
    w = g.log_matrix()
    limit = -1 if cap is None else int(cap)
    if limit < 0:
        limit = 2**62
    flat, offsets, products, truncated = kernels.elementary_circuits(w, limit)
    order = _canonical_order(flat, offsets)
    return CircuitSet(*_reorder(flat, offsets, products, order), truncated)


def complete_circuits(g, cap=DEFAULT_CIRCUIT_CAP):
    """Like :func:`enumerate_elementary_circuits` but raises CircuitCapError on truncation."""
    cs = enumerate_elementary_circuits(g, cap)
    if cs.truncated:
        raise CircuitCapError(cap, len(cs))
    return cs


def _gamma(a_norm, mu=1.0, eps=None):
    # A' (+) A'^2 (+) ... (+) A'^n == A' (x) star(A')
    star = kleene_star(a_norm, mu=mu, eps=eps)
    return kernels.maxplus_matmul(a_norm.log, star.log)


def _pick_circuit(comp, crit_succ):
    """Walk from the smallest vertex along smallest critical successors until a repeat."""
    members = set(comp)
    seen = {}
    walk = []
    v = comp[0]
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = min(x for x in crit_succ[v] if x in members)
    return tuple(walk[seen[v]:])


def critical_structure(a, eps=None):
    """Critical vertices, edges, critical matrix, critical SCCs and one circuit per SCC.

    Vertex i is critical iff Gamma(A')_ii = 1 and edge (i, j) iff
    a'_ij * Gamma(A')_ji = 1 (within tolerance), where A' = A / mu(A) and
    Gamma(A') = A' (+) ... (+) A'^n.
    """
    eps = get_eps(eps)
    require_irreducible(a)
    log_mu = log_max_cycle_mean(a)
    a_norm = MaxMatrix(a.log - log_mu)
    gamma = _gamma(a_norm, eps=eps)
    n = a.n
    diag = np.diag(gamma)
    crit_v = tuple(int(i) for i in range(n) if abs(diag[i]) <= eps)
    closing = a_norm.log + gamma.T
    mask = np.zeros((n, n), dtype=bool)
    finite = a_norm.log != BOTTOM
    mask[finite] = np.abs(closing[finite]) <= eps
    crit_e = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(mask)))
    cmat = MaxMatrix(np.where(mask, a.log, BOTTOM))
    crit_succ = {v: [] for v in crit_v}
    for i, j in crit_e:
        crit_succ[i].append(j)
    comps = [c for c in strongly_connected_components(cmat) if c[0] in crit_succ]
    circuits = []
    for comp in comps:
        cyc = Circuit.from_vertices(_pick_circuit(comp, crit_succ), a.log)
        if abs(cyc.geo_mean - log_mu) > eps:
            raise InconsistencyError(
                f"circuit {cyc.one_based()} in the critical graph has geometric mean "
                f"{math.exp(cyc.geo_mean):.12g}, expected {math.exp(log_mu):.12g}"
            )
        circuits.append(cyc)
    return CriticalStructure(
        mu=math.exp(log_mu),
        log_mu=log_mu,
        critical_vertices=crit_v,
        critical_edges=crit_e,
        critical_matrix=cmat,
        components=tuple(comps),
        disjoint_circuits=tuple(circuits),
    )


def reaching_vertices(g, j):
    """Vertices from which ``j`` is reachable in ``g`` (including ``j``)."""
    g = _as_digraph(g)
    pred = [[] for _ in range(g.n)]
    for i in range(g.n):
        for k in g.successors(i):
            pred[k].append(i)
    seen = {j}
    stack = [j]
    while stack:
        v = stack.pop()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return sorted(seen)


def local_radius(a, j, cap=DEFAULT_CIRCUIT_CAP):
    """Local spectral radius r_{e_j}(A).

    The best circuit geometric mean among circuits from which ``j`` can be
    reached, found by enumerating circuits of the subgraph induced on the
    vertices that reach ``j``. Returns 0.0 when no circuit reaches ``j``.
    """
    if not 0 <= j < a.n:
        raise IndexError(f"vertex {j} out of range for dimension {a.n}")
    keep = np.asarray(reaching_vertices(a, j))
    sub = MaxMatrix(a.log[np.ix_(keep, keep)])
    circuits = complete_circuits(sub, cap)
    if not len(circuits):
        return 0.0
    return math.exp(float(circuits.geo_means.max()))


def local_radii(a, cap=DEFAULT_CIRCUIT_CAP):
    """Local spectral radius of every unit vector from a single circuit enumeration.

    A circuit reaches j iff its first vertex does, so r_{e_j} is the best
    geometric mean over circuits whose first vertex reaches j.
    """
    circuits = complete_circuits(a, cap)
    g = digraph_of(a)
    out = []
    means = circuits.geo_means
    firsts = circuits.flat[circuits.offsets[:-1]] if len(circuits) else np.zeros(0, dtype=np.int64)
    for j in range(a.n):
        flags = np.zeros(a.n, dtype=bool)
        flags[reaching_vertices(g, j)] = True
        sel = flags[firsts]
        out.append(math.exp(float(means[sel].max())) if sel.any() else 0.0)
    return out
