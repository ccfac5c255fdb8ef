"""Mutation-sunflower matrices and the principal eigencone basis built from them.

For a critical circuit C of the normalized matrix A' = A / mu(A), a
mutation-sunflower matrix keeps exactly one entry of A' per row: the rows
of C take C's edges, and every other row takes the edge of the heaviest
(by circuit product) noncritical circuit through C that still has that
row undetermined. Its functional graph has C as the only cycle, so its
eigenvector is obtained by propagation along successor links.
"""

from dataclasses import dataclass, field
import logging
import math

import numpy as np

from .config import DEFAULT_CIRCUIT_CAP, get_eps
from .errors import ArgumentError, CircuitCapError, InconsistencyError
from .graphkit import (
    Circuit,
    CircuitSet,
    complete_circuits,
    critical_structure,
    require_irreducible,
)
from .maxcore import BOTTOM, MaxMatrix, MaxVector, eigen_residual, is_independent, scale

log = logging.getLogger(__name__)

DEFAULT_VARIANT_LIMIT = 4096


@dataclass(frozen=True)
class FillStep:
    """One step of the row filling: ``rows`` received their entry from ``circuit``.

    ``fallback`` is set when the circuit does not touch the source circuit
    and was used only because circuits through it could not fill every row.
    """

    circuit: Circuit
    rows: tuple
    fallback: bool = False


@dataclass(frozen=True)
class SunflowerMatrix:
    """A mutation-sunflower matrix of the normalized matrix.

    ``base`` holds entries of A' (so the cycle product is 1); ``log_scale``
    is log mu(A), so :meth:`denormalized` recovers the entries of A.
    """

    base: MaxMatrix
    source_circuit: Circuit
    fill_trace: tuple
    log_scale: float = 0.0

    @property
    def succ(self):
        """Column of the positive entry in each row."""
        return tuple(int(np.argmax(row)) for row in self.base.log)

    @property
    def used_fallback(self):
        return any(step.fallback for step in self.fill_trace)

    def denormalized(self):
        return MaxMatrix(self.base.log + self.log_scale)

    def triplets(self, one_based=True):
        """``(i, j, value)`` for each positive entry of the (denormalized) matrix."""
        off = 1 if one_based else 0
        lw = self.base.log
        out = []
        for i, j in enumerate(self.succ):
            out.append((i + off, j + off, math.exp(lw[i, j] + self.log_scale)))
        return out


@dataclass(frozen=True)
class EigenBasis:
    """Scaled basis of the principal max-eigencone.

    ``provenance[k]`` is whatever produced ``vectors[k]``: a SunflowerMatrix
    for the sunflower method, a column index for the Kleene-star oracle.
    """

    mu: float
    vectors: tuple
    provenance: tuple
    rejected: tuple = field(default=(), repr=False)

    def __len__(self):
        return len(self.vectors)


def normalize(a, mu):
    """Return ``A / mu``."""
    if not mu > 0:
        raise ArgumentError(f"mu must be positive, got {mu!r}")
    return MaxMatrix(a.log - math.log(mu))


def _group_starts(sorted_logs, eps):
    """Start positions of tie groups in a descending list of log products.

    A new group begins wherever consecutive values differ by more than eps.
    """
    if len(sorted_logs) == 0:
        return np.zeros(1, dtype=np.int64)
    cuts = np.flatnonzero(sorted_logs[:-1] - sorted_logs[1:] > eps) + 1
    return np.concatenate([[0], cuts, [len(sorted_logs)]]).astype(np.int64)


class _Filler:
    """Shared state for building the sunflower matrices of one critical circuit.

    Noncritical circuits through the source are held as indices into the
    circuit set, sorted by decreasing product (stable, so ties stay in
    canonical order). Filling only ever adds rows, so once a circuit has
    no undetermined row it never gains one again; the scans below exploit
    that by moving a cursor forward in chunks.
    """

    _CHUNK = 512

    def __init__(self, a_norm, source, circuits, eps):
        if getattr(circuits, "truncated", False):
            raise CircuitCapError(len(circuits), len(circuits))
        if not isinstance(circuits, CircuitSet):
            circuits = CircuitSet.from_circuits(sorted(circuits))
        if not len(circuits):
            raise ArgumentError("circuit list is empty")
        top = float(circuits.geo_means.max())
        if abs(top) > eps:
            raise ArgumentError(
                f"matrix is not normalized: maximum circuit geometric mean is {math.exp(top):.12g}"
            )
        if abs(source.geo_mean) > eps:
            raise ArgumentError(f"circuit {source.one_based()} is not critical")
        self.n = a_norm.n
        self.source = source
        self.eps = eps
        self.circuits = circuits
        self.lw = a_norm.log
        self.source_index = circuits.index_of(source.vertices)
        flags = np.zeros(self.n, dtype=bool)
        flags[list(source.vertices)] = True
        touching = np.flatnonzero(circuits.touches(flags) & (np.abs(circuits.geo_means) > eps))
        logs = circuits.log_products[touching]
        perm = np.argsort(-logs, kind="stable")
        self.order = touching[perm]
        self.starts = _group_starts(logs[perm], eps)

    @property
    def groups(self):
        return [
            [self.circuits[int(k)] for k in sorted(self.order[lo:hi])]
            for lo, hi in zip(self.starts[:-1], self.starts[1:])
            if hi > lo
        ]

    def initial(self):
        succ = [-1] * self.n
        vs = self.source.vertices
        for a, b in zip(vs, vs[1:] + vs[:1]):
            succ[a] = b
        return succ, [FillStep(self.source, tuple(sorted(vs)))]

    def _open(self, succ, idx):
        """Mask over circuit indices ``idx``: which have an undetermined row."""
        idx = np.asarray(idx, dtype=np.int64)
        if not len(idx):
            return np.zeros(0, dtype=bool)
        free = np.fromiter((s == -1 for s in succ), dtype=bool, count=self.n)
        cs = self.circuits
        lengths = cs.lengths[idx]
        seg = np.concatenate([[0], np.cumsum(lengths)[:-1]])
        pos = np.repeat(cs.offsets[idx] - seg, lengths) + np.arange(int(lengths.sum()))
        return np.logical_or.reduceat(free[cs.flat[pos]], seg)

    def _next_open(self, succ, cursor):
        """First position >= cursor in the sorted order whose circuit has an open row."""
        total = len(self.order)
        size = self._CHUNK
        while cursor < total:
            hi = min(total, cursor + size)
            open_ = self._open(succ, self.order[cursor:hi])
            if open_.any():
                return cursor + int(np.argmax(open_))
            cursor = hi
            size *= 2
        return total

    def _group_members(self, succ, pos):
        """Canonically ordered circuits of the tie group holding ``pos`` that have open rows."""
        g = int(np.searchsorted(self.starts, pos, side="right")) - 1
        idx = np.sort(self.order[self.starts[g]:self.starts[g + 1]])
        return [int(k) for k in idx[self._open(succ, idx)]], int(self.starts[g])

    def apply(self, k, succ, trace, fallback):
        succ = list(succ)
        vs = self.circuits.vertices(k)
        rows = []
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if succ[a] == -1:
                succ[a] = b
                rows.append(a)
        return succ, trace + [FillStep(self.circuits[k], tuple(sorted(rows)), fallback)]

    def fallback_group(self, succ):
        cs = self.circuits
        filled = np.fromiter((s != -1 for s in succ), dtype=bool, count=self.n)
        ok = cs.touches(filled) & cs.touches(~filled)
        if self.source_index >= 0:
            ok[self.source_index] = False
        cands = np.flatnonzero(ok)
        if not len(cands):
            raise InconsistencyError(
                f"rows {[v + 1 for v, s in enumerate(succ) if s == -1]} cannot be filled; "
                "is the matrix irreducible?"
            )
        logs = cs.log_products[cands]
        return [int(k) for k in cands[logs >= logs.max() - self.eps]]

    def finish(self, succ, trace):
        arr = np.full((self.n, self.n), BOTTOM)
        for i, j in enumerate(succ):
            arr[i, j] = self.lw[i, j]
        return SunflowerMatrix(MaxMatrix(arr), self.source, tuple(trace))

    def _step(self, succ, cursor):
        """Candidates for the next fill: ``(indices, fallback, cursor)``."""
        pos = self._next_open(succ, cursor)
        if pos < len(self.order):
            members, start = self._group_members(succ, pos)
            return members, False, start
        return self.fallback_group(succ), True, pos

    def first(self):
        """The deterministic sunflower: always take the first admissible tied circuit."""
        succ, trace = self.initial()
        cursor = 0
        while -1 in succ:
            members, fallback, cursor = self._step(succ, cursor)
            if fallback:
                log.info("sunflower for %s uses fallback circuit %s",
                         self.source.one_based(), self.circuits[members[0]].one_based())
            succ, trace = self.apply(members[0], succ, trace, fallback)
        return self.finish(succ, trace)

    def variants(self, limit):
        """All sunflowers over every tie-break choice, first one first, deduplicated."""
        seen_states = set()
        seen_results = set()
        count = 0
        succ, trace = self.initial()
        # explicit DFS stack of (succ, trace, cursor)
        stack = [(succ, trace, 0)]
        while stack:
            succ, trace, cursor = stack.pop()
            key = tuple(succ)
            if key in seen_states:
                continue
            seen_states.add(key)
            if -1 not in succ:
                if key not in seen_results:
                    seen_results.add(key)
                    yield self.finish(succ, trace)
                    count += 1
                    if limit is not None and count >= limit:
                        return
                continue
            members, fallback, cursor = self._step(succ, cursor)
            children = [self.apply(k, succ, trace, fallback) + (cursor,) for k in members]
            stack.extend(reversed(children))


def scan_order(a_norm, source, circuits, eps=None):
    """Noncritical circuits through ``source`` grouped by tied product, heaviest first."""
    eps = get_eps(eps)
    return [list(g) for g in _Filler(a_norm, source, circuits, eps).groups]


def build_sunflower(a_norm, source, circuits, eps=None):
    """Deterministic mutation-sunflower matrix of normalized ``a_norm`` for critical ``source``.

    ``circuits`` must be the complete circuit list of D(a_norm); a truncated
    list is refused.
    """
    eps = get_eps(eps)
    return _Filler(a_norm, source, circuits, eps).first()


def iter_sunflowers(a_norm, source, circuits, eps=None, limit=DEFAULT_VARIANT_LIMIT):
    """Every mutation-sunflower matrix for ``source``, in lexicographic tie-break order."""
    eps = get_eps(eps)
    return _Filler(a_norm, source, circuits, eps).variants(limit)


def sunflower_eigenvector(s, eps=None):
    """The scaled eigenvector (eigenvalue 1) of a normalized sunflower matrix."""
    eps = get_eps(eps)
    lw = s.base.log
    succ = s.succ
    n = len(succ)
    cyc = s.source_circuit.vertices
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if succ[a] != b or lw[a, b] == BOTTOM:
            raise InconsistencyError(f"row {a + 1} does not follow source circuit edge")
    total = sum(lw[a, b] for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    if abs(total) > eps:
        raise InconsistencyError(
            f"source circuit product is {math.exp(total):.12g}, expected 1"
        )
    x = [None] * n
    x[cyc[0]] = 0.0
    for k in range(len(cyc) - 1, 0, -1):
        v = cyc[k]
        x[v] = lw[v, succ[v]] + x[succ[v]]
    for start in range(n):
        chain = []
        v = start
        while x[v] is None:
            chain.append(v)
            v = succ[v]
            if len(chain) > n:
                raise InconsistencyError("successor graph has a cycle besides the source circuit")
        for v in reversed(chain):
            x[v] = lw[v, succ[v]] + x[succ[v]]
    return scale(MaxVector(np.array(x)))


def all_sunflowers(a, eps=None, cap=DEFAULT_CIRCUIT_CAP, limit=DEFAULT_VARIANT_LIMIT):
    """Every sunflower variant for each chosen disjoint critical circuit of ``a``.

    Returns ``(structure, [[SunflowerMatrix, ...] per circuit])``.
    """
    eps = get_eps(eps)
    crit, a_norm, circuits = _prepare(a, eps, cap)
    out = []
    for c in _normalized_sources(crit, a_norm):
        out.append([_with_scale(s, crit.log_mu) for s in iter_sunflowers(a_norm, c, circuits, eps, limit)])
    return crit, out


def deterministic_sunflowers(a, eps=None, cap=DEFAULT_CIRCUIT_CAP):
    """One deterministic sunflower per chosen disjoint critical circuit."""
    eps = get_eps(eps)
    crit, a_norm, circuits = _prepare(a, eps, cap)
    return crit, [
        _with_scale(build_sunflower(a_norm, c, circuits, eps), crit.log_mu)
        for c in _normalized_sources(crit, a_norm)
    ]


def _with_scale(s, log_mu):
    return SunflowerMatrix(s.base, s.source_circuit, s.fill_trace, log_mu)


def _prepare(a, eps, cap):
    require_irreducible(a)
    crit = critical_structure(a, eps)
    a_norm = MaxMatrix(a.log - crit.log_mu)
    circuits = complete_circuits(a_norm, cap)
    return crit, a_norm, circuits


def _normalized_sources(crit, a_norm):
    return [Circuit.from_vertices(c.vertices, a_norm) for c in crit.disjoint_circuits]


def principal_basis(
    a,
    eps=None,
    cap=DEFAULT_CIRCUIT_CAP,
    all_variants=False,
    variant_limit=DEFAULT_VARIANT_LIMIT,
):
    """Scaled basis of the principal max-eigencone by the mutation-sunflower method.

    One deterministic sunflower is solved per disjoint critical circuit and
    its eigenvector kept when it is an eigenvector of A and keeps the set
    max-independent. If fewer than r vectors survive, the remaining
    tie-break variants are tried. With ``all_variants`` the whole family
    of sunflowers is scanned in order from the start.

    Raises ReducibleMatrixError, CircuitCapError, or InconsistencyError if
    no family of sunflowers yields r vectors.
    """
    eps = get_eps(eps)
    crit, a_norm, circuits = _prepare(a, eps, cap)
    r = crit.r
    accepted = []
    sources = []
    rejected = []
    seen = set()

    def offer(s):
        s = _with_scale(s, crit.log_mu)
        key = s.succ
        if key in seen:
            return
        seen.add(key)
        v = sunflower_eigenvector(s, eps)
        res = eigen_residual(a_norm, v, 1.0)
        if res > eps:
            rejected.append((s, f"eigen residual {res:.3e} exceeds {eps:g}"))
            return
        if not is_independent(accepted + [v], eps):
            rejected.append((s, "eigenvector already in the span of accepted vectors"))
            return
        accepted.append(v)
        sources.append(s)

    passes = []
    if not all_variants:
        passes.append(
            lambda c: [build_sunflower(a_norm, c, circuits, eps)]
        )
    passes.append(lambda c: iter_sunflowers(a_norm, c, circuits, eps, variant_limit))
    for family in passes:
        for c in _normalized_sources(crit, a_norm):
            for s in family(c):
                if len(accepted) == r:
                    break
                offer(s)
        if len(accepted) == r:
            break

    if len(accepted) < r:
        reasons = "; ".join(
            f"{s.source_circuit.one_based()}: {why}" for s, why in rejected[:5]
        )
        raise InconsistencyError(
            f"mutation-sunflower method found {len(accepted)} of {r} basis vectors "
            f"({len(rejected)} sunflower(s) rejected: {reasons})"
        )
    order = sorted(range(r), key=lambda k: sources[k].source_circuit.vertices[0])
    return EigenBasis(
        mu=crit.mu,
        vectors=tuple(accepted[k] for k in order),
        provenance=tuple(sources[k] for k in order),
        rejected=tuple(rejected),
    )


def succ_chain_log_weight(s, start, target):
    """Log weight of the unique successor walk from ``start`` to ``target`` in ``s``.

    Returns -inf when the walk never visits ``target``.
    """
    lw = s.base.log
    succ = s.succ
    total = 0.0
    v = start
    for _ in range(len(succ) + len(s.source_circuit.vertices)):
        if v == target:
            return total
        total += lw[v, succ[v]]
        v = succ[v]
    return float("-inf") if v != target else total
