"""Pure-Python/numpy implementations of the hot kernels.

These are the reference fallback used when the compiled ``_ckernels``
extension is unavailable. Both modules expose the same three functions
and must produce bit-identical results.
"""

import numpy as np

NEG_INF = float("-inf")

# rows per block in maxplus_matmul; bounds the (block, n, n) temporary
_BLOCK = 64


def maxplus_matmul(a, b):
    """Max-plus product of two log-domain matrices: ``c[i,j] = max_k a[i,k] + b[k,j]``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n, m = a.shape
    out = np.empty((n, b.shape[1]), dtype=np.float64)
    for lo in range(0, n, _BLOCK):
        hi = min(lo + _BLOCK, n)
        out[lo:hi] = (a[lo:hi, :, None] + b[None, :, :]).max(axis=1)
    return out


def karp_log_mean(w):
    """Maximum mean weight of a cycle in the digraph of log-domain matrix ``w``.

    ``w`` must be strongly connected (a single SCC); returns ``-inf`` when
    it has no cycle at all, which only happens for an isolated vertex
    without a loop.
    """
    w = np.asarray(w, dtype=np.float64)
    m = w.shape[0]
    d = np.full((m + 1, m), NEG_INF)
    d[0, 0] = 0.0
    for k in range(1, m + 1):
        d[k] = (d[k - 1][:, None] + w).max(axis=0)
    last = d[m]
    reach = last != NEG_INF
    if not reach.any():
        return NEG_INF
    steps = (m - np.arange(m, dtype=np.float64))[:, None]
    with np.errstate(invalid="ignore"):
        # d[k, v] == -inf gives +inf here and drops out of the min
        ratios = (last[None, reach] - d[:m, reach]) / steps
    return float(ratios.min(axis=0).max())


def _scc_containing(s, succ, allowed):
    """Vertex set of the SCC of ``s`` within the subgraph induced on ``allowed``."""
    fwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w in allowed and w not in fwd:
                fwd.add(w)
                stack.append(w)
    pred = {}
    for v in allowed:
        for w in succ[v]:
            if w in allowed:
                pred.setdefault(w, []).append(v)
    bwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for u in pred.get(v, ()):
            if u not in bwd:
                bwd.add(u)
                stack.append(u)
    return fwd & bwd


def elementary_circuits(w, cap):
    """Enumerate elementary circuits of the digraph of log-domain matrix ``w``.

    Johnson's algorithm, started from each vertex ``s`` in ascending order on
    the subgraph of vertices ``>= s``, exploring successors in ascending order.
    Each circuit is reported starting at its smallest vertex.

    Returns ``(flat, offsets, log_products, truncated)``: circuit k is
    ``flat[offsets[k]:offsets[k + 1]]`` (int64), at most ``cap`` circuits
    are returned and ``truncated`` is True when more exist.
    """
    w = np.asarray(w, dtype=np.float64)
    n = w.shape[0]
    finite = w != NEG_INF
    succ_all = [np.flatnonzero(finite[v]).tolist() for v in range(n)]
    wl = w.tolist()
    flat = []
    offsets = [0]
    products = []

    def done(truncated):
        return (
            np.array(flat, dtype=np.int64),
            np.array(offsets, dtype=np.int64),
            np.array(products, dtype=np.float64),
            truncated,
        )

    for s in range(n):
        comp = _scc_containing(s, succ_all, set(range(s, n)))
        if len(comp) == 1 and not finite[s, s]:
            continue
        succ = {v: [x for x in succ_all[v] if x in comp] for v in comp}
        blocked = {s}
        block_map = {v: set() for v in comp}
        path = [s]
        sums = [0.0]
        closed = [False]
        stack = [iter(succ[s])]
        while stack:
            v = path[-1]
            advanced = False
            for x in stack[-1]:
                if x == s:
                    if len(products) == cap:
                        return done(True)
                    flat.extend(path)
                    offsets.append(len(flat))
                    products.append(sums[-1] + wl[v][s])
                    closed[-1] = True
                elif x not in blocked:
                    path.append(x)
                    sums.append(sums[-1] + wl[v][x])
                    closed.append(False)
                    stack.append(iter(succ[x]))
                    blocked.add(x)
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            path.pop()
            sums.pop()
            found = closed.pop()
            if found:
                todo = [v]
                while todo:
                    u = todo.pop()
                    if u in blocked:
                        blocked.discard(u)
                        todo.extend(block_map[u])
                        block_map[u].clear()
                if closed:
                    closed[-1] = True
            else:
                for x in succ[v]:
                    block_map[x].add(v)
    return done(False)
