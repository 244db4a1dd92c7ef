"""Max-flow inner loops: numba-compiled by default, pure Python on demand.

One implementation, written against flat int64 arrays so the same source
runs under ``@njit`` and under the plain interpreter.  Set ``ISOCUT_NUMBA=0``
(or uninstall numba) to select the interpreted path; both paths perform the
identical augmentation sequence and leave identical residuals.

Arc layout: arcs come in pairs, arc ``a`` and ``a ^ 1`` are mutual reverses.
Adjacency is a forward-star: ``head[v]`` is the first arc out of ``v`` and
``nxt[a]`` chains to the next one, -1 terminating.

``INF`` is a sentinel, not saturating arithmetic: residual updates on INF
arcs keep INF, so they are genuinely uncuttable.
"""

from __future__ import annotations

import os

import numpy as np

INF = 1 << 62

__all__ = [
    "INF",
    "BACKEND",
    "solve_max_flow",
    "residual_reachable",
    "build_forward_star",
    "extend_forward_star",
    "dinic_python",
    "dinic_numba",
    "reachable_python",
    "reachable_numba",
]


def _dinic_impl(n_nodes, src, dst, to, cap, head, nxt):
    big = 1 << 62
    level = np.empty(n_nodes, np.int64)
    cur = np.empty(n_nodes, np.int64)
    queue = np.empty(n_nodes, np.int64)
    path = np.empty(n_nodes + 1, np.int64)
    total = 0
    while True:
        # BFS over residual arcs builds the level graph
        for i in range(n_nodes):
            level[i] = -1
        level[src] = 0
        queue[0] = src
        qh, qt = 0, 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            a = head[u]
            while a != -1:
                v = to[a]
                if cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
                a = nxt[a]
        if level[dst] < 0:
            break
        for i in range(n_nodes):
            cur[i] = head[i]
        # blocking flow: iterative DFS with current-arc pointers
        depth = 0
        u = src
        while True:
            if u == dst:
                f = big
                for d in range(depth):
                    a = path[d]
                    if cap[a] != big and cap[a] < f:
                        f = cap[a]
                if f == big:
                    return -1  # augmenting path of infinite arcs: flow unbounded
                for d in range(depth):
                    a = path[d]
                    if cap[a] != big:
                        cap[a] -= f
                    r = a ^ 1
                    if cap[r] != big:
                        cap[r] += f
                total += f
                retreat = depth
                for d in range(depth):
                    if cap[path[d]] == 0:
                        retreat = d
                        break
                depth = retreat
                u = src if depth == 0 else to[path[depth - 1]]
                continue
            advanced = False
            a = cur[u]
            while a != -1:
                v = to[a]
                if cap[a] > 0 and level[v] == level[u] + 1:
                    path[depth] = a
                    depth += 1
                    u = v
                    advanced = True
                    break
                a = nxt[a]
                cur[u] = a
            if not advanced:
                if u == src:
                    break
                level[u] = -1  # dead end for this phase
                depth -= 1
                u = src if depth == 0 else to[path[depth - 1]]
    return total


def _reachable_impl(n_nodes, src, to, cap, head, nxt):
    seen = np.zeros(n_nodes, np.bool_)
    queue = np.empty(n_nodes, np.int64)
    seen[src] = True
    queue[0] = src
    qh, qt = 0, 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        a = head[u]
        while a != -1:
            v = to[a]
            if cap[a] > 0 and not seen[v]:
                seen[v] = True
                queue[qt] = v
                qt += 1
            a = nxt[a]
    return seen


dinic_python = _dinic_impl
reachable_python = _reachable_impl

try:
    from numba import njit

    dinic_numba = njit(cache=True, nogil=True)(_dinic_impl)
    reachable_numba = njit(cache=True, nogil=True)(_reachable_impl)
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    dinic_numba = None
    reachable_numba = None
    _HAVE_NUMBA = False


def _pick_backend() -> str:
    flag = os.environ.get("ISOCUT_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return "python"
    return "numba" if _HAVE_NUMBA else "python"


BACKEND = _pick_backend()

if BACKEND == "numba":
    _dinic = dinic_numba
    _reachable = reachable_numba
else:
    _dinic = dinic_python
    _reachable = reachable_python


def solve_max_flow(n_nodes, src, dst, to, cap, head, nxt) -> int:
    """Run Dinic to completion; ``cap`` is mutated into the residual.

    Raises if an augmenting path consists purely of INF arcs (unbounded flow).
    """
    flow = int(_dinic(n_nodes, src, dst, to, cap, head, nxt))
    if flow < 0:
        raise ValueError("max flow is unbounded: infinite-capacity source-sink path")
    return flow


def residual_reachable(n_nodes, src, to, cap, head, nxt) -> np.ndarray:
    """Nodes reachable from ``src`` over arcs with positive residual."""
    return _reachable(n_nodes, src, to, cap, head, nxt)


def build_forward_star(n_nodes: int, arcs) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Pack ``(u, v, capacity)`` triples into paired-arc forward-star arrays."""
    count = 2 * len(arcs)
    to = np.empty(count, np.int64)
    cap = np.empty(count, np.int64)
    nxt = np.empty(count, np.int64)
    head = np.full(n_nodes, -1, np.int64)
    for i, (u, v, c) in enumerate(arcs):
        fwd = 2 * i
        rev = fwd + 1
        to[fwd] = v
        cap[fwd] = c
        nxt[fwd] = head[u]
        head[u] = fwd
        to[rev] = u
        cap[rev] = 0
        nxt[rev] = head[v]
        head[v] = rev
    return to, cap, head, nxt


def extend_forward_star(to, cap, head, nxt, extra_arcs):
    """Copy a forward-star and append more arc pairs (base arrays untouched)."""
    base = to.shape[0]
    count = base + 2 * len(extra_arcs)
    to2 = np.empty(count, np.int64)
    cap2 = np.empty(count, np.int64)
    nxt2 = np.empty(count, np.int64)
    to2[:base] = to
    cap2[:base] = cap
    nxt2[:base] = nxt
    head2 = head.copy()
    for i, (u, v, c) in enumerate(extra_arcs):
        fwd = base + 2 * i
        rev = fwd + 1
        to2[fwd] = v
        cap2[fwd] = c
        nxt2[fwd] = head2[u]
        head2[u] = fwd
        to2[rev] = u
        cap2[rev] = 0
        nxt2[rev] = head2[v]
        head2[v] = rev
    return to2, cap2, head2, nxt2
