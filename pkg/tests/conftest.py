"""Shared brute-force reference oracles for the whole suite.

Everything here enumerates bitmasks directly and never calls the code paths
it is used to check.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

from isocut import ElementSubset, Hypergraph

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


def philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def raw_cut(h: Hypergraph, mask: int) -> int:
    """Cut value of a vertex bitmask, computed straight off the edge list."""
    full = (1 << h.n) - 1
    total = 0
    for verts, w in h.edges:
        em = 0
        for v in verts:
            em |= 1 << v
        if em & mask and em & (full ^ mask):
            total += w
    return total


def brute_min_nontrivial(h: Hypergraph) -> int:
    """Exhaustive minimum cut value over all splits with both sides non-empty."""
    return min(raw_cut(h, mask) for mask in range(1, (1 << h.n) - 1))


def brute_st_cut(h: Hypergraph, sources_mask: int, sinks_mask: int) -> tuple[int, int]:
    """Exhaustive s-t min cut: (value, minimal source-side mask).

    The minimal side is the intersection of all optimal sides, which must
    itself be optimal for a cut function; asserted here.
    """
    best = None
    meet = None
    for mask in range(1 << h.n):
        if mask & sources_mask != sources_mask or mask & sinks_mask:
            continue
        v = raw_cut(h, mask)
        if best is None or v < best:
            best, meet = v, mask
        elif v == best:
            meet &= mask
    assert best is not None
    assert raw_cut(h, meet) == best
    return best, meet


def brute_isolating(h: Hypergraph, terminals: list[int]) -> dict[int, tuple[int, int]]:
    """For each terminal v: (min cut value, minimal mask) over sets whose
    intersection with the terminals is exactly {v}."""
    r_mask = 0
    for v in terminals:
        r_mask |= 1 << v
    out = {}
    for v in terminals:
        best = None
        meet = None
        for mask in range(1 << h.n):
            if mask & r_mask != 1 << v:
                continue
            val = raw_cut(h, mask)
            if best is None or val < best:
                best, meet = val, mask
            elif val == best:
                meet &= mask
        assert raw_cut(h, meet) == best
        out[v] = (best, meet)
    return out


def subset_of_mask(n: int, mask: int) -> ElementSubset:
    return ElementSubset(n, mask)


def random_hypergraph(rng: np.random.Generator, n_lo=4, n_hi=10, m_lo=3, m_hi=15,
                      max_rank=4, max_weight=8) -> Hypergraph:
    n = int(rng.integers(n_lo, n_hi + 1))
    m = int(rng.integers(m_lo, m_hi + 1))
    edges = []
    for _ in range(m):
        rank = int(rng.integers(2, min(max_rank, n) + 1))
        verts = tuple(int(v) for v in rng.choice(n, size=rank, replace=False))
        w = int(rng.integers(1, max_weight + 1))
        edges.append((verts, w))
    return Hypergraph(n, edges)


@pytest.fixture
def rng() -> np.random.Generator:
    return philox(20240817)
