"""Submodular function minimization returning the minimal minimizer.

Minimizers of a submodular function are closed under union and intersection,
so a unique inclusion-wise least minimizer exists.  Every blackbox here
returns exactly that set; downstream cell construction depends on it for
determinism and for the strict-inequality step of the containment argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import (
    ElementSubset,
    OracleContractError,
    SizeLimitError,
    contract,
)

__all__ = [
    "SfmResult",
    "sfm_bruteforce",
    "BruteForceBlackbox",
    "bruteforce_nontrivial_min",
    "DEFAULT_BRUTEFORCE_CAP",
]

DEFAULT_BRUTEFORCE_CAP = 24


@dataclass(frozen=True)
class SfmResult:
    """One blackbox answer: the minimal minimizer and its value.

    ``rep_size`` is filled by flow-backed blackboxes with the representation
    size of the instance they actually solved; query-based ones leave None.
    """

    minimizer: ElementSubset
    value: int
    oracle_queries_used: int
    blackbox_calls_charged: int = 1
    rep_size: Optional[int] = None


def sfm_bruteforce(f, max_ground: int = DEFAULT_BRUTEFORCE_CAP) -> SfmResult:
    """Exhaustive minimization over every subset of the free elements.

    Subsets are visited in increasing cardinality, lexicographic within each
    cardinality, and the running intersection of all value-ties is kept; for
    a submodular oracle that intersection is itself optimal (verified with a
    final evaluation) and is the minimal minimizer.
    """
    elems = list(f.free)
    m = len(elems)
    if m > max_ground:
        raise SizeLimitError(f"brute-force minimization capped at {max_ground} free elements, got {m}")
    n = f.ground.n
    before = f.query_count
    best: Optional[int] = None
    meet: Optional[ElementSubset] = None
    for r in range(m + 1):
        for combo in combinations(elems, r):
            s = ElementSubset.of(n, combo)
            v = f.evaluate(s)
            if best is None or v < best:
                best, meet = v, s
            elif v == best:
                meet = meet & s
    if f.evaluate(meet) != best:
        raise OracleContractError(
            "intersection of optimal sets is not optimal; oracle is not submodular"
        )
    return SfmResult(meet, best, f.query_count - before)


class BruteForceBlackbox:
    """SFM blackbox: exhaustive minimal-minimizer search on the contraction."""

    def __init__(self, max_ground: int = DEFAULT_BRUTEFORCE_CAP):
        self.max_ground = max_ground

    def __call__(self, f, forced_in: ElementSubset, forced_out: ElementSubset) -> SfmResult:
        return sfm_bruteforce(contract(f, forced_in, forced_out), self.max_ground)


def bruteforce_nontrivial_min(f, max_ground: int = DEFAULT_BRUTEFORCE_CAP) -> tuple[ElementSubset, int]:
    """Exhaustive minimum of f over all S with 0 < |S| < n.

    Returns the canonical optimal side: smallest value, then smallest size
    (so at most n/2 for a symmetric oracle), then smallest bitmask.
    """
    n = f.ground.n
    if n < 2:
        raise ValueError("nontrivial minimization needs n >= 2")
    if n > max_ground:
        raise SizeLimitError(f"brute-force minimization capped at {max_ground} elements, got {n}")
    best_key = None
    best: Optional[tuple[ElementSubset, int]] = None
    for mask in range(1, (1 << n) - 1):
        s = ElementSubset(n, mask)
        v = f.evaluate(s)
        key = (v, mask.bit_count(), mask)
        if best_key is None or key < best_key:
            best_key = key
            best = (s, v)
    assert best is not None
    return best
