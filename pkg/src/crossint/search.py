"""Exact maximization of |A| + |B| over non-empty cross-intersecting pairs.

Two independent routes:

* :func:`brute_force_max` enumerates families A of candidate sets and pairs
  each with its best response ``transversal(A)``.
* :func:`flow_max` forces a prefix pair ([r'], [s']) and solves a maximum
  independent set in the bipartite disjointness graph through König's theorem.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    CapExceeded,
    Family,
    Params,
    canonical_key,
    element_sum,
    is_cross_intersecting,
    masks_upto,
    prefix,
)

log = logging.getLogger(__name__)

DEFAULT_BRUTE_CAP = 25
DEFAULT_PRUNED_CAP = 128
DEFAULT_FLOW_CAP = 14

_CHUNK = 1 << 21


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness_A: Family
    witness_B: Family
    method: str
    uniform: bool = False

    def __post_init__(self) -> None:
        if not len(self.witness_A) or not len(self.witness_B):
            raise ValueError("witness families must be non-empty")
        if len(self.witness_A) + len(self.witness_B) != self.value:
            raise ValueError("witness sizes do not add up to value")
        if not is_cross_intersecting(self.witness_A, self.witness_B):
            raise ValueError("witness pair is not cross-intersecting")

    def payload(self) -> dict:
        return {
            "n": self.witness_A.n,
            "A": self.witness_A.as_lists(),
            "B": self.witness_B.as_lists(),
            "value": self.value,
            "method": self.method,
            "uniform": self.uniform,
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), separators=(",", ":"))


# ---------------------------------------------------------------------------
# candidate pools and best response
# ---------------------------------------------------------------------------

def candidate_pool(n: int, k: int, uniform: bool) -> list[int]:
    """Non-empty subsets of [n] of size <= k (exactly k when uniform)."""
    if uniform:
        if k > n:
            raise ValueError(f"uniform mode needs set size {k} <= n={n}")
        return masks_upto(n, k, exact=True)
    return masks_upto(n, k)


def transversal(a: Family, s: int, uniform: bool = False) -> Family:
    """All admissible partner sets meeting every member of ``a``."""
    if not len(a):
        raise ValueError("transversal of an empty family is undefined")
    if a.contains_empty():
        raise ValueError("family contains the empty set")
    members = _minimal_members(a.sets)
    pool = candidate_pool(a.n, s, uniform) if (not uniform or s <= a.n) else []
    return Family(a.n, tuple(b for b in pool if all(b & m for m in members)))


def _minimal_members(masks: Sequence[int]) -> list[int]:
    # supersets impose no extra constraint; smallest first keeps rejection early
    out: list[int] = []
    for m in sorted(masks, key=canonical_key):
        if not any(x & m == x for x in out):
            out.append(m)
    return out


def _check_uniform(p: Params, uniform: bool) -> None:
    if uniform and (p.r > p.n or p.s > p.n):
        raise ValueError(f"uniform mode needs r, s <= n (got n={p.n}, r={p.r}, s={p.s})")


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

def brute_force_max(
    p: Params,
    uniform: bool = False,
    *,
    prune: bool = False,
    cap: int = DEFAULT_BRUTE_CAP,
    prune_cap: int = DEFAULT_PRUNED_CAP,
) -> SearchResult:
    """Exhaustive maximum of |A| + |transversal(A)| over non-empty A.

    Without pruning every non-empty family of candidate A-sets is scored.
    With ``prune=True`` only families that are closed under supersets within
    the candidate pool and under left-shifts are scored; some optimum always
    has that shape, so the value is unchanged while the witness may differ.
    """
    p.require_ground_cap()
    _check_uniform(p, uniform)
    left = candidate_pool(p.n, p.r, uniform)
    right = candidate_pool(p.n, p.s, uniform)
    if prune:
        if len(left) > prune_cap:
            raise CapExceeded(f"{len(left)} candidate A-sets exceed pruned cap {prune_cap}")
        value, chosen = _pruned_search(p.n, left, right, uniform)
    else:
        if len(left) > cap:
            raise CapExceeded(f"{len(left)} candidate A-sets exceed cap {cap}")
        value, chosen = _full_search(left, right)
    a = Family.of(p.n, chosen)
    b = transversal(a, p.s, uniform)
    return SearchResult(value, a, b, "brute", uniform)


def _disjoint_patterns(left: Sequence[int], right: Sequence[int]) -> dict[int, int]:
    """Map from 'left candidates disjoint from b' bitmask to the number of such b."""
    counts: dict[int, int] = {}
    for b in right:
        pat = 0
        for k, a in enumerate(left):
            if not a & b:
                pat |= 1 << k
        counts[pat] = counts.get(pat, 0) + 1
    return counts


def _full_search(left: list[int], right: list[int]) -> tuple[int, list[int]]:
    nl = len(left)
    if nl == 0:
        raise ValueError("no candidate A-sets")
    patterns = sorted(_disjoint_patterns(left, right).items())
    pats = np.array([pt for pt, _ in patterns], dtype=np.int64)
    weights = [w for _, w in patterns]
    best = -1
    best_size = None
    ties: list[int] = []
    total = 1 << nl
    for start in range(1, total, _CHUNK):
        m = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        cover = np.zeros(m.shape, dtype=np.int64)
        for pat, w in zip(pats, weights):
            cover += w * ((m & pat) == 0)
        size = np.bitwise_count(m).astype(np.int64)
        val = np.where(cover > 0, size + cover, -1)
        top = int(val.max())
        if top < 0 or top < best:
            continue
        hits = np.flatnonzero(val == top)
        hsize = size[hits]
        smallest = int(hsize.min())
        if top > best:
            best, best_size, ties = top, None, []
        if best_size is None or smallest < best_size:
            best_size, ties = smallest, []
        if smallest == best_size:
            ties.extend(int(x) for x in m[hits[hsize == smallest]])
    if best < 0:
        raise ValueError("no non-empty A admits a non-empty partner")
    # same number of sets: lexicographically smallest sorted index tuple
    chosen = min(ties, key=lambda mm: [k for k in range(nl) if mm >> k & 1])
    return best, [left[k] for k in range(nl) if chosen >> k & 1]


def _pruned_search(n: int, left: list[int], right: list[int], uniform: bool) -> tuple[int, list[int]]:
    # Requirements (supersets in the pool, left-shifts) always sit earlier in
    # this order: larger sets first, then smaller element sums.
    order = sorted(left, key=lambda m: (-m.bit_count(), element_sum(m), m))
    pos = {m: k for k, m in enumerate(order)}
    req = []
    for m in order:
        need = 0
        for x in range(n):
            bit = 1 << x
            if m & bit:
                continue
            sup = m | bit
            if not uniform and sup in pos:
                need |= 1 << pos[sup]
        for j in range(n):
            if not m >> j & 1:
                continue
            for i in range(j):
                if not m >> i & 1:
                    shifted = (m ^ (1 << j)) | (1 << i)
                    if shifted in pos:
                        need |= 1 << pos[shifted]
        req.append(need)
    meets = []
    full_right = (1 << len(right)) - 1
    for a in order:
        mk = 0
        for k, b in enumerate(right):
            if a & b:
                mk |= 1 << k
        meets.append(mk)

    best = -1
    best_key: tuple | None = None
    best_fam: list[int] = []
    nl = len(order)
    stack = [(0, 0, full_right)]
    while stack:
        k, chosen, alive = stack.pop()
        if k == nl:
            if not chosen or not alive:
                continue
            value = chosen.bit_count() + alive.bit_count()
            if value < best:
                continue
            fam = sorted((order[t] for t in range(nl) if chosen >> t & 1), key=canonical_key)
            key = (len(fam), tuple(canonical_key(x) for x in fam))
            if value > best or key < best_key:
                best, best_key, best_fam = value, key, fam
            continue
        stack.append((k + 1, chosen, alive))
        if req[k] & chosen == req[k]:
            stack.append((k + 1, chosen | (1 << k), alive & meets[k]))
    if best < 0:
        raise ValueError("no non-empty A admits a non-empty partner")
    return best, best_fam


# ---------------------------------------------------------------------------
# bipartite matching
# ---------------------------------------------------------------------------

@dataclass
class DisjointnessGraph:
    """Bipartite graph joining set masks that are disjoint.

    ``adj[u]`` lists right-vertex indices adjacent to left vertex ``u``.
    """

    left: list[int]
    right: list[int]
    adj: list[list[int]]

    @classmethod
    def build(cls, left: Sequence[int], right: Sequence[int]) -> DisjointnessGraph:
        index = {b: k for k, b in enumerate(right)}
        full = 0
        for m in list(left) + list(right):
            full |= m
        adj = []
        for a in left:
            comp = full & ~a
            nbrs = []
            sub = comp
            while True:
                k = index.get(sub)
                if k is not None:
                    nbrs.append(k)
                if not sub:
                    break
                sub = (sub - 1) & comp
            nbrs.sort()
            adj.append(nbrs)
        return cls(list(left), list(right), adj)

    @property
    def edge_count(self) -> int:
        return sum(len(x) for x in self.adj)

    def induced(self, keep_left: Sequence[bool], keep_right: Sequence[bool]) -> DisjointnessGraph:
        lmap = [k for k, keep in enumerate(keep_left) if keep]
        rnew = {}
        right = []
        for k, keep in enumerate(keep_right):
            if keep:
                rnew[k] = len(right)
                right.append(self.right[k])
        adj = [[rnew[v] for v in self.adj[u] if v in rnew] for u in lmap]
        return DisjointnessGraph([self.left[u] for u in lmap], right, adj)


def hopcroft_karp(g: DisjointnessGraph) -> tuple[list[int], list[int]]:
    """Maximum matching as (match_left, match_right), -1 for unmatched."""
    nl, nr = len(g.left), len(g.right)
    adj = g.adj
    match_l = [-1] * nl
    match_r = [-1] * nr
    while True:
        dist = [-1] * nl
        q = deque()
        for u in range(nl):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if not found:
            return match_l, match_r
        it = [0] * nl
        for root in range(nl):
            if match_l[root] != -1:
                continue
            stack = [root]
            via: list[int] = []
            while stack:
                u = stack[-1]
                nbrs = adj[u]
                pushed = False
                while it[u] < len(nbrs):
                    v = nbrs[it[u]]
                    it[u] += 1
                    w = match_r[v]
                    if w == -1:
                        via.append(v)
                        for uu, vv in zip(stack, via):
                            match_l[uu] = vv
                            match_r[vv] = uu
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = -2
                    stack.pop()
                    if via:
                        via.pop()


def max_matching(g: DisjointnessGraph) -> int:
    match_l, _ = hopcroft_karp(g)
    return sum(1 for v in match_l if v != -1)


def max_independent_set(g: DisjointnessGraph) -> tuple[list[int], list[int]]:
    """Left and right vertex indices of a maximum independent set (König)."""
    match_l, match_r = hopcroft_karp(g)
    seen_l = [False] * len(g.left)
    seen_r = [False] * len(g.right)
    q = deque(u for u in range(len(g.left)) if match_l[u] == -1)
    for u in q:
        seen_l[u] = True
    while q:
        u = q.popleft()
        for v in g.adj[u]:
            if seen_r[v] or match_l[u] == v:
                continue
            seen_r[v] = True
            w = match_r[v]
            if w != -1 and not seen_l[w]:
                seen_l[w] = True
                q.append(w)
    # minimum cover = unreached left + reached right
    return ([u for u in range(len(g.left)) if seen_l[u]],
            [v for v in range(len(g.right)) if not seen_r[v]])


# ---------------------------------------------------------------------------
# flow route
# ---------------------------------------------------------------------------

def flow_max(p: Params, uniform: bool = False, *, cap: int = DEFAULT_FLOW_CAP) -> SearchResult:
    """Maximum via forced prefix pairs and bipartite independent sets."""
    if p.n > cap:
        raise CapExceeded(f"n={p.n} exceeds flow cap {cap}")
    p.require_ground_cap()
    _check_uniform(p, uniform)
    if cap > DEFAULT_FLOW_CAP:
        log.warning("flow cap raised to %d; disjointness graphs can be very large", cap)
    left = candidate_pool(p.n, p.r, uniform)
    right = candidate_pool(p.n, p.s, uniform)
    graph = DisjointnessGraph.build(left, right)
    if uniform:
        forced = [(p.r, p.s)]
    else:
        forced = [(r1, s1) for r1 in range(1, p.r_eff + 1) for s1 in range(1, p.s_eff + 1)]
    best = None
    for r1, s1 in forced:
        head_a, head_b = prefix(r1), prefix(s1)
        sub = graph.induced([bool(a & head_b) for a in left], [bool(b & head_a) for b in right])
        size = len(sub.left) + len(sub.right) - max_matching(sub)
        if best is None or size > best[0]:
            best = (size, sub)
    assert best is not None
    value, sub = best
    lhs, rhs = max_independent_set(sub)
    a = Family.of(p.n, (sub.left[u] for u in lhs))
    b = Family.of(p.n, (sub.right[v] for v in rhs))
    return SearchResult(value, a, b, "flow", uniform)


def search(p: Params, method: str = "brute", uniform: bool = False, **kwargs) -> SearchResult:
    if method == "brute":
        return brute_force_max(p, uniform, **kwargs)
    if method == "flow":
        return flow_max(p, uniform, **kwargs)
    raise ValueError(f"unknown method {method!r}")
