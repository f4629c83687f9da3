"""Shared oracles. These deliberately avoid the package's search code."""

from itertools import combinations

import pytest
from hypothesis import strategies as st

from crossint.core import Family


def subsets_upto(n, k, exact=False):
    out = []
    for size in range(k if exact else 1, min(k, n) + 1):
        for c in combinations(range(n), size):
            out.append(sum(1 << x for x in c))
    return out


def exhaustive_pair_max(n, r, s, uniform=False):
    """Max |A| + |B| by enumerating every pair of subfamilies (tiny n only)."""
    left = subsets_upto(n, r, uniform)
    right = subsets_upto(n, s, uniform)
    best = 0
    for am in range(1, 1 << len(left)):
        fam = [left[k] for k in range(len(left)) if am >> k & 1]
        for bm in range(1, 1 << len(right)):
            ok = True
            count = 0
            for k in range(len(right)):
                if bm >> k & 1:
                    count += 1
                    b = right[k]
                    if any(not a & b for a in fam):
                        ok = False
                        break
            if ok:
                best = max(best, len(fam) + count)
    return best


def brute_matching(left_n, right_n, edges):
    """Largest set of vertex-disjoint edges, by subset enumeration."""
    best = 0
    for size in range(len(edges), 0, -1):
        for pick in combinations(edges, size):
            us = {u for u, _ in pick}
            vs = {v for _, v in pick}
            if len(us) == size and len(vs) == size:
                return size
    return best


@st.composite
def families(draw, n=None, max_n=8, min_size=0, max_size=12, nonempty_sets=True):
    n = draw(st.integers(1, max_n)) if n is None else n
    lo = 1 if nonempty_sets else 0
    masks = draw(st.lists(st.integers(lo, (1 << n) - 1), min_size=min_size, max_size=max_size))
    return Family.of(n, masks)


@pytest.fixture
def fam():
    def make(n, *sets):
        return Family.from_sets(n, sets)
    return make


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
