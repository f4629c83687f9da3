"""Seeded random cross-intersecting pairs and the invariant checks run on them."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .compression import (
    compress_family,
    compress_pair_to_fixpoint,
    is_compressed,
    potential,
)
from .core import Family, Params, compute_bound, is_cross_intersecting, masks_upto
from .prooftrace import build_trace
from .search import transversal


def random_cross_pair(rng: random.Random, n: int, r: int, s: int, max_sets: int = 4) -> tuple[Family, Family]:
    """Non-empty cross-intersecting pair with member sizes <= r and <= s."""
    pool = masks_upto(n, r)
    while True:
        a = Family.of(n, rng.sample(pool, rng.randint(1, min(max_sets, len(pool)))))
        partners = transversal(a, s).sets
        if not partners:
            continue
        keep = [b for b in partners if rng.random() < 0.5] or [rng.choice(partners)]
        return a, Family.of(n, keep)


@dataclass
class FuzzReport:
    trials: int = 0
    failures: Counter = field(default_factory=Counter)
    examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, detail: str) -> None:
        self.failures[check] += 1
        if len(self.examples) < 20:
            self.examples.append(f"{check}: {detail}")


CHECKS = (
    "size",
    "profile",
    "cross",
    "potential",
    "pair_fixpoint",
    "trace",
    "bound",
)


def check_pair(a: Family, b: Family, p: Params, i: int, j: int, report: FuzzReport) -> None:
    tag = f"n={p.n} r={p.r} s={p.s} i={i} j={j} A={a!r} B={b!r}"
    ca, cb = compress_family(i, j, a), compress_family(i, j, b)
    if len(ca) != len(a) or len(cb) != len(b):
        report.fail("size", tag)
    if sorted(ca.cardinalities()) != sorted(a.cardinalities()) or sorted(cb.cardinalities()) != sorted(
        b.cardinalities()
    ):
        report.fail("profile", tag)
    if not is_cross_intersecting(ca, cb):
        report.fail("cross", tag)
    if i < j:
        for before, after in ((a, ca), (b, cb)):
            if after != before and not potential(after) < potential(before):
                report.fail("potential", tag)
    sa, sb, steps = compress_pair_to_fixpoint(a, b)
    if not (
        is_compressed(sa)
        and is_compressed(sb)
        and len(sa) == len(a)
        and len(sb) == len(b)
        and is_cross_intersecting(sa, sb)
        and steps.is_valid()
    ):
        report.fail("pair_fixpoint", tag)
    if not build_trace(sa, sb, p).all_ok:
        report.fail("trace", tag)
    if len(a) + len(b) > compute_bound(p):
        report.fail("bound", tag)


def run_fuzz(seed: int, count: int, max_n: int = 8) -> FuzzReport:
    rng = random.Random(seed)
    report = FuzzReport()
    for _ in range(count):
        n = rng.randint(1, max_n)
        r = rng.randint(1, n)
        s = rng.randint(r, n)
        a, b = random_cross_pair(rng, n, r, s)
        i, j = (rng.sample(range(1, n + 1), 2) if n > 1 else (1, 1))
        report.trials += 1
        if i == j:
            # nothing to compress on [1]; the remaining checks still apply
            p = Params(n, r, s)
            if not build_trace(*compress_pair_to_fixpoint(a, b)[:2], p).all_ok:
                report.fail("trace", f"n={n} A={a!r} B={b!r}")
            continue
        check_pair(a, b, Params(n, r, s), i, j, report)
    return report
