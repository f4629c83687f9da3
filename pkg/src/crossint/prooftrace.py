"""Replay the induction step of the sum bound on a concrete pair.

Given a compressed, cross-intersecting, non-empty pair (A, B) over [n], the
families are split at element ``n`` and every assertion of the inductive
step is checked numerically: the unique-blocker property, disjointness of
B0 and the complemented blockers, the sum identity, and the two counting
inequalities that feed the induction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .compression import NotCrossIntersecting, compress_pair_to_fixpoint, is_compressed
from .core import (
    Family,
    Params,
    format_sets,
    is_cross_intersecting,
    masks_upto,
    prefix,
    require_nonempty_pair,
)


@dataclass(frozen=True)
class ProofTrace:
    n: int
    A0: Family
    A1: Family
    B0: Family
    B1: Family
    C: Family
    Cbar: Family
    A1prime: Family
    B0prime: Family
    unique_blocker_ok: bool = False
    disjoint_25_ok: bool = False
    sum_identity_ok: bool = False
    claim1_ok: bool = False
    claim2_ok: bool = False
    full_cube_branch: bool = False
    compressed_input: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def all_ok(self) -> bool:
        return (self.unique_blocker_ok and self.disjoint_25_ok and self.sum_identity_ok
                and self.claim1_ok and self.claim2_ok)

    def checks(self) -> list[tuple[str, bool]]:
        return [
            ("unique blocker", self.unique_blocker_ok),
            ("B0 disjoint from complemented blockers", self.disjoint_25_ok),
            ("sum identity", self.sum_identity_ok),
            ("claim 1 inequality", self.claim1_ok),
            ("claim 2 inequality", self.claim2_ok),
        ]

    def report(self) -> str:
        lines = [f"proof trace over [{self.n}]"]
        if not self.compressed_input:
            lines.append("input was not compressed; pair compressed to fixpoint first")
        if self.full_cube_branch:
            lines.append("r >= n: claims replaced by |B| <= 2^n - |A|")
        lines.extend(self.notes)
        for name in ("A0", "A1", "B0", "B1", "C", "Cbar", "A1prime", "B0prime"):
            fam = getattr(self, name)
            lines.append(f"{name:8s} ({len(fam)}): {format_sets(fam.sets)}")
        for name, ok in self.checks():
            lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
        return "\n".join(lines) + "\n"


def decompose(f: Family) -> tuple[Family, Family]:
    """Split at element n: members without n, and members with n stripped of it."""
    if f.n < 1:
        raise ValueError("decomposition needs n >= 1")
    top = 1 << (f.n - 1)
    f0 = [m for m in f.sets if not m & top]
    f1 = [m ^ top for m in f.sets if m & top]
    return Family.of(f.n - 1, f0), Family.of(f.n - 1, f1)


def recombine(f0: Family, f1: Family) -> Family:
    top = 1 << f0.n
    return Family.of(f0.n + 1, list(f0.sets) + [m | top for m in f1.sets])


def compute_blockers(a1: Family, b1: Family) -> tuple[Family, Family]:
    """Members of ``a1`` missing some member of ``b1``, and their complements in [n-1]."""
    full = prefix(a1.n)
    c = [a for a in a1.sets if any(not a & b for b in b1.sets)]
    return Family.of(a1.n, c), Family.of(a1.n, (full ^ x for x in c))


def unique_blocker_holds(c: Family, b1: Family) -> bool:
    """For each C in ``c``, the members of ``b1`` disjoint from C are exactly {[n-1] \\ C}."""
    full = prefix(c.n)
    for x in c.sets:
        missing = [b for b in b1.sets if not b & x]
        if missing != [full ^ x]:
            return False
    return True


def check_unique_blocker(a: Family, b: Family) -> bool:
    """Each blocker's complement is the only member of B1 it misses."""
    require_nonempty_pair(a, b)
    if not is_cross_intersecting(a, b):
        raise NotCrossIntersecting("pair is not cross-intersecting")
    if not (is_compressed(a) and is_compressed(b)):
        raise ValueError("pair is not compressed")
    _, a1 = decompose(a)
    _, b1 = decompose(b)
    c, _ = compute_blockers(a1, b1)
    return unique_blocker_holds(c, b1)


def check_identity_25(trace: ProofTrace) -> bool:
    return not set(trace.B0.sets) & set(trace.Cbar.sets)


def check_sum_identity(trace: ProofTrace, a: Family, b: Family) -> bool:
    lhs = len(a) + len(b)
    rhs = (len(trace.A0) + len(trace.B0prime)) + (len(trace.A1prime) + len(trace.B1))
    return lhs == rhs


def meeting_count(m: int, k: int, r: int) -> int:
    """Number of subsets of [m] with at most k elements that meet [r]."""
    if k < 0:
        return 0
    head = prefix(min(r, m))
    return sum(1 for x in masks_upto(m, k) if x & head)


def check_claims(trace: ProofTrace, p: Params) -> tuple[bool, bool]:
    m = trace.n - 1
    first = len(trace.A0) + len(trace.B0prime) <= 1 + meeting_count(m, p.s, p.r)
    second = len(trace.A1prime) + len(trace.B1) <= meeting_count(m, p.s - 1, p.r)
    return first, second


def build_trace(a: Family, b: Family, p: Params) -> ProofTrace:
    """Decompose ``(a, b)`` and run every check; compresses the pair first if needed."""
    require_nonempty_pair(a, b)
    if a.n != p.n:
        raise ValueError(f"pair lives on [{a.n}] but parameters say n={p.n}")
    if any(x.bit_count() > p.r for x in a.sets) or any(x.bit_count() > p.s for x in b.sets):
        raise ValueError("member sizes exceed r or s")
    compressed = is_compressed(a) and is_compressed(b)
    if not compressed:
        a, b, _ = compress_pair_to_fixpoint(a, b)
    elif not is_cross_intersecting(a, b):
        raise NotCrossIntersecting("pair is not cross-intersecting")

    a0, a1 = decompose(a)
    b0, b1 = decompose(b)
    c, cbar = compute_blockers(a1, b1)
    a1p = Family.of(a1.n, set(a1.sets) - set(c.sets))
    b0p = Family.of(b0.n, set(b0.sets) | set(cbar.sets))
    trace = ProofTrace(p.n, a0, a1, b0, b1, c, cbar, a1p, b0p, compressed_input=compressed)

    full_cube = p.r >= p.n
    if full_cube:
        ok = len(b) <= (1 << p.n) - len(a)
        c1 = c2 = ok
    else:
        c1, c2 = check_claims(trace, p)
    return replace(
        trace,
        unique_blocker_ok=unique_blocker_holds(c, b1),
        disjoint_25_ok=check_identity_25(trace),
        sum_identity_ok=check_sum_identity(trace, a, b),
        claim1_ok=c1,
        claim2_ok=c2,
        full_cube_branch=full_cube,
    )
