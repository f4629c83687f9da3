"""Left-compressions (shifting) of families and their fixpoints."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Family, element_sum, is_cross_intersecting


class NotCrossIntersecting(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    i: int
    j: int
    potential_before: int
    potential_after: int
    changed: bool

    def line(self) -> str:
        return f"{self.i} {self.j} {self.potential_before} {self.potential_after} {int(self.changed)}"


@dataclass
class CompressionTrace:
    steps: list[Step] = field(default_factory=list)

    @property
    def changing_steps(self) -> int:
        return sum(1 for st in self.steps if st.changed)

    def is_valid(self) -> bool:
        """Potential strictly drops on every changing left-compression and is flat otherwise."""
        for st in self.steps:
            if st.changed and st.i < st.j and not st.potential_after < st.potential_before:
                return False
            if not st.changed and st.potential_after != st.potential_before:
                return False
        return True

    def to_text(self) -> str:
        return "".join(st.line() + "\n" for st in self.steps)

    @classmethod
    def from_text(cls, text: str) -> CompressionTrace:
        steps = []
        for raw in text.splitlines():
            if not raw.strip():
                continue
            i, j, before, after, changed = (int(x) for x in raw.split())
            steps.append(Step(i, j, before, after, bool(changed)))
        return cls(steps)


def _check_elements(i: int, j: int, n: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"elements ({i}, {j}) outside [{n}]")
    if i == j:
        raise ValueError("compression needs i != j")


def delta(i: int, j: int, a: int, n: int | None = None) -> int:
    """Replace ``j`` by ``i`` in the set ``a`` when ``j`` is in it and ``i`` is not."""
    if n is not None:
        _check_elements(i, j, n)
    elif i < 1 or j < 1 or i == j:
        raise ValueError(f"bad element pair ({i}, {j})")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    if a & bj and not a & bi:
        return (a ^ bj) | bi
    return a


def _compress_masks(i: int, j: int, masks: tuple[int, ...]) -> list[int]:
    members = set(masks)
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    out = []
    for a in masks:
        if a & bj and not a & bi:
            d = (a ^ bj) | bi
            out.append(a if d in members else d)
        else:
            out.append(a)
    return out


def compress_family(i: int, j: int, f: Family) -> Family:
    """Apply the compression operation for (i, j) to every member of ``f``.

    A member is shifted unless its image is already in the family, so the
    family size never changes.
    """
    _check_elements(i, j, f.n)
    return Family.of(f.n, _compress_masks(i, j, f.sets))


def potential(f: Family) -> int:
    """Sum over members of the sum of their elements."""
    return sum(element_sum(m) for m in f.sets)


def is_compressed(f: Family) -> bool:
    members = set(f.sets)
    for m in f.sets:
        for j in range(2, f.n + 1):
            if not m >> (j - 1) & 1:
                continue
            for i in range(1, j):
                if not m >> (i - 1) & 1 and (m ^ (1 << (j - 1)) | (1 << (i - 1))) not in members:
                    return False
    return True


def _pairs(n: int):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield i, j


def compress_to_fixpoint(f: Family) -> tuple[Family, CompressionTrace]:
    """Sweep left-compressions in lexicographic (i, j) order until a pass changes nothing."""
    trace = CompressionTrace()
    current = f
    phi = potential(f)
    while True:
        moved = False
        for i, j in _pairs(f.n):
            nxt = compress_family(i, j, current)
            changed = nxt != current
            after = potential(nxt) if changed else phi
            trace.steps.append(Step(i, j, phi, after, changed))
            current, phi = nxt, after
            moved |= changed
        if not moved:
            return current, trace


def compress_pair_to_fixpoint(a: Family, b: Family) -> tuple[Family, Family, CompressionTrace]:
    """Compress a cross-intersecting pair simultaneously.

    A left-compression is applied to both families whenever it changes at
    least one of them; the trace records the combined potential.
    """
    if not is_cross_intersecting(a, b):
        raise NotCrossIntersecting("input families are not cross-intersecting")
    trace = CompressionTrace()
    phi = potential(a) + potential(b)
    while True:
        moved = False
        for i, j in _pairs(a.n):
            na, nb = compress_family(i, j, a), compress_family(i, j, b)
            changed = na != a or nb != b
            if changed:
                a, b = na, nb
                after = potential(a) + potential(b)
            else:
                after = phi
            trace.steps.append(Step(i, j, phi, after, changed))
            phi = after
            moved |= changed
        if not moved:
            return a, b, trace
