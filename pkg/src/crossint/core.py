"""Ground sets, families of subsets, and the closed-form sum bound.

A subset of [n] = {1, ..., n} is stored as an int bitmask: bit ``i - 1`` is
set iff ``i`` belongs to the subset. A :class:`Family` keeps its members
deduplicated and in canonical order (cardinality, then mask value).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

#: Largest ground size for anything that materializes families.
MAX_GROUND = 20
#: Largest ground size accepted by :func:`compute_bound`.
MAX_BOUND_GROUND = 10_000


class CapExceeded(ValueError):
    """An instance is larger than a configured enumeration cap."""


class FamilyFormatError(ValueError):
    """A family file could not be parsed."""

    def __init__(self, message: str, position: str | None = None):
        self.position = position
        super().__init__(f"{message} at {position}" if position else message)


# ---------------------------------------------------------------------------
# masks
# ---------------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-indexed elements."""
    m = 0
    for x in elements:
        if x < 1:
            raise ValueError(f"element {x} is not a positive integer")
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> list[int]:
    """Sorted 1-indexed elements of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def prefix(k: int) -> int:
    """Mask of [k] = {1, ..., k}."""
    return (1 << k) - 1 if k > 0 else 0


def element_sum(mask: int) -> int:
    return sum(elements_of(mask))


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def masks_upto(n: int, k: int, *, exact: bool = False, nonempty: bool = True) -> list[int]:
    """All subsets of [n] of size at most ``k`` (or exactly ``k``), canonically ordered."""
    k = min(k, n)
    lo = k if exact else (1 if nonempty else 0)
    out: list[int] = []
    for size in range(lo, k + 1):
        row = [mask_of(c) for c in combinations(range(1, n + 1), size)]
        row.sort()
        out.extend(row)
    return out


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """Canonically ordered collection of distinct subsets of [n].

    Use :meth:`of` to build one from unsorted masks; the raw constructor
    validates but does not reorder.
    """

    n: int
    sets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0 or self.n > MAX_GROUND:
            raise ValueError(f"ground size {self.n} outside [0, {MAX_GROUND}]")
        limit = 1 << self.n
        prev = None
        for m in self.sets:
            if m < 0 or m >= limit:
                raise ValueError(f"mask {m:#x} has bits outside [{self.n}]")
            key = canonical_key(m)
            if prev is not None and key <= prev:
                raise ValueError("sets are not strictly increasing in canonical order")
            prev = key

    @classmethod
    def of(cls, n: int, masks: Iterable[int]) -> Family:
        return cls(n, tuple(sorted(set(masks), key=canonical_key)))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> Family:
        return cls.of(n, (mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __contains__(self, mask: object) -> bool:
        return mask in self._members

    @property
    def _members(self) -> frozenset[int]:
        # frozen dataclass: cache lazily through object.__setattr__
        try:
            return self.__dict__["_member_cache"]
        except KeyError:
            members = frozenset(self.sets)
            object.__setattr__(self, "_member_cache", members)
            return members

    def as_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.sets]

    def sort_key(self) -> tuple:
        """Tie-break key: fewer sets first, then lexicographic on members."""
        return (len(self.sets), tuple(canonical_key(m) for m in self.sets))

    def cardinalities(self) -> list[int]:
        return [m.bit_count() for m in self.sets]

    def contains_empty(self) -> bool:
        return 0 in self._members

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_lists())
        return f"Family(n={self.n}, [{body}])"


@dataclass(frozen=True)
class Params:
    n: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.s < self.r:
            raise ValueError(f"s must be >= r, got r={self.r}, s={self.s}")

    @property
    def r_eff(self) -> int:
        return min(self.r, self.n)

    @property
    def s_eff(self) -> int:
        return min(self.s, self.n)

    def require_ground_cap(self, cap: int = MAX_GROUND) -> None:
        if self.n > cap:
            raise CapExceeded(f"n={self.n} exceeds ground-size cap {cap}")


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def binom(m: int, k: int) -> int:
    """C(m, k) with C(m, k) = 0 for k < 0 or k > m."""
    if m < 0:
        raise ValueError(f"binom needs m >= 0, got {m}")
    if k < 0 or k > m:
        return 0
    return comb(m, k)


def compute_bound(p: Params) -> int:
    """Maximum of |A| + |B| over non-empty cross-intersecting A (sets of size <= r)
    and B (sets of size <= s) on [n].

    The sum runs to ``s`` as written, with the zero-binomial convention for
    out-of-range terms.
    """
    if p.n > MAX_BOUND_GROUND:
        raise CapExceeded(f"n={p.n} exceeds {MAX_BOUND_GROUND}")
    rest = p.n - p.r
    total = 1
    for i in range(1, p.s + 1):
        if i > p.n:
            break
        total += binom(p.n, i) - (binom(rest, i) if rest >= 0 else 0)
    return total


def uniform_bound(n: int, r: int, s: int) -> int:
    """1 + C(n, s) - C(n - r, s): the sum maximum when |A| = r, |B| = s and n >= r + s."""
    return 1 + binom(n, s) - binom(n - r, s)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def is_cross_intersecting(a: Family, b: Family) -> bool:
    if a.n != b.n:
        raise ValueError(f"ground sizes differ: {a.n} != {b.n}")
    return all(x & y for x in a.sets for y in b.sets)


def build_extremal(p: Params) -> tuple[Family, Family]:
    """The pair ({[r]}, all non-empty sets of size <= s meeting [r]), clamped to [n]."""
    p.require_ground_cap()
    head = prefix(p.r_eff)
    b = [m for m in masks_upto(p.n, p.s_eff) if m & head]
    return Family(p.n, (head,)), Family(p.n, tuple(b))


def require_nonempty_pair(a: Family, b: Family) -> None:
    """Entry check for search/verification: both non-empty, no empty member."""
    if a.n != b.n:
        raise ValueError(f"ground sizes differ: {a.n} != {b.n}")
    if not len(a) or not len(b):
        raise ValueError("both families must be non-empty")
    if a.contains_empty() or b.contains_empty():
        raise ValueError("the empty set cannot belong to a family whose partner is non-empty")


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def _parse_sets(n: int, raw: object, where: str) -> Family:
    if not isinstance(raw, list):
        raise FamilyFormatError("sets must be a list", where)
    seen: dict[int, int] = {}
    for idx, item in enumerate(raw):
        pos = f"{where}[{idx}]"
        if not isinstance(item, list):
            raise FamilyFormatError("set must be a list of integers", pos)
        m = 0
        for jdx, x in enumerate(item):
            if not isinstance(x, int) or isinstance(x, bool):
                raise FamilyFormatError("element is not an integer", f"{pos}[{jdx}]")
            if not 1 <= x <= n:
                raise FamilyFormatError("element out of range", f"{pos}[{jdx}]")
            bit = 1 << (x - 1)
            if m & bit:
                raise FamilyFormatError("repeated element", f"{pos}[{jdx}]")
            m |= bit
        if m in seen:
            raise FamilyFormatError(f"duplicate set (same as {where}[{seen[m]}])", pos)
        seen[m] = idx
    return Family.of(n, seen)


def _load_object(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise FamilyFormatError("top level must be an object", "$")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise FamilyFormatError("missing or non-integer n", "$.n")
    if not 1 <= n <= MAX_GROUND:
        raise FamilyFormatError(f"n out of range [1, {MAX_GROUND}]", "$.n")
    return obj


def parse_family(text: str) -> Family:
    """Parse ``{"n": N, "sets": [[...], ...]}``."""
    obj = _load_object(text)
    if "sets" not in obj:
        raise FamilyFormatError("missing sets", "$")
    return _parse_sets(obj["n"], obj["sets"], "$.sets")


def parse_pair(text: str) -> tuple[Family, Family]:
    """Parse ``{"n": N, "A": [...], "B": [...]}``."""
    obj = _load_object(text)
    for key in ("A", "B"):
        if key not in obj:
            raise FamilyFormatError(f"missing {key}", "$")
    n = obj["n"]
    return _parse_sets(n, obj["A"], "$.A"), _parse_sets(n, obj["B"], "$.B")


def family_payload(f: Family) -> dict:
    return {"n": f.n, "sets": f.as_lists()}


def serialize_family(f: Family) -> str:
    return json.dumps(family_payload(f), separators=(",", ":"))


def serialize_pair(a: Family, b: Family, **extra: object) -> str:
    if a.n != b.n:
        raise ValueError("ground sizes differ")
    obj = {"n": a.n, "A": a.as_lists(), "B": b.as_lists()}
    obj.update(extra)
    return json.dumps(obj, separators=(",", ":"))


def format_sets(masks: Sequence[int]) -> str:
    """Human-readable ``{1,2} {3}`` rendering."""
    if not masks:
        return "(empty)"
    return " ".join("{" + ",".join(map(str, elements_of(m))) + "}" for m in masks)
