"""Finitely supported integer functions and subset-sum multisets.

An IntFunction maps group elements to nonzero integers; multisets are the
non-negative special case.  The subset-sum multiset of a multiset A is
computed by convolving one (delta_0 + delta_a) factor per element of A,
so its total mass is exactly 2**|A| as an arbitrary-precision integer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping

from .arith import multiplicative_order
from .errors import (
    GroupMismatch,
    InternalInconsistency,
    NotDivisible,
    SizeCapExceeded,
    SupportNotUnits,
)
from .groups import GroupElement, GroupSpec

DEFAULT_SIZE_CAP = 64
SIZE_CAP_ENV = "FSRECON_SIZE_CAP"


def default_size_cap() -> int:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SIZE_CAP_ENV} must be an integer, got {raw!r}") from None


class IntFunction:
    """Immutable finitely supported function from a group to Z."""

    __slots__ = ("group", "_entries", "_hash")

    def __init__(self, group: GroupSpec, entries: Mapping[GroupElement, int] | Iterable[tuple[GroupElement, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        table: dict[GroupElement, int] = {}
        for g, v in items:
            if g.group != group:
                raise GroupMismatch(f"support element {g} does not belong to {group}")
            if v:
                table[g] = table.get(g, 0) + v
                if table[g] == 0:
                    del table[g]
        self.group = group
        self._entries = table
        self._hash = None

    @classmethod
    def zero(cls, group: GroupSpec) -> "IntFunction":
        return cls(group)

    @classmethod
    def delta(cls, g: GroupElement, value: int = 1) -> "IntFunction":
        return cls(g.group, [(g, value)])

    @classmethod
    def multiset(cls, group: GroupSpec, elements: Iterable[GroupElement]) -> "IntFunction":
        return cls(group, [(g, 1) for g in elements])

    @classmethod
    def multiset_from_coords(cls, group: GroupSpec, coords_list: Iterable[Iterable[int]]) -> "IntFunction":
        return cls(group, [(group.element(c), 1) for c in coords_list])

    def value(self, g: GroupElement) -> int:
        return self._entries.get(g, 0)

    def support(self) -> Iterator[GroupElement]:
        return iter(self._entries)

    def items(self) -> Iterator[tuple[GroupElement, int]]:
        return iter(self._entries.items())

    def sorted_items(self) -> list[tuple[GroupElement, int]]:
        return sorted(self._entries.items(), key=lambda kv: kv[0].sort_key)

    def support_size(self) -> int:
        return len(self._entries)

    def total(self) -> int:
        """Sum of all values (the size |A| when this is a multiset)."""
        return sum(self._entries.values())

    @property
    def is_multiset(self) -> bool:
        return all(v > 0 for v in self._entries.values())

    def weighted_sum(self) -> GroupElement:
        """Sum of value(g) * g over the support."""
        acc = self.group.zero()
        for g, v in self._entries.items():
            acc = acc + g.scale(v)
        return acc

    def l1(self) -> int:
        return sum(abs(v) for v in self._entries.values())

    def _require_same_group(self, other: "IntFunction") -> None:
        if self.group != other.group:
            raise GroupMismatch("functions live on different groups")

    def __add__(self, other: "IntFunction") -> "IntFunction":
        self._require_same_group(other)
        table = dict(self._entries)
        for g, v in other._entries.items():
            w = table.get(g, 0) + v
            if w:
                table[g] = w
            else:
                table.pop(g, None)
        out = IntFunction.zero(self.group)
        out._entries = table
        return out

    def __neg__(self) -> "IntFunction":
        out = IntFunction.zero(self.group)
        out._entries = {g: -v for g, v in self._entries.items()}
        return out

    def __sub__(self, other: "IntFunction") -> "IntFunction":
        return self + (-other)

    def scale(self, k: int) -> "IntFunction":
        out = IntFunction.zero(self.group)
        if k:
            out._entries = {g: k * v for g, v in self._entries.items()}
        return out

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntFunction)
            and self.group == other.group
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{g}: {v}" for g, v in self.sorted_items())
        return f"IntFunction({self.group}, {{{inner}}})"


def multiset_sum(a: IntFunction) -> GroupElement:
    """Sum of the elements of a multiset, counted with multiplicity."""
    return a.weighted_sum()


class FSMultiset:
    """Multiplicity function of a subset-sum multiset (positive entries)."""

    __slots__ = ("group", "_entries", "_coords", "_profile", "_anchor", "total")

    def __init__(self, group: GroupSpec, entries: Mapping[GroupElement, int] | Iterable[tuple[GroupElement, int]]):
        items = entries.items() if isinstance(entries, Mapping) else entries
        table: dict[GroupElement, int] = {}
        for g, v in items:
            if g.group != group:
                raise GroupMismatch(f"support element {g} does not belong to {group}")
            if v <= 0:
                raise ValueError(f"multiplicities must be positive, got {v} at {g}")
            table[g] = table.get(g, 0) + v
        if not table:
            raise ValueError("a subset-sum multiset is never empty")
        self.group = group
        self._entries = table
        self._coords = {g.coords: v for g, v in table.items()}
        self._profile = tuple(sorted(table.values()))
        anchor = min(table, key=lambda g: g.sort_key)
        self._anchor = (anchor, table[anchor])
        self.total = sum(table.values())

    def value(self, g: GroupElement) -> int:
        return self._entries.get(g, 0)

    def items(self) -> Iterator[tuple[GroupElement, int]]:
        return iter(self._entries.items())

    def sorted_items(self) -> list[tuple[GroupElement, int]]:
        return sorted(self._entries.items(), key=lambda kv: kv[0].sort_key)

    def support_size(self) -> int:
        return len(self._entries)

    def to_int_function(self) -> IntFunction:
        return IntFunction(self.group, self._entries)

    def weighted_sum(self) -> GroupElement:
        acc = self.group.zero()
        for g, v in self._entries.items():
            acc = acc + g.scale(v)
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FSMultiset)
            and self.group == other.group
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        return hash((self.group, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        inner = ", ".join(f"{g}: {v}" for g, v in self.sorted_items())
        return f"FSMultiset({self.group}, {{{inner}}})"


def _add_coords(group: GroupSpec, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    orders = group.torsion_orders
    k = len(orders)
    return tuple(
        (a + b) % orders[i] if i < k else a + b
        for i, (a, b) in enumerate(zip(x, y))
    )


def fs_multiset(a: IntFunction, size_cap: int | None = None) -> FSMultiset:
    """Subset-sum multiset of a multiset, via iterated convolution.

    One factor (delta_0 + delta_g) per copy of g in the multiset, applied
    in deterministic element order; the result has total mass 2**|a|.
    """
    if not a.is_multiset:
        raise ValueError("subset sums are defined for multisets (non-negative values)")
    cap = default_size_cap() if size_cap is None else size_cap
    size = a.total()
    if size > cap:
        raise SizeCapExceeded(f"|A| = {size} exceeds the size cap {cap}")
    group = a.group
    table: dict[tuple[int, ...], int] = {group.zero().coords: 1}
    for g, mult in a.sorted_items():
        step = g.coords
        for _ in range(mult):
            nxt = dict(table)
            for c, v in table.items():
                key = _add_coords(group, c, step)
                nxt[key] = nxt.get(key, 0) + v
            table = nxt
    return FSMultiset(group, {GroupElement(group, c): v for c, v in table.items()})


def minkowski_sum(s: FSMultiset, t: FSMultiset) -> FSMultiset:
    """Convolution of multiplicity functions; totals multiply."""
    if s.group != t.group:
        raise GroupMismatch("operands live on different groups")
    group = s.group
    table: dict[tuple[int, ...], int] = {}
    for c1, v1 in s._coords.items():
        for c2, v2 in t._coords.items():
            key = _add_coords(group, c1, c2)
            table[key] = table.get(key, 0) + v1 * v2
    return FSMultiset(group, {GroupElement(group, c): v for c, v in table.items()})


def shift(s: FSMultiset, by: GroupElement) -> FSMultiset:
    """Translate every element by `by`, keeping multiplicities."""
    if s.group != by.group:
        raise GroupMismatch("shift element lives on a different group")
    return FSMultiset(s.group, {g + by: v for g, v in s._entries.items()})


def find_shifts(s: FSMultiset, t: FSMultiset) -> list[GroupElement]:
    """All group elements x with s == t + x.

    Totals and multiplicity profiles must agree; candidates are read off
    from the canonical anchor of s against matching-multiplicity support
    elements of t, then each candidate is verified in full.
    """
    if s.group != t.group:
        raise GroupMismatch("operands live on different groups")
    if s.total != t.total or s._profile != t._profile:
        return []
    group = s.group
    anchor, anchor_mult = s._anchor
    a0 = anchor.coords
    s_coords = s._coords
    out = []
    for bc, mult in t._coords.items():
        if mult != anchor_mult:
            continue
        cand = tuple(a - b for a, b in zip(a0, bc))
        if all(
            s_coords.get(_add_coords(group, tc, cand)) == tv
            for tc, tv in t._coords.items()
        ):
            out.append(GroupElement(group, cand))
    out.sort(key=lambda g: g.sort_key)
    return out


@dataclass(frozen=True)
class EquidistributionReport:
    """Outcome of the uniformity test for subset sums of unit multisets."""

    uniform: bool
    expected_multiplicity: int | None = None
    witness: tuple[GroupElement, int, int] | None = None  # (element, got, expected)
    base_multiset: IntFunction | None = None
    membership: object | None = None  # VMembershipReport for mu_A - mu_B


def check_equidistributed(a: IntFunction, size_cap: int | None = None) -> EquidistributionReport:
    """Test whether FS(a) minus one copy of 0 is uniform on Z/n.

    When uniform, builds the baseline multiset of |a| / ord(2) copies of
    the multiplicative subgroup generated by 2 and certifies membership
    of the difference function in the shift kernel.
    """
    group = a.group
    if group.free_rank != 0 or group.torsion_rank != 1:
        raise ValueError("equidistribution test requires a cyclic group Z/n")
    if not a.is_multiset:
        raise ValueError("equidistribution test requires a multiset")
    n = group.torsion_orders[0]
    for g in a.support():
        if gcd(g.coords[0], n) != 1:
            raise SupportNotUnits(f"{g} is not a unit mod {n}")
    q = a.total()
    m = multiplicative_order(2, n)
    if q % m != 0:
        raise NotDivisible(
            f"ord(2 mod {n}) = {m} does not divide |A| = {q}, so n cannot divide 2^|A| - 1"
        )
    # removing exactly one copy of 0 (the empty-subset sum) makes the count
    # divisible by n in the uniform case
    expected = (2**q - 1) // n
    fs = fs_multiset(a, size_cap=size_cap)
    zero = group.zero()
    for g in group.elements():
        got = fs.value(g) - (1 if g == zero else 0)
        if got != expected:
            return EquidistributionReport(uniform=False, expected_multiplicity=expected, witness=(g, got, expected))
    base = IntFunction(
        group,
        [(group.element((pow(2, i, n),)), q // m) for i in range(m)],
    )
    if fs_multiset(base, size_cap=size_cap) != fs:
        raise InternalInconsistency("uniform subset sums must match the 2-power baseline")
    from .vmodule import v_check  # deferred: vmodule depends on this module

    membership = v_check(a - base)
    if not membership.member:
        raise InternalInconsistency("difference against the baseline must pass the kernel check")
    return EquidistributionReport(
        uniform=True,
        expected_multiplicity=expected,
        base_multiset=base,
        membership=membership,
    )
