"""Independent reference implementations used to freeze expected values.

Everything here deliberately avoids the code paths under test: subset
sums come from bitmask enumeration rather than convolution, shifts from
exhaustive candidate search, ranks from rational Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction

from fsrecon import FSMultiset, GroupElement, IntFunction, shift


def fs_by_enumeration(a: IntFunction) -> FSMultiset:
    """Subset-sum multiset by enumerating all 2^|A| submultisets."""
    elements: list[GroupElement] = []
    for g, v in a.sorted_items():
        elements.extend([g] * v)
    counts: dict[GroupElement, int] = {}
    for mask in range(2 ** len(elements)):
        total = a.group.zero()
        for i, g in enumerate(elements):
            if mask >> i & 1:
                total = total + g
        counts[total] = counts.get(total, 0) + 1
    return FSMultiset(a.group, counts)


def shifts_by_exhaustion(s: FSMultiset, t: FSMultiset) -> list[GroupElement]:
    """All x with s == t + x, tried over every conceivable candidate."""
    group = s.group
    if group.is_finite:
        candidates = list(group.elements())
    else:
        candidates = sorted(
            {ga - gb for ga, _ in s.items() for gb, _ in t.items()},
            key=lambda g: g.sort_key,
        )
    out = [x for x in candidates if shift(t, x) == s]
    out.sort(key=lambda g: g.sort_key)
    return out


def rank_by_fractions(rows: list[list[int]]) -> int:
    """Matrix rank over Q by plain Gaussian elimination on Fractions."""
    if not rows:
        return 0
    m = [[Fraction(v) for v in row] for row in rows]
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        m[rank] = [v / pv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


def multiset_of(group, *coords_list) -> IntFunction:
    """Shorthand: a multiset from raw coordinate tuples/ints."""
    entries = []
    for c in coords_list:
        coords = (c,) if isinstance(c, int) else tuple(c)
        entries.append((group.element(coords), 1))
    return IntFunction(group, entries)
