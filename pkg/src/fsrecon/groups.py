"""Finitely generated abelian groups with odd torsion.

A group is an explicit direct sum Z/n_1 + ... + Z/n_k + Z^r with every
n_i odd and >= 3, so there is never an element of order 2.  Elements are
coordinate vectors with torsion coordinates kept reduced into [0, n_i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from .arith import units_mod
from .errors import BadModulus, EvenTorsion, GroupMismatch, GroupTooLarge, InfiniteGroup, InfiniteKernel
from .intmatrix import integer_rank, solve_unique_rational

DEFAULT_SUBGROUP_BOUND = 2000


@dataclass(frozen=True, slots=True)
class GroupSpec:
    """Direct-sum presentation: odd torsion orders followed by free rank."""

    torsion_orders: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for n in self.torsion_orders:
            if not isinstance(n, int) or n < 3:
                raise ValueError(f"torsion orders must be integers >= 3 after normalization, got {n!r}")
            if n % 2 == 0:
                raise EvenTorsion(f"torsion order {n} is even; the group would contain 2-torsion")
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise ValueError(f"free_rank must be a non-negative integer, got {self.free_rank!r}")

    @property
    def torsion_rank(self) -> int:
        return len(self.torsion_orders)

    @property
    def dim(self) -> int:
        return len(self.torsion_orders) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self} is infinite")
        return prod(self.torsion_orders)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.dim)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def reduce_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        orders = self.torsion_orders
        k = len(orders)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(c % orders[i] if i < k else c for i, c in enumerate(coords))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if not self.is_finite:
            raise InfiniteGroup("cannot enumerate an infinite group")
        for coords in itertools.product(*(range(n) for n in self.torsion_orders)):
            yield GroupElement(self, coords)

    def torsion_elements(self) -> Iterator["GroupElement"]:
        """Elements of finite order: the torsion box with zero free part."""
        pad = (0,) * self.free_rank
        for coords in itertools.product(*(range(n) for n in self.torsion_orders)):
            yield GroupElement(self, coords + pad)

    def __str__(self) -> str:
        parts = [f"Z/{n}" for n in self.torsion_orders]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def make_group(torsion_orders: Iterable[int], free_rank: int = 0) -> GroupSpec:
    """Build a GroupSpec, dropping order-1 factors and rejecting even ones."""
    normalized = []
    for n in torsion_orders:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"torsion orders must be integers >= 1, got {n!r}")
        if n % 2 == 0:
            raise EvenTorsion(f"torsion order {n} is even; the group would contain 2-torsion")
        if n > 1:
            normalized.append(n)
    return GroupSpec(tuple(normalized), free_rank)


@dataclass(frozen=True, slots=True)
class GroupElement:
    group: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce_coords(self.coords))

    def _require_same_group(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise GroupMismatch(f"elements of {self.group} and {other.group} cannot be combined")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def scale(self, m: int) -> "GroupElement":
        return GroupElement(self.group, tuple(m * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_torsion(self) -> bool:
        k = self.group.torsion_rank
        return all(c == 0 for c in self.coords[k:])

    def order(self) -> int | None:
        """Least m >= 1 with m*self == 0, or None for infinite order."""
        if not self.is_torsion:
            return None
        k = self.group.torsion_rank
        result = 1
        for c, n in zip(self.coords[:k], self.group.torsion_orders):
            result = lcm(result, n // gcd(c, n))
        return result

    @property
    def sort_key(self) -> tuple[int, ...]:
        """Deterministic ordering key; free coordinates are most significant."""
        k = self.group.torsion_rank
        return self.coords[k:] + self.coords[:k]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class CyclicSubgroup:
    """A finite cyclic subgroup, identified by its element set."""

    __slots__ = ("generator", "order", "elements")

    def __init__(self, generator: GroupElement):
        n = generator.order()
        if n is None:
            raise InfiniteGroup(f"{generator} has infinite order")
        self.generator = generator
        self.order = n
        self.elements = frozenset(generator.scale(j) for j in range(n))

    def exact_order_elements(self) -> frozenset[GroupElement]:
        """The generators of this subgroup (elements of order exactly |H|)."""
        return frozenset(self.generator.scale(j) for j in units_mod(self.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicSubgroup) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"CyclicSubgroup(order={self.order}, generator={self.generator})"


def cyclic_subgroup(g: GroupElement) -> CyclicSubgroup:
    return CyclicSubgroup(g)


def enumerate_cyclic_subgroups(group: GroupSpec) -> list[CyclicSubgroup]:
    """All cyclic subgroups of a finite group.

    The sets of exact-order elements of the results partition the group.
    Each subgroup is reported with its canonical generator (the smallest
    generator under the coordinate ordering).
    """
    seen: dict[frozenset[GroupElement], CyclicSubgroup] = {}
    for g in group.elements():
        h = CyclicSubgroup(g)
        key = h.elements
        if key not in seen:
            seen[key] = CyclicSubgroup(min(h.exact_order_elements(), key=lambda e: e.sort_key))
    return sorted(seen.values(), key=lambda h: (h.order, h.generator.sort_key))


def _closure_with(subgroup: frozenset[GroupElement], g: GroupElement) -> frozenset[GroupElement]:
    # for abelian groups <H, g> = {h + j*g}; no general closure loop needed
    n = g.order()
    return frozenset(h + g.scale(j) for h in subgroup for j in range(n))


def enumerate_subgroups(group: GroupSpec, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[frozenset[GroupElement]]:
    """All subgroups of a finite group as explicit element sets.

    Brute-force closure over generator sets; exists to cross-validate the
    definitional membership check, so correctness beats scalability.
    """
    if not group.is_finite:
        raise InfiniteGroup("subgroup enumeration requires a finite group")
    if group.order() > bound:
        raise GroupTooLarge(f"|G| = {group.order()} exceeds bound {bound}")
    trivial = frozenset({group.zero()})
    found = {trivial}
    frontier = [trivial]
    elements = list(group.elements())
    while frontier:
        nxt = []
        for sub in frontier:
            for g in elements:
                if g not in sub:
                    bigger = _closure_with(sub, g)
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(e.sort_key for e in s)))


@dataclass(frozen=True, slots=True)
class Embedding:
    """An injective map Z/n -> G, determined by the image of 1."""

    target_of_one: GroupElement
    modulus: int

    def __post_init__(self):
        if self.target_of_one.order() != self.modulus:
            raise ValueError(
                f"image of 1 must have order exactly {self.modulus}, got {self.target_of_one.order()}"
            )

    def __call__(self, j: int) -> GroupElement:
        return self.target_of_one.scale(j)

    @property
    def group(self) -> GroupSpec:
        return self.target_of_one.group


def enumerate_embeddings(n: int, group: GroupSpec) -> list[Embedding]:
    """All embeddings of Z/n into G: one per element of exact order n."""
    if n < 3 or n % 2 == 0:
        raise BadModulus(f"embeddings are defined for odd n >= 3, got {n}")
    out = [
        Embedding(g, n)
        for g in group.torsion_elements()
        if g.order() == n
    ]
    out.sort(key=lambda e: e.target_of_one.sort_key)
    return out


class Homomorphism:
    """A group homomorphism given by an integer matrix on coordinates.

    The matrix has one row per target coordinate and one column per source
    coordinate; well-definedness on the torsion factors is validated at
    construction.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: GroupSpec, target: GroupSpec, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(r) for r in matrix)
        if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
            raise ValueError(f"matrix must be {target.dim} x {source.dim}")
        kt = target.torsion_rank
        for i, n in enumerate(source.torsion_orders):
            for j in range(target.dim):
                v = n * rows[j][i]
                if j < kt:
                    if v % target.torsion_orders[j] != 0:
                        raise ValueError(f"matrix does not respect the order-{n} source factor")
                elif v != 0:
                    raise ValueError("torsion cannot map to a free coordinate")
        self.source = source
        self.target = target
        self.matrix = rows

    @classmethod
    def identity(cls, group: GroupSpec) -> "Homomorphism":
        d = group.dim
        return cls(group, group, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def zero(cls, source: GroupSpec, target: GroupSpec) -> "Homomorphism":
        return cls(source, target, [[0] * source.dim for _ in range(target.dim)])

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise GroupMismatch("element does not belong to the source group")
        coords = tuple(sum(r * c for r, c in zip(row, g.coords)) for row in self.matrix)
        return GroupElement(self.target, coords)

    def _free_block(self) -> list[list[int]]:
        ks, kt = self.source.torsion_rank, self.target.torsion_rank
        return [[self.matrix[j][i] for i in range(ks, self.source.dim)] for j in range(kt, self.target.dim)]

    def has_finite_kernel(self) -> bool:
        # torsion can only contribute finitely many kernel elements, so the
        # kernel is finite iff the free-to-free block has full column rank
        if self.source.free_rank == 0:
            return True
        return integer_rank(self._free_block()) == self.source.free_rank

    def preimages(self, h: GroupElement) -> list[GroupElement]:
        """All solutions of psi(x) = h; requires a finite kernel."""
        if h.group != self.target:
            raise GroupMismatch("element does not belong to the target group")
        if not self.has_finite_kernel():
            raise InfiniteKernel("preimage enumeration requires a finite kernel")
        ks, kt = self.source.torsion_rank, self.target.torsion_rank
        free_rank = self.source.free_rank
        if free_rank:
            rhs = list(h.coords[kt:])
            solution = solve_unique_rational(self._free_block(), rhs)
            if solution is None or any(z.denominator != 1 for z in solution):
                return []
            free_part = [int(z) for z in solution]
        else:
            if any(c != 0 for c in h.coords[kt:]):
                return []
            free_part = []
        out = []
        for tors in itertools.product(*(range(n) for n in self.source.torsion_orders)):
            x = GroupElement(self.source, tuple(tors) + tuple(free_part))
            if self(x) == h:
                out.append(x)
        out.sort(key=lambda e: e.sort_key)
        return out

    def __repr__(self) -> str:
        return f"Homomorphism({self.source} -> {self.target})"
