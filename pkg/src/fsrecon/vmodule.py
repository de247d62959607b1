"""The shift kernel of the subset-sum map: membership, generators, ranks.

V(G) is the lattice of finitely supported integer functions satisfying
the doubling identity mu(g) + mu(-g) = mu(2g) + mu(-2g) everywhere and
summing to zero over every subgroup.  Membership is decided by splitting
off the infinite-order support (which must be antisymmetric) and checking
each cyclic piece of the torsion support against the unit-level variant
of the conditions; the definitional check is kept for cross-validation on
small finite groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import divisors, euler_phi, units_mod
from .errors import (
    BadModulus,
    GroupMismatch,
    InfiniteGroup,
    InfiniteKernel,
    SupportNotUnits,
)
from .groups import (
    DEFAULT_SUBGROUP_BOUND,
    GroupElement,
    GroupSpec,
    Homomorphism,
    enumerate_embeddings,
    enumerate_subgroups,
    make_group,
)
from .intmatrix import integer_rank
from .multisets import IntFunction


@dataclass(frozen=True, slots=True)
class USet:
    """The doubling orbit {1, 2, 4, ..., 2^(k-1)} mod n, with its sign.

    k is the least exponent with 2^k == +-1 mod n; sign records which.
    """

    modulus: int
    k: int
    sign: int
    elements: tuple[int, ...]

    @property
    def plus_minus(self) -> tuple[int, ...]:
        """The symmetric closure: U and -U, disjoint by minimality of k."""
        n = self.modulus
        return self.elements + tuple((n - e) % n for e in self.elements)


def u_set(n: int) -> USet:
    if n < 3 or n % 2 == 0:
        raise BadModulus(f"requires an odd modulus >= 3, got {n}")
    k, power = 1, 2 % n
    while power != 1 and power != n - 1:
        power = power * 2 % n
        k += 1
    sign = 1 if power == 1 else -1
    return USet(n, k, sign, tuple(pow(2, i, n) for i in range(k)))


def is_in_ofs(n: int) -> bool:
    """Whether 2 and -1 multiplicatively generate the units mod n."""
    if n < 1 or n % 2 == 0:
        raise BadModulus(f"requires an odd modulus >= 1, got {n}")
    if n == 1:
        return True
    generated = set()
    power = 1
    while power not in generated:
        generated.add(power)
        generated.add(n - power)
        power = power * 2 % n
    return len(generated) == euler_phi(n)


@dataclass(frozen=True)
class VWitness:
    """A concrete, re-verifiable violation of membership.

    kind is one of:
      - "doubling": element g with mu(g)+mu(-g) != mu(2g)+mu(-2g)
      - "subgroup_sum": a subgroup whose values sum to `value` != 0
      - "infinite_pair": infinite-order g with mu(g)+mu(-g) = value != 0
    """

    kind: str
    element: GroupElement | None = None
    subgroup: tuple[GroupElement, ...] | None = None
    value: int | None = None

    def describe(self) -> str:
        if self.kind == "doubling":
            return f"doubling identity fails at g = {self.element}"
        if self.kind == "subgroup_sum":
            return f"subgroup of order {len(self.subgroup)} has sum {self.value}"
        return f"infinite-order element {self.element} has pair sum {self.value}"


@dataclass(frozen=True)
class VMembershipReport:
    member: bool
    witness: VWitness | None = None


# per-group memo: element coords -> (canonical generator coords, order, unit index)
_PIECE_CACHE: dict[GroupSpec, dict[tuple[int, ...], tuple[tuple[int, ...], int, int]]] = {}


def _piece_entry(group: GroupSpec, g: GroupElement) -> tuple[tuple[int, ...], int, int]:
    cache = _PIECE_CACHE.setdefault(group, {})
    hit = cache.get(g.coords)
    if hit is None:
        n = g.order()
        generators = {g.scale(j) for j in units_mod(n)}
        h = min(generators, key=lambda e: e.sort_key)
        for j in units_mod(n):
            cache[h.scale(j).coords] = (h.coords, n, j)
        hit = cache[g.coords]
    return hit


def _unit_level_verdict(n: int, nu: dict[int, int]) -> tuple[bool, str | None, int | None]:
    """Check the unit-support conditions for a piece over Z/n.

    Returns (ok, failure_kind, unit) where failure_kind is "sum" or
    "doubling" and unit is a violating unit for the doubling case.
    """
    if sum(nu.values()) != 0:
        return False, "sum", None
    units = units_mod(n)
    pair_sum = {j: nu.get(j, 0) + nu.get((n - j) % n, 0) for j in units}
    for j in units:
        if pair_sum[j] != pair_sum[2 * j % n]:
            return False, "doubling", j
    return True, None, None


def _subgroup_sum_witness(mu: IntFunction, generator: GroupElement, n: int) -> VWitness:
    # some divisor subgroup must carry a nonzero sum when the unit-level
    # sum over the piece is nonzero (inclusion-exclusion over divisors)
    for e in divisors(n):
        members = tuple(generator.scale((n // e) * j) for j in range(e))
        total = sum(mu.value(x) for x in members)
        if total != 0:
            return VWitness(kind="subgroup_sum", subgroup=members, value=total)
    raise AssertionError("unit-level sum failure without a subgroup witness")


def v_check(mu: IntFunction, group: GroupSpec | None = None) -> VMembershipReport:
    """Decide membership in the shift kernel via torsion decomposition.

    Infinite-order support must be antisymmetric; the torsion support is
    grouped by the cyclic subgroup each element generates and every piece
    is checked at unit level.  Works for groups with free rank.
    """
    if group is not None and group != mu.group:
        raise GroupMismatch("function does not live on the stated group")
    group = mu.group
    pieces: dict[tuple[int, ...], tuple[int, dict[int, int]]] = {}
    seen_infinite: set[GroupElement] = set()
    for g, v in mu.items():
        if not g.is_torsion:
            if g in seen_infinite:
                continue
            neg = -g
            seen_infinite.add(neg)
            pair = v + mu.value(neg)
            if pair != 0:
                return VMembershipReport(False, VWitness(kind="infinite_pair", element=g, value=pair))
            continue
        if g.is_zero:
            return VMembershipReport(
                False,
                VWitness(kind="subgroup_sum", subgroup=(group.zero(),), value=v),
            )
        gen_coords, n, j = _piece_entry(group, g)
        pieces.setdefault(gen_coords, (n, {}))[1][j] = v
    for gen_coords in sorted(pieces, key=lambda c: (pieces[c][0], c)):
        n, nu = pieces[gen_coords]
        ok, kind, unit = _unit_level_verdict(n, nu)
        if ok:
            continue
        generator = GroupElement(group, gen_coords)
        if kind == "sum":
            return VMembershipReport(False, _subgroup_sum_witness(mu, generator, n))
        return VMembershipReport(
            False, VWitness(kind="doubling", element=generator.scale(unit))
        )
    return VMembershipReport(True)


def tilde_v_check(mu: IntFunction) -> bool:
    """Unit-supported variant over Z/n: doubling identity plus zero sum."""
    group = mu.group
    if group.free_rank != 0 or group.torsion_rank != 1:
        raise ValueError("requires a function on a cyclic group Z/n")
    n = group.torsion_orders[0]
    nu: dict[int, int] = {}
    for g, v in mu.items():
        j = g.coords[0]
        if gcd(j, n) != 1:
            raise SupportNotUnits(f"{g} is not a unit mod {n}")
        nu[j] = v
    ok, _, _ = _unit_level_verdict(n, nu)
    return ok


def v_check_definitional(mu: IntFunction, bound: int = DEFAULT_SUBGROUP_BOUND) -> VMembershipReport:
    """Check the defining conditions verbatim on a small finite group.

    Quantifies the doubling identity over every group element and the
    zero-sum condition over every subgroup; used to cross-validate the
    decomposition route.
    """
    group = mu.group
    if not group.is_finite:
        raise InfiniteGroup("the definitional check enumerates the whole group")
    for g in group.elements():
        if mu.value(g) + mu.value(-g) != mu.value(g.scale(2)) + mu.value(g.scale(-2)):
            return VMembershipReport(False, VWitness(kind="doubling", element=g))
    for sub in enumerate_subgroups(group, bound=bound):
        total = sum(mu.value(g) for g in sub)
        if total != 0:
            members = tuple(sorted(sub, key=lambda e: e.sort_key))
            return VMembershipReport(False, VWitness(kind="subgroup_sum", subgroup=members, value=total))
    return VMembershipReport(True)


def _canonical_function_key(f: IntFunction) -> tuple:
    return tuple(sorted((g.sort_key, v) for g, v in f.items()))


def v_generators(group: GroupSpec) -> list[IntFunction]:
    """Finite generating set of the shift kernel of a finite group.

    Sign-flip differences delta_g - delta_(-g) for every g, plus every
    coset-swap difference between scaled doubling-orbit images under all
    embeddings of Z/n; duplicates are removed by function equality.
    """
    if not group.is_finite:
        raise InfiniteGroup("generator enumeration requires a finite group")
    out: set[IntFunction] = set()
    orders: set[int] = set()
    for g in group.elements():
        orders.add(g.order())
        f = IntFunction.delta(g) - IntFunction.delta(-g)
        if f:
            out.add(f)
    for n in sorted(orders):
        if n < 3:
            continue
        us = u_set(n)
        for emb in enumerate_embeddings(n, group):
            images = {
                alpha: [emb(alpha * u % n) for u in us.elements]
                for alpha in units_mod(n)
            }
            for alpha in units_mod(n):
                for beta in units_mod(n):
                    if alpha == beta:
                        continue
                    f = IntFunction(
                        group,
                        [(e, 1) for e in images[alpha]] + [(e, -1) for e in images[beta]],
                    )
                    if f:
                        out.add(f)
    return sorted(out, key=_canonical_function_key)


def rank_closed_form(n: int) -> int:
    """Rank of the shift kernel over Z/n by the divisor-sum formula."""
    if n < 1 or n % 2 == 0:
        raise BadModulus(f"requires an odd modulus >= 1, got {n}")
    if n == 1:
        return 0
    total = (n - 1) // 2
    for d in divisors(n):
        if d == 1:
            continue
        total += tilde_rank_closed_form(d) - euler_phi(d) // 2
    return total


def tilde_rank_closed_form(n: int) -> int:
    """Rank of the unit-supported kernel over Z/n."""
    if n < 1 or n % 2 == 0:
        raise BadModulus(f"requires an odd modulus >= 1, got {n}")
    if n == 1:
        return 0
    phi = euler_phi(n)
    two_k = 2 * u_set(n).k
    if phi % two_k != 0:
        raise AssertionError("the symmetric doubling orbit must tile the units")
    return phi // 2 + phi // two_k - 1


def rank_via_snf(generators: list[IntFunction]) -> int:
    """Exact rank of the lattice spanned by the given functions."""
    if not generators:
        return 0
    group = generators[0].group
    if not group.is_finite:
        raise InfiniteGroup("rank computation requires a finite group")
    for f in generators:
        if f.group != group:
            raise GroupMismatch("generators live on different groups")
    columns = {g: i for i, g in enumerate(sorted(group.elements(), key=lambda e: e.sort_key))}
    rows = []
    for f in generators:
        row = [0] * len(columns)
        for g, v in f.items():
            row[columns[g]] = v
        rows.append(row)
    return integer_rank(rows)


@dataclass(frozen=True)
class RankReport:
    n: int
    closed_form: int
    snf_rank: int
    generator_count: int


def rank_report(n: int) -> RankReport:
    """Evaluate the closed-form rank and the generator-lattice rank."""
    if n < 1 or n % 2 == 0:
        raise BadModulus(f"requires an odd modulus >= 1, got {n}")
    gens = v_generators(make_group([n]))
    return RankReport(
        n=n,
        closed_form=rank_closed_form(n),
        snf_rank=rank_via_snf(gens),
        generator_count=len(gens),
    )


def pushforward(psi: Homomorphism, mu: IntFunction) -> IntFunction:
    """Fiber sums along a homomorphism; preserves kernel membership."""
    if mu.group != psi.source:
        raise GroupMismatch("function does not live on the source group")
    acc: dict[GroupElement, int] = {}
    for g, v in mu.items():
        h = psi(g)
        acc[h] = acc.get(h, 0) + v
    return IntFunction(psi.target, acc)


def pullback(psi: Homomorphism, mu: IntFunction) -> IntFunction:
    """Composition mu . psi; requires a finite kernel for finite support."""
    if mu.group != psi.target:
        raise GroupMismatch("function does not live on the target group")
    if not psi.has_finite_kernel():
        raise InfiniteKernel("pullback along an infinite-kernel map has infinite support")
    entries: list[tuple[GroupElement, int]] = []
    for h, v in mu.items():
        for x in psi.preimages(h):
            entries.append((x, v))
    return IntFunction(psi.source, entries)
