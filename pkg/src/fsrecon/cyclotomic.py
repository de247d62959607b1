"""Exact arithmetic in Z[x]/Phi_d(x) and the Fourier-side shift criterion.

Everything is integer polynomial arithmetic: negative exponents in the
product criterion are handled by cross-multiplication, never inversion,
so no value ever leaves the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import divisors, euler_phi
from .errors import BadModulus, ModulusMismatch
from .groups import GroupElement
from .multisets import IntFunction

Poly = tuple[int, ...]  # dense coefficients, constant term first


def _poly_trim(coeffs: list[int]) -> Poly:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Exact division by a monic polynomial."""
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(rem) - deg_d, 0)
    for i in range(len(rem) - 1, deg_d - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dj in enumerate(den):
            rem[i - deg_d + j] -= c * dj
    return _poly_trim(quot), _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> Poly:
    """Coefficients of the d-th cyclotomic polynomial, constant term first.

    Computed by exact division of x^d - 1 by the lower-order factors.
    """
    if d < 1:
        raise ValueError(f"requires d >= 1, got {d}")
    num: Poly = tuple([-1] + [0] * (d - 1) + [1])  # x^d - 1
    for e in divisors(d):
        if e == d:
            continue
        num, rem = _poly_divmod(num, cyclotomic_poly(e))
        if rem:
            raise AssertionError("cyclotomic division must be exact")
    return num


@dataclass(frozen=True, slots=True)
class CycInt:
    """An element of Z[x]/Phi_d(x), stored as phi(d) coefficients."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.modulus):
            raise ValueError(f"expected {euler_phi(self.modulus)} coefficients for conductor {self.modulus}")

    @classmethod
    def from_poly(cls, d: int, coeffs: Poly) -> "CycInt":
        _, rem = _poly_divmod(tuple(coeffs), cyclotomic_poly(d))
        width = euler_phi(d)
        return cls(d, tuple(rem) + (0,) * (width - len(rem)))

    @classmethod
    def from_int(cls, d: int, value: int) -> "CycInt":
        return cls.from_poly(d, (value,))

    @classmethod
    def omega_power(cls, d: int, exponent: int) -> "CycInt":
        """The residue of x**exponent; x has multiplicative order d."""
        e = exponent % d
        return cls.from_poly(d, (0,) * e + (1,))

    def _require_same_ring(self, other: "CycInt") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"conductors {self.modulus} and {other.modulus} differ")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._require_same_ring(other)
        return CycInt(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycInt") -> "CycInt":
        return self + (-other)

    def __mul__(self, other: "CycInt") -> "CycInt":
        self._require_same_ring(other)
        return CycInt.from_poly(self.modulus, _poly_mul(self.coeffs, other.coeffs))

    def pow(self, exponent: int) -> "CycInt":
        if exponent < 0:
            raise ValueError("negative exponents are handled by cross-multiplication")
        result = CycInt.from_int(self.modulus, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_one(self) -> bool:
        return self == CycInt.from_int(self.modulus, 1)


@dataclass(frozen=True)
class FourierClaim:
    """Per-divisor cross-multiplied product comparison for a shift claim."""

    n: int
    s: int
    per_divisor: dict[int, tuple[CycInt, CycInt]]

    @property
    def holds(self) -> bool:
        return all(lhs == rhs for lhs, rhs in self.per_divisor.values())

    def failing_divisors(self) -> list[int]:
        return [d for d, (lhs, rhs) in sorted(self.per_divisor.items()) if lhs != rhs]


def fourier_check(mu: IntFunction, s: GroupElement | int) -> FourierClaim:
    """Check FS-hat(mu) = (omega_d^s)_d over every divisor d of n.

    For each d | n the claim  prod_j (1 + omega_d^j)^mu(j) = omega_d^s  is
    tested with negative exponents moved to the other side, entirely in
    Z[x]/Phi_d.  Requires an odd cyclic group so no factor vanishes.
    """
    group = mu.group
    if group.free_rank != 0 or group.torsion_rank > 1:
        raise BadModulus("the Fourier criterion runs over a cyclic group Z/n")
    n = group.torsion_orders[0] if group.torsion_rank else 1
    shift_value = s.coords[0] if isinstance(s, GroupElement) else s % n
    if isinstance(s, GroupElement) and s.group != group:
        raise BadModulus("shift element lives on a different group")
    per_divisor: dict[int, tuple[CycInt, CycInt]] = {}
    for d in divisors(n):
        lhs = CycInt.from_int(d, 1)
        rhs = CycInt.omega_power(d, shift_value)
        for g, v in mu.sorted_items():
            j = g.coords[0] if group.torsion_rank else 0
            factor = CycInt.from_int(d, 1) + CycInt.omega_power(d, j)
            if v > 0:
                lhs = lhs * factor.pow(v)
            else:
                rhs = rhs * factor.pow(-v)
        per_divisor[d] = (lhs, rhs)
    return FourierClaim(n=n, s=shift_value, per_divisor=per_divisor)
