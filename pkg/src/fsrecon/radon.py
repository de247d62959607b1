"""Discrete Radon transform over (Z/n)^r and its exact inversion.

The transform tabulates fiber sums over every homomorphism to Z/n; the
inverse is a weighted sum with prime-divisor correction factors, carried
out in scaled integers with an explicit divisibility check instead of
rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .arith import euler_phi, prime_factors
from .errors import NonIntegralInversion

Hom = tuple[int, ...]
Point = tuple[int, ...]


def hom_enumerate(n: int, r: int) -> list[Hom]:
    """All n^r homomorphisms (Z/n)^r -> Z/n as coefficient vectors."""
    if n < 1 or r < 1:
        raise ValueError("requires n >= 1 and r >= 1")
    return list(itertools.product(range(n), repeat=r))


def _correction_weight(psi: Hom, n: int, r: int) -> int:
    # product over primes p | n dividing every coefficient of psi,
    # equivalently those p for which psi takes values in pZ/nZ
    weight = 1
    for p in prime_factors(n):
        if all(c % p == 0 for c in psi):
            weight *= 1 - p ** (r - 1)
    return weight


@lru_cache(maxsize=8)
def _context(n: int, r: int):
    """Precomputed homs, inversion weights, points, and evaluation table."""
    homs = tuple(hom_enumerate(n, r))
    weights = tuple(_correction_weight(psi, n, r) for psi in homs)
    points = tuple(itertools.product(range(n), repeat=r))
    point_index = {x: i for i, x in enumerate(points)}
    evaluations = tuple(
        tuple(sum(a * b for a, b in zip(psi, x)) % n for psi in homs)
        for x in points
    )
    return homs, weights, points, point_index, evaluations


@dataclass(frozen=True)
class RadonData:
    """Fiber sums Rf(psi, c) for every homomorphism psi and height c."""

    n: int
    r: int
    values: Mapping[tuple[Hom, int], int]

    def fiber_masses(self) -> dict[Hom, int]:
        """Total mass per homomorphism; constant across psi for valid data."""
        masses: dict[Hom, int] = {}
        for (psi, _), v in self.values.items():
            masses[psi] = masses.get(psi, 0) + v
        return masses


def radon_transform(f: Mapping[Point, int], n: int, r: int) -> RadonData:
    """Exact fiber sums of an integer function given as a (sparse) table."""
    homs, _, _, point_index, evaluations = _context(n, r)
    values: dict[tuple[Hom, int], int] = {}
    for x, v in f.items():
        if v == 0:
            continue
        row = evaluations[point_index[tuple(x)]]
        for k, psi in enumerate(homs):
            key = (psi, row[k])
            values[key] = values.get(key, 0) + v
    return RadonData(n=n, r=r, values=values)


def radon_invert(data: RadonData) -> dict[Point, int]:
    """Reconstruct f from its transform; exact, with a divisibility check.

    The scaled sum over all homomorphisms must be divisible by
    n^(r-1) * phi(n) at every point; a failure signals inconsistent
    input data.  Returns the nonzero values of f.
    """
    n, r = data.n, data.r
    homs, weights, points, _, evaluations = _context(n, r)
    hom_index = {psi: k for k, psi in enumerate(homs)}
    # re-key the table as per-hom height arrays for fast inner lookups
    by_hom = [[0] * n for _ in homs]
    for (psi, c), v in data.values.items():
        by_hom[hom_index[tuple(psi)]][c % n] += v
    denominator = n ** (r - 1) * euler_phi(n)
    out: dict[Point, int] = {}
    for xi, x in enumerate(points):
        row = evaluations[xi]
        scaled = 0
        for k, w in enumerate(weights):
            if w:
                scaled += by_hom[k][row[k]] * w
        q, rem = divmod(scaled, denominator)
        if rem:
            raise NonIntegralInversion(
                f"scaled value {scaled} at {x} is not divisible by {denominator}"
            )
        if q:
            out[x] = q
    return out
