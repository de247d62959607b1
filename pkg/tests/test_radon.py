"""Radon transform fiber sums and the exact inversion formula."""

import itertools
import random

import pytest

from fsrecon import NonIntegralInversion, RadonData, hom_enumerate, radon_invert, radon_transform


def test_hom_counts():
    assert len(hom_enumerate(3, 1)) == 3
    assert len(hom_enumerate(3, 2)) == 9
    assert len(hom_enumerate(15, 1)) == 15


def test_transform_of_delta_at_origin():
    data = radon_transform({(0, 0): 1}, 3, 2)
    for psi in hom_enumerate(3, 2):
        assert data.values.get((psi, 0)) == 1
        assert (psi, 1) not in data.values
        assert (psi, 2) not in data.values


def test_transform_of_constant_function():
    data = radon_transform({(x,): 1 for x in range(3)}, 3, 1)
    assert data.values[((0,), 0)] == 3
    for psi in [(1,), (2,)]:
        for c in range(3):
            assert data.values[(psi, c)] == 1


def test_transform_of_unit_vector_delta():
    data = radon_transform({(1, 0): 1}, 3, 2)
    for a, b in hom_enumerate(3, 2):
        assert data.values.get(((a, b), a)) == 1


def test_mass_conservation():
    rng = random.Random(5)
    f = {x: rng.randint(-5, 5) for x in itertools.product(range(3), repeat=2)}
    total = sum(f.values())
    data = radon_transform(f, 3, 2)
    for psi, mass in data.fiber_masses().items():
        assert mass == total


def oracle_weight(psi, n, r):
    """Reference correction factor, straight from the prime condition."""
    w = 1
    for p in {p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))}:
        if all(c % p == 0 for c in psi):
            w *= 1 - p ** (r - 1)
    return w


def test_worked_inversion_values_on_z3_squared():
    data = radon_transform({(0, 0): 1}, 3, 2)
    homs = hom_enumerate(3, 2)

    def scaled(x):
        return sum(
            data.values.get((psi, sum(a * b for a, b in zip(psi, x)) % 3), 0) * oracle_weight(psi, 3, 2)
            for psi in homs
        )

    assert scaled((0, 0)) == 6  # 8 * 1 + 1 * (1 - 3)
    assert scaled((1, 0)) == 0  # 2 * 1 + 1 * (-2)
    recovered = radon_invert(data)
    assert recovered == {(0, 0): 1}


def test_determining_prime_condition_matches_image():
    # "p divides every coefficient" must agree with "values lie in pZ/nZ"
    n, r = 15, 2
    for psi in hom_enumerate(n, r):
        image = {sum(a * b for a, b in zip(psi, x)) % n for x in itertools.product(range(n), repeat=r)}
        for p in (3, 5):
            assert all(c % p == 0 for c in psi) == all(v % p == 0 for v in image)


@pytest.mark.parametrize("n,r", [(3, 1), (3, 2), (5, 1), (9, 1), (9, 2), (3, 3)])
def test_roundtrip_on_deltas(n, r):
    for x in itertools.product(range(n), repeat=r):
        f = {x: 1}
        assert radon_invert(radon_transform(f, n, r)) == f


@pytest.mark.parametrize("n,r", [(3, 1), (3, 2), (5, 2), (9, 1), (15, 1), (3, 3)])
def test_roundtrip_on_random_functions(n, r):
    rng = random.Random(n * 100 + r)
    for _ in range(20):
        f = {}
        for x in itertools.product(range(n), repeat=r):
            v = rng.randint(-5, 5)
            if v:
                f[x] = v
        assert radon_invert(radon_transform(f, n, r)) == f


def test_inconsistent_data_is_detected():
    data = radon_transform({(1,): 1}, 9, 1)
    broken = dict(data.values)
    key = ((1,), 1)
    broken[key] = broken.get(key, 0) + 1
    with pytest.raises(NonIntegralInversion):
        radon_invert(RadonData(n=9, r=1, values=broken))
