"""Move application, predicted shifts, synthesis, verification, decision."""

import random

import pytest

from fsrecon import (
    CosetSwap,
    Embedding,
    GroupMismatch,
    IntFunction,
    MoveNotApplicable,
    NotInV,
    SignFlip,
    apply_move,
    decide_equivalence,
    find_shifts,
    fs_multiset,
    make_group,
    move_shift,
    shift,
    synthesize_moves,
    u_set,
    verify_certificate,
)
from oracles import multiset_of

Z5 = make_group([5])
Z7 = make_group([7])
Z17 = make_group([17])
Z3xZ = make_group([3], 1)

U17 = multiset_of(Z17, 1, 2, 4, 8)
U17_3 = multiset_of(Z17, 3, 6, 12, 7)


def test_apply_sign_flip():
    e = multiset_of(Z5, 1, 2)
    out = apply_move(e, SignFlip(Z5.element([1])))
    assert out == multiset_of(Z5, 4, 2)


def test_apply_coset_swap_on_orbit():
    emb = Embedding(Z17.element([1]), 17)
    out = apply_move(U17, CosetSwap(17, emb, 1, 3))
    assert out == U17_3  # 3 * {1,2,4,8} = {3,6,12,7} mod 17


def test_apply_move_missing_element():
    with pytest.raises(MoveNotApplicable):
        apply_move(multiset_of(Z5, 1), SignFlip(Z5.element([2])))
    emb = Embedding(Z17.element([1]), 17)
    with pytest.raises(MoveNotApplicable):
        apply_move(multiset_of(Z17, 1, 2), CosetSwap(17, emb, 1, 3))


def test_move_shift_values():
    g = Z5.element([2])
    assert move_shift(SignFlip(g)) == g
    emb7 = Embedding(Z7.element([1]), 7)
    assert move_shift(CosetSwap(7, emb7, 1, 3)).is_zero  # 2^3 = 1 mod 7
    emb17 = Embedding(Z17.element([1]), 17)
    assert move_shift(CosetSwap(17, emb17, 1, 3)).coords == (2,)  # 2^4 = -1 mod 17


def fs_shift_of_move(e, step):
    """The actual translation: FS(before) == FS(after) + s."""
    before, after = fs_multiset(e), fs_multiset(apply_move(e, step))
    matches = [s for s in find_shifts(before, after)]
    assert len(matches) == 1
    return matches[0]


def test_move_soundness_on_examples():
    assert fs_shift_of_move(multiset_of(Z5, 1, 2), SignFlip(Z5.element([1]))) == Z5.element([1])
    emb = Embedding(Z17.element([1]), 17)
    assert fs_shift_of_move(U17, CosetSwap(17, emb, 1, 3)).coords == (2,)
    emb7 = Embedding(Z7.element([1]), 7)
    e7 = multiset_of(Z7, 1, 2, 4, 5)
    assert fs_shift_of_move(e7, CosetSwap(7, emb7, 1, 3)).is_zero


def random_move_instance(rng):
    n = rng.choice(range(3, 22, 2))
    group = make_group([n])
    us = u_set(n)
    if rng.random() < 0.5:
        base = [rng.randrange(n) for _ in range(rng.randint(1, 8))]
        e = multiset_of(group, *base)
        step = SignFlip(group.element([rng.choice(base)]))
    else:
        alpha, beta = rng.sample([j for j in range(1, n) if __import__("math").gcd(j, n) == 1], 2)
        base = [alpha * u % n for u in us.elements]
        extras = [rng.randrange(n) for _ in range(rng.randint(0, 8 - min(8, len(base))))]
        e = multiset_of(group, *(base + extras))
        step = CosetSwap(n, Embedding(group.element([1]), n), alpha, beta)
    return e, step


def test_move_soundness_seeded_sample():
    rng = random.Random(20240811)
    for _ in range(120):
        e, step = random_move_instance(rng)
        before = fs_multiset(e)
        after = fs_multiset(apply_move(e, step))
        assert shift(after, move_shift(step)) == before


# ------------------------------------------------------------ synthesis

def test_synthesize_single_sign_flip():
    g = Z5.element([2])
    cert = synthesize_moves(IntFunction.delta(g), IntFunction.delta(-g))
    assert [type(s).__name__ for s in cert.steps] == ["SignFlip"]
    assert cert.total_shift == g
    assert verify_certificate(IntFunction.delta(g), IntFunction.delta(-g), cert).ok


def test_synthesize_two_sign_flips_mod_five():
    a, b = multiset_of(Z5, 1, 2), multiset_of(Z5, 3, 4)
    cert = synthesize_moves(a, b)
    assert len(cert.steps) == 2
    assert all(isinstance(s, SignFlip) for s in cert.steps)
    assert cert.total_shift.coords == (3,)
    assert verify_certificate(a, b, cert).ok


def test_synthesize_orbit_swap_mod_seventeen():
    cert = synthesize_moves(U17, U17_3)
    assert len(cert.steps) == 1
    step = cert.steps[0]
    assert isinstance(step, CosetSwap)
    assert (step.alpha, step.beta) == (1, 3)
    assert cert.total_shift.coords == (2,)
    assert verify_certificate(U17, U17_3, cert).ok


def test_synthesize_with_free_part():
    a = multiset_of(Z3xZ, (1, 1), (0, 2))
    b = multiset_of(Z3xZ, (2, -1), (0, 2))
    cert = synthesize_moves(a, b)
    assert verify_certificate(a, b, cert).ok
    assert cert.total_shift == Z3xZ.element([1, 1])


def test_synthesize_rejects_non_member():
    with pytest.raises(NotInV) as exc:
        synthesize_moves(multiset_of(Z5, 1), multiset_of(Z5, 2))
    assert exc.value.witness is not None


def test_synthesis_is_deterministic():
    a, b = multiset_of(Z5, 1, 2), multiset_of(Z5, 3, 4)
    assert synthesize_moves(a, b) == synthesize_moves(a, b)


def test_certificate_swap_count_bound():
    # per cyclic piece, swaps <= l1(restriction to that piece) / |U_d|
    rng = random.Random(7)
    from fsrecon import cyclic_subgroup, v_generators

    for group in (Z5, Z7, make_group([9]), Z17):
        gens = v_generators(group)
        for _ in range(10):
            mu = IntFunction.zero(group)
            for _ in range(3):
                mu = mu + rng.choice(gens).scale(rng.randint(-1, 1))
            a = IntFunction(group, [(g, v) for g, v in mu.items() if v > 0])
            b = IntFunction(group, [(g, -v) for g, v in mu.items() if v < 0])
            cert = synthesize_moves(a, b)
            assert verify_certificate(a, b, cert).ok

            piece_l1 = {}
            for g, v in mu.items():
                d = g.order()
                if d >= 3:
                    piece_l1[cyclic_subgroup(g).elements] = piece_l1.get(cyclic_subgroup(g).elements, 0) + abs(v)
            swaps_by_piece = {}
            for s in cert.steps:
                if isinstance(s, CosetSwap):
                    key = cyclic_subgroup(s.embedding.target_of_one).elements
                    swaps_by_piece[key] = swaps_by_piece.get(key, 0) + 1
            for key, swaps in swaps_by_piece.items():
                d = len(key)
                assert swaps <= piece_l1[key] // u_set(d).k


# ----------------------------------------------------------- verification

def test_verify_empty_certificate():
    from fsrecon import MoveCertificate

    a = multiset_of(Z5, 1, 3)
    cert = MoveCertificate.from_steps(Z5, ())
    report = verify_certificate(a, a, cert)
    assert report.ok and report.recomputed_total_shift.is_zero


def test_verify_detects_replay_divergence():
    # swap beta tampered on a sign +1 modulus: shifts stay valid (s = 0)
    # but the replay ends on the wrong multiset
    Z15 = make_group([15])
    a = multiset_of(Z15, 1, 2, 4, 8)
    b = multiset_of(Z15, 7, 14, 13, 11)  # 7 * {1,2,4,8} mod 15
    emb = Embedding(Z15.element([1]), 15)
    good = CosetSwap(15, emb, 1, 7)
    from fsrecon import MoveCertificate

    cert = MoveCertificate.from_steps(Z15, (good,))
    assert verify_certificate(a, b, cert).ok

    tampered = MoveCertificate.from_steps(Z15, (CosetSwap(15, emb, 1, 2),))
    report = verify_certificate(a, b, tampered)
    assert not report.ok
    assert report.failure_kind == "replay_diverged"


def test_verify_detects_shift_tampering():
    a, b = multiset_of(Z5, 1, 2), multiset_of(Z5, 3, 4)
    cert = synthesize_moves(a, b)
    first = cert.steps[0]
    lied = SignFlip(first.element, predicted_shift=first.element.scale(2))
    from fsrecon import MoveCertificate

    tampered = MoveCertificate.from_steps(cert.group, (lied,) + cert.steps[1:])
    report = verify_certificate(a, b, tampered)
    assert not report.ok
    assert report.failure_kind == "shift_mismatch"


def test_verify_above_replay_cap_sets_flag():
    g = Z5.element([1])
    a = IntFunction(Z5, [(g, 25)])
    b = IntFunction(Z5, [(-g, 25)])
    cert = synthesize_moves(a, b)
    report = verify_certificate(a, b, cert, replay_cap=10)
    assert report.ok
    assert report.replay_capped


def test_verify_group_mismatch():
    from fsrecon import MoveCertificate

    cert = MoveCertificate.from_steps(Z5, ())
    with pytest.raises(GroupMismatch):
        verify_certificate(multiset_of(Z7, 1), multiset_of(Z7, 1), cert)


# --------------------------------------------------------------- decide

def test_decide_equivalent_with_shift():
    report = decide_equivalence(multiset_of(Z5, 1, 2), multiset_of(Z5, 3, 4))
    assert report.equivalent
    assert [s.coords for s in report.shifts] == [(3,)]
    assert not report.no_shift_equal  # sums are 3 and 2
    assert report.verification.ok


def test_decide_identical_multisets():
    a = multiset_of(Z7, 1, 5)
    report = decide_equivalence(a, a)
    assert report.equivalent and report.no_shift_equal
    assert report.shifts[0].is_zero
    assert report.certificate.steps == ()


def test_decide_different_sizes():
    Z3 = make_group([3])
    report = decide_equivalence(multiset_of(Z3, 1), multiset_of(Z3, 1, 1))
    assert not report.equivalent
    assert report.shifts == []
    assert not report.v_report.member
    assert report.certificate is None


def test_decide_skips_fs_above_cap():
    g = Z5.element([1])
    a = IntFunction(Z5, [(g, 70)])
    b = IntFunction(Z5, [(-g, 70)])
    report = decide_equivalence(a, b)
    assert report.shifts is None
    assert report.equivalent
    assert report.verification.replay_capped


def test_decide_no_shift_pair():
    # A and -A with zero sum: subset sums agree with no translation
    a = multiset_of(Z7, 1, 2, 4)
    b = multiset_of(Z7, 6, 5, 3)
    report = decide_equivalence(a, b)
    assert report.equivalent and report.no_shift_equal
    assert report.shifts[0].is_zero
