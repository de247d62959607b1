"""Multiset moves, certificate synthesis, verification, and the decision procedure.

A move either flips one element to its negation or swaps an embedded
scaled doubling-orbit for another.  Both change the subset-sum multiset
by a predictable translation; the fixed orientation used everywhere is

    FS(before) = FS(after) + predicted_shift.

Synthesis turns a kernel-membership difference into an explicit move
sequence by normalizing both sides onto positive orbit halves and then
draining the per-orbit constants with swaps, exactly in the order the
induction argument suggests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .arith import units_mod
from .errors import (
    GroupMismatch,
    InternalInconsistency,
    MoveNotApplicable,
    NotInV,
    SizeCapExceeded,
)
from .groups import Embedding, GroupElement, GroupSpec
from .multisets import IntFunction, find_shifts, fs_multiset, shift
from .vmodule import VMembershipReport, _piece_entry, u_set, v_check

DEFAULT_REPLAY_CAP = 20


@dataclass(frozen=True)
class SignFlip:
    """Replace one copy of `element` with its negation."""

    element: GroupElement
    predicted_shift: GroupElement = None  # defaults to `element`

    def __post_init__(self):
        if self.predicted_shift is None:
            object.__setattr__(self, "predicted_shift", self.element)


@dataclass(frozen=True)
class CosetSwap:
    """Replace the embedded scaled orbit alpha*U_n with beta*U_n."""

    modulus: int
    embedding: Embedding
    alpha: int
    beta: int
    predicted_shift: GroupElement = None

    def __post_init__(self):
        n = self.modulus
        if self.embedding.modulus != n:
            raise ValueError("embedding modulus does not match the move")
        units = units_mod(n)
        if self.alpha % n not in units or self.beta % n not in units:
            raise ValueError(f"alpha and beta must be units mod {n}")
        if self.predicted_shift is None:
            object.__setattr__(self, "predicted_shift", move_shift_canonical(self))


MoveStep = Union[SignFlip, CosetSwap]


def move_shift_canonical(step: MoveStep) -> GroupElement:
    """The translation s with FS(before) = FS(after) + s."""
    if isinstance(step, SignFlip):
        return step.element
    us = u_set(step.modulus)
    if us.sign == 1:
        return step.embedding.group.zero()
    return step.embedding((step.beta - step.alpha) % step.modulus)


def move_shift(step: MoveStep) -> GroupElement:
    return move_shift_canonical(step)


def inverse_move(step: MoveStep) -> MoveStep:
    if isinstance(step, SignFlip):
        return SignFlip(-step.element)
    return CosetSwap(step.modulus, step.embedding, step.beta, step.alpha)


def _swap_images(step: CosetSwap) -> tuple[list[GroupElement], list[GroupElement]]:
    us = u_set(step.modulus)
    removed = [step.embedding(step.alpha * u % step.modulus) for u in us.elements]
    added = [step.embedding(step.beta * u % step.modulus) for u in us.elements]
    return removed, added


def _counts_apply(counts: dict[GroupElement, int], step: MoveStep) -> None:
    if isinstance(step, SignFlip):
        removed, added = [step.element], [-step.element]
    else:
        removed, added = _swap_images(step)
    for g in removed:
        if counts.get(g, 0) < 1:
            raise MoveNotApplicable(f"multiset is missing {g}")
    for g in removed:
        left = counts[g] - 1
        if left:
            counts[g] = left
        else:
            del counts[g]
    for g in added:
        counts[g] = counts.get(g, 0) + 1


def apply_move(e: IntFunction, step: MoveStep) -> IntFunction:
    """Apply one move to a multiset; the size |E| is preserved."""
    if not e.is_multiset:
        raise ValueError("moves apply to multisets")
    counts = {g: v for g, v in e.items()}
    _counts_apply(counts, step)
    return IntFunction(e.group, counts)


@dataclass(frozen=True)
class MoveCertificate:
    """An ordered move sequence transforming one multiset into another."""

    group: GroupSpec
    steps: tuple[MoveStep, ...]
    total_shift: GroupElement

    @classmethod
    def from_steps(cls, group: GroupSpec, steps: tuple[MoveStep, ...]) -> "MoveCertificate":
        total = group.zero()
        for step in steps:
            total = total + step.predicted_shift
        return cls(group, steps, total)


def synthesize_moves(a: IntFunction, b: IntFunction) -> MoveCertificate:
    """Produce a move certificate from A to B when mu_A - mu_B is in the kernel.

    Free-support surpluses are flipped directly.  Every cyclic piece is
    normalized by flipping all mass (on both sides) onto the positive
    orbit halves, leaving a constant per-orbit discrepancy, which swaps
    drain pair by pair; the B-side moves are inverted and replayed
    backwards so the certificate acts on A only.
    """
    if a.group != b.group:
        raise GroupMismatch("multisets live on different groups")
    if not (a.is_multiset and b.is_multiset):
        raise ValueError("synthesis requires multisets")
    group = a.group
    mu = a - b
    report = v_check(mu)
    if not report.member:
        raise NotInV("difference function fails the kernel membership check", report.witness)

    ea = {g: v for g, v in a.items()}
    eb = {g: v for g, v in b.items()}
    moves_a: list[MoveStep] = []
    moves_b: list[MoveStep] = []

    def emit(side_counts: dict, side_moves: list, step: MoveStep) -> None:
        _counts_apply(side_counts, step)
        side_moves.append(step)

    # infinite-order support: antisymmetry puts the whole surplus on one sign
    for g in sorted((g for g in mu.support() if not g.is_torsion), key=lambda e: e.sort_key):
        for _ in range(max(mu.value(g), 0)):
            emit(ea, moves_a, SignFlip(g))

    # torsion support, one cyclic piece at a time
    pieces: dict[tuple[int, ...], int] = {}
    for g in mu.support():
        if g.is_torsion:
            gen_coords, n, _ = _piece_entry(group, g)
            pieces[gen_coords] = n
    for gen_coords in sorted(pieces, key=lambda c: (pieces[c], c)):
        n = pieces[gen_coords]
        generator = GroupElement(group, gen_coords)
        emb = Embedding(generator, n)
        us = u_set(n)
        units = units_mod(n)
        reps: list[int] = []
        covered: set[int] = set()
        for j in units:
            if j in covered:
                continue
            reps.append(j)
            for u in us.elements:
                covered.add(j * u % n)
                covered.add((n - j * u) % n)
        t: dict[int, int] = {}
        for rep in reps:
            for u in us.elements:
                jpos = rep * u % n
                eneg = emb(n - jpos)
                for _ in range(ea.get(eneg, 0)):
                    emit(ea, moves_a, SignFlip(eneg))
                for _ in range(eb.get(eneg, 0)):
                    emit(eb, moves_b, SignFlip(eneg))
            anchor = emb(rep)
            t[rep] = ea.get(anchor, 0) - eb.get(anchor, 0)
        while True:
            positives = [rep for rep in reps if t[rep] > 0]
            negatives = [rep for rep in reps if t[rep] < 0]
            if not positives and not negatives:
                break
            if not positives or not negatives:
                raise InternalInconsistency("orbit constants do not sum to zero")
            alpha, beta = positives[0], negatives[0]
            emit(ea, moves_a, CosetSwap(n, emb, alpha, beta))
            t[alpha] -= 1
            t[beta] += 1

    if ea != eb:
        raise InternalInconsistency("synthesis finished without reaching a common multiset")
    steps = tuple(moves_a) + tuple(inverse_move(m) for m in reversed(moves_b))
    return MoveCertificate.from_steps(group, steps)


@dataclass(frozen=True)
class VerifyReport:
    """Replay outcome for a certificate."""

    ok: bool
    recomputed_total_shift: GroupElement
    failure_kind: str | None = None  # "replay_diverged" | "shift_mismatch"
    failure_index: int | None = None
    replay_capped: bool = False
    detail: str = ""


def verify_certificate(
    a: IntFunction,
    b: IntFunction,
    cert: MoveCertificate,
    replay_cap: int = DEFAULT_REPLAY_CAP,
) -> VerifyReport:
    """Replay a certificate from A, checking every claimed shift.

    Below the replay cap each step's subset-sum multisets are recomputed
    and the actual translation is compared to the predicted one; above
    the cap the replay is structural only and the report says so.
    """
    if a.group != b.group or cert.group != a.group:
        raise GroupMismatch("certificate and multisets must share one group")
    group = a.group
    total = group.zero()
    for step in cert.steps:
        total = total + step.predicted_shift

    size = a.total()
    capped = size > replay_cap
    current = a
    fs_current = None if capped else fs_multiset(current, size_cap=max(size, 1))

    for index, step in enumerate(cert.steps):
        if move_shift_canonical(step) != step.predicted_shift:
            return VerifyReport(
                False, total, "shift_mismatch", index, capped,
                f"step {index} predicts {step.predicted_shift} but the move shifts by {move_shift_canonical(step)}",
            )
        try:
            nxt = apply_move(current, step)
        except MoveNotApplicable as exc:
            return VerifyReport(False, total, "replay_diverged", index, capped, str(exc))
        if not capped:
            fs_next = fs_multiset(nxt, size_cap=max(size, 1))
            if shift(fs_next, step.predicted_shift) != fs_current:
                return VerifyReport(
                    False, total, "shift_mismatch", index, capped,
                    f"recomputed shift at step {index} disagrees with the prediction",
                )
            fs_current = fs_next
        current = nxt

    if current != b:
        return VerifyReport(
            False, total, "replay_diverged", len(cert.steps), capped,
            "replay finished on a different multiset than the target",
        )
    if total != cert.total_shift:
        return VerifyReport(
            False, total, "shift_mismatch", None, capped,
            "stored total shift disagrees with the per-step sum",
        )
    return VerifyReport(True, total, replay_capped=capped)


@dataclass(frozen=True)
class EquivalenceReport:
    """Joint evaluation of the three equivalence characterizations."""

    group: GroupSpec
    shifts: list[GroupElement] | None  # None when the FS computation was skipped
    v_report: VMembershipReport
    weighted_sum: GroupElement  # sum of mu(g) * g
    certificate: MoveCertificate | None
    verification: VerifyReport | None
    equivalent: bool
    no_shift_equal: bool


def decide_equivalence(
    a: IntFunction,
    b: IntFunction,
    size_cap: int | None = None,
    replay_cap: int = DEFAULT_REPLAY_CAP,
) -> EquivalenceReport:
    """Evaluate all three characterizations and assert their consistency.

    Condition (i) compares subset-sum multisets directly (skipped above
    the size cap), (ii) checks kernel membership plus the weighted sum,
    (iii) synthesizes and replays a certificate.  Any disagreement raises
    InternalInconsistency, since it would falsify a theorem.
    """
    if a.group != b.group:
        raise GroupMismatch("multisets live on different groups")
    if not (a.is_multiset and b.is_multiset):
        raise ValueError("the decision procedure compares multisets")
    mu = a - b
    v_report = v_check(mu)
    weighted = mu.weighted_sum()

    shifts: list[GroupElement] | None
    try:
        shifts = find_shifts(fs_multiset(a, size_cap), fs_multiset(b, size_cap))
    except SizeCapExceeded:
        shifts = None

    certificate = None
    verification = None
    if v_report.member:
        certificate = synthesize_moves(a, b)
        verification = verify_certificate(a, b, certificate, replay_cap=replay_cap)
        if not verification.ok:
            raise InternalInconsistency(
                f"synthesized certificate failed verification: {verification.detail}"
            )

    equivalent = v_report.member
    if shifts is not None:
        if bool(shifts) != equivalent:
            raise InternalInconsistency("shift search and kernel membership disagree")
        if equivalent and certificate is not None and certificate.total_shift not in shifts:
            raise InternalInconsistency("certificate total shift is not a valid translation")

    no_shift = equivalent and weighted.is_zero
    if equivalent and shifts is not None:
        if (a.group.zero() in shifts) != no_shift:
            raise InternalInconsistency("zero-shift test disagrees with the weighted-sum rule")

    return EquivalenceReport(
        group=a.group,
        shifts=shifts,
        v_report=v_report,
        weighted_sum=weighted,
        certificate=certificate,
        verification=verification,
        equivalent=equivalent,
        no_shift_equal=no_shift,
    )
