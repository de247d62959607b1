"""Brute-force enumeration harness for the equivalence theorems.

Enumerates every small multiset over a finite domain, buckets them by
size (equal subset-sum totals are necessary for equivalence), and checks
on every unordered pair that the shift search, the kernel membership
test, and certificate synthesis agree, together with the weighted-sum
rule and the Fourier criterion on cyclic groups.  Disagreements are
recorded as replayable discrepancies, never raised.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterator, Sequence

from .cyclotomic import fourier_check
from .errors import NotInV
from .groups import GroupElement, GroupSpec
from .moves import synthesize_moves, verify_certificate
from .multisets import IntFunction, find_shifts, fs_multiset, multiset_sum
from .vmodule import v_check


@dataclass(frozen=True)
class ScanChecks:
    """Which cross-checks to run on top of the raw pair comparison."""

    v_membership: bool = True
    moves: bool = True
    fourier: bool = True
    sum_rule: bool = True

    @classmethod
    def all(cls) -> "ScanChecks":
        return cls()

    @classmethod
    def from_names(cls, names: str) -> "ScanChecks":
        if names.strip() == "all":
            return cls.all()
        wanted = {part.strip() for part in names.split(",") if part.strip()}
        known = {"v", "v_check", "moves", "fourier", "sum", "sum_rule"}
        unknown = wanted - known
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
        return cls(
            v_membership=bool(wanted & {"v", "v_check"}),
            moves="moves" in wanted,
            fourier="fourier" in wanted,
            sum_rule=bool(wanted & {"sum", "sum_rule"}),
        )


@dataclass(frozen=True)
class FiberScanConfig:
    group: GroupSpec
    max_size: int
    max_multiplicity: int | None = None
    support_restriction: tuple[GroupElement, ...] | None = None
    checks: ScanChecks = field(default_factory=ScanChecks.all)
    free_box: int = 2
    size_cap: int | None = None
    jobs: int = 1


@dataclass(frozen=True)
class Discrepancy:
    """A falsified identity, with a replayable reproducer."""

    kind: str
    detail: str
    a_json: str
    b_json: str


@dataclass
class FiberScanReport:
    group: GroupSpec
    multisets_enumerated: int
    pairs_tested: int
    equivalent_pairs: int
    certificates_issued: int
    discrepancies: list[Discrepancy]
    equivalences: list[tuple[int, int, tuple[int, ...]]]  # (i, j, shift coords)
    wall_time: float


def scan_domain(group: GroupSpec, free_box: int = 2) -> list[GroupElement]:
    """The finite element domain: full torsion box, boxed free coordinates."""
    if free_box < 0:
        raise ValueError("free_box must be non-negative")
    ranges = [range(n) for n in group.torsion_orders]
    ranges += [range(-free_box, free_box + 1)] * group.free_rank
    domain = [GroupElement(group, coords) for coords in itertools.product(*ranges)]
    domain.sort(key=lambda g: g.sort_key)
    return domain


def enumerate_multisets(
    domain: Sequence[GroupElement],
    max_size: int,
    max_multiplicity: int | None = None,
) -> Iterator[IntFunction]:
    """All multisets over the domain, in canonical (size, lexicographic) order."""
    if not domain:
        raise ValueError("domain must be non-empty")
    group = domain[0].group
    ordered = sorted(domain, key=lambda g: g.sort_key)
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(ordered, size):
            if max_multiplicity is not None and any(
                sum(1 for _ in grp) > max_multiplicity for _, grp in itertools.groupby(combo)
            ):
                continue
            yield IntFunction.multiset(group, combo)


@dataclass
class _Prepped:
    index: int
    fn: IntFunction
    fs: object
    sigma: GroupElement
    size: int


def _prepare(index: int, fn: IntFunction, size_cap: int | None) -> _Prepped:
    return _Prepped(
        index=index,
        fn=fn,
        fs=fs_multiset(fn, size_cap=size_cap),
        sigma=multiset_sum(fn),
        size=fn.total(),
    )


def _reproducer(fn: IntFunction) -> str:
    from .jsonio import dumps_int_function

    return dumps_int_function(fn)


_WORKER_STATE = None


def _init_worker(state) -> None:
    global _WORKER_STATE
    _WORKER_STATE = state


def _scan_stripe(task: tuple[int, int, int]):
    """Process pairs (i, j) for i in [start, stop) within one size bucket."""
    prepped, buckets, checks, is_cyclic = _WORKER_STATE
    bucket_id, start, stop = task
    bucket = buckets[bucket_id]
    pairs = equivalent = certificates = 0
    discrepancies: list[Discrepancy] = []
    equivalences: list[tuple[int, int, tuple[int, ...]]] = []

    def record(kind: str, detail: str, a: _Prepped, b: _Prepped) -> None:
        discrepancies.append(Discrepancy(kind, detail, _reproducer(a.fn), _reproducer(b.fn)))

    for pos in range(start, stop):
        a = prepped[bucket[pos]]
        for other in range(pos + 1, len(bucket)):
            b = prepped[bucket[other]]
            pairs += 1
            shifts = find_shifts(a.fs, b.fs)
            eq_shift = bool(shifts)
            mu = a.fn - b.fn
            if checks.v_membership:
                report = v_check(mu)
                if report.member != eq_shift:
                    record(
                        "shift-vs-kernel",
                        f"shift search found {len(shifts)} shifts but membership is {report.member}",
                        a,
                        b,
                    )
                    continue
            else:
                report = None
            if eq_shift:
                equivalent += 1
                equivalences.append((a.index, b.index, shifts[0].coords))
                zero = a.fn.group.zero()
                if (zero in shifts) != (a.sigma == b.sigma):
                    record(
                        "zero-shift-rule",
                        "zero shift must occur exactly when the element sums agree",
                        a,
                        b,
                    )
                if checks.fourier and is_cyclic:
                    for s in shifts:
                        if not fourier_check(mu, s).holds:
                            record(
                                "fourier",
                                f"product criterion fails for shift {s}",
                                a,
                                b,
                            )
            if checks.moves and report is not None and report.member:
                try:
                    cert = synthesize_moves(a.fn, b.fn)
                except NotInV:
                    record("synthesis", "membership holds but synthesis refused", a, b)
                    continue
                verification = verify_certificate(a.fn, b.fn, cert)
                if not verification.ok:
                    record(
                        "certificate",
                        f"replay failed: {verification.failure_kind} at {verification.failure_index}",
                        a,
                        b,
                    )
                    continue
                certificates += 1
                if cert.total_shift not in shifts:
                    record(
                        "certificate-shift",
                        f"certificate shift {cert.total_shift} is not a valid translation",
                        a,
                        b,
                    )
    return pairs, equivalent, certificates, discrepancies, equivalences


def fiber_scan(config: FiberScanConfig) -> FiberScanReport:
    """Scan every unordered same-size pair and cross-check the theorems."""
    start_time = time.perf_counter()
    group = config.group
    if config.support_restriction is not None:
        domain = sorted(config.support_restriction, key=lambda g: g.sort_key)
    else:
        domain = scan_domain(group, config.free_box)
    multisets = list(enumerate_multisets(domain, config.max_size, config.max_multiplicity))

    prepped = [_prepare(i, fn, config.size_cap) for i, fn in enumerate(multisets)]
    discrepancies: list[Discrepancy] = []
    if config.checks.sum_rule:
        for p in prepped:
            if p.size >= 1:
                expected = p.sigma.scale(2 ** (p.size - 1))
                if p.fs.weighted_sum() != expected:
                    discrepancies.append(
                        Discrepancy(
                            "sum-rule",
                            f"sum over subset sums is {p.fs.weighted_sum()}, expected {expected}",
                            _reproducer(p.fn),
                            _reproducer(p.fn),
                        )
                    )

    by_size: dict[int, list[int]] = {}
    for p in prepped:
        by_size.setdefault(p.size, []).append(p.index)
    buckets = [by_size[size] for size in sorted(by_size)]
    is_cyclic = group.free_rank == 0 and group.torsion_rank <= 1

    tasks: list[tuple[int, int, int]] = []
    for bucket_id, bucket in enumerate(buckets):
        if len(bucket) < 2:
            continue
        stripe = max(1, len(bucket) // (8 * max(config.jobs, 1)))
        for start in range(0, len(bucket) - 1, stripe):
            tasks.append((bucket_id, start, min(start + stripe, len(bucket) - 1)))

    state = (prepped, buckets, config.checks, is_cyclic)
    if config.jobs > 1 and len(tasks) > 1:
        with Pool(config.jobs, initializer=_init_worker, initargs=(state,)) as pool:
            partials = pool.map(_scan_stripe, tasks)
    else:
        _init_worker(state)
        partials = [_scan_stripe(task) for task in tasks]

    pairs = equivalent = certificates = 0
    equivalences: list[tuple[int, int, tuple[int, ...]]] = []
    for p_pairs, p_equiv, p_certs, p_disc, p_eqs in partials:
        pairs += p_pairs
        equivalent += p_equiv
        certificates += p_certs
        discrepancies.extend(p_disc)
        equivalences.extend(p_eqs)
    equivalences.sort()

    return FiberScanReport(
        group=group,
        multisets_enumerated=len(multisets),
        pairs_tested=pairs,
        equivalent_pairs=equivalent,
        certificates_issued=certificates,
        discrepancies=discrepancies,
        equivalences=equivalences,
        wall_time=time.perf_counter() - start_time,
    )
