"""Stable JSON encodings for every value the CLI reads or writes.

Group: {"torsion": [n1, ...], "free_rank": r}.  Elements are flat integer
arrays with torsion coordinates reduced.  Multiplicities and polynomial
coefficients serialize as decimal strings so arbitrary precision survives
the trip.  Output is byte-deterministic: sorted keys, sorted entries.
"""

from __future__ import annotations

import json
from typing import Any

from .cyclotomic import CycInt, FourierClaim
from .groups import Embedding, GroupElement, GroupSpec, make_group
from .moves import (
    CosetSwap,
    EquivalenceReport,
    MoveCertificate,
    MoveStep,
    SignFlip,
    VerifyReport,
)
from .multisets import FSMultiset, IntFunction
from .oracle import Discrepancy, FiberScanReport
from .radon import RadonData
from .vmodule import RankReport, USet, VMembershipReport, VWitness


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- groups

def group_to_obj(group: GroupSpec) -> dict:
    return {"torsion": list(group.torsion_orders), "free_rank": group.free_rank}


def group_from_obj(obj: dict) -> GroupSpec:
    if not isinstance(obj, dict) or "torsion" not in obj:
        raise ValueError("group object must have 'torsion' and 'free_rank'")
    return make_group(list(obj["torsion"]), int(obj.get("free_rank", 0)))


def element_to_obj(g: GroupElement) -> list[int]:
    return list(g.coords)


def element_from_obj(group: GroupSpec, obj) -> GroupElement:
    if not isinstance(obj, (list, tuple)):
        raise ValueError(f"element must be a flat integer array, got {obj!r}")
    return group.element([int(c) for c in obj])


# ------------------------------------------------- integer functions

def int_function_to_obj(fn: IntFunction) -> dict:
    return {
        "group": group_to_obj(fn.group),
        "entries": [[element_to_obj(g), str(v)] for g, v in fn.sorted_items()],
    }


def int_function_from_obj(obj: dict) -> IntFunction:
    group = group_from_obj(obj["group"])
    entries = []
    for item in obj.get("entries", []):
        coords, value = item
        entries.append((element_from_obj(group, coords), int(value)))
    return IntFunction(group, entries)


def dumps_int_function(fn: IntFunction) -> str:
    return dumps(int_function_to_obj(fn))


def fs_multiset_to_obj(fs: FSMultiset) -> dict:
    obj = {
        "group": group_to_obj(fs.group),
        "entries": [[element_to_obj(g), str(v)] for g, v in fs.sorted_items()],
        "total": str(fs.total),
    }
    return obj


def fs_multiset_from_obj(obj: dict) -> FSMultiset:
    group = group_from_obj(obj["group"])
    entries = [
        (element_from_obj(group, coords), int(value))
        for coords, value in obj.get("entries", [])
    ]
    fs = FSMultiset(group, entries)
    if "total" in obj and int(obj["total"]) != fs.total:
        raise ValueError("stored total does not match the entries")
    return fs


# ------------------------------------------------------------- moves

def move_step_to_obj(step: MoveStep) -> dict:
    if isinstance(step, SignFlip):
        return {
            "type": "sign_flip",
            "g": element_to_obj(step.element),
            "shift": element_to_obj(step.predicted_shift),
        }
    return {
        "type": "coset_swap",
        "n": step.modulus,
        "iota": element_to_obj(step.embedding.target_of_one),
        "alpha": step.alpha,
        "beta": step.beta,
        "shift": element_to_obj(step.predicted_shift),
    }


def move_step_from_obj(group: GroupSpec, obj: dict) -> MoveStep:
    kind = obj.get("type")
    shift = element_from_obj(group, obj["shift"]) if "shift" in obj else None
    if kind == "sign_flip":
        return SignFlip(element_from_obj(group, obj["g"]), shift)
    if kind == "coset_swap":
        n = int(obj["n"])
        iota = Embedding(element_from_obj(group, obj["iota"]), n)
        return CosetSwap(n, iota, int(obj["alpha"]), int(obj["beta"]), shift)
    raise ValueError(f"unknown move type {kind!r}")


def certificate_to_obj(cert: MoveCertificate) -> dict:
    return {
        "group": group_to_obj(cert.group),
        "steps": [move_step_to_obj(step) for step in cert.steps],
        "total_shift": element_to_obj(cert.total_shift),
    }


def certificate_from_obj(obj: dict) -> MoveCertificate:
    group = group_from_obj(obj["group"])
    steps = tuple(move_step_from_obj(group, step) for step in obj.get("steps", []))
    total = element_from_obj(group, obj["total_shift"])
    return MoveCertificate(group, steps, total)


# ------------------------------------------------------------ reports

def witness_to_obj(witness: VWitness | None) -> dict | None:
    if witness is None:
        return None
    return {
        "kind": witness.kind,
        "element": element_to_obj(witness.element) if witness.element is not None else None,
        "subgroup": [element_to_obj(g) for g in witness.subgroup] if witness.subgroup is not None else None,
        "value": witness.value,
    }


def v_report_to_obj(report: VMembershipReport) -> dict:
    return {"member": report.member, "witness": witness_to_obj(report.witness)}


def verify_report_to_obj(report: VerifyReport) -> dict:
    return {
        "ok": report.ok,
        "recomputed_total_shift": element_to_obj(report.recomputed_total_shift),
        "failure_kind": report.failure_kind,
        "failure_index": report.failure_index,
        "replay_capped": report.replay_capped,
        "detail": report.detail,
    }


def equivalence_report_to_obj(report: EquivalenceReport) -> dict:
    return {
        "equivalent": report.equivalent,
        "shift": element_to_obj(report.shifts[0]) if report.shifts else None,
        "shifts": [element_to_obj(s) for s in report.shifts] if report.shifts is not None else None,
        "no_shift_equal": report.no_shift_equal,
        "weighted_sum": element_to_obj(report.weighted_sum),
        "kernel_membership": v_report_to_obj(report.v_report),
        "certificate": certificate_to_obj(report.certificate) if report.certificate else None,
        "verification": verify_report_to_obj(report.verification) if report.verification else None,
    }


def uset_to_obj(us: USet) -> dict:
    return {"k": us.k, "sign": us.sign, "elements": list(us.elements)}


def rank_report_to_obj(report: RankReport) -> dict:
    return {
        "n": report.n,
        "closed_form": report.closed_form,
        "snf_rank": report.snf_rank,
        "generator_count": report.generator_count,
    }


def cyc_to_obj(value: CycInt) -> dict:
    return {"modulus": value.modulus, "coeffs": [str(c) for c in value.coeffs]}


def fourier_claim_to_obj(claim: FourierClaim) -> dict:
    return {
        "n": claim.n,
        "s": claim.s,
        "holds": claim.holds,
        "divisors": {
            str(d): {
                "lhs": cyc_to_obj(lhs),
                "rhs": cyc_to_obj(rhs),
                "equal": lhs == rhs,
            }
            for d, (lhs, rhs) in sorted(claim.per_divisor.items())
        },
    }


# -------------------------------------------------------------- radon

def radon_data_to_obj(data: RadonData) -> dict:
    rows = [
        [list(psi), c, str(v)]
        for (psi, c), v in sorted(data.values.items())
    ]
    return {"n": data.n, "r": data.r, "values": rows}


def radon_data_from_obj(obj: dict) -> RadonData:
    values = {}
    for psi, c, v in obj.get("values", []):
        values[(tuple(int(a) for a in psi), int(c))] = int(v)
    return RadonData(n=int(obj["n"]), r=int(obj["r"]), values=values)


def point_table_to_obj(n: int, r: int, table: dict) -> dict:
    rows = [[list(x), str(v)] for x, v in sorted(table.items())]
    return {"n": n, "r": r, "entries": rows}


def point_table_from_obj(obj: dict) -> tuple[int, int, dict]:
    table = {}
    for coords, value in obj.get("entries", []):
        table[tuple(int(c) for c in coords)] = int(value)
    return int(obj["n"]), int(obj["r"]), table


# -------------------------------------------------------------- scans

def discrepancy_to_obj(d: Discrepancy) -> dict:
    return {"kind": d.kind, "detail": d.detail, "a": json.loads(d.a_json), "b": json.loads(d.b_json)}


def fiber_report_to_obj(report: FiberScanReport) -> dict:
    # wall_time is intentionally omitted: reports must be byte-identical
    # across runs and thread counts
    return {
        "group": group_to_obj(report.group),
        "multisets_enumerated": report.multisets_enumerated,
        "pairs_tested": report.pairs_tested,
        "equivalent_pairs": report.equivalent_pairs,
        "certificates_issued": report.certificates_issued,
        "discrepancies": [discrepancy_to_obj(d) for d in report.discrepancies],
        "equivalences": [[i, j, list(coords)] for i, j, coords in report.equivalences],
    }
