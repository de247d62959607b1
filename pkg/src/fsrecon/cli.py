"""Command-line interface.

Exit codes: 0 on success, 1 when a checked property is falsified (a bad
certificate, a non-member function, a failed round trip, scan
discrepancies), 2 for usage or input errors.  All output is JSON with
sorted keys; timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import jsonio
from .cyclotomic import fourier_check
from .errors import FsreconError, InternalInconsistency, NonIntegralInversion, NotInV
from .moves import decide_equivalence, synthesize_moves, verify_certificate
from .multisets import find_shifts, fs_multiset
from .oracle import FiberScanConfig, ScanChecks, fiber_scan
from .radon import radon_invert, radon_transform
from .vmodule import is_in_ofs, rank_report, u_set, v_check, v_generators

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None


def _emit(obj, out_path: str | None) -> None:
    text = jsonio.dumps(obj)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_multiset(path: str):
    fn = jsonio.int_function_from_obj(_read_json(path))
    if not fn.is_multiset:
        raise ValueError(f"{path} holds negative multiplicities; a multiset is required")
    return fn


def _cmd_uset(args) -> int:
    _emit(jsonio.uset_to_obj(u_set(args.n)), args.out)
    return EXIT_OK


def _cmd_ofs(args) -> int:
    _emit({"n": args.n, "in_ofs": is_in_ofs(args.n)}, args.out)
    return EXIT_OK


def _cmd_fs_compute(args) -> int:
    fn = _load_multiset(args.infile)
    fs = fs_multiset(fn, size_cap=args.size_cap)
    _emit(jsonio.fs_multiset_to_obj(fs), args.out)
    return EXIT_OK


def _cmd_fs_shift_between(args) -> int:
    a = jsonio.fs_multiset_from_obj(_read_json(args.a))
    b = jsonio.fs_multiset_from_obj(_read_json(args.b))
    shifts = find_shifts(a, b)
    _emit({"shifts": [jsonio.element_to_obj(s) for s in shifts]}, args.out)
    return EXIT_OK


def _cmd_v_check(args) -> int:
    mu = jsonio.int_function_from_obj(_read_json(args.mu))
    report = v_check(mu)
    _emit(jsonio.v_report_to_obj(report), args.out)
    return EXIT_OK if report.member else EXIT_FALSIFIED


def _cmd_v_rank(args) -> int:
    report = rank_report(args.n)
    _emit(jsonio.rank_report_to_obj(report), args.out)
    return EXIT_OK if report.closed_form == report.snf_rank else EXIT_FALSIFIED


def _cmd_v_generators(args) -> int:
    group = jsonio.group_from_obj(_read_json(args.group))
    gens = v_generators(group)
    payload = {
        "group": jsonio.group_to_obj(group),
        "count": len(gens),
        "generators": [jsonio.int_function_to_obj(g)["entries"] for g in gens],
    }
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_moves_synth(args) -> int:
    a = _load_multiset(args.a)
    b = _load_multiset(args.b)
    try:
        cert = synthesize_moves(a, b)
    except NotInV as exc:
        _emit(
            {"error": "not_in_kernel", "witness": jsonio.witness_to_obj(exc.witness)},
            args.out,
        )
        return EXIT_FALSIFIED
    _emit(jsonio.certificate_to_obj(cert), args.out)
    return EXIT_OK


def _cmd_moves_verify(args) -> int:
    a = _load_multiset(args.a)
    b = _load_multiset(args.b)
    cert = jsonio.certificate_from_obj(_read_json(args.cert))
    report = verify_certificate(a, b, cert, replay_cap=args.replay_cap)
    _emit(jsonio.verify_report_to_obj(report), args.out)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def _cmd_decide(args) -> int:
    a = _load_multiset(args.a)
    b = _load_multiset(args.b)
    report = decide_equivalence(a, b, size_cap=args.size_cap)
    _emit(jsonio.equivalence_report_to_obj(report), args.out)
    return EXIT_OK


def _cmd_fourier_check(args) -> int:
    mu = jsonio.int_function_from_obj(_read_json(args.mu))
    if args.n is not None:
        declared = (args.n,) if args.n > 1 else ()
        if mu.group.torsion_orders != declared or mu.group.free_rank != 0:
            raise ValueError(f"--n {args.n} does not match the group of {args.mu}")
    claim = fourier_check(mu, args.s)
    _emit(jsonio.fourier_claim_to_obj(claim), args.out)
    return EXIT_OK if claim.holds else EXIT_FALSIFIED


def _cmd_radon_transform(args) -> int:
    n, r, table = jsonio.point_table_from_obj(_read_json(args.infile))
    data = radon_transform(table, n, r)
    _emit(jsonio.radon_data_to_obj(data), args.out)
    return EXIT_OK


def _cmd_radon_invert(args) -> int:
    data = jsonio.radon_data_from_obj(_read_json(args.infile))
    try:
        table = radon_invert(data)
    except NonIntegralInversion as exc:
        _emit({"error": "non_integral_inversion", "detail": str(exc)}, args.out)
        return EXIT_FALSIFIED
    _emit(jsonio.point_table_to_obj(data.n, data.r, table), args.out)
    return EXIT_OK


def _cmd_radon_roundtrip(args) -> int:
    rng = random.Random(args.seed)
    n, r = args.n, args.r
    start = time.perf_counter()
    table = {}
    import itertools

    for x in itertools.product(range(n), repeat=r):
        v = rng.randint(-5, 5)
        if v:
            table[x] = v
    recovered = radon_invert(radon_transform(table, n, r))
    elapsed = time.perf_counter() - start
    ok = recovered == table
    print(f"{'PASS' if ok else 'FAIL'} radon roundtrip n={n} r={r} seed={args.seed}", file=sys.stderr)
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    _emit({"n": n, "r": r, "seed": args.seed, "ok": ok}, args.out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def _cmd_oracle_scan(args) -> int:
    group = jsonio.group_from_obj(_read_json(args.group))
    config = FiberScanConfig(
        group=group,
        max_size=args.max_size,
        max_multiplicity=args.max_mult,
        checks=ScanChecks.from_names(args.checks),
        free_box=args.free_box,
        size_cap=args.size_cap,
        jobs=args.jobs,
    )
    report = fiber_scan(config)
    print(
        f"scanned {report.multisets_enumerated} multisets, {report.pairs_tested} pairs "
        f"in {report.wall_time:.2f}s",
        file=sys.stderr,
    )
    _emit(jsonio.fiber_report_to_obj(report), args.out)
    return EXIT_OK if not report.discrepancies else EXIT_FALSIFIED


def _add_common_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the JSON result to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsrecon",
        description="Exact subset-sum multiset equivalence toolkit for abelian groups with odd torsion",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("uset", help="doubling orbit {1,2,4,...} mod n and its sign")
    p.add_argument("--n", type=int, required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_uset)

    p = sub.add_parser("ofs", help="whether 2 and -1 generate the units mod n")
    p.add_argument("--n", type=int, required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_ofs)

    fs = sub.add_parser("fs", help="subset-sum multiset operations")
    fs_sub = fs.add_subparsers(dest="subcommand", required=True)
    p = fs_sub.add_parser("compute", help="subset-sum multiset of a multiset")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--size-cap", type=int, default=None)
    _add_common_output(p)
    p.set_defaults(func=_cmd_fs_compute)
    p = fs_sub.add_parser("shift-between", help="all shifts taking one FS multiset to another")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_fs_shift_between)

    v = sub.add_parser("v", help="shift-kernel lattice operations")
    v_sub = v.add_subparsers(dest="subcommand", required=True)
    p = v_sub.add_parser("check", help="kernel membership with witness")
    p.add_argument("--mu", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_v_check)
    p = v_sub.add_parser("rank", help="closed-form rank vs generator-lattice rank")
    p.add_argument("--n", type=int, required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_v_rank)
    p = v_sub.add_parser("generators", help="finite generating set of the kernel")
    p.add_argument("--group", "-g", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_v_generators)

    moves = sub.add_parser("moves", help="move certificates")
    moves_sub = moves.add_subparsers(dest="subcommand", required=True)
    p = moves_sub.add_parser("synth", help="synthesize a certificate from A to B")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_moves_synth)
    p = moves_sub.add_parser("verify", help="replay a certificate and check its shifts")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--replay-cap", type=int, default=20)
    _add_common_output(p)
    p.set_defaults(func=_cmd_moves_verify)

    p = sub.add_parser("decide", help="evaluate all three equivalence characterizations")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--size-cap", type=int, default=None)
    _add_common_output(p)
    p.set_defaults(func=_cmd_decide)

    fourier = sub.add_parser("fourier", help="cyclotomic product criterion")
    fourier_sub = fourier.add_subparsers(dest="subcommand", required=True)
    p = fourier_sub.add_parser("check", help="per-divisor product comparison")
    p.add_argument("--mu", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    _add_common_output(p)
    p.set_defaults(func=_cmd_fourier_check)

    radon = sub.add_parser("radon", help="discrete Radon transform")
    radon_sub = radon.add_subparsers(dest="subcommand", required=True)
    p = radon_sub.add_parser("transform", help="fiber sums of an integer table")
    p.add_argument("--in", dest="infile", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_radon_transform)
    p = radon_sub.add_parser("invert", help="exact inversion of transform data")
    p.add_argument("--in", dest="infile", required=True)
    _add_common_output(p)
    p.set_defaults(func=_cmd_radon_invert)
    p = radon_sub.add_parser("roundtrip", help="random-function round trip, PASS/FAIL")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_common_output(p)
    p.set_defaults(func=_cmd_radon_roundtrip)

    oracle = sub.add_parser("oracle", help="exhaustive pair scan")
    oracle_sub = oracle.add_subparsers(dest="subcommand", required=True)
    p = oracle_sub.add_parser("scan", help="scan all small multisets over a group")
    p.add_argument("--group", "-g", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--max-mult", type=int, default=None)
    p.add_argument("--checks", default="all")
    p.add_argument("--free-box", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--size-cap", type=int, default=None)
    _add_common_output(p)
    p.set_defaults(func=_cmd_oracle_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InternalInconsistency, NonIntegralInversion) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (FsreconError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
