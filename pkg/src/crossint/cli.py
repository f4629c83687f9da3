"""Command-line front end.

Exit status: 0 success, 2 usage error, 3 malformed input, 4 cap exceeded,
5 a verification, trace or fuzz check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .compression import compress_pair_to_fixpoint, compress_to_fixpoint
from .core import (
    CapExceeded,
    FamilyFormatError,
    Params,
    build_extremal,
    compute_bound,
    family_payload,
    format_sets,
    parse_family,
    parse_pair,
    serialize_family,
    serialize_pair,
    uniform_bound,
)
from .fuzz import CHECKS, run_fuzz
from .prooftrace import build_trace
from .search import (
    DEFAULT_BRUTE_CAP,
    DEFAULT_FLOW_CAP,
    DEFAULT_PRUNED_CAP,
    brute_force_max,
    candidate_pool,
    flow_max,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4
EXIT_FAIL = 5

VERIFY_FIELDS = ["n", "r", "s", "bound", "search_value", "method", "pass"]


class UsageError(Exception):
    pass


def _params(args: argparse.Namespace) -> Params:
    for name in ("n", "r", "s"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for {args.command}")
    try:
        return Params(args.n, args.r, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_input(args: argparse.Namespace) -> str:
    if args.input in (None, "-"):
        return sys.stdin.read()
    try:
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FamilyFormatError(f"cannot read {args.input}: {exc.strerror}") from None


def _csv(rows: list[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _dump(obj: object) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _check_caps(args: argparse.Namespace) -> None:
    if args.cap_brute is not None and args.cap_brute > DEFAULT_BRUTE_CAP and not args.allow_large:
        raise UsageError("--cap-brute above the default needs --allow-large")
    if args.cap_flow is not None and args.cap_flow > DEFAULT_FLOW_CAP and not args.allow_large:
        raise UsageError("--cap-flow above the default needs --allow-large")


def _run_search(p: Params, method: str, uniform: bool, prune: bool, args: argparse.Namespace):
    if method == "flow":
        return flow_max(p, uniform, cap=args.cap_flow or DEFAULT_FLOW_CAP)
    return brute_force_max(p, uniform, prune=prune, cap=args.cap_brute or DEFAULT_BRUTE_CAP)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bound(args: argparse.Namespace) -> tuple[str, int]:
    p = _params(args)
    value = compute_bound(p)
    if args.output == "json":
        return _dump({"n": p.n, "r": p.r, "s": p.s, "bound": value}), EXIT_OK
    if args.output == "csv":
        return _csv([{"n": p.n, "r": p.r, "s": p.s, "bound": value}], ["n", "r", "s", "bound"]), EXIT_OK
    return f"{value}\n", EXIT_OK


def cmd_construct(args: argparse.Namespace) -> tuple[str, int]:
    p = _params(args)
    a, b = build_extremal(p)
    total = len(a) + len(b)
    if args.output == "json":
        return serialize_pair(a, b, sum=total, bound=compute_bound(p)) + "\n", EXIT_OK
    if args.output == "csv":
        row = {"n": p.n, "r": p.r, "s": p.s, "size_A": len(a), "size_B": len(b), "sum": total}
        return _csv([row], list(row)), EXIT_OK
    return f"A ({len(a)}): {format_sets(a.sets)}\nB ({len(b)}): {format_sets(b.sets)}\nsum {total}\n", EXIT_OK


def cmd_compress(args: argparse.Namespace) -> tuple[str, int]:
    text = _read_input(args)
    obj = json.loads(text) if text.strip().startswith("{") else None
    if isinstance(obj, dict) and "A" in obj:
        a, b = parse_pair(text)
        ca, cb, trace = compress_pair_to_fixpoint(a, b)
        payload = {"n": a.n, "A": ca.as_lists(), "B": cb.as_lists()}
    else:
        fam = parse_family(text)
        cf, trace = compress_to_fixpoint(fam)
        payload = family_payload(cf)
    if args.output == "json":
        payload["changing_steps"] = trace.changing_steps
        payload["trace"] = [st.line() for st in trace.steps]
        return _dump(payload), EXIT_OK
    if args.output == "csv":
        rows = [{"i": st.i, "j": st.j, "phi_before": st.potential_before,
                 "phi_after": st.potential_after, "changed": int(st.changed)} for st in trace.steps]
        return _csv(rows, ["i", "j", "phi_before", "phi_after", "changed"]), EXIT_OK
    return _dump(payload) + trace.to_text(), EXIT_OK


def cmd_search(args: argparse.Namespace) -> tuple[str, int]:
    p = _params(args)
    res = _run_search(p, args.method, args.uniform, args.prune, args)
    if args.output == "json":
        return res.to_json() + "\n", EXIT_OK
    if args.output == "csv":
        row = {"n": p.n, "r": p.r, "s": p.s, "value": res.value, "method": res.method,
               "uniform": str(res.uniform).lower()}
        return _csv([row], list(row)), EXIT_OK
    return (f"value {res.value} ({res.method}{', uniform' if res.uniform else ''})\n"
            f"A ({len(res.witness_A)}): {format_sets(res.witness_A.sets)}\n"
            f"B ({len(res.witness_B)}): {format_sets(res.witness_B.sets)}\n"), EXIT_OK


def _verify_cell(job: tuple) -> dict:
    n, r, s, method, uniform, prune, cap_brute, cap_flow = job
    p = Params(n, r, s)
    expected = uniform_bound(n, r, s) if uniform else compute_bound(p)
    label = method
    if method == "flow":
        value = flow_max(p, uniform, cap=cap_flow).value
    else:
        use_prune = prune or len(candidate_pool(n, r, uniform)) > cap_brute
        if use_prune:
            label = "brute+prune"
        value = brute_force_max(p, uniform, prune=use_prune, cap=cap_brute,
                                prune_cap=max(cap_brute, DEFAULT_PRUNED_CAP)).value
    return {"n": n, "r": r, "s": s, "bound": expected, "search_value": value,
            "method": label, "pass": "PASS" if value == expected else "FAIL"}


def _cells(args: argparse.Namespace) -> list[tuple[int, int, int]]:
    out = []
    for n in range(args.min_n, args.max_n + 1):
        top = n + args.s_over
        for r in range(1, top + 1):
            for s in range(r, top + 1):
                if args.uniform and r + s > n:
                    continue
                out.append((n, r, s))
    return out


def _threads() -> int:
    raw = os.environ.get("CROSSINT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"CROSSINT_THREADS must be an integer, got {raw!r}") from None


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    if args.max_n is None:
        raise UsageError("--max-n is required for verify")
    if args.min_n < 1 or args.max_n < args.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n")
    jobs = [(n, r, s, args.method, args.uniform, args.prune,
             args.cap_brute or DEFAULT_BRUTE_CAP, args.cap_flow or DEFAULT_FLOW_CAP)
            for n, r, s in _cells(args)]
    workers = _threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_verify_cell, jobs))
    else:
        rows = [_verify_cell(j) for j in jobs]
    status = EXIT_OK if all(row["pass"] == "PASS" for row in rows) else EXIT_FAIL
    if args.output == "json":
        return _dump({"cells": rows, "all_pass": status == EXIT_OK}), status
    if args.output == "text":
        lines = [f"n={x['n']} r={x['r']} s={x['s']} bound={x['bound']} "
                 f"search={x['search_value']} [{x['method']}] {x['pass']}" for x in rows]
        return "\n".join(lines) + "\n", status
    return _csv(rows, VERIFY_FIELDS), status


def cmd_trace(args: argparse.Namespace) -> tuple[str, int]:
    a, b = parse_pair(_read_input(args))
    r = args.r if args.r is not None else max(m.bit_count() for m in a.sets or (0,))
    s = args.s if args.s is not None else max([r] + [m.bit_count() for m in b.sets])
    try:
        p = Params(a.n, max(r, 1), s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        trace = build_trace(a, b, p)
    except ValueError as exc:
        raise FamilyFormatError(str(exc)) from None
    status = EXIT_OK if trace.all_ok else EXIT_FAIL
    if args.output == "json":
        payload = {name: family_payload(getattr(trace, name)) for name in
                   ("A0", "A1", "B0", "B1", "C", "Cbar", "A1prime", "B0prime")}
        payload.update({label: ok for label, ok in zip(
            ("unique_blocker_ok", "disjoint_25_ok", "sum_identity_ok", "claim1_ok", "claim2_ok"),
            (ok for _, ok in trace.checks()))})
        payload["full_cube_branch"] = trace.full_cube_branch
        payload["compressed_input"] = trace.compressed_input
        return _dump(payload), status
    return trace.report(), status


def cmd_fuzz(args: argparse.Namespace) -> tuple[str, int]:
    if args.max_n is not None and not 1 <= args.max_n <= 8:
        raise UsageError("fuzz --max-n must lie in [1, 8]")
    report = run_fuzz(args.seed, args.count, args.max_n or 8)
    status = EXIT_OK if report.ok else EXIT_FAIL
    if args.output == "json":
        return _dump({"seed": args.seed, "trials": report.trials,
                      "failures": {c: report.failures[c] for c in CHECKS},
                      "examples": report.examples}), status
    if args.output == "csv":
        rows = [{"check": c, "failures": report.failures[c]} for c in CHECKS]
        return _csv(rows, ["check", "failures"]), status
    lines = [f"seed {args.seed} trials {report.trials}"]
    lines += [f"{c}: {'PASS' if not report.failures[c] else f'FAIL ({report.failures[c]})'}" for c in CHECKS]
    lines += report.examples
    return "\n".join(lines) + "\n", status


COMMANDS = {
    "bound": cmd_bound,
    "construct": cmd_construct,
    "compress": cmd_compress,
    "search": cmd_search,
    "verify": cmd_verify,
    "trace": cmd_trace,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossint",
        description="Exact sums of sizes of cross-intersecting families.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--s", type=int)
    parser.add_argument("--method", choices=["brute", "flow"], default="brute")
    parser.add_argument("--uniform", action="store_true", help="members of A have size r, of B size s")
    parser.add_argument("--prune", action="store_true",
                        help="brute force over superset- and shift-closed A only")
    parser.add_argument("--max-n", type=int)
    parser.add_argument("--min-n", type=int, default=1)
    parser.add_argument("--s-over", type=int, default=0,
                        help="verify: let r and s run up to n + S_OVER")
    parser.add_argument("--output", choices=["json", "csv", "text"])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--cap-brute", type=int)
    parser.add_argument("--cap-flow", type=int)
    parser.add_argument("--allow-large", action="store_true", help="permit caps above the defaults")
    parser.add_argument("--in", dest="input", metavar="FILE")
    parser.add_argument("--out", dest="out", metavar="FILE")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.output is None:
        args.output = "csv" if args.command == "verify" else "text"
    try:
        _check_caps(args)
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"crossint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FamilyFormatError, json.JSONDecodeError) as exc:
        print(f"crossint: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"crossint: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"crossint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
