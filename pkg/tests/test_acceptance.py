"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import random
import time

import pytest

from crossint.cli import main
from crossint.compression import compress_family, compress_pair_to_fixpoint, potential
from crossint.core import Params, build_extremal, compute_bound, is_cross_intersecting, uniform_bound
from crossint.fuzz import random_cross_pair
from crossint.prooftrace import build_trace
from crossint.search import DEFAULT_BRUTE_CAP, brute_force_max, candidate_pool, flow_max

RESULTS: list[str] = []


def record(name: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def _cells(max_n, over):
    for n in range(1, max_n + 1):
        for r in range(1, n + over + 1):
            for s in range(r, n + over + 1):
                yield Params(n, r, s)


@pytest.fixture(scope="module")
def oracle_runs():
    """Brute-force results for every n <= 5, r <= s <= n + 2 (unpruned wherever the cap allows)."""
    runs = {}
    start = time.perf_counter()
    for p in _cells(5, 2):
        results = []
        if len(candidate_pool(p.n, p.r, False)) <= DEFAULT_BRUTE_CAP:
            results.append(brute_force_max(p))
        results.append(brute_force_max(p, prune=True))
        runs[p] = results
    return runs, time.perf_counter() - start


def test_theorem_exhaustive(oracle_runs):
    runs, elapsed = oracle_runs
    bad = [(p, [x.value for x in res]) for p, res in runs.items()
           if any(x.value != compute_bound(p) for x in res)]
    ok = not bad and elapsed < 300
    record("theorem exhaustive n<=5, r<=s<=n+2", ok,
           f"{len(runs)} instances, {len(bad)} mismatches, {elapsed:.1f}s (limit 300s)")
    assert ok, bad


def test_extremal_attainment():
    start = time.perf_counter()
    bad = []
    count = 0
    for n in range(1, 13):
        for r in range(1, n + 1):
            for s in range(r, n + 1):
                p = Params(n, r, s)
                a, b = build_extremal(p)
                count += 1
                if len(a) + len(b) != compute_bound(p) or not is_cross_intersecting(a, b):
                    bad.append(p)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record("extremal attainment n<=12", ok, f"{count} instances, {len(bad)} mismatches, {elapsed:.2f}s (limit 10s)")
    assert ok, bad


def test_solver_cross_validation(oracle_runs):
    runs, _ = oracle_runs
    checked = 0
    bad = []
    for n in range(1, 5):
        for r in range(1, n + 1):
            for s in range(r, n + 1):
                p = Params(n, r, s)
                checked += 1
                if flow_max(p).value != runs[p][0].value:
                    bad.append(p)
    n5 = [p for p in runs if p.n == 5]
    for p in n5:
        checked += 1
        if flow_max(p).value != runs[p][0].value:
            bad.append(p)
    ok = not bad and len(n5) >= 20
    record("flow_max == brute_force_max", ok,
           f"{checked} instances ({len(n5)} at n=5), {len(bad)} mismatches")
    assert ok, bad


def test_lemma_property_suite():
    rng = random.Random(20240601)
    failures = 0
    changing = 0
    for _ in range(1000):
        n = rng.randint(2, 8)
        r = rng.randint(1, n)
        s = rng.randint(r, n)
        a, b = random_cross_pair(rng, n, r, s)
        i, j = rng.sample(range(1, n + 1), 2)
        ca, cb = compress_family(i, j, a), compress_family(i, j, b)
        if len(ca) != len(a) or len(cb) != len(b) or not is_cross_intersecting(ca, cb):
            failures += 1
        if i < j:
            for before, after in ((a, ca), (b, cb)):
                if after != before:
                    changing += 1
                    if not potential(after) < potential(before):
                        failures += 1
    ok = failures == 0
    record("compression lemma suite", ok, f"1000 pairs, {changing} changing left-compressions, {failures} failures")
    assert ok


def test_proof_trace_suite(oracle_runs):
    runs, _ = oracle_runs
    traces = 0
    failures = []
    for p, results in runs.items():
        witnesses = [(x.witness_A, x.witness_B) for x in results]
        fl = flow_max(p)
        witnesses.append((fl.witness_A, fl.witness_B))
        for a, b in witnesses:
            a, b, _ = compress_pair_to_fixpoint(a, b)
            tr = build_trace(a, b, p)
            traces += 1
            if not (tr.all_ok and len(tr.C) == len(tr.Cbar)):
                failures.append((p, tr.report()))
    ok = not failures
    record("proof-trace suite n<=5", ok, f"{traces} compressed witness pairs, {len(failures)} failures")
    assert ok, failures[:3]


def test_uniform_frankl_tokushige():
    start = time.perf_counter()
    bad = []
    count = 0
    for n in range(2, 9):
        for r in range(1, n + 1):
            for s in range(r, n - r + 1):
                p = Params(n, r, s)
                prune = len(candidate_pool(n, r, True)) > DEFAULT_BRUTE_CAP
                value = brute_force_max(p, uniform=True, prune=prune).value
                count += 1
                if value != uniform_bound(n, r, s):
                    bad.append((p, value))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    record("uniform mode 1 + C(n,s) - C(n-r,s), r+s<=n<=8", ok,
           f"{count} instances, {len(bad)} mismatches, {elapsed:.1f}s (limit 120s)")
    assert ok, bad


def test_full_cube_branch(oracle_runs):
    runs, _ = oracle_runs
    bad = []
    for n in range(1, 6):
        p = Params(n, n, n)
        values = {x.value for x in runs[p]} | {flow_max(p).value}
        if values != {2 ** n}:
            bad.append((n, values))
    ok = not bad
    record("r = s = n <= 5 gives 2^n", ok, f"{5 - len(bad)}/5 exact")
    assert ok, bad


def test_verify_determinism(capsys, tmp_path):
    outputs = []
    codes = []
    for k in range(3):
        target = tmp_path / f"run{k}.csv"
        codes.append(main(["verify", "--max-n", "4", "--out", str(target)]))
        outputs.append(target.read_bytes())
    capsys.readouterr()
    ok = len(set(outputs)) == 1 and codes == [0, 0, 0]
    record("verify --max-n 4 byte-identical CSV", ok, f"3 runs, {len(set(outputs))} distinct outputs")
    assert ok
