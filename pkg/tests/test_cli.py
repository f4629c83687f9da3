import json
import subprocess
import sys

import pytest

from crossint.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    assert run(capsys, "bound", "--n", "3", "--r", "2", "--s", "2")[:2] == (EXIT_OK, "6\n")


def test_bound_json(capsys):
    code, out, _ = run(capsys, "bound", "--n", "4", "--r", "1", "--s", "2", "--output", "json")
    assert json.loads(out) == {"n": 4, "r": 1, "s": 2, "bound": 5}


def test_bound_prints_full_decimal(capsys):
    _, out, _ = run(capsys, "bound", "--n", "200", "--r", "100", "--s", "150")
    assert out.strip().isdigit() and len(out.strip()) > 50


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--n", "3", "--r", "2", "--s", "2", "--output", "json")
    obj = json.loads(out)
    assert obj["A"] == [[1, 2]] and obj["sum"] == 6 == obj["bound"]


def test_search_flow_json(capsys):
    code, out, _ = run(capsys, "search", "--n", "3", "--r", "1", "--s", "1", "--method", "flow", "--output", "json")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["value"] == 2 and obj["method"] == "flow" and obj["uniform"] is False


def test_search_text(capsys):
    code, out, _ = run(capsys, "search", "--n", "4", "--r", "2", "--s", "2", "--uniform")
    assert code == EXIT_OK and out.startswith("value 6 (brute, uniform)")


def test_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "4")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "n,r,s,bound,search_value,method,pass"
    cells = {tuple(map(int, ln.split(",")[:3])) for ln in lines[1:]}
    expected = {(n, r, s) for n in range(1, 5) for r in range(1, n + 1) for s in range(r, n + 1)}
    assert cells == expected
    assert all(ln.endswith(",PASS") for ln in lines[1:])


def test_verify_falls_back_to_pruning(capsys):
    code, out, _ = run(capsys, "verify", "--min-n", "5", "--max-n", "5", "--output", "text")
    assert code == EXIT_OK
    assert "[brute+prune] PASS" in out


def test_verify_exit_nonzero_on_failure(capsys, monkeypatch):
    import crossint.cli as cli
    monkeypatch.setattr(cli, "compute_bound", lambda p: 0)
    code, out, _ = run(capsys, "verify", "--max-n", "2")
    assert code == EXIT_FAIL
    assert ",FAIL" in out


def test_verify_threads_match_sequential(capsys, monkeypatch):
    _, seq, _ = run(capsys, "verify", "--max-n", "4", "--method", "flow")
    monkeypatch.setenv("CROSSINT_THREADS", "2")
    _, par, _ = run(capsys, "verify", "--max-n", "4", "--method", "flow")
    assert seq == par


def test_compress_family(capsys, monkeypatch):
    code, out, _ = run(capsys, "compress", stdin='{"n":3,"sets":[[2,3]]}', monkeypatch=monkeypatch)
    lines = out.splitlines()
    assert json.loads(lines[0]) == {"n": 3, "sets": [[1, 2]]}
    assert lines[1] == "1 2 5 4 1"


def test_compress_pair_from_file(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text('{"n":2,"A":[[2]],"B":[[2]]}')
    code, out, _ = run(capsys, "compress", "--in", str(path), "--output", "json")
    obj = json.loads(out)
    assert obj["A"] == [[1]] and obj["B"] == [[1]] and obj["changing_steps"] == 1


def test_trace_pass(capsys, monkeypatch):
    code, out, _ = run(capsys, "trace", stdin='{"n":3,"A":[[1,2]],"B":[[1],[2],[1,2],[1,3],[2,3]]}',
                       monkeypatch=monkeypatch)
    assert code == EXIT_OK and out.count("[PASS]") == 5


def test_trace_json(capsys, monkeypatch):
    code, out, _ = run(capsys, "trace", "--r", "1", "--s", "1", "--output", "json",
                       stdin='{"n":2,"A":[[1]],"B":[[1]]}', monkeypatch=monkeypatch)
    obj = json.loads(out)
    assert obj["claim1_ok"] and obj["A0"] == {"n": 1, "sets": [[1]]}


def test_fuzz_deterministic(capsys):
    first = run(capsys, "fuzz", "--seed", "4", "--count", "50")
    second = run(capsys, "fuzz", "--seed", "4", "--count", "50")
    assert first == second and first[0] == EXIT_OK


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "verify", "--max-n", "2", "--out", str(target))
    assert out == "" and target.read_text().startswith("n,r,s,")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bound", "--n", "3"], EXIT_USAGE),
        (["bound", "--n", "3", "--r", "3", "--s", "2"], EXIT_USAGE),
        (["search", "--n", "5", "--r", "4", "--s", "4"], EXIT_CAP),
        (["search", "--n", "15", "--r", "1", "--s", "1", "--method", "flow"], EXIT_CAP),
        (["search", "--n", "3", "--r", "1", "--s", "1", "--cap-brute", "40"], EXIT_USAGE),
        (["verify"], EXIT_USAGE),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_malformed_input(capsys, monkeypatch):
    code, _, err = run(capsys, "compress", stdin='{"n":3,"sets":[[4]]}', monkeypatch=monkeypatch)
    assert code == EXIT_INPUT and "element out of range" in err
    code, _, _ = run(capsys, "trace", stdin="garbage", monkeypatch=monkeypatch)
    assert code == EXIT_INPUT


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["bound", "--bogus"])
    assert info.value.code == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crossint.cli", "bound", "--n", "3", "--r", "2", "--s", "2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "6\n"
