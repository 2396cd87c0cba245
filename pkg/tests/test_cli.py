import json
import subprocess
import sys

import pytest

from wavefront import factory
from wavefront.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_emit_a2_theta(capsys):
    code, out, _ = call(capsys, "emit", "--type", "A2", "--what", "theta")
    assert code == 0 and out == "27*x0^2 + 4*x1^3\n"


def test_emit_json_and_output_file(capsys, tmp_path):
    code, out, _ = call(capsys, "emit", "--type", "A2", "--what", "theta", "--format", "json")
    obj = json.loads(out)
    assert obj["vars"] == ["x0", "x1"] and len(obj["terms"]) == 2
    target = tmp_path / "t.txt"
    assert call(capsys, "emit", "--type", "A3", "--what", "theta", "-o", str(target))[0] == 0
    assert target.read_text().startswith("256*x0^3")


@pytest.mark.parametrize("what,expect", [
    ("r", "-2*x2*x5^3 + 2*x3*x4*x5^2 + x4^3"),
    ("delta", "2*v*x5 + x4"),
])
def test_emit_e6_pieces(capsys, what, expect):
    code, out, _ = call(capsys, "emit", "--type", "E6", "--what", what)
    assert code == 0 and out.strip() == expect


def test_emit_crosscap_forms(capsys):
    assert call(capsys, "emit", "--type", "C2", "--what", "theta", "--form", "resultant")[1] == "-y1^2*y3 + y2^2\n"
    assert call(capsys, "emit", "--type", "C2", "--what", "S")[1] == "y1\n"


def test_emit_strategies_agree(capsys):
    outs = {call(capsys, "emit", "--type", "D5-", "--what", "theta", "--strategy", s)[1]
            for s in ("auto", "bareiss", "prs", "modular", "crt-primes")}
    assert len(outs) == 1


def test_member(capsys):
    code, out, _ = call(capsys, "member", "--type", "A3", "--point", "1/4,0,1")
    assert code == 0 and json.loads(out)["status"] == "OnZeroSetNotMember"
    code, out, _ = call(capsys, "member", "--type", "D4+", "--point", "0,0,-1,0", "--count")
    d = json.loads(out)
    assert d["status"] == "Member" and d["preimages"] == 2


def test_verify_suite(capsys):
    code, out, _ = call(capsys, "verify", "--type", "A3", "--suite", "all")
    assert code == 0 and out.strip().endswith("certificates passed")
    code, out, _ = call(capsys, "verify", "--type", "E8", "--suite", "modp", "--format", "json")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and lines[-1]["summary"]["passed"] == lines[-1]["summary"]["certificates"]


def test_verify_golden(capsys, tmp_path):
    assert call(capsys, "verify", "--golden", "--update", "--golden-dir", str(tmp_path))[0] == 0
    code, out, _ = call(capsys, "verify", "--golden", "--fast", "--golden-dir", str(tmp_path), "--type", "A3")
    assert code == 0 and "A3/theta.txt" in out and out.startswith("PASS")
    (tmp_path / "A3" / "theta.txt").write_text("0\n")
    assert call(capsys, "verify", "--golden", "--fast", "--golden-dir", str(tmp_path), "--type", "A3")[0] == 1


def test_bench(capsys):
    code, out, _ = call(capsys, "bench", "--type", "A4", "--strategies", "bareiss,prs,hybrid")
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and reports[-1]["summary"]["checksums_agree"]
    assert {r["strategy"] for r in reports[:-1]} == {"bareiss", "prs", "hybrid"}
    assert all(r["terms"] > 0 and r["wall_time"] >= 0 for r in reports[:-1])


@pytest.mark.parametrize("argv", [
    ["emit", "--type", "A1", "--what", "theta"],
    ["emit", "--type", "A2", "--what", "nonsense"],
    ["emit", "--type", "A2", "--what", "k0"],
    ["member", "--type", "A2", "--point", "1,x"],
    ["verify"],
    [],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_json_errors(capsys):
    code, _, err = call(capsys, "--json", "emit", "--type", "Z9", "--what", "theta")
    assert code == 2 and json.loads(err)["exit"] == 2


def test_budget_exit_code(capsys, monkeypatch):
    # other tests may already have memoised D8+; force a real computation
    monkeypatch.setattr(factory, "_THETA_CACHE", {})
    code, _, err = call(capsys, "emit", "--type", "D8+", "--what", "theta", "--strategy", "hybrid",
                        "--budget", "0")
    assert code == 3 and "budget" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wavefront", "emit", "--type", "A2", "--what", "theta"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "27*x0^2 + 4*x1^3\n"
