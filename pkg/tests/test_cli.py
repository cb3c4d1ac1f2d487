import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from signiter.cli import main
from signiter.matrix_io import read_matrix, write_matrix
from signiter.pade import IterationSpec

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gen_text():
    code, text = run("gen", "2", "1")
    assert code == 0
    assert "family=reciprocal-pade" in text and "s=2" in text
    assert "1 + z^2" in text and "2*z" in text


@pytest.mark.parametrize("argv,golden", [
    (("gen", "--m", "2", "--n", "1", "--format", "structured"), "gen_2_1.json"),
    (("gen", "--m", "3", "--n", "2", "--format", "structured"), "gen_3_2.json"),
    (("table", "--s", "2", "--format", "structured"), "table_2.json"),
    (("table", "--s", "3", "--format", "structured"), "table_3.json"),
])
def test_structured_output_matches_golden(argv, golden):
    first, second = run(*argv), run(*argv)
    assert first == second
    assert first[1] == (GOLDEN / golden).read_text()


def test_gen_round_trip():
    _, text = run("gen", "--m", "5", "--n", "4", "--format", "structured")
    spec = IterationSpec.from_dict(json.loads(text))
    assert spec.to_json() + "\n" == text


def test_table_contents():
    code, text = run("table", "--s", "3", "--format", "structured")
    specs = json.loads(text)
    assert code == 0 and [d["m"] for d in specs] == list(range(6))
    halley = next(d for d in specs if (d["m"], d["n"]) == (3, 2))
    assert halley["numerator"] == ["0", "3", "0", "1"] and halley["denominator"] == ["1", "0", "3"]


@pytest.mark.parametrize("argv", [
    ("gen", "2", "2"),
    ("gen", "--m", "1", "--n", "0"),
    ("gen", "--m", "3"),
    ("table", "--s", "1"),
    ("verify", "--s-max", "1"),
    ("trace", "--z0", "0+2i", "--m", "2", "--n", "1"),
    ("trace", "--z0", "oops", "--m", "2", "--n", "1"),
    ("bogus",),
])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_gen_parity_message(capsys):
    run("gen", "2", "2")
    assert "m+n must be odd" in capsys.readouterr().err


def test_verify_small():
    code, text = run("verify", "--s-max", "3")
    assert code == 0
    assert "PASS  scan         s=2 (m,n)=(1,1)  nullity=0" in text
    assert "FAIL" not in text
    code, text = run("verify", "--s-max", "2", "--format", "structured")
    d = json.loads(text)
    assert code == 0 and d["failed"] == 0


def test_verify_counts():
    code, text = run("verify", "--s-max", "4", "--format", "structured")
    scans = [c for c in json.loads(text)["checks"] if c["kind"] == "scan"]
    zero = [c for c in scans if c["detail"].startswith("nullity=0")]
    one = [c for c in scans if c["detail"].startswith("nullity=1")]
    assert (len(zero), len(one)) == (6 + 15 + 28, 4 + 6 + 8)


def test_verify_reports_failures(monkeypatch):
    import signiter.cli as cli
    from signiter.verify import Check

    monkeypatch.setattr(cli, "run_verification",
                        lambda s: [Check("scan", 2, 1, 1, False, "nullity=1")])
    code, text = run("verify", "--s-max", "2")
    assert code == 1 and "failed certification at s=2, (m,n)=(1,1)" in text


def test_trace():
    code, text = run("trace", "1.5", "2", "1")
    assert code == 0
    order = float(text.strip().splitlines()[-1].split()[-1])
    assert abs(order - 2) < 0.1
    code, text = run("trace", "--z0", "1.0", "--m", "3", "--n", "2")
    rows = [ln for ln in text.splitlines() if ln.strip()[:1].isdigit()]
    assert code == 0 and len(rows) == 1
    code, text = run("trace", "--z0", "1.2+0.3i", "--m", "3", "--n", "2", "--format", "structured")
    d = json.loads(text)
    assert d["status"] == "converged" and d["iterates"][-1] == "1.0" or d["iterates"][-1].startswith("1.0")


def test_trace_nonconvergence_exit_codes():
    assert run("trace", "1.5", "0", "3")[0] == 3
    assert run("trace", "1.5", "2", "1", "--max-iter", "2")[0] == 4


def write(tmp_path, name, M):
    path = tmp_path / name
    write_matrix(path, np.asarray(M))
    return path


def test_sign_diagonal(tmp_path):
    path = write(tmp_path, "A.txt", np.diag([2.0, -3.0]))
    report = tmp_path / "r.json"
    code, _ = run("sign", "--input", str(path), "--report", str(report))
    assert code == 0
    S = read_matrix(tmp_path / "A.sign.txt")
    assert np.allclose(S, np.diag([1.0, -1.0]), atol=1e-15)
    d = json.loads(report.read_text())
    assert d["status"] == "converged" and d["iteration"] == {"m": 2, "n": 1, "s": 2}


def test_sign_halley(tmp_path):
    path = write(tmp_path, "B.txt", [[0.0, 1.0], [4.0, 0.0]])
    out = tmp_path / "S.txt"
    code, text = run("sign", "--input", str(path), "--m", "3", "--n", "2", "--output", str(out))
    assert code == 0 and json.loads(text)["status"] == "converged"
    assert np.allclose(read_matrix(out), [[0.0, 0.5], [2.0, 0.0]], atol=1e-10)


def test_sign_complex_input(tmp_path):
    path = tmp_path / "C.txt"
    path.write_text("2 2\n1+1i 0\n0 -2-0.5i\n")
    code, _ = run("sign", "--input", str(path))
    assert code == 0
    assert np.allclose(read_matrix(tmp_path / "C.sign.txt"), np.diag([1, -1]), atol=1e-14)


def test_sign_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 3\n1 2 3\n4 5 6\n")
    assert run("sign", "--input", str(path))[0] == 2
    assert run("sign", "--input", str(tmp_path / "nope.txt"))[0] == 2
    path = write(tmp_path, "D.txt", np.diag([5.0, 1.0]))
    assert run("sign", "--input", str(path), "--m", "3", "--n", "0")[0] == 3
    assert not (tmp_path / "D.sign.txt").exists()
    assert run("sign", "--input", str(path), "--max-iter", "1")[0] == 4
    assert run("sign", "--input", str(path), "--tol", "-1")[0] == 2
    singular = write(tmp_path, "E.txt", np.diag([0.0, 1.0]))
    assert run("sign", "--input", str(singular))[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "signiter", "gen", "--m", "2", "--n", "1",
                           "--format", "structured"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "gen_2_1.json").read_text()
