import json
import subprocess
import sys

import pytest

from nctorus.cli import EXIT_FAIL, EXIT_OK, dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_manin_json(capsys):
    code, out, err = run(capsys, "verify-manin", "--n", "3")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == "1"
    assert data["report"]["passed"] is True
    assert list(data) == sorted(data)
    assert "PASS" in err


def test_dump_matrices(capsys):
    code, out, _ = run(capsys, "verify-manin", "--n", "2", "--dump-matrices")
    data = json.loads(out)
    assert len(data["matrices"]["A"]) == 4 and len(data["matrices"]["B"]) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-manin", "--n", "1"],
        ["verify-manin", "--n", "3", "--bogus"],
        ["taft", "--n", "4", "--rank"],
        ["taft", "--n", "2", "--s", "xyz"],
        ["nc-torus", "--theta", "abc"],
        ["rieffel", "--theta", "0.5"],
        ["rieffel", "--theta", "0.7", "--grid", "1000"],
        ["all", "--criteria", "12"],
        ["rieffel", "--theta", "0.7", "--jobs", "0"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_structure_constants_csv(capsys, tmp_path):
    path = tmp_path / "sc.csv"
    code = main(["structure-constants", "--n", "2", "--format", "csv", "-o", str(path)])
    assert code == EXIT_OK
    lines = path.read_text().splitlines()
    assert len(lines) > 1 and "," in lines[0]


def test_structure_constants_json(capsys):
    code, out, _ = run(capsys, "structure-constants", "--n", "2")
    assert code == EXIT_OK
    assert json.loads(out)["schema"] == "1"


def test_taft(capsys):
    code, out, _ = run(capsys, "taft", "--n", "2", "--s", "i", "--rank")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["canonical_rank"] == 16


def test_rieffel_reports_failure_honestly(capsys):
    code, out, _ = run(capsys, "rieffel", "--theta", "0.7")
    assert code == EXIT_FAIL
    data = json.loads(out)
    assert data["theta"] == 0.7
    assert data["checks"]["chern"]["passed"] is True
    assert data["checks"]["idempotency"]["passed"] is False


def test_nc_torus_order_plot(capsys, tmp_path):
    path = tmp_path / "order.csv"
    main(["nc-torus", "--theta", "0.4", "--window", "2", "--order-plot", str(path), "--order-window", "3"])
    lines = path.read_text().splitlines()
    assert lines[0] == "m1,m2,sign" and len(lines) == 50


def test_float_format():
    text = dumps({"x": 0.1, "y": 1.0, "z": float("nan")})
    data = json.loads(text)
    assert '"x": 0.10000000000000001' in text
    assert data["y"] == 1.0 and data["z"] == "nan"


def test_all_is_deterministic(capsys):
    _, first, _ = run(capsys, "all", "--criteria", "5,9")
    _, second, _ = run(capsys, "all", "--criteria", "5,9")
    assert first == second
    assert set(json.loads(first)["criteria"]) == {"5", "9"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nctorus.cli", "verify-manin", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 2
