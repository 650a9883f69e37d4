import csv
import io
import json
import math
import subprocess
import sys

import pytest

from squeezelab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            meta[key] = value
        else:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return meta, rows


def test_state_vacuum_single_row(capsys):
    code, out, _ = run(capsys, "state")
    assert code == 0
    meta, rows = parse_csv(out)
    assert rows == [{"n": "0", "re": "1", "im": "0", "prob": "1"}]
    assert meta["dim"] == "128" and meta["tail_mass"] == "0"


def test_state_coherent_first_amplitude(capsys):
    _, out, _ = run(capsys, "state", "--alpha-re", "1")
    _, rows = parse_csv(out)
    assert float(rows[0]["re"]) == pytest.approx(0.6065306597126334, abs=1e-12)


def test_state_truncation_guard_exit_2(capsys):
    code, out, err = run(capsys, "state", "--r", "2")
    assert code == 2 and out == ""
    assert "TruncationError" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["state", "--alpha-re", "9"],
        ["state", "--dim", "300"],
        ["state", "--alpha-re", "5", "--dim", "40"],
        ["evolve", "--steps", "1"],
        ["grid", "--x-min", "3", "--x-max", "3"],
        ["verify", "--tol", "compare"],
        ["verify", "--tol", "speed=1"],
        ["verify", "--tol", "compare=-1"],
    ],
)
def test_usage_and_envelope_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_evolve_unsqueezed_rows(capsys):
    code, out, _ = run(capsys, "evolve", "--alpha-re", "1", "--steps", "16", "--t-max", "3")
    assert code == 0
    meta, rows = parse_csv(out)
    assert len(rows) == 16
    assert float(rows[0]["t"]) == 0.0 and float(rows[-1]["t"]) == 3.0
    for row in rows:
        assert float(row["var_x"]) == pytest.approx(0.5, abs=1e-12)
        assert float(row["var_p"]) == pytest.approx(0.5, abs=1e-12)
        assert float(row["product4"]) == pytest.approx(1.0, abs=1e-12)


def test_evolve_footer_deviation(capsys):
    _, out, _ = run(capsys, "evolve", "--r", "0.5", "--phi", "1", "--alpha-im", "0.5")
    meta, rows = parse_csv(out)
    assert len(rows) == 128
    assert float(meta["max_dev_var_x"]) < 1e-8
    assert float(meta["max_dev_product"]) < 1e-8


def test_grid_vacuum_density_at_origin(capsys):
    _, out, _ = run(capsys, "grid", "--points", "2049")
    meta, rows = parse_csv(out)
    centre = rows[1024]
    assert float(centre["x"]) == 0.0
    assert float(centre["fock_abs2"]) == pytest.approx(0.5641895835477563, abs=1e-12)
    assert max(float(r["deviation"]) for r in rows) < 1e-6


def test_grid_squeezed_deviation(capsys):
    _, out, _ = run(capsys, "grid", "--alpha-re", "1", "--r", "0.5", "--phi", "0.7")
    meta, rows = parse_csv(out)
    assert float(meta["max_deviation"]) < 1e-6
    assert len(rows) == 2048


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "evolve", "--r", "0.3", "--alpha-re", "0.4", "--steps", "8")
    _, rows = parse_csv(out)
    for row in rows:
        for text in row.values():
            assert format(float(text), ".17g") == text


def test_json_output(capsys, tmp_path):
    target = tmp_path / "state.json"
    code, out, _ = run(capsys, "state", "--alpha-re", "0.5", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["metadata"]["dim"] == 128
    assert doc["rows"][0]["n"] == 0
    assert doc["rows"][0]["re"] == pytest.approx(math.exp(-0.125), abs=1e-12)


@pytest.mark.parametrize("argv", [["state", "--r", "0.4", "--alpha-im", "1"], ["grid", "--r", "0.7", "--phi", "2"]])
def test_byte_identical_reruns(tmp_path, argv):
    outs = []
    for i in range(2):
        target = tmp_path / f"run{i}.csv"
        assert main(argv + ["--out", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r" not in outs[0]


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dynamics-kennard")
    assert code == 0
    meta, rows = parse_csv(out)
    assert {r["suite"] for r in rows} == {"dynamics-kennard"}
    assert meta["verdict"] == "PASS"


def test_verify_unreachable_tolerance_fails(capsys):
    code, out, err = run(capsys, "verify", "--suite", "uncertainty", "--tol", "compare=1e-20")
    assert code == 1
    meta, rows = parse_csv(out)
    assert meta["verdict"] == "FAIL"
    assert "FAILED" in err


def test_console_script_verify_defaults():
    proc = subprocess.run([sys.executable, "-m", "squeezelab.cli", "verify"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    meta, rows = parse_csv(proc.stdout)
    assert meta["failed"] == "0"
    assert {r["suite"] for r in rows} == {
        "coherent-equivalence", "squeeze-equivalence", "dynamics-kennard", "uncertainty", "grid-crosscheck",
    }
