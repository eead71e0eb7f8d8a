import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from gsss.cli import main, parse_dims
from gsss.contraction import rate_bound


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_dims():
    assert parse_dims("2,4,8") == [2, 4, 8]
    assert parse_dims("3..6") == [3, 4, 5, 6]
    assert parse_dims("3..9 step 3") == [3, 6, 9]
    assert parse_dims("2..1024 step 2x") == [2**k for k in range(1, 11)]
    for bad in ("a,b", "5..3", "2..8 step 1x"):
        with pytest.raises(Exception):
            parse_dims(bad)


def test_rate_table_single_dim(capsys):
    code, out, _ = run(["rate-table", "--dims", "3..3"], capsys)
    assert code == 0
    (row,) = rows(out)
    assert abs(float(row["rho"]) - 0.8598) < 1e-4


def test_rate_table_d2_row(capsys):
    _, out, _ = run(["rate-table", "-d", "2"], capsys)
    (row,) = rows(out)
    assert float(row["rho"]) == 1.0 and float(row["gap_lower"]) == 0.0


def test_rate_table_default_decreasing_and_json(capsys):
    _, out, _ = run(["rate-table"], capsys)
    table = rows(out)
    assert [int(r["d"]) for r in table] == list(range(3, 1001))
    rho = np.array([float(r["rho"]) for r in table])
    assert np.all(np.diff(rho) < 0)
    _, js, _ = run(["rate-table", "--format", "json"], capsys)
    meta = json.loads(js)
    assert meta["asymptote"] == 2 / math.pi
    # csv and json carry identical numbers
    assert [r["rho"] for r in meta["rows"]] == [float(r["rho"]) for r in table]


def test_rate_table_range_errors(capsys):
    code, _, err = run(["rate-table", "--dims", "3..100001"], capsys)
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "InvalidRange" and payload["command"] == "rate-table"


def test_sample_byte_identical(tmp_path, capsys):
    paths = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.csv"
        assert run(["sample", "-d", "3", "--iters", "10", "--seed", "5", "--output", str(out)], capsys)[0] == 0
        paths.append(out)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].with_suffix(".json").read_bytes() == paths[1].with_suffix(".json").read_bytes()
    data = np.loadtxt(paths[0], delimiter=",", skiprows=1)
    assert data.shape == (10, 4)
    np.testing.assert_allclose(np.linalg.norm(data[:, 1:], axis=1), 1.0, atol=1e-12)


def test_sample_ideal_constant_has_no_rejections(tmp_path, capsys):
    out = tmp_path / "c.csv"
    side = tmp_path / "side.json"
    run(["sample", "-d", "3", "--iters", "50", "--density", "constant",
         "--output", str(out), "--sidecar", str(side)], capsys)
    meta = json.loads(side.read_text())
    assert meta["kernel_label"] == "ideal(constant)"
    assert meta["rejection_counts"] == [0] * 50


def test_sample_json_matches_csv(capsys):
    _, out, _ = run(["sample", "-d", "4", "--iters", "20", "--seed", "3"], capsys)
    _, js, _ = run(["sample", "-d", "4", "--iters", "20", "--seed", "3", "--format", "json"], capsys)
    from_csv = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)[:, 1:]
    np.testing.assert_array_equal(from_csv, np.array(json.loads(js)["states"]))


def test_couple_json_and_csv(capsys):
    argv = ["couple", "-d", "3", "--alpha", "0.7", "--samples", "20000", "--seed", "8"]
    _, js, _ = run(argv + ["--format", "json"], capsys)
    rep = json.loads(js)
    assert rep["estimate"] <= rate_bound(3) + 4 * rep["std_error"]
    _, out, _ = run(argv, capsys)
    (row,) = rows(out)
    assert float(row["estimate"]) == rep["estimate"]
    assert float(row["std_error"]) == rep["std_error"]
    _, js2, _ = run(["couple", "-d", "3", "--alpha", "2.5", "--samples", "20000", "--seed", "8",
                     "--format", "json"], capsys)
    assert json.loads(js2)["estimate"] == rep["estimate"]


def test_couple_bad_alpha(capsys):
    code, _, err = run(["couple", "--alpha", "0", "--samples", "10"], capsys)
    assert code == 1 and json.loads(err)["error"] == "InvalidAlpha"


def test_decay_csv(capsys):
    argv = ["decay", "-d", "3", "--samples", "256", "--steps", "4", "--seed", "1"]
    _, out, _ = run(argv, capsys)
    table = rows(out)
    assert [int(r["step"]) for r in table] == [0, 1, 2, 3, 4]
    # chord distance from a pole has variance 2 - (4/3)^2 at d = 3
    assert abs(float(table[0]["w1"]) - 4 / 3) < 4 * math.sqrt((2 - 16 / 9) / 256)
    assert run(argv, capsys)[1] == out
    _, js, _ = run(argv + ["--format", "json"], capsys)
    assert [r["w1"] for r in json.loads(js)["rows"]] == [float(r["w1"]) for r in table]


def test_iat_sweep_outputs(tmp_path, capsys):
    out = tmp_path / "iat.csv"
    argv = ["iat-sweep", "--dims", "2,4", "--iters", "500", "--reps", "2", "--output", str(out)]
    assert run(argv, capsys)[0] == 0
    runs = rows(out.read_text())
    assert [(int(r["d"]), int(r["rep"])) for r in runs] == [(2, 0), (2, 1), (4, 0), (4, 1)]
    agg = rows((tmp_path / "iat_aggregate.csv").read_text())
    assert [int(r["d"]) for r in agg] == [2, 4]
    first = out.read_bytes()
    run(argv, capsys)
    assert out.read_bytes() == first


def test_invalid_counts_exit_nonzero(capsys):
    for argv in (["sample", "--iters", "0"], ["decay", "--samples", "-1"], ["sample", "-d", "1"]):
        code, out, err = run(argv, capsys)
        assert code == 1 and out == ""
        assert set(json.loads(err)) == {"error", "message", "command"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gsss", "rate-table", "-d", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("d,rho,gap_lower,asymptote_excess\n3,")
