import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bubbleres.cli import CSV_FIELDS, read_sweep, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_constants_json():
    code, out, _ = call("constants", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["eta_m0"] == pytest.approx(0.26924, abs=5e-5)
    assert doc["a0"] == pytest.approx(math.exp(-2.1465), rel=5e-4)
    assert doc["a0"] == pytest.approx(0.11689, abs=1e-5)
    assert set(doc["paper_reference"]) == {"zeta_m0", "zeta_m2", "l_m0", "l_m2", "eta_m0", "eta_m2", "a0"}


def test_constants_text():
    code, out, _ = call("constants")
    assert code == 0
    assert out.splitlines()[0].startswith("zeta_m0")


def test_root_small_l():
    code, out, _ = call("root", "--l", "2", "--eps", "0.1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["x"] == pytest.approx(0.344031, rel=1e-4)
    assert doc["x"] == pytest.approx(0.34404119919520294, rel=1e-12)
    assert doc["im_z"] < 0
    assert abs(doc["im_z"]) < 1e-4
    assert doc["regime"] == "small-l"
    assert doc["method"] == "direct"


def test_root_auto_falls_back_to_scaled():
    code, out, _ = call("root", "--l", "163", "--eps", "0.05", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "scaled"
    assert doc["log_neg_im_z"] == pytest.approx(-103.8744229281087, abs=1e-8)


def test_root_direct_reports_solver_failure():
    code, _, err = call("root", "--l", "163", "--eps", "0.05", "--method", "direct")
    assert code == 3
    assert "regime" in err and "scaled" in err


def test_gamma_refusal_exit_3():
    code, _, err = call("gamma", "--eps", "0.4")
    assert code == 3
    assert "0.35" in err


def test_gamma_json():
    code, out, _ = call("gamma", "--eps", "0.1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["l_opt"] == 38
    assert doc["log_gamma_z"] == pytest.approx(-24.5684456858567, abs=1e-9)
    assert doc["certified"] is True


@pytest.mark.parametrize(
    "argv, token",
    [
        (["gamma", "--eps", "abc"], "abc"),
        (["root", "--l", "2.5", "--eps", "0.1"], "2.5"),
        (["root", "--l", "1", "--eps", "0.1"], "1"),
        (["sweep", "--eps-min", "0.1", "--eps-max", "0.2", "--steps", "x", "--out", "-"], "x"),
        (["gamma", "--eps", "-0.1"], "-0.1"),
    ],
)
def test_malformed_flags_exit_2(argv, token, capsys):
    code, _, _ = call(*argv)
    assert code == 2
    assert repr(token) in capsys.readouterr().err


def test_missing_subcommand_exit_2(capsys):
    assert call()[0] == 2


def test_sweep_csv_roundtrip(tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = call("sweep", "--eps-min", "0.1", "--eps-max", "0.25", "--steps", "4", "--out", str(path), "--jobs", "1")
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    rows = list(csv.DictReader(lines))
    eps = [float(r["eps"]) for r in rows]
    assert eps == sorted(eps) and len(eps) == 4
    for r in rows:
        assert r["ratio"] != ""
        assert float(r["log10_gamma_lambda"]) == pytest.approx(
            float(r["log10_gamma_z"]) - math.log10(float(r["eps"])), abs=1e-12
        )
    code, out, _ = call("fit", "--in", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["eps_min"] == pytest.approx(0.1) and doc["eps_max"] == pytest.approx(0.25)
    assert doc["b_fit"] > 0


def test_sweep_json_roundtrip(tmp_path):
    path = tmp_path / "s.json"
    assert call("sweep", "--eps-min", "0.1", "--eps-max", "0.2", "--steps", "4", "--out", str(path), "--format", "json", "--jobs", "1")[0] == 0
    doc = json.loads(path.read_text())
    assert [set(r) for r in doc["rows"]] == [set(CSV_FIELDS)] * 4
    csv_path = tmp_path / "s.csv"
    call("sweep", "--eps-min", "0.1", "--eps-max", "0.2", "--steps", "4", "--out", str(csv_path), "--jobs", "1")
    assert read_sweep(path) == pytest.approx(read_sweep(csv_path), rel=1e-15)


def test_ratio_blank_when_underflowing():
    code, out, _ = call("sweep", "--eps-min", "0.02", "--eps-max", "0.02", "--steps", "1", "--out", "-")
    assert code == 0
    row = next(csv.DictReader(out.splitlines()))
    assert row["ratio"] == ""
    assert float(row["log10_gamma_asym"]) == pytest.approx(-667.4141450675279 / math.log(10), rel=1e-12)


def test_sweep_deterministic_and_parallel_identical(tmp_path):
    base = ["sweep", "--eps-min", "0.1", "--eps-max", "0.3", "--steps", "5", "--out", "-"]
    a = call(*base, "--jobs", "1")[1]
    b = call(*base, "--jobs", "1")[1]
    c = call(*base, "--jobs", "2")[1]
    assert a == b == c


def test_meta_header_is_comment_and_fit_ignores_it(tmp_path):
    path = tmp_path / "m.csv"
    call("sweep", "--eps-min", "0.1", "--eps-max", "0.25", "--steps", "4", "--out", str(path), "--meta", "--jobs", "1")
    text = path.read_text()
    head = [ln for ln in text.splitlines() if ln.startswith("#")]
    assert head and text.startswith("#")
    plain = tmp_path / "p.csv"
    call("sweep", "--eps-min", "0.1", "--eps-max", "0.25", "--steps", "4", "--out", str(plain), "--jobs", "1")
    assert text.split("\n", len(head))[-1] == plain.read_text()
    assert call("fit", "--in", str(path))[1] == call("fit", "--in", str(plain))[1]


def test_sweep_bad_range_exit_2():
    code, _, err = call("sweep", "--eps-min", "0.3", "--eps-max", "0.1", "--steps", "3", "--out", "-")
    assert code == 2 and "eps-min" in err


def test_fit_too_few_points_exit_2(tmp_path):
    path = tmp_path / "s.csv"
    call("sweep", "--eps-min", "0.1", "--eps-max", "0.2", "--steps", "3", "--out", str(path), "--jobs", "1")
    code, _, err = call("fit", "--in", str(path))
    assert code == 2 and "4" in err


def test_fit_missing_file_exit_2(tmp_path):
    assert call("fit", "--in", str(tmp_path / "nope.csv"))[0] == 2


def test_selftest_module():
    code, out, _ = call("selftest", "constants")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_selftest_all():
    code, out, _ = call("selftest")
    assert code == 0
    assert {line.split()[1].split(":")[0] for line in out.splitlines()} == {
        "specfun", "constants", "dispersion", "scaled", "gamma",
    }


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "bubbleres", "gamma", "--eps", "0.4"], capture_output=True, text=True
    )
    assert res.returncode == 3
