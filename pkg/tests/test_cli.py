import json
import subprocess
import sys

import pytest

from orbitlimit.cli import main

H2 = "E(1,2) ox E(2,1) + E(2,1) ox E(1,2)"


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_repinfo_dimensions(tmp_path):
    out = tmp_path / "info.json"
    assert main(["repinfo", "--M", "3", "--weight", "1,0", "--output", str(out)]) == 0
    report = read_json(out)
    assert report["dimension"] == {"weyl": 3, "constructed": 3, "ambient": 3}
    assert report["passed"] is True

    assert main(["repinfo", "--M", "2", "--weight", "4", "--output", str(out)]) == 0
    assert read_json(out)["dimension"]["constructed"] == 5

    assert main(["repinfo", "--M", "3", "--weight", "1,1", "--output", str(out)]) == 0
    report = read_json(out)
    assert report["dimension"]["constructed"] == 8
    assert report["checks"]["highest_weight_space_dimension"] == 1


def test_repinfo_stdout(capsys):
    assert main(["repinfo", "--M", "2", "--weight", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["dimension"]["weyl"] == 3


def test_repinfo_dimension_cap():
    assert main(["repinfo", "--M", "3", "--weight", "99,99"]) == 3


def test_limit_json_schema(tmp_path):
    out = tmp_path / "run.json"
    code = main(
        ["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--sample", "3", "--output", str(out)]
    )
    assert code == 0
    result = read_json(out)
    assert set(result) == {"hamiltonian", "weight", "points", "table", "limit", "fit", "passed"}
    assert len(result["points"]) == 3
    assert len(result["limit"]) == 3
    assert len(result["table"]) == 7
    row = result["table"][0]
    assert row["n"] == 1
    assert len(row["value"]) == 3 and len(row["value"][0]) == 2
    assert len(result["fit"]["exponent"]) == 3
    for e in result["fit"]["exponent"]:
        assert -1.3 < e < -0.7
    assert (tmp_path / "run.png").exists()
    assert (tmp_path / "run.png").stat().st_size > 0


def test_limit_deterministic_output(tmp_path):
    args = ["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--sample", "4", "--seed", "9", "--no-figure"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    assert main(["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--sample", "4", "--seed", "10", "--no-figure", "--output", str(c)]) == 0
    assert a.read_bytes() != c.read_bytes()


def test_limit_degree_one_exact(tmp_path):
    out = tmp_path / "lin.json"
    code = main(
        ["limit", "--M", "3", "--weight", "2,1", "--hamiltonian", "H(1) + E(1,2) + E(2,1)",
         "--sample", "5", "--no-figure", "--output", str(out)]
    )
    assert code == 0
    result = read_json(out)
    for row in result["table"]:
        assert max(row["error"]) <= 1e-12


def test_limit_points_file_round_trip(tmp_path):
    first = tmp_path / "first.json"
    main(["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--sample", "2", "--no-figure", "--output", str(first)])
    points = read_json(first)["points"]
    pts_file = tmp_path / "pts.json"
    pts_file.write_text(json.dumps(points))
    second = tmp_path / "second.json"
    code = main(
        ["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--points-file", str(pts_file),
         "--no-figure", "--output", str(second)]
    )
    assert code == 0
    assert read_json(second)["table"] == read_json(first)["table"]


def test_limit_csv_format(tmp_path):
    out = tmp_path / "run.csv"
    code = main(
        ["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", H2, "--sample", "2",
         "--format", "csv", "--no-figure", "--output", str(out)]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "point,n,value_re,value_im,error"
    assert len(lines) == 1 + 7 * 2
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 5
        float(cells[2]), float(cells[4])


def test_limit_hamiltonian_file(tmp_path):
    hfile = tmp_path / "h.txt"
    hfile.write_text("H(1) # diagonal term\n + 0.5 * H(2)\n")
    out = tmp_path / "run.json"
    code = main(
        ["limit", "--M", "3", "--weight", "1,1", "--hamiltonian-file", str(hfile), "--sample", "2",
         "--no-figure", "--output", str(out)]
    )
    assert code == 0


def test_limit_exit_codes(tmp_path, capsys):
    base = ["limit", "--M", "3", "--weight", "1,1", "--sample", "2", "--no-figure"]
    assert main(base + ["--hamiltonian", "E(1,2"]) == 2
    assert main(base + ["--hamiltonian", "Q(1,2)"]) == 2
    assert main(["limit", "--M", "3", "--weight", "0,0", "--hamiltonian", "H(1)", "--sample", "2"]) == 3
    assert main(["limit", "--M", "3", "--weight", "1", "--hamiltonian", "H(1)", "--sample", "2"]) == 3
    assert main(["limit", "--M", "3", "--weight", "1,1", "--hamiltonian", "H(1)"]) == 3
    capsys.readouterr()


def test_limit_rejects_off_chart_points(tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([{"x_3_2": [0.5, 0.0]}]))
    code = main(
        ["limit", "--M", "3", "--weight", "1,0", "--hamiltonian", "H(1)", "--points-file", str(pts), "--no-figure"]
    )
    assert code == 3


def test_config_file_merge(tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "M": 3,
        "weight": "1,1",
        "hamiltonian": H2,
        "sample": 2,
        "seed": 3,
        "no_figure": True,
    }))
    out1 = tmp_path / "one.json"
    assert main(["limit", "--config", str(config), "--output", str(out1)]) == 0
    assert not (tmp_path / "one.png").exists()
    # explicit flags win over the config file
    out2 = tmp_path / "two.json"
    assert main(["limit", "--config", str(config), "--weight", "2,0", "--output", str(out2)]) == 0
    assert read_json(out1)["weight"] == [1, 1]
    assert read_json(out2)["weight"] == [2, 0]


def test_config_rejects_unknown_keys(tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"hamiltonain": "H(1)"}))
    assert main(["limit", "--config", str(config)]) == 2


def test_verify_suite(tmp_path):
    out = tmp_path / "verify.json"
    assert main(["verify", "--suite", "golden-su3", "--output", str(out)]) == 0
    report = read_json(out)
    assert report["passed"] is True
    assert report["suites"][0]["suite"] == "golden-su3"
    assert len(report["suites"][0]["checks"]) >= 5
    assert (tmp_path / "verify.png").exists()


def test_verify_norm_with_m(tmp_path):
    out = tmp_path / "verify.json"
    assert main(["verify", "--suite", "norm", "--M", "2", "--no-figure", "--output", str(out)]) == 0
    report = read_json(out)
    names = [c["name"] for c in report["suites"][0]["checks"]]
    assert any("M=2" in n for n in names)


def test_verify_unknown_suite_via_config(tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"suite": "spectral"}))
    assert main(["verify", "--config", str(config)]) == 3


def test_console_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "orbitlimit", "repinfo", "--M", "2", "--weight", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"]["constructed"] == 2
