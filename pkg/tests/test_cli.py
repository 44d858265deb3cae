import csv
import json
import math

import pytest

from conftest import geometric_series
from shearmaps import ConfigError, dump_series_spec
from shearmaps.cli import main, parse_grid, parse_probe


@pytest.fixture()
def geo_spec(tmp_path):
    path = tmp_path / "geo.json"
    path.write_text(dump_series_spec(geometric_series()))
    return str(path)


@pytest.fixture()
def a27_spec(tmp_path):
    path = tmp_path / "a27.json"
    path.write_text('{"start": 2, "coeffs": [[2.7, 0.0]]}')
    return str(path)


def read_csv_report(path):
    comments, rows = [], []
    with open(path) as fh:
        lines = fh.read().splitlines()
    data = []
    for line in lines:
        (comments if line.startswith("#") else data).append(line)
    rows = list(csv.DictReader(data))
    return comments, rows


# ---------------------------------------------------------------------------
# argument parsing


def test_parse_probe_forms():
    assert parse_probe("0.5,-0.25") == (0j, 0.5 - 0.25j)
    assert parse_probe("0.1,0.2;0.3,0.4") == (0.1 + 0.2j, 0.3 + 0.4j)
    for bad in ("0.5", "1,2,3", "a,b", "1,2;3,4;5,6"):
        with pytest.raises(ConfigError):
            parse_probe(bad)


def test_parse_grid_forms():
    assert parse_grid("0.0:1.0:3") == (0.0, 0.5, 1.0)
    assert len(parse_grid("0.1:0.9")) == 6  # default count
    assert parse_grid("0.7:0.7:1") == (0.7,)
    for bad in ("0.5", "a:b", "0:1:0", "0:1:2:3", "inf:1:2"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


# ---------------------------------------------------------------------------
# subcommands


def test_certify_csv(geo_spec, tmp_path, capsys):
    out = tmp_path / "report.csv"
    assert main(["certify", "--input", geo_spec, "--out", str(out)]) == 0
    comments, rows = read_csv_report(out)
    assert "# subcommand=certify" in comments
    assert [r["kind"] for r in rows] == ["Starlike", "Starshapelike", "Embeddable"]
    assert all(r["status"] == "Certified" for r in rows)
    assert rows[2]["degree"] == "2"
    assert rows[0]["degree"] == ""  # degree only applies to embeddability

    # stdout emits the same bytes as --out
    assert main(["certify", "--input", geo_spec]) == 0
    assert capsys.readouterr().out == out.read_text()


def test_certify_json(geo_spec, tmp_path):
    out = tmp_path / "report.json"
    assert main(["certify", "--input", geo_spec, "--format", "json",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["subcommand"] == "certify"
    assert len(doc["rows"]) == 3
    assert doc["rows"][2]["degree"] == 2
    assert doc["rows"][0]["degree"] is None


def test_embed_subcommand(geo_spec, tmp_path):
    out = tmp_path / "embed.csv"
    assert main(["embed", "--input", geo_spec, "--out", str(out)]) == 0
    _, rows = read_csv_report(out)
    assert len(rows) == 1
    assert rows[0]["kind"] == "Embeddable"
    assert rows[0]["degree"] == "2"
    assert float(rows[0]["margin"]) == 0.0


def test_starlike_scan_violation_exit_code(a27_spec, tmp_path):
    out = tmp_path / "scan.csv"
    code = main(["starlike-scan", "--input", a27_spec, "--radius", "0.98",
                 "--s-grid", "4", "--t-grid", "5", "--phase-grid", "4",
                 "--random", "100", "--out", str(out)])
    assert code == 1
    _, rows = read_csv_report(out)
    assert rows[0]["violation"] == "true"
    assert float(rows[0]["extremum"]) < -1e-12


def test_starlike_scan_clean_exit_code(geo_spec, tmp_path):
    out = tmp_path / "scan.csv"
    code = main(["starlike-scan", "--input", geo_spec, "--radius", "0.9",
                 "--s-grid", "4", "--t-grid", "5", "--phase-grid", "4",
                 "--random", "100", "--out", str(out)])
    assert code == 0
    _, rows = read_csv_report(out)
    assert rows[0]["violation"] == "false"


def test_eq1_scan_cli_roundtrip(geo_spec, tmp_path):
    out = tmp_path / "eq1.csv"
    code = main(["eq1-scan", "--input", geo_spec, "--radius", "0.9",
                 "--grid", "0.25:1.0:4", "--s-grid", "4", "--t-grid", "5",
                 "--phase-grid", "2", "--random", "50", "--out", str(out)])
    assert code == 0
    comments, rows = read_csv_report(out)
    assert any(c.startswith("# alphas=") for c in comments)
    assert "alpha" in rows[0]
    assert rows[0]["violation"] == "false"


def test_eq1_scan_json_handles_non_finite(tmp_path):
    hot = 1.0 - 0.012 * complex(math.cos(math.pi / 6), math.sin(math.pi / 6))
    probe = f"0.1,0.0;{hot.real!r},{hot.imag!r}"
    out = tmp_path / "eq1.json"
    code = main(["eq1-scan", "--builtin", "counterexample", "--radius", "0.5",
                 "--grid", "0.5:1.0:2", "--s-grid", "2", "--t-grid", "3",
                 "--phase-grid", "2", "--random", "10", "--probe", probe,
                 "--format", "json", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    assert doc["rows"][0]["extremum"] == "-inf"  # certified sign, out of range
    assert doc["rows"][0]["violation"] is True


def test_growth_scan_cli(geo_spec, tmp_path):
    out = tmp_path / "growth.csv"
    code = main(["growth-scan", "--input", geo_spec, "--grid", "0.1:0.9:5",
                 "--angular", "64", "--radial", "8", "--out", str(out)])
    assert code == 0
    _, rows = read_csv_report(out)
    assert len(rows) == 5
    assert all(r["conforms"] == "true" for r in rows)


def test_growth_scan_uncertified_is_config_error(a27_spec, tmp_path, capsys):
    code = main(["growth-scan", "--input", a27_spec, "--out",
                 str(tmp_path / "g.csv")])
    assert code == 2
    assert "uncertified" in capsys.readouterr().err.lower()


def test_counterexample_cli_verdict_trailer(tmp_path):
    out = tmp_path / "ce.csv"
    assert main(["counterexample", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[-2].startswith("# verdict=no constant C")
    assert lines[-1] == "# affirmative=true"
    _, rows = read_csv_report(out)
    assert len(rows) == 6


def test_counterexample_custom_grid(tmp_path):
    out = tmp_path / "ce.json"
    assert main(["counterexample", "--grid", "0.6:0.9:4", "--c-report", "2",
                 "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [row["r"] for row in doc["rows"]] == pytest.approx([0.6, 0.7, 0.8, 0.9])
    assert doc["affirmative"] == "true"


def test_eval_cli_matches_library(geo_spec, tmp_path):
    from conftest import geometric_shear
    from shearmaps import starlike_quantity
    from shearmaps.growth import shear_opnorm

    out = tmp_path / "eval.csv"
    assert main(["eval", "--input", geo_spec, "--probe", "0.1,0.2;0.3,-0.1",
                 "--out", str(out)]) == 0
    _, rows = read_csv_report(out)
    f = geometric_shear()
    p = (0.1 + 0.2j, 0.3 - 0.1j)
    w1, _ = f.eval(p)
    assert float(rows[0]["f1_re"]) == pytest.approx(w1.real, rel=1e-15)
    assert float(rows[0]["f1_im"]) == pytest.approx(w1.imag, rel=1e-15)
    assert float(rows[0]["opnorm"]) == pytest.approx(shear_opnorm(f, p), rel=1e-15)
    assert float(rows[0]["starlike_quantity"]) == pytest.approx(
        starlike_quantity(f, p), rel=1e-15
    )


def test_eval_truncate_on_series(geo_spec, tmp_path):
    out = tmp_path / "eval.csv"
    assert main(["eval", "--input", geo_spec, "--truncate", "2",
                 "--probe", "0.0,0.0;0.5,0.0", "--out", str(out)]) == 0
    _, rows = read_csv_report(out)
    # degree-2 head is 0.25 z^2, so f1 = 0 + 0.25 * 0.25
    assert float(rows[0]["f1_re"]) == pytest.approx(0.0625, rel=1e-15)


# ---------------------------------------------------------------------------
# failure modes -> exit 2


def test_exit_2_cases(tmp_path, geo_spec, capsys):
    bad_spec = tmp_path / "bad.json"
    bad_spec.write_text('{"start": 3}')
    cases = [
        ["certify"],                                      # no source
        ["certify", "--input", geo_spec, "--builtin", "counterexample"],
        ["certify", "--builtin", "mystery"],
        ["certify", "--input", str(tmp_path / "missing.json")],
        ["certify", "--input", str(bad_spec)],
        ["eval", "--input", geo_spec],                    # no probes
        ["eval", "--input", geo_spec, "--probe", "0.9,0.9"],  # outside ball
        ["eval", "--builtin", "counterexample", "--probe", "0.1,0.0",
         "--truncate", "3"],                              # closed form
        ["starlike-scan", "--input", geo_spec, "--radius", "1.5"],
        ["eq1-scan", "--input", geo_spec, "--grid", "0.5:2.0:3"],
        ["counterexample", "--grid", "0.9:0.6:2"],
        ["counterexample", "--c-report", "0.1"],
        ["certify", "--input", geo_spec, "--workers", "0"],
    ]
    for argv in cases:
        capsys.readouterr()
        assert main(argv) == 2, argv
        assert capsys.readouterr().err.strip(), argv


def test_argparse_failures_return_2(capsys):
    assert main([]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "subcommand" in capsys.readouterr().out or True


def test_cli_runs_are_byte_identical(a27_spec, tmp_path):
    outs = []
    for tag in ("one", "two"):
        out = tmp_path / f"{tag}.csv"
        assert main(["starlike-scan", "--input", a27_spec, "--radius", "0.98",
                     "--s-grid", "4", "--t-grid", "5", "--phase-grid", "4",
                     "--random", "200", "--out", str(out)]) == 1
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
