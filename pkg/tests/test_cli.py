import json
import math

import pytest

from tubelab.cli import main


def test_stein_two_stein_space_passes(capsys):
    assert main(["stein", "--space", "cp2"]) == 0
    out = capsys.readouterr().out
    assert "einstein K" in out


def test_stein_product_fails_condition(capsys):
    assert main(["stein", "--space", "s2xs2"]) == 3
    assert "not 2-stein" in capsys.readouterr().out


def test_tube_sphere_closed_form(capsys):
    code = main(["tube", "--space", "s3", "--r", "0.5", "--compare", "closed-form"])
    assert code == 0
    out = capsys.readouterr().out
    assert "closed form" in out


def test_tube_ch2_closed_form(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TUBELAB_OUTPUT_DIR", str(tmp_path))
    code = main([
        "tube", "--space", "ch2", "--r", "0.5", "--degree", "16",
        "--compare", "closed-form", "--json", "tube.json",
    ])
    assert code == 0
    payload = json.loads((tmp_path / "tube.json").read_text())
    assert payload["rel_err"] <= 1e-6


def test_tube_unknown_space_is_config_error(capsys):
    assert main(["tube", "--space", "nope"]) == 2
    assert "error" in capsys.readouterr().err


def test_tube_pole_guard_exit(capsys):
    # radius past the first conjugate point trips the series/pole guard
    assert main(["tube", "--space", "s3", "--r", "3.2"]) in (2, 3)


def test_coeffs_sphere(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TUBELAB_OUTPUT_DIR", str(tmp_path))
    assert main(["coeffs", "--space", "s3", "--json", "c.json"]) == 0
    payload = json.loads((tmp_path / "c.json").read_text())
    assert payload["A"] == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert payload["B"] == pytest.approx(2.0 / 45.0, abs=1e-10)


def test_quad_audit(capsys):
    assert main(["quad-audit", "--n", "4", "--degree", "10"]) == 0
    assert "max monomial error" in capsys.readouterr().out


def test_ad_trace(capsys):
    assert main(["ad-trace", "--max-k", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("k = ") == 4


def test_damek_ricci_report(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TUBELAB_OUTPUT_DIR", str(tmp_path))
    code = main([
        "damek-ricci", "--p", "2", "--q", "1", "--r", "0.5",
        "--json", "dr.json", "--geodesic-csv", "geo.csv",
    ])
    assert code == 0
    payload = json.loads((tmp_path / "dr.json").read_text())
    ref = (4.0 * math.pi / 3.0) * 8.0 * math.sinh(0.25) ** 3 * math.cosh(0.25)
    assert payload["volume"] == pytest.approx(ref, rel=1e-12)
    assert (tmp_path / "geo.csv").read_text().startswith("t,V0,V1,Z0,t_coord")


def test_damek_ricci_bad_pair(capsys):
    assert main(["damek-ricci", "--p", "3", "--q", "1"]) == 2


def test_tube_curve_circle(capsys):
    assert main(["tube-curve", "--curve", "circle", "--kappa", "0.5"]) == 0
    assert "curve tube volume" in capsys.readouterr().out


def test_tube_scan_csv_deterministic(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TUBELAB_OUTPUT_DIR", str(tmp_path))
    args = ["tube-scan", "--space", "s3", "--r", "0.4", "--degree", "8",
            "--csv", "scan.csv"]
    assert main(args) == 0
    first = (tmp_path / "scan.csv").read_bytes()
    assert main(args) == 0
    assert (tmp_path / "scan.csv").read_bytes() == first


def test_tube_scan_spread_threshold(capsys):
    code = main(["tube-scan", "--space", "s2xs2", "--r", "0.5",
                 "--degree", "16", "--max-spread", "1e-8"])
    assert code == 3


def test_config_file_merge(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[tubelab]\nspace = s3\nr = 0.4\ndegree = 8\n")
    # config supplies r and degree; explicit flag overrides space
    code = main(["--config", str(cfg), "tube", "--space", "s4",
                 "--compare", "closed-form"])
    assert code == 0
    out = capsys.readouterr().out
    assert "closed form" in out


def test_config_missing_file(capsys):
    assert main(["--config", "/does/not/exist.ini", "stein", "--space", "s3"]) == 2


def test_verify_all_subset(capsys):
    code = main(["verify-all", "--only", "series-machinery,ad-trace-witness"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS]" in out


def test_verify_all_unknown_name(capsys):
    assert main(["verify-all", "--only", "no-such-check"]) == 2
