import json

import pytest

import main


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FUSIONLAB_OUTPUT_DIR", str(tmp_path))
    monkeypatch.setenv("FUSIONLAB_LOG_FILE", str(tmp_path / "fusionlab.log"))
    return tmp_path


def test_unknown_suite_is_a_usage_error(output_dir):
    with pytest.raises(SystemExit) as e:
        main.main(["verify", "nosuch"])
    assert e.value.code == 2


def test_help_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as e:
        main.main(["simulate", "--help"])
    assert e.value.code == 0
    assert "ssep-open" in capsys.readouterr().out


def test_invalid_parameter_is_a_usage_error(output_dir):
    assert main.main(["verify", "qcomb", "--sites", "0"]) == 2
    assert main.main(["verify", "qcomb", "--q", "half"]) == 2


def test_verify_qcomb_writes_report(output_dir):
    assert main.main(["verify", "qcomb", "--q", "1/2", "--out", "qcomb.json"]) == 0
    payload = json.load(open(output_dir / "qcomb.json"))
    assert payload["suites"] == ["qcomb"]
    assert payload["summary"]["failed"] == []


def test_simulate_ssep_open(output_dir):
    code = main.main(["simulate", "ssep-open", "--alpha", "1/2", "--tau", "0.25", "--chi", "0.5", "--L", "9",
                      "--trials", "20", "--seed", "3", "--plot"])
    assert code == 0
    lines = (output_dir / "ssep-open.csv").read_text().splitlines()
    assert lines[0].startswith("observable,coordinate,tau")
    assert len(lines) == 5
    assert (output_dir / "ssep-open.svg").exists()


def test_simulate_is_deterministic(output_dir):
    args = ["simulate", "asep-open", "--q", "1/2", "--zeta", "-0.5", "--tau", "0.5", "--L", "8", "--trials", "10"]
    main.main(args + ["--out", "a.csv"])
    main.main(args + ["--out", "b.csv"])
    assert (output_dir / "a.csv").read_text() == (output_dir / "b.csv").read_text()


def test_weights_export(output_dir):
    assert main.main(["weights", "--l", "1", "--m", "1", "--out", "r11.csv"]) == 0
    assert len((output_dir / "r11.csv").read_text().splitlines()) == 7


def test_negative_rate_is_a_usage_error(output_dir, capsys):
    assert main.main(["verify", "qcomb", "--q=-1/2"]) == 2
    assert "negative rate" in capsys.readouterr().err


def test_small_asep_band_is_asserted(output_dir, capsys):
    code = main.main(["simulate", "asep-open", "--q", "4/5", "--zeta", "-0.5", "--tau", "0.25", "--L", "4",
                      "--trials", "4000", "--seed", "3"])
    out = capsys.readouterr().out
    assert "asep-open:hopf_cole: report only" in out
    assert "asep-open:hopf_cole_finite_size: ok" in out
    assert code == 0


def test_large_asep_run_only_reports(output_dir, capsys):
    code = main.main(["simulate", "asep-open", "--q", "1/2", "--zeta", "-0.5", "--tau", "0.5", "--L", "8",
                      "--trials", "10"])
    out = capsys.readouterr().out
    assert "hopf_cole_finite_size" not in out
    assert "asep-open:hopf_cole: report only" in out
    assert code == 0
