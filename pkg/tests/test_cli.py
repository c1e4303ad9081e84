import json

import pytest

from postpfa.cli import cli_main


def test_build_and_run_round_trip(tmp_path, capsys):
    path = tmp_path / "equal.json"
    assert cli_main(["build", "--family", "equal", "--x", "1/4",
                     "--out", str(path)]) == 0
    capsys.readouterr()
    assert cli_main(["run", "--automaton", str(path),
                     "--input", "010"]) == 0
    out = capsys.readouterr().out
    assert "acceptance: 4/5" in out


def test_mc_is_reproducible(tmp_path, capsys):
    path = tmp_path / "equal.json"
    cli_main(["build", "--family", "equal", "--x", "1/4", "--out", str(path)])
    capsys.readouterr()
    cli_main(["mc", "--automaton", str(path), "--input", "010",
              "--trials", "300", "--seed", "7"])
    first = capsys.readouterr().out
    cli_main(["mc", "--automaton", str(path), "--input", "010",
              "--trials", "300", "--seed", "7"])
    assert capsys.readouterr().out == first


def test_cert_output(capsys):
    assert cli_main(["cert", "--protocol", "usquare", "--n", "9"]) == 0
    assert capsys.readouterr().out.strip() == "aaabbb$"
    assert cli_main(["cert", "--protocol", "upower", "--n", "8"]) == 0
    assert capsys.readouterr().out.strip() == "0001011$"


def test_cert_for_non_member_fails_cleanly(capsys):
    assert cli_main(["cert", "--protocol", "upower", "--n", "6"]) == 1
    assert "error" in capsys.readouterr().err


def test_soundness_command(tmp_path, capsys):
    path = tmp_path / "upower.json"
    cli_main(["build", "--family", "upower", "--x", "1/2",
              "--out", str(path)])
    capsys.readouterr()
    assert cli_main(["soundness", "--automaton", str(path),
                     "--input", "00000", "--max-prefix", "7"]) == 0
    out = capsys.readouterr().out
    assert "max acceptance: 1/5" in out
    assert "witness:" in out


def test_coin_command(capsys):
    assert cli_main(["coin", "--bits", "101", "--k", "1", "--exact"]) == 0
    out = capsys.readouterr().out
    assert "coin bias: 333/512" in out
    assert "exact decode success" in out


def test_suite_command_writes_csv(tmp_path, capsys):
    csv_path = tmp_path / "report.csv"
    assert cli_main(["suite", "--name", "c3", "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "[PASS] c3" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("criterion,")
    assert any(line.startswith("c3,") for line in lines[1:])


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        cli_main(["bogus"])
    assert err.value.code == 2


def test_config_file_supplies_defaults(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"x": "1/10", "out": None}))
    path = tmp_path / "m.json"
    assert cli_main(["--config", str(config), "build", "--family", "equal",
                     "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert any(row["probability"].endswith("/100")
               for row in doc["transitions"])
    # explicit flags still win over the config file
    assert cli_main(["--config", str(config), "build", "--family", "equal",
                     "--x", "1/4", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert not any(row["probability"].endswith("/100")
                   for row in doc["transitions"])
