import json

import pytest

from quiverz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_part_dual(capsys):
    code, out = run(capsys, "part", "dual", "5,3,3,1")
    assert code == 0
    assert out == "[4,3,3,1,1]"


def test_part_add(capsys):
    assert run(capsys, "part", "add", "2,1,1", "1") == (0, "[3,2]")
    assert run(capsys, "part", "add", "1", "3") == (0, "[2,1,1]")


def test_part_dom(capsys):
    assert run(capsys, "part", "dom", "3,2", "3,1,1") == (0, "true")
    assert run(capsys, "part", "dom", "3,3", "4,1,1") == (0, "false")


def test_part_nvec_and_young(capsys):
    assert run(capsys, "part", "nvec", "5,3,3,1") == (0, "[1,2,5,8,12]")
    code, out = run(capsys, "part", "young", "2,1")
    assert code == 0
    assert out == "[][]\n[]"


def test_dimvec_classify(capsys):
    code, payload = run_json(capsys, "dimvec", "classify", "1,2,5,8,12")
    assert code == 0
    assert payload == {"tag": "kraft_procesi", "eta": [5, 3, 3, 1]}
    code, payload = run_json(capsys, "dimvec", "classify", "1,4,5")
    assert payload == {"tag": "monotone_only"}


def test_dimvec_mu_lambda_slack(capsys):
    assert run(capsys, "dimvec", "mu", "1,4,5") == (0, "[3,1,1]")
    assert run(capsys, "dimvec", "lambda", "1,4,5") == (0, "[3,2]")
    assert run(capsys, "dimvec", "slack", "1,2") == (0, "[0]")
    assert run(capsys, "dimvec", "slack", "1,4,5") == (0, "[2,-2]")
    assert run(capsys, "dimvec", "obstruction", "1,4,5") == (0, '"reducible"')


def test_dimvec_verdict(capsys):
    code, payload = run_json(capsys, "--json", "dimvec", "verdict", "1,4,5")
    assert code == 0
    assert payload["verdict"] == "reducible"
    assert payload["lambda"] == [3, 2]
    assert payload["mu"] == [3, 1, 1]
    assert len(payload["witnesses"]) == 2


def test_domain_error_exit_code(capsys):
    code = main(["part", "dual", "1,2,3"])  # increasing: not a partition
    assert code == 2
    code = main(["dimvec", "mu", "2,2"])
    assert code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["part", "frobnicate", "1"])
    assert exc.value.code == 2


def test_verify_ab_step(capsys):
    code, payload = run_json(capsys, "--json", "verify", "ab-step", "--n", "1", "--a", "1")
    assert code == 0
    assert payload["pass"] is True
    assert payload["params"] == {"a": 1, "n": 1, "p": 2}


def test_verify_budget_exit_code(capsys):
    code = main(["--json", "verify", "ab-step", "--n", "3", "--a", "3", "--budget", "10"])
    assert code == 2


def test_verify_reducible(capsys):
    code, payload = run_json(capsys, "--json", "verify", "reducible", "--seed", "4")
    assert code == 0
    assert payload["pass"] is True


def test_verify_all_deterministic(capsys):
    args = ["--json", "verify", "all", "--seed", "9", "--max-last", "4", "--trials", "1"]
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    code3, out3 = run(capsys, *args, "--jobs", "4")
    assert code1 == code2 == code3 == 0
    assert out1 == out2 == out3


def test_json_flag_silences_stderr(capsys):
    main(["--json", "verify", "reducible"])
    captured = capsys.readouterr()
    assert captured.err == ""
    main(["verify", "reducible"])
    captured = capsys.readouterr()
    assert "reducible" in captured.err
