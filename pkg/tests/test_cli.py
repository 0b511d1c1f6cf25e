import json
import subprocess
import sys

import jsonschema
import pytest

from uefg import cli
from uefg.schema import ENVELOPE, SWEEP_RECORD, VALUE, decode_value, encode_value
from uefg.cyclo import root_of_unity


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "uefg.cli", *args],
                          capture_output=True, text=True, env=env)


def call(capsys, *args):
    code = cli.main(list(args))
    return code, capsys.readouterr()


@pytest.mark.parametrize("args, first", [
    (("sum", "ramanujan", "--c", "2", "--n", "6"), "-1"),
    (("sum", "gauss", "--c", "1", "--n", "6"), "0"),
    (("sum", "gauss", "--c", "1", "--n", "4"), "2 + 2*z4"),
])
def test_sum_examples(capsys, args, first):
    code, out = call(capsys, *args)
    assert code == 0
    assert out.out.splitlines()[0] == first


def test_sum_json(capsys):
    code, out = call(capsys, "sum", "gauss", "--c", "2", "--n", "5", "--json")
    assert code == 0
    env = json.loads(out.out)
    jsonschema.validate(env, ENVELOPE)
    assert env["results"]["agreement"] is True
    assert abs(env["results"]["approx"][0] + 5 ** 0.5) < 1e-9


def test_sum_theta_and_char(capsys):
    assert call(capsys, "sum", "theta", "--n", "9", "--b", "4", "--k", "2")[0] == 0
    assert call(capsys, "sum", "theta", "--n", "8", "--b", "6", "--k", "3")[0] == 0
    assert call(capsys, "sum", "char-gauss", "--n", "15", "--c", "7")[0] == 0


@pytest.mark.parametrize("args", [
    ("sum", "gauss", "--n", "5"),
    ("sum", "theta", "--n", "5", "--b", "1"),
    ("sum", "char-gauss", "--n", "4", "--c", "1"),
    ("sum", "gauss", "--n", "0", "--c", "1"),
    ("spectrum", "--n", "1", "--d", "2"),
    ("spectrum", "--n", "x", "--d", "2"),
    ("verify", "--suite", "nope"),
    ("verify", "--suite", "gauss", "--max-n", "0"),
    ("conjecture", "--n", "2:a", "--d", "1"),
])
def test_invalid_arguments_exit_2(capsys, args):
    assert call(capsys, *args)[0] == 2


def test_sum_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli.expsums, "ramanujan_sum", lambda c, n: 99)
    assert call(capsys, "sum", "ramanujan", "--c", "2", "--n", "6")[0] == 3


def test_spectrum_json(capsys):
    code, out = call(capsys, "spectrum", "--n", "3", "--d", "2", "--json")
    assert code == 0
    env = json.loads(out.out)
    jsonschema.validate(env, ENVELOPE)
    res = env["results"]
    assert res["degree"] == 8 and res["all_integral"] is True
    assert res["eigenvalues"] == [{"value": "8", "multiplicity": 1}, {"value": "-1", "multiplicity": 8}]
    for ev in res["eigenvalues"]:
        jsonschema.validate(ev["value"], VALUE)


def test_spectrum_text_and_csv(capsys):
    code, out = call(capsys, "spectrum", "--n", "5", "--d", "1")
    assert code == 0 and "x4" in out.out
    code, out = call(capsys, "spectrum", "--n", "2", "--d", "2", "--csv")
    assert code == 0
    assert out.out == "value,multiplicity\n2,1\n0,2\n-2,1\n"


def test_spectrum_oracle(capsys):
    code, out = call(capsys, "spectrum", "--n", "6", "--d", "3", "--oracle", "--json")
    assert code == 0
    oracle = json.loads(out.out)["results"]["oracle"]
    assert oracle["enumeration"] == "exact"
    assert oracle["enumeration_agrees"] and oracle["dense_agrees"]
    code, out = call(capsys, "spectrum", "--n", "9", "--d", "4", "--oracle", "--json")
    oracle = json.loads(out.out)["results"]["oracle"]
    assert code == 0 and oracle["enumeration"] == "fft" and oracle["dense_agrees"] is None


def test_spectrum_oracle_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "lambda_oracle", lambda b, budget: root_of_unity(b.params.modulus, 1))
    assert call(capsys, "spectrum", "--n", "4", "--d", "2", "--oracle")[0] == 3


def test_budget_exit_4_and_env_override(capsys, monkeypatch):
    assert call(capsys, "spectrum", "--n", "50", "--d", "5")[0] == 4
    monkeypatch.setenv("UEFG_BUDGET", "100")
    assert call(capsys, "spectrum", "--n", "11", "--d", "2")[0] == 4
    assert call(capsys, "spectrum", "--n", "11", "--d", "2", "--budget", "121")[0] == 0
    monkeypatch.setenv("UEFG_BUDGET", "lots")
    assert call(capsys, "spectrum", "--n", "3", "--d", "1")[0] == 2


def test_verify(capsys):
    code, out = call(capsys, "verify", "--suite", "lemma21", "--max-n", "99")
    assert code == 0 and "pass" in out.out
    code, out = call(capsys, "verify", "--suite", "oracle", "--max-size", "200", "--json")
    env = json.loads(out.out)
    jsonschema.validate(env, ENVELOPE)
    assert code == 0 and env["results"]["passed"]
    assert env["params"]["max_size"] == 200


def test_verify_failure_exits_3(capsys, monkeypatch):
    monkeypatch.setitem(cli.verify.SUITES, "lemma21",
                        lambda max_n=99: _failed_suite())
    code, out = call(capsys, "verify", "--suite", "lemma21")
    assert code == 3 and "FAIL" in out.out and "'n': 3" in out.out


def _failed_suite():
    res = cli.verify.SuiteResult("lemma21", {"max_n": 3}, checks=1)
    res.fail(n=3, c=1)
    return res


def test_range_syntax():
    assert cli.parse_range("2:12:2") == [2, 4, 6, 8, 10, 12]
    assert cli.parse_range("1:5:2") == [1, 3, 5]
    assert cli.parse_range("2:11:3") == [2, 5, 8, 11]
    assert cli.parse_range("1:6:2") == [1, 3, 5]
    assert cli.parse_range("4") == [4]
    assert cli.parse_range("3:4") == [3, 4]


def test_conjecture_file(tmp_path, capsys):
    path = tmp_path / "sweep.jsonl"
    code, out = call(capsys, "conjecture", "--n", "2:12:2", "--d", "1:5:2", "--budget", "20000",
                     "--out", str(path))
    assert code == 0
    summary = json.loads(out.out)
    jsonschema.validate(summary, ENVELOPE)
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(records) == 18 == summary["results"]["pairs"]
    for rec in records:
        jsonschema.validate(rec, SWEEP_RECORD)
        if rec["d"] == 1:
            assert rec["all_integral"] is True
    skipped = {(r["n"], r["d"]) for r in records if r["status"] == "skipped"}
    assert skipped == {(n, 5) for n in (8, 10, 12)}
    assert all(r["reason"] for r in records if r["status"] == "skipped")


def test_conjecture_stdout_and_filtering(capsys):
    code, out = call(capsys, "conjecture", "--n", "2:5", "--d", "1:3")
    lines = out.out.splitlines()
    assert code == 0
    assert [(json.loads(x)["n"], json.loads(x)["d"]) for x in lines] == [(2, 1), (2, 3), (4, 1), (4, 3)]


def test_conjecture_unwritable_path(capsys, tmp_path):
    bad = tmp_path / "missing" / "out.jsonl"
    assert call(capsys, "conjecture", "--n", "2", "--d", "1", "--out", str(bad))[0] == 2


def test_value_encoding_round_trip():
    assert encode_value(-7) == "-7"
    assert decode_value("12") == 12
    x = root_of_unity(12, 5) / 3 + 2
    enc = encode_value(x)
    jsonschema.validate(enc, VALUE)
    assert decode_value(json.loads(json.dumps(enc))) == x
    assert encode_value(root_of_unity(3, 1) + root_of_unity(3, 2)) == "-1"


def test_binary_json_is_deterministic():
    outs = []
    for _ in range(2):
        proc = run("spectrum", "--n", "12", "--d", "2", "--json")
        assert proc.returncode == 0
        env = json.loads(proc.stdout)
        env.pop("timing")
        outs.append(json.dumps(env, sort_keys=True))
    assert outs[0] == outs[1]


def test_binary_exit_codes():
    assert run("spectrum", "--n", "3", "--d", "2").returncode == 0
    assert run("spectrum", "--n", "1000", "--d", "3").returncode == 4
    assert run("sum", "bogus").returncode == 2
    assert run().returncode == 2
