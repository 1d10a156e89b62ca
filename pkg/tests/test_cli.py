import io
import json
import subprocess
import sys


from lambda_taylor.cli import main, run


def cli(*argv, stdin=""):
    return run(list(argv), io.StringIO(stdin))


def test_reduce_theta():
    out, code = cli("reduce", "--calculus", "lambda", "--steps", "3", r"Θ (\y. y (+) x)")
    assert (out, code) == (r"(Θ (\y. y (+) x)) (+) x", 0)


def test_multiplicity():
    assert cli("m", "<y>[x,x,x]") == ("6", 0)


def test_check_json():
    out, code = cli("check", "--lemma", "coeffNF", "--seed", "7", "--count", "50", "--max-size", "12")
    assert code == 0
    assert json.loads(out) == {"lemma": "coeffNF", "checked": 50, "failures": []}


def test_stdin_input():
    out, code = cli("reduce", "--calculus", "resource", stdin=r"<\x.<x>[x,x]>[z,z,z]")
    assert (out, code) == ("6*<z>[z,z]", 0)


def test_commands():
    assert cli("bohm", "--depth", "3", r"Θ (\y. y (+) x)") == ("_|_ (+) x", 0)
    assert cli("aut", "<y>(x,x,x)") == ("6", 0)
    assert cli("parse", "--calculus", "rigid", "<z>(y, x)") == ("<z>(y,x)", 0)
    assert cli("taylor", "--size", "5", "--coeffs", r"\x. x x")[0] == r"\x.<x>[] + \x.<x>[x] + 1/2*\x.<x>[x,x]"
    assert cli("reduce", "--calculus", "rigid", r"<\x.<x>(x)>(inl y,inr z)", "--steps", "1") == ("<inl y>(inr z)", 0)


def test_nf_taylor_json_is_sorted():
    out, _ = cli("--json", "nf-taylor", "--size", "20", "--depth", "6", r"Θ (\y. y (+) x)")
    data = json.loads(out)
    assert [d["expr"] for d in data["nf"]] == ["inl inr x", "inr x"]
    assert out == json.dumps(data, sort_keys=True, ensure_ascii=False)


def test_json_env(monkeypatch):
    monkeypatch.setenv("LAMBDA_TAYLOR_JSON", "1")
    out, _ = cli("m", "<y>[x,x,x]")
    assert json.loads(out) == {"m": 6}
    monkeypatch.setenv("LAMBDA_TAYLOR_JSON", "0")
    assert cli("m", "<y>[x,x,x]")[0] == "6"


def test_commute_exit_codes():
    out, code = cli("commute", "--size", "8", "--depth", "2", r"(\x.x x)(\x.x)")
    assert code == 0 and json.loads(out)["failures"] == []


def test_lemma_failure_exit_code(monkeypatch):
    from lambda_taylor import oracles

    monkeypatch.setitem(oracles.LEMMAS, "broken", lambda rng, size: [{"why": "forced"}])
    out, code = cli("check", "--lemma", "broken", "--count", "2")
    assert code == 2 and len(json.loads(out)["failures"]) == 2


def test_errors(capsys):
    assert main(["parse", r"(\x. x"]) == 1
    assert "line 1, column 7" in capsys.readouterr().err
    assert main(["check", "--lemma", "nope"]) == 3
    assert main(["reduce", "x"]) == 3
    assert main(["taylor", "--size", "-1", "x"]) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lambda_taylor", "m", "<y>[x,x,x]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
