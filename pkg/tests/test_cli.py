import io
import json
import subprocess
import sys

import pytest

from nestsum.cli import SCHEMA, main, run


def ok(*argv):
    code, out, err = run(list(argv))
    assert code == 0, err
    return out.strip()


def test_product():
    assert ok("product", "S(n;1;1)", "S(n;1;1)") == "2*S(n;1,1;1,1) - S(n;2;1)"


def test_pfq_expand():
    out = ok("pfq-expand", "--order", "2", "F(2,1; eps,-eps; 1; x)")
    assert "(-S(inf;2;x))*eps^2" in out


def test_eval():
    assert ok("eval", "--n", "4", "S(n;1;1)") == "25/12"


def test_eval_with_bindings_and_eps():
    assert ok("eval", "--n", "2", "--bind", "x=1/2", "S(n;1;x)") == "5/8"
    out = ok("eval", "--n", "3", "--bind", "eps=1/10", "--order", "1", "Poch(1+eps, n)")
    assert out == "71/10"


def test_eval_per_order():
    out = ok("eval", "--n", "3", "--order", "1", "Poch(1+eps, n)")
    assert out.splitlines() == ["eps^0: 6", "eps^1: 11"]


def test_zeta_numeric():
    assert ok("zeta", "--precision", "12", "z2") == "1.64493406685"
    assert ok("zeta", "--precision", "12", "ln2") == "0.693147180560"


def test_convolve_and_conjugate():
    assert ok("convolve", "1/j", "1/j") == "2*n^-1*S(n;1;1) - 2*n^-2"
    assert ok("conjugate", "1/j^2") == "S(n;1,1;1,1)"
    assert ok("conjugate", "1/j + 1/j^2") == "S(n;1,1;1,1) + S(n;1;1)"


def test_binomial_convolve():
    out = ok("binomial-convolve", "1/j", "1/j")
    code, val, _ = run(["eval", "--n", "4", out])
    assert val.strip() == "7/6"


def test_solve_recurrence():
    assert ok("solve-recurrence", "a0=1; a1=1; G=1/N; I(0)=0") == "(S(N;1;1)) + O(eps^1)"
    assert ok("solve-recurrence", "a0=N; a1=1; G=0; I(0)=1") == "(Gamma(N+1)^-1) + O(eps^1)"


def test_gamma_and_pochhammer():
    assert ok("gamma-expand", "--order", "1", "Gamma(1+eps)") == "(1) + (-gamma_E)*eps^1 + O(eps^2)"
    assert ok("pochhammer-expand", "--order", "2", "Poch(1+eps, 2)") == "(2) + (3)*eps^1 + (1)*eps^2 + O(eps^3)"


def test_appell():
    out = ok("appell-expand", "F2(1+eps,1,1;2,2;1/2,1/3)")
    assert out == "(4*S(inf;1;1/3) + 3*ln2 - S(inf;1;5/6)) + O(eps^1)"


def test_raw_flag():
    assert ok("canonicalize", "--raw", "z2*S(n;1;1)") == "S(inf;2;1)*S(n;1;1)"
    assert ok("canonicalize", "z2*S(n;1;1)") == "z2*S(n;1;1)"


def test_json_schema():
    doc = json.loads(ok("--format", "json", "product", "S(n;1;1)", "S(n;2;-1)"))
    assert doc["schema"] == SCHEMA
    assert doc["command"] == "product" and doc["order"] == 0
    assert doc["warnings"] == []
    terms = doc["series"][0]["terms"]
    assert {"coeff", "sums", "poles", "powers"} <= set(terms[0])
    assert doc["series"][0]["eps_power"] == 0


def test_json_poles_and_powers():
    doc = json.loads(ok("canonicalize", "--format", "json", "2^n/(n+1)^2*S(n;1;1)"))
    (term,) = doc["series"][0]["terms"]
    assert term["poles"] == [{"offset": 1, "weight": 2}]
    assert term["powers"] == ["2^n"]
    assert term["sums"] == ["S(n;1;1)"]


@pytest.mark.parametrize("argv,code", [
    (["frobnicate", "1"], 1),
    (["canonicalize", "S(n;1;1"], 1),
    (["canonicalize", "S(n;1;1,-1)"], 1),
    (["canonicalize", "--order", "-1", "1"], 1),
    (["eval", "--precision", "3", "z2"], 1),
    (["eval", "--precision", "31", "z2"], 1),
    (["eval", "S(n;1;1)"], 1),
    (["eval", "--n", "2", "S(n;1;x)"], 1),
    (["convolve", "1/j"], 1),
    (["gamma-expand", "S(n;1;1)"], 1),
    (["solve-recurrence", "a0=1; I(0)=0"], 1),
    (["solve-recurrence", "a0=1; a1=1; G=0"], 1),
    (["zeta", "S(inf;1;1)"], 2),
    (["gamma-expand", "Gamma(1/2+eps)"], 2),
    (["pfq-expand", "F(2,1;1,1;1;1)"], 2),
    (["solve-recurrence", "a0=N^2+1; a1=1; G=0; I(0)=1"], 2),
    (["solve-recurrence", "a0=N-2; a1=1; G=0; I(0)=1"], 2),
    (["convolve", "j", "1/j"], 2),
])
def test_exit_codes(argv, code):
    got, out, err = run(argv)
    assert got == code
    assert err.startswith("error: ")


def test_json_error():
    code, out, _ = run(["--format", "json", "canonicalize", "S(n;1"])
    doc = json.loads(out)
    assert code == 1 and doc["error"]["exit_code"] == 1 and "line 1" in doc["error"]["message"]


def test_stdin_batch(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("S(n;1;1)*S(n;1;1)\n# comment\n\nz2*z3\n"))
    assert main(["canonicalize", "-"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["2*S(n;1,1;1,1) - S(n;2;1)", "z2*z3"]


def test_stdin_pairs(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1/j\n1/j\n1/j^2\n1/j\n"))
    assert main(["convolve", "-"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_warning_on_short_result():
    code, out, _ = run(["canonicalize", "--order", "3", "1 + eps + O(eps^2)"])
    assert code == 0 and "warning: result known only through eps^1" in out


def test_console_script_and_module():
    for cmd in (["nestsum"], [sys.executable, "-m", "nestsum"]):
        proc = subprocess.run(cmd + ["eval", "--n", "4", "S(n;1;1)"], capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "25/12\n"
    proc = subprocess.run([sys.executable, "-m", "nestsum", "canonicalize", "@"], capture_output=True, text=True)
    assert proc.returncode == 1 and "line 1, column 1" in proc.stderr
