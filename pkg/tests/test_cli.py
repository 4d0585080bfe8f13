import json
import subprocess
import sys
from pathlib import Path

import pytest

from mvred.cli import main

CORPUS = Path(__file__).resolve().parents[1] / "src" / "mvred" / "corpus"
PARA = str(CORPUS / "paraconsistent.mv")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_model_text_and_json(capsys):
    code, out, _ = run(capsys, "model", PARA)
    assert code == 0 and "contra(a) = top" in out.splitlines()
    code, out, _ = run(capsys, "model", PARA, "--json")
    assert json.loads(out)["p(a)"] == "top"


def test_transform_unary(capsys):
    code, out, _ = run(capsys, "transform", PARA, "--mode", "unary")
    assert code == 0
    assert "[top]contra(a) :- [top]p(a), [top]p(a)." in out.splitlines()
    code, out, _ = run(capsys, "transform", PARA, "--mode", "unary", "--json")
    assert isinstance(json.loads(out), list)


def test_transform_flatten(capsys):
    code, out, _ = run(capsys, "transform", PARA, "--mode", "flatten")
    assert code == 0 and "p_F(a, top)." in out.splitlines()
    code, out, _ = run(capsys, "transform", PARA, "--mode", "flatten", "--json")
    doc = json.loads(out)
    assert set(doc) == {"clauses", "relations"}


@pytest.mark.parametrize("formula,world,expected", [
    ("[top] p(a)", "top", "true"),
    ("[t] p(a)", "top", "false"),
    ("[top]p(a) and [t]believed(a)", None, "true"),
    ("dia p_F(a, top)", "f", "true"),
    ("dia_d denied(a)", None, "false"),
    ("box_gamma (believed(a) <- @t)", "0", "true"),
])
def test_check(capsys, formula, world, expected):
    argv = ["check", PARA, "--formula", formula]
    if world is not None:
        argv += ["--world", world]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected + "\n"


def test_check_designated(capsys):
    code, out, _ = run(capsys, "check", PARA, "--formula", "dia_d p(a)",
                       "--designated", "t,top")
    assert out == "true\n"
    code, out, _ = run(capsys, "check", PARA, "--formula", "[f]denied(a)", "--json")
    doc = json.loads(out)
    assert doc["value"] is True and doc["model"] == "unary"


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", PARA, "--suite", "matrix")
    assert code == 0 and json.loads(out)[0]["pass"]
    code, out, _ = run(capsys, "verify", PARA, "--suite", "matrix", "--designated-only",
                       "--designated", "top")
    doc = json.loads(out)
    assert code == 1 and not doc[0]["pass"] and "witness" in doc[0]


def test_verify_invariance_verbatim_fails(capsys):
    code, out, _ = run(capsys, "verify", str(CORPUS / "belnap_disjunctive.mv"),
                       "--suite", "invariance", "--body-mode", "verbatim")
    assert code == 1 and "counterexample" in json.loads(out)[0]


def test_usage_errors(capsys, tmp_path):
    bad = tmp_path / "bad.mv"
    bad.write_text("lattice belnap4.\np(a) <- @maybe.\n")
    code, _, err = run(capsys, "model", str(bad))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "model", str(tmp_path / "missing.mv"))
    assert code == 2
    code, _, _ = run(capsys, "check", PARA, "--formula", "[t]p(a)", "--world", "nowhere")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_budget_flag_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "transform", PARA, "--clause-budget", "3")
    assert code == 3 and "budget" in err
    monkeypatch.setenv("MVRED_BUDGET", "3")
    code, _, _ = run(capsys, "transform", PARA)
    assert code == 3
    code, _, _ = run(capsys, "verify", PARA, "--suite", "suszko")
    assert code == 3
    # the flag wins over the environment
    code, _, _ = run(capsys, "transform", PARA, "--clause-budget", "1000")
    assert code == 0
    monkeypatch.setenv("MVRED_BUDGET", "lots")
    code, _, _ = run(capsys, "transform", PARA)
    assert code == 2


def test_lattice_override(capsys, tmp_path):
    f = tmp_path / "p.mv"
    f.write_text("lattice belnap4.\np(a) <- @1.\n")
    code, out, _ = run(capsys, "model", str(f), "--lattice", "fuzzy:3")
    assert code == 0 and out == "p(a) = 1\n"


def test_verify_directory_all_suites_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "mvred", "verify", str(CORPUS / "kleene.mv"),
         str(CORPUS / "fuzzy_basic.mv"), "--suite", "all"],
        capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    checks = {d["check"] for d in doc}
    assert checks == {"invariance", "twovalued", "flatten", "corollary", "suszko", "matrix",
                      "lattice-axioms"}
    assert all(d["pass"] for d in doc)
