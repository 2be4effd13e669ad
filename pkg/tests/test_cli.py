import json

import pytest

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_info(capsys):
    code, out, _ = run(capsys, "build", "sym(4)", "--info")
    assert code == 0
    assert "order: 24" in out
    assert "center: 1" in out
    assert "solvable: true" in out and "nilpotent: false" in out


def test_set_measure(capsys):
    code, out, _ = run(capsys, "set", "wreathY(2,3,1)", "--family", "pgroup:2", "--element", "d^2")
    assert code == 0
    assert "size: 4" in out and "measure: 1/9" in out


def test_set_lambda(capsys):
    code, out, _ = run(capsys, "set", "sym(3)", "--lambda", "2", "--element", "g1")
    assert code == 0
    assert "size: 2" in out


def test_struct(capsys):
    code, out, _ = run(capsys, "struct", "sym(4)", "--compute", "chief")
    assert code == 0 and "length: 3" in out
    code, out, _ = run(capsys, "struct", "sl2(3)", "--compute", "op:2")
    assert code == 0 and "op:2: 8" in out
    code, _, err = run(capsys, "struct", "sym(4)", "--compute", "sylow:x")
    assert code == 2 and "unknown computation" in err


def test_tau(capsys):
    code, out, _ = run(capsys, "tau", "alt(5)", "--element", "g0")
    assert code == 0 and "tau_nonab: 1" in out


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "slprod", "--family", "oddsolvable", "--depth", "1", "--epsilon", "1/2")
    assert code == 0
    assert "lo: 9/16" in out and "hi: 3/4" in out and "verdict: yes" in out


def test_usage_errors(capsys):
    assert run(capsys, "build", "sym(")[0] == 2
    assert run(capsys, "verify", "nonexistent")[0] == 2
    assert run(capsys, "measure", "slprod", "--family", "abelian", "--depth", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["set", "sym(3)", "--element", "g0"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("struct", "sym(3)", "--compute", "op:1"),
        ("struct", "sym(3)", "--compute", "op:4"),
        ("struct", "sym(3)", "--compute", "sylow:0"),
        ("set", "sym(3)", "--lambda", "1", "--element", "g0"),
        ("set", "sym(3)", "--lambda", "0", "--element", "g0"),
    ],
)
def test_non_prime_arguments_are_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "prime" in err


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "--cap", "100", "build", "sym(6)")
    assert code == 3 and "cap" in err


def test_verify_writes_json(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "SL4-odd", "--json", str(path))
    assert code == 0 and "PASS" in out
    (entry,) = json.loads(path.read_text())
    assert entry["id"] == "SL4-odd" and entry["computed"] == "3/4"
    assert list(entry) == ["id", "status", "computed", "expected", "runtime_ms", "paper_anchor"]
    assert entry["paper_anchor"]


def test_verify_skipped_exit_code(capsys):
    code, out, _ = run(capsys, "--cap", "100", "verify", "SL8-odd")
    assert code == 3 and "SKIPPED" in out
