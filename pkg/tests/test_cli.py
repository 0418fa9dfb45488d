import json

import pytest

from ckdual.cli import main


@pytest.fixture
def fib_file(tmp_path):
    p = tmp_path / "fib.json"
    p.write_text('{"n": 2, "rows": [[1, 1], [1, 0]]}')
    return str(p)


@pytest.fixture
def o2_file(tmp_path):
    p = tmp_path / "o2.txt"
    p.write_text("1 1\n1 1\n")
    return str(p)


@pytest.fixture
def swap_file(tmp_path):
    p = tmp_path / "swap.json"
    p.write_text('{"n": 2, "rows": [[0, 1], [1, 0]]}')
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_fibonacci(capsys, fib_file):
    code, out, _err = run(capsys, "validate", "--matrix", fib_file)
    assert code == 0
    assert "valid: true" in out
    assert "aperiodic: true" in out
    assert "cantor: true" in out


def test_validate_swap_warns_but_exits_zero(capsys, swap_file):
    code, out, err = run(capsys, "validate", "--matrix", swap_file)
    assert code == 0
    assert "cantor: false" in out
    assert "warning" in err


def test_validate_malformed_exits_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "rows": [[1, 1], [1, 0]]} extra')
    code, _out, err = run(capsys, "validate", "--matrix", str(p))
    assert code == 2
    assert "error:" in err
    p2 = tmp_path / "zero.txt"
    p2.write_text("1 1\n0 0\n")
    code, _out, err = run(capsys, "validate", "--matrix", str(p2))
    assert code == 2
    assert "row 2" in err


def test_missing_file_exits_2(capsys):
    code, _out, err = run(capsys, "validate", "--matrix", "/nonexistent/m.json")
    assert code == 2
    assert "error:" in err


def test_words(capsys, fib_file):
    code, out, _err = run(capsys, "words", "--matrix", fib_file, "--length", "2")
    assert code == 0
    assert out.splitlines() == ["11", "12", "21"]
    code, out, _err = run(capsys, "words", "--matrix", fib_file, "--length", "0")
    assert out.splitlines() == ["ε"]


def test_ktheory_o2_trivial(capsys, o2_file):
    code, out, _err = run(capsys, "ktheory", "--matrix", o2_file)
    assert code == 0
    assert "K0(O_A)  = 0" in out
    assert "K1(O_A)  = 0" in out


def test_ktheory_o3_json(capsys, tmp_path):
    p = tmp_path / "o3.txt"
    p.write_text("1 1 1\n1 1 1\n1 1 1\n")
    code, out, _err = run(capsys, "ktheory", "--matrix", str(p), "--json", "--duality")
    assert code == 0
    obj = json.loads(out)
    assert obj["O_A"]["K0"] == {"free_rank": 0, "torsion": [2]}
    assert obj["O_A"]["K1"] == {"free_rank": 0, "torsion": []}
    assert obj["duality"]["presentation_match_K0_Khom1"] is True


def test_duality_command(capsys, fib_file):
    code, out, _err = run(capsys, "duality", "--matrix", fib_file)
    assert code == 0
    assert "abstract isomorphism of cokernels: true" in out


def test_fock_verify_exits(capsys, o2_file, fib_file):
    code, out, _err = run(capsys, "fock-verify", "--matrix", o2_file)
    assert code == 0
    assert "DEFECT" not in out
    code, out, _err = run(capsys, "fock-verify", "--matrix", fib_file)
    assert code == 1
    assert "iv(k=2,l=2): DEFECT" in out
    code, out, _err = run(capsys, "fock-verify", "--matrix", fib_file, "--relation", "i")
    assert code == 0
    assert all(line.startswith("i(") for line in out.splitlines())


def test_lemma_verify_exits(capsys, o2_file, fib_file):
    for which in ("W", "V", "toeplitz"):
        code, _out, _err = run(capsys, "lemma-verify", "--matrix", o2_file, "--which", which)
        assert code == 0
    code, out, _err = run(capsys, "lemma-verify", "--matrix", fib_file, "--which", "W")
    assert code == 1
    assert "vi(k=2): DEFECT" in out
    code, _out, _err = run(capsys, "lemma-verify", "--matrix", fib_file, "--which", "V")
    assert code == 0


def test_pairing(capsys, fib_file, o2_file):
    code, out, _err = run(capsys, "pairing", "--matrix", fib_file)
    assert code == 0
    assert "X Ω = 2 Ω" in out
    assert "sector 1: dim=2 ker=1 coker=1 index=0" in out
    code, out, _err = run(capsys, "pairing", "--matrix", o2_file, "--json")
    obj = json.loads(out)
    assert obj["holds"] is True
    assert all(s["dim_ker"] == 0 and s["dim_coker"] == 0 for s in obj["sectors"])


def test_json_outputs_roundtrip_and_deterministic(capsys, fib_file):
    for argv in (
        ["validate", "--matrix", fib_file, "--json"],
        ["ktheory", "--matrix", fib_file, "--json", "--duality"],
        ["fock-verify", "--matrix", fib_file, "--json"],
        ["lemma-verify", "--matrix", fib_file, "--which", "W", "--json"],
        ["pairing", "--matrix", fib_file, "--json"],
        ["words", "--matrix", fib_file, "--length", "3", "--json"],
    ):
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert out1 == out2  # byte-identical
        assert code1 == code2
        assert json.loads(out1) == json.loads(out2)


def test_max_length_validation(capsys, fib_file):
    with pytest.raises(SystemExit) as exc:
        main(["fock-verify", "--matrix", fib_file, "--max-length", "1"])
    assert exc.value.code == 2


def test_text_format_matrix_accepted(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("1 1\n1 0\n")
    code, out, _err = run(capsys, "validate", "--matrix", str(p))
    assert code == 0
    assert "valid: true" in out
