from __future__ import annotations

import io
import subprocess
import sys

import pytest

from quiversi import fixture_names, fixture_path
from quiversi.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run_cli


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fx(name: str) -> str:
    return str(fixture_path(name))


def test_twovertex():
    assert run("twovertex", "4", "4", "4", "--char", "0") == (EXIT_OK, "1167\n", "")
    assert run("twovertex", "4", "4", "4", "--char", "2") == (EXIT_OK, "2734\n", "")
    assert run("twovertex", "2", "2", "2") == (EXIT_OK, "char2 46\nnot2 46\n", "")
    code, out, _ = run("twovertex", "0", "0", "1", "--char", "2", "--list")
    assert code == EXIT_OK and out == "1\ndet z1\n"
    assert run("twovertex", "-1", "0", "0")[0] == EXIT_INPUT


def test_gens_and_count():
    assert run("count", fx("path3"), "--char", "2") == (EXIT_OK, "3\n", "")
    code, out, _ = run("gens", fx("two_loops"), "--char", "0")
    assert code == EXIT_OK
    assert out.splitlines() == ["tr a | mdeg {a:1}", "tr b | mdeg {b:1}", "tr a b | mdeg {a:1,b:1}",
                                "det a", "det b"]
    assert run("gens", fx("two_loops")) == run("gens", fx("two_loops"))
    assert run("count", fx("four_loops"), "--char", "2")[1] == "19\n"
    assert run("count", fx("four_loops"), "--char", "3")[1] == "18\n"


def test_poly():
    code, tr, _ = run("poly", fx("one_arrow"), "--path", "z1 z1*")
    _, det, _ = run("poly", fx("one_arrow"), "--det", "z1")
    assert code == EXIT_OK
    assert tr.strip() == det.strip().replace("1 * ", "2 * ")
    assert run("poly", fx("one_arrow"), "--path", "z1 z1*", "--char", "2")[1] == "0\n"
    assert run("poly", fx("one_arrow"), "--path", "z1")[0] == EXIT_INPUT
    assert run("poly", fx("one_arrow"), "--path", "q q*")[0] == EXIT_INPUT
    assert run("poly", fx("one_loop"), "--path", " ".join(["a"] * 13))[0] == EXIT_INPUT


def test_decomp():
    code, out, _ = run("decomp", fx("ex1"), "--path", "a2 a3 x2 x3 x4 x1 a1 b1 b2 c2 c3 y2 y1 c1")
    assert code == EXIT_OK
    assert sum(line.startswith("decomposition ") for line in out.splitlines()) == 2
    assert out.rstrip().endswith("admissible: true (decomposition 1)")
    _, out, _ = run("decomp", fx("four_loops"), "--path", "a b c d")
    assert "tree path: yes" in out and out.rstrip().endswith("admissible: false")
    assert run("decomp", fx("one_loop"), "--path", "a a")[0] == EXIT_INPUT


def test_verify():
    code, out, _ = run("verify", "--char", "2")
    assert code == EXIT_OK and "FAIL" not in out and "PASS cong-R1" in out
    code, out, _ = run("verify", fx("two_loops"), "--char", "0")
    assert code == EXIT_OK and all(line.startswith("PASS ") for line in out.splitlines())
    code, out, _ = run("verify", fx("one_loop"), "--suite", "minimality", "--max-deg", "4")
    assert code == EXIT_OK and "indecomposable" in out
    assert run("verify", "--suite", "spanning")[0] == EXIT_INPUT


def test_verify_exit_code_on_failure(monkeypatch):
    from quiversi import verify

    def failing(name, q, fs, max_deg):
        rep = verify.Report()
        rep.add(False, "forced", "check")
        return rep

    monkeypatch.setattr(verify, "run_suite", failing)
    code, out, _ = run("verify", fx("one_arrow"))
    assert code == EXIT_FAIL and out.startswith("FAIL forced")


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex u\narrow a u w\n")
    code, _, err = run("gens", str(bad))
    assert code == EXIT_INPUT and "error:" in err
    assert run("gens", str(tmp_path / "missing.quiver"))[0] == EXIT_INPUT
    assert run("gens", fx("one_loop"), "--char", "4")[0] == EXIT_INPUT
    assert run("frobnicate")[0] == EXIT_INPUT
    assert run()[0] == EXIT_INPUT
    big = tmp_path / "big.quiver"
    big.write_text("vertex v\n" + "".join(f"arrow a{i} v v\n" for i in range(15)))
    code, _, err = run("count", str(big))
    assert code == EXIT_INPUT and "cap" in err


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_parse(name):
    assert run("count", fx(name), "--char", "2", "--arrow-cap", "16")[0] == EXIT_OK


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quiversi", "twovertex", "1", "1", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "char2 6\nnot2 6\n"
