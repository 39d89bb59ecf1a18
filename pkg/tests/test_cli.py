import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from raagdyn.cli import run_command

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def report(text):
    body = text.split("#BEGIN-REPORT\n", 1)[1].split("#END-REPORT", 1)[0]
    return json.loads(body)


def test_check_example():
    code, out, _ = run("check", SPECS / "gamma_p.json")
    assert code == 0
    v = report(out)["verification"]
    assert v["square"]["square"] is True
    assert v["pure"]["support_ok"] == {"a": True, "b": True, "c": True}
    assert v["pure"]["cyclically_reduced_ok"]["a"] is False


def test_reduce():
    code, out, _ = run("reduce", SPECS / "gamma_p.json", "--word", "c a b c^-1 a^-1")
    r = report(out)
    assert code == 0
    assert r["reduced"] == "a b a^-1" and r["core"] == "b" and r["conjugator"] == "a"


def test_reduce_bad_word():
    code, _, err = run("reduce", SPECS / "gamma_p.json", "--word", "a^0")
    assert code == 2 and "zero exponent" in err


def test_diagram_with_dot(tmp_path):
    dot = tmp_path / "d.dot"
    code, out, _ = run("diagram", SPECS / "gamma_p.json", "--dot", dot)
    assert code == 0
    d = report(out)["diagram"]
    assert d["arcs"] == [["a", "b"], ["b", "a"]]
    assert d["cycles"][0]["kind"] == "empty"
    assert dot.read_text().startswith("digraph")


def test_diagram_violation(tmp_path):
    spec = {"graph": {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]},
            "automorphism": {"images": {"a": "a b", "b": "b", "c": "c"}}}
    p = tmp_path / "ok.json"
    p.write_text(json.dumps(spec))
    assert run("diagram", p)[0] == 0
    # a, b -> c and c -> a b: one cycle class {a, b, c} holding the edge a-b
    spec = {"graph": {"vertices": ["a", "b", "c"], "edges": [["a", "b"]]},
            "automorphism": {"images": {"a": "c", "b": "c", "c": "a b"}}}
    p.write_text(json.dumps(spec))
    code, out, _ = run("diagram", p)
    assert code == 3
    assert report(out)["diagram"]["cycles"][0]["kind"] == "violation"
    assert run("analyze", p, "--kmax", 5)[0] == 3


def test_analyze_rho():
    code, out, _ = run("analyze", SPECS / "e3_rho.json", "--kmax", 20)
    r = report(out)
    assert code == 0
    assert r["growth"]["classification"]["kind"] == "polynomial-by-theorem"
    assert r["growth"]["classification"]["degree_bound"] == 2


def test_analyze_psi_pure_power():
    code, out, _ = run("analyze", SPECS / "f2_sigma.json", "--kmax", 20, "--pure-power")
    r = report(out)
    assert code == 0 and r["pure_power"] == 3
    assert r["invariant_subgraph"]["kind"] == "empty-core"


def test_dilatation_table():
    code, out, _ = run("dilatation", SPECS / "f2_sigma.json", "--kmax", 10)
    r = report(out)
    assert code == 0
    assert r["generators"]["a"]["lengths"][-1] == 144


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["dilatation", "x.json"],
    ["analyze", "x.json", "--kmax", "0"],
    ["analyze", "x.json", "--kmax", "ten"],
    ["reduce", "x.json"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 1


def test_threads_env_usage_error(monkeypatch):
    monkeypatch.setenv("RAAGDYN_THREADS", "none")
    assert run("check", SPECS / "gamma_p.json")[0] == 1


def test_parse_errors(tmp_path):
    assert run("check", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"graph": ')
    code, _, err = run("check", bad)
    assert code == 2 and "line 1" in err
    bad.write_text(json.dumps({"graph": {"vertices": ["a", "b"], "edges": [["a", "b"]]},
                               "automorphism": {"images": {"a": "a", "b": "a"},
                                                "inverse_images": {"a": "a", "b": "b"}}}))
    assert run("check", bad)[0] == 2


def test_order_cap_is_invalid(tmp_path):
    # identity over a singular mod-2 matrix cannot arise from a verified map,
    # so use a homomorphism with a singular abelianisation
    p = tmp_path / "h.json"
    p.write_text(json.dumps({"graph": {"vertices": ["a", "b"]},
                             "automorphism": {"images": {"a": "a b", "b": "a b"}}}))
    assert run("analyze", p, "--pure-power")[0] == 2


def test_determinism(tmp_path):
    outs = []
    for i in range(2):
        dot = tmp_path / f"{i}.dot"
        code, out, _ = run("analyze", SPECS / "t3_chi.json", "--kmax", 20)
        run("diagram", SPECS / "t3_chi.json", "--dot", dot)
        outs.append((out, dot.read_bytes()))
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "raagdyn", "check", str(SPECS / "z2_tau.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "#BEGIN-REPORT" in proc.stdout
