from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shapkit.cli import RunConfig, main, parse_config
from shapkit.liealg import table_for
from shapkit.rootdata import parse_algebra, parse_root
from shapkit.shap import construct
from shapkit.uea import from_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_construct_gl21_text():
    code, text = run("construct", "--algebra", "gl(2|1)", "--gamma", "e1-d1", "--m", "1")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0].startswith("# gl(2|1)")
    assert lines[1:] == ["(1) e[-(e1-e2)] e[-(e2-d1)]", " + (-h_e2 - h_d1) e[-(e1-d1)]"]


def test_construct_sl2_power():
    code, text = run("construct", "--algebra", "sl(2)", "--gamma", "a1", "--m", "3")
    assert code == 0 and text.strip().splitlines()[-1] == "(1) e[-(e1-e2)]^3"


def test_construct_json_roundtrip_exact():
    code, text = run("construct", "--algebra", "osp(2,4)", "--gamma", "b+2a1+a2", "--order", "cosp",
                     "--format", "json")
    assert code == 0
    doc = json.loads(text)
    rs = parse_algebra("osp(2,4)")
    t = table_for(rs)
    s = construct(rs, parse_root(rs, "b+2a1+a2"), 1, order="cosp", table=t)
    back = from_json(t, doc["element"])
    assert back.pbw.order == s.order and back == s.element


def test_construct_at_weight():
    code, text = run("construct", "--algebra", "gl(2|1)", "--gamma", "e1-d1", "--lam=0,0,-1",
                     "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["lambda"] == ["0", "0", "-1"]
    # coefficient -(h_e2 + h_d1) = 1 at this weight
    coeffs = {tuple(sorted(term["pi"])): term["coeff"]["monomials"] for term in doc["element"]["terms"]}
    assert coeffs[("e1-d1",)] == [{"exps": {}, "num": 1, "den": 1}]


def test_domain_errors_exit_2(capsys):
    assert run("construct", "--algebra", "gl(2|1)", "--gamma", "e1-d1", "--m", "2")[0] == 2
    assert run("construct", "--algebra", "gl(2|1)", "--gamma", "e1-d1", "--lam=1,1,1")[0] == 2
    assert run("construct", "--algebra", "nonsense(3)", "--gamma", "e1")[0] == 2
    assert run("construct", "--algebra", "gl(2|1)")[0] == 2
    assert run("example", "bogus")[0] == 2
    assert run("verify", "--suite", "nope")[0] == 2
    assert "error" in capsys.readouterr().err


def test_example_walkthroughs():
    for name in ("osp24", "osp24-opposite"):
        code, text = run("example", name)
        assert code == 0
        assert text.count("construction matches: yes") == 3
    code, text = run("example", "osp24", "--format", "json")
    doc = json.loads(text)
    assert doc["ok"] and [st["root"] for st in doc["stages"]] == ["b+a1", "b+a1+a2", "b+2a1+a2"]
    code, text = run("example", "gl21")
    assert code == 0 and "theta for e1-d1" in text


def test_typea_det_agrees():
    code, text = run("typea-det", "--algebra", "gl(2|2)", "--gamma", "e1-d2", "--lam=-1,1,-1,1",
                     "--variant", "thtpa")
    assert code == 0 and text.strip().endswith("agrees with construct: True")


def test_verify_zprod_gl22_passes_and_is_deterministic():
    argv = ["verify", "--suite", "zprod", "--algebra", "gl(2|2)", "--format", "json"]
    code, a = run(*argv)
    _, b = run(*argv)
    assert code == 0 and a == b
    doc = json.loads(a)
    assert doc["ok"] and len(doc["results"]) == 4


def test_verify_threads_do_not_change_output(monkeypatch):
    argv = ["verify", "--suite", "uniqueness", "--format", "json"]
    _, serial = run(*argv)
    monkeypatch.setenv("SHAPKIT_THREADS", "2")
    _, threaded = run(*argv)
    assert serial == threaded


def test_verify_text_lines():
    code, text = run("verify", "--suite", "borel", "--samples", "3")
    lines = text.strip().splitlines()
    assert code == 0 and all(line.startswith("PASS") for line in lines)
    assert lines[-1] == "PASS  borel: 4/4 checks"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "shapkit", "example", "gl21", "--format", "json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["gamma"] == "e1-d1"


configs = st.builds(
    RunConfig,
    command=st.sampled_from(["construct", "verify", "typea-det"]),
    algebra=st.sampled_from([None, "gl(2|1)", "osp(2,4)", "sp(6)"]),
    gamma=st.sampled_from([None, "e1-d1", "b+2a1+a2"]),
    m=st.integers(1, 3),
    order=st.sampled_from(["distinguished", "cosp", "odd-first"]),
    route=st.sampled_from(["symbolic", "evaluated"]),
    samples=st.one_of(st.none(), st.integers(1, 30)),
    seed=st.integers(0, 99),
    format=st.sampled_from(["text", "json"]),
    suite=st.sampled_from(["all", "osp24", "zprod"]),
    lam=st.sampled_from([None, "1,2,3", "-1/2,0,4"]),
    variant=st.sampled_from(["shtpa", "shtpb", "thtpa"]),
)


@given(configs)
def test_config_roundtrip(cfg):
    assert parse_config(cfg.to_argv()) == cfg


def test_config_defaults():
    cfg = parse_config(["verify"])
    assert (cfg.m, cfg.order, cfg.route, cfg.samples, cfg.seed, cfg.format, cfg.suite) == \
        (1, "distinguished", "symbolic", None, 0, "text", "all")
    with pytest.raises(SystemExit):
        parse_config(["construct", "--format", "xml"])
