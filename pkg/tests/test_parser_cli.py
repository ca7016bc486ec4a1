"""Presentation files, reports, and the command line."""

import json
import subprocess
import sys

import pytest

from operadgb import builtins as B
from operadgb.parser import (
    ParseError,
    format_presentation,
    parse_presentation,
)


NCRB_TEXT = """\
# noncommutative Rota-Baxter
field Q
name ncrb
nonsymmetric
param lambda = 1
gen mul 2
gen P 1
order path_lex P > mul
rel mul(mul(1,2),3) - mul(1,mul(2,3))
rel P(mul(P(1),2)) + P(mul(1,P(2))) + lambda*P(mul(1,2)) - mul(P(1),P(2))
"""


def test_parse_matches_builtin():
    p = parse_presentation(NCRB_TEXT)
    q = B.ncrb()
    assert p.name == "ncrb" and p.nonsymmetric
    assert set(p.relations) == set(q.relations)
    assert p.order == q.order


@pytest.mark.parametrize("maker", [B.ncrb, B.rb, B.bv, B.odd_assoc, lambda: B.grav(4)])
def test_round_trip(maker):
    p = maker()
    text = format_presentation(p)
    assert parse_presentation(text) == p
    assert format_presentation(parse_presentation(text)) == text


def test_canonicalisation_sign_folded():
    text = """\
gen m 2 deg=1
rel m(m(2,3),1) - m(m(1,2),3)
"""
    p = parse_presentation(text)
    (rel,) = p.relations
    # m(m(2,3),1) canonicalises to m(1,m(2,3)) with a sign on odd vertices
    from operadgb.trees import format_tree

    monos = {format_tree(m): c for m, c in rel.terms.items()}
    assert set(monos) == {"m(1,m(2,3))", "m(m(1,2),3)"}


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("gen m 2\nrel m(1,1)", "leaf labels"),
        ("gen m 2\nrel m(1,3)", "leaf labels"),
        ("gen m 2\nrel m(1)", "arity 2"),
        ("gen m 2\nrel q(1,2)", "unknown generator"),
        ("gen m 2\nrel m(m(1,2),3) - m(1,2)", "different arities"),
        ("gen m 2\ngen m 3", "duplicate generator"),
        ("order bogus m", "order kind"),
        ("field R", "rational"),
        ("gen m 2 deg=1\nrel m(m(1,2),3) - m(m(1,2),3)", "zero"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises((ParseError, ValueError)) as err:
        parse_presentation(text)
    assert fragment.lower() in str(err.value).lower()


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "operadgb.cli", *args],
        capture_output=True,
        text=True,
        timeout=600,
    )
    return proc


def test_cli_gb_report(tmp_path):
    out = tmp_path / "r.json"
    proc = run_cli("gb", "--builtin", "ncrb", "--arity", "4", "--weight", "9",
                   "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["groebner"]["is_groebner"] is True
    assert doc["groebner"]["size"] == 2
    assert {e["leading"] for e in doc["groebner"]["elements"]} == {
        "mul(mul(1,2),3)",
        "P(mul(P(1),2))",
    }


def test_cli_hilbert_bv(tmp_path):
    out = tmp_path / "h.json"
    proc = run_cli("hilbert", "--builtin", "bv", "--arity", "3", "--weight", "8",
                   "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert {k: v["total"] for k, v in doc["hilbert"].items()} == {
        "1": 2, "2": 8, "3": 48
    }


def test_cli_homology_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ("homology", "--builtin", "ncrb", "--arity", "3", "--weight", "9")
    assert run_cli(*args, "--out", str(a)).returncode == 0
    assert run_cli(*args, "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["homology"]["dims"] == {
        "1,0": 1, "2,0": 1, "2,1": 1, "3,1": 1, "3,2": 1
    }


def test_cli_homology_monomial_mode(tmp_path):
    out = tmp_path / "m.json"
    proc = run_cli("homology", "--builtin", "ncrb", "--arity", "3", "--weight", "9",
                   "--monomial", "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["homology"]["dims"]["3,2"] == 1
    assert doc["homology"]["critical_cells"]["3"]


def test_cli_minmodel_dnu2(tmp_path):
    out = tmp_path / "mm.json"
    proc = run_cli("minmodel", "--builtin", "ncrb", "--arity", "2", "--weight", "5",
                   "--max-weight", "4", "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    key = "P(mul(P(1),2));1"
    got = {e["composite"]: e["coefficient"] for e in doc["differentials"][key]}
    assert got == {
        "P(mul(P(-),-))": "1",
        "P(mul(-,P(-)))": "1",
        "P(mul(-,-))": "1",
        "mul(P(-),P(-))": "-1",
    }


def test_cli_check_pbw(tmp_path):
    out = tmp_path / "p.json"
    proc = run_cli("check-pbw", "--builtin", "bv", "--arity", "4", "--weight", "8",
                   "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["verdict"] == "NotQuadraticGB"
    assert "witness" in doc


def test_cli_resolve(tmp_path):
    out = tmp_path / "res.json"
    proc = run_cli("resolve", "--builtin", "ncrb", "--arity", "3", "--weight", "9",
                   "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    gens3 = doc["generators"]["3"]
    pos = [g for g in gens3 if g["marks"]]
    assert len(pos) == 2


def test_cli_from_algebra():
    proc = run_cli("from-algebra", "--gens", "x", "--rel", "x*x", "--print-file")
    assert proc.returncode == 0
    p = parse_presentation(proc.stdout)
    assert len(p.generators) == 1 and len(p.relations) == 3


def test_cli_normal_lists(tmp_path):
    out = tmp_path / "n.json"
    proc = run_cli("normal", "--builtin", "free", "--arity", "3", "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert len(doc["normal"]["3"]) == 3


def test_cli_gb_file_input(tmp_path):
    f = tmp_path / "p.op"
    f.write_text(NCRB_TEXT, encoding="utf-8")
    out = tmp_path / "out.json"
    proc = run_cli("gb", "--file", str(f), "--arity", "4", "--weight", "9",
                   "--out", str(out))
    assert proc.returncode == 0
    assert json.loads(out.read_text())["groebner"]["size"] == 2
