import json
import math
from pathlib import Path

import pytest

import probcalc

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def test_parse_and_classify():
    assert probcalc.parse("P(A)>=P(B)") == "P(A) >= P(B)"
    assert probcalc.classify("P(A) * P(B) >= P(C)") == "quad"
    with pytest.raises(probcalc.ParseError):
        probcalc.parse("P(A >= P(B)")


def test_sat_unsat():
    assert probcalc.sat("P(A) > P(T)")["verdict"] == "unsat"


def test_sat_rational_witness():
    r = probcalc.sat("P(A) > P(B) && P(B) > P(F)")
    assert r["verdict"] == "sat"
    assert r["letters"] == ["A", "B"]


def test_intro_formula_is_numeric():
    text = (FIXTURES / "intro.pl").read_text()
    text = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    r = probcalc.sat(text)
    assert r["verdict"] == "sat-numeric"
    pb = sum(w for s, w in r["weights"].items() if "~B" not in s)
    assert math.isclose(pb, math.sqrt(0.5), abs_tol=1e-6)


def test_valid_and_countermodel():
    assert probcalc.valid("P(A | B) >= P(A)")["verdict"] == "valid"
    assert probcalc.valid("P(A) >= P(B)")["verdict"] == "countermodel"


def test_evaluate_model():
    model = json.dumps({"letters": ["A"], "weights": {"A": "2/3", "~A": "1/3"}})
    assert probcalc.evaluate(model, "P(A) > P(~A)")


def test_represent():
    assert not probcalc.represent((FIXTURES / "order5.json").read_text())["representable"]
    assert probcalc.represent((FIXTURES / "order_three.json").read_text())["representable"]


def test_hierarchy_rows_agree():
    rows = probcalc.hierarchy()
    assert rows and all(r["expected"] == r["distinguishable"] for r in rows)


def test_etr_and_generate():
    enc = probcalc.etr_to_ind("x1 * x2 = 1\n")
    assert enc["delta"] == ["d1", "d2"]
    assert probcalc.classify(enc["formula"]) in ("ind", "comp")
    assert probcalc.generate("add", 2, 3, seed=4) == probcalc.generate("add", 2, 3, seed=4)
