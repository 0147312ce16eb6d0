"""Smoke test for the elemsym_py extension module.

Build and copy the module first (see README.md), then run:

    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import elemsym_py as es


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print(f"ok  {what}")


def arithmetic():
    r = es.Ring.zmod(27)
    a, b = r.element(5), r.element(11)
    check((a * b).is_one(), "5 * 11 = 1 mod 27")
    check(a * a == r.element(25) - r.element(27), "zmod square")
    check((a * a.inverse()).is_one(), "unit inverse")
    check((r.element(3) ** 3).is_zero(), "3 is nilpotent mod 27")
    rx = es.Ring.poly(r, ["X"])
    x = rx.var("X")
    p = (x + rx.element(1)) ** 2
    check(p == x * x + rx.element(2) * x + rx.element(1), "polynomial square")
    check(rx.element('[[{"X":1},3]]') == rx.element(3) * x, "element from JSON")
    check(es.Ring.from_json(rx.to_json()) == rx, "ring JSON round trip")


def matrices():
    r = es.Ring.zmod(27)
    phi = es.Matrix.from_json(r, "[[0,1,2,3],[-1,0,4,5],[-2,-4,0,6],[-3,-5,-6,0]]")
    pf = phi.pfaffian()
    check(pf == r.element(1 * 6 - 2 * 5 + 3 * 4), "pfaffian of 4x4")
    check(pf * pf == phi.det(), "pf^2 = det")
    psi = es.Matrix.standard_form(r, 4)
    check(psi.is_alternating() and psi.pfaffian().is_one(), "standard form")


def words():
    r = es.Ring.zmod(27)
    ideal = es.Ideal(r, [r.element(3)])
    c = ideal.certify([r.element(2)])
    check(c.is_valid() and c.value == r.element(6), "certificate value")
    w = es.Word(r, 6)
    w.se_cert(1, 2, c)
    w.se(3, 1, r.element(4))
    m = w.evaluate()
    check(m.is_symplectic(), "symplectic word evaluates to a symplectic matrix")
    check((m @ w.inverse().evaluate()).is_identity(), "word inverse")
    back = es.Word.from_json(r, 6, w.to_json(), ideal)
    check(back.evaluate() == m, "word JSON round trip")
    check(not w.all_certified_in(ideal), "uncertified letter detected")


def decomposition():
    r = es.Ring.zmod(27)
    ideal = es.Ideal(r, [r.element(3)])
    g = es.Word(r, 6)
    g.se(1, 3, r.element(1))
    a = ideal.certify([r.element(1)])
    out, trace = es.decompose(g, 1, 2, a, a)
    lhs = es.Word(r, 6)
    lhs.se(1, 2, r.element(9))
    expected = g.evaluate() @ lhs.evaluate() @ g.inverse().evaluate()
    check(out.evaluate() == expected, "decomposition equals the conjugate")
    check(out.all_certified_in(ideal), "decomposition letters certified in I")
    check(len(trace) > 0, "decomposition trace")


def rewriting():
    r = es.Ring.zmod(27)
    ideal = es.Ideal(r, [r.element(3)])
    eps = es.Word(r, 3)
    eps.e_cert(3, 1, ideal.certify([r.element(1)]))
    rxy = es.Ring.poly(r, ["X"])
    a = ideal.extend(rxy).certify([rxy.var("X")])
    lhs, out, cases = es.rewrite("linear", eps, 1, 3, a)
    check(lhs.evaluate() == out.evaluate(), "linear rewrite preserves the conjugate")
    check(len(cases) > 0, "rewrite case trace")


def documents():
    doc = {"ring": {"kind": "zmod", "m": 27},
           "matrix": [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]}
    res = json.loads(es.run("pfaffian", json.dumps(doc)))
    check(res["pfaffian"] == 8 and res["det"] == 10 and res["verified"], "run pfaffian")
    report = json.loads(es.verify("relations", 20, 1))
    check(report["trials"] == 20 and report["failures"] == [], "relations suite")
    check("relations" in es.suites(), "suite listing")


def failures():
    bad = {"mode": "symplectic",
           "ring": {"kind": "poly", "base": {"kind": "zmod", "m": 27}, "vars": ["T"]},
           "ideal": [[[{"T": 1}, 1]]], "n": 3,
           "eps": [{"gen": "se", "i": 2, "j": 1, "param": [[{"T": 1}, 1]], "cert": [1]}],
           "i": 1, "j": 2, "aPoly": [[[{"X": 1}, 1]]]}
    try:
        es.run("rewrite", json.dumps(bad))
    except es.VerificationError as e:
        check("expected" in str(e), "verification failure raises VerificationError")
    else:
        raise AssertionError("expected VerificationError")
    try:
        es.Ring.zmod(0)
    except ValueError:
        check(True, "malformed input raises ValueError")
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for step in (arithmetic, matrices, words, decomposition, rewriting, documents, failures):
        step()
    print("all smoke checks passed")
