import os

import pytest

import hfkpy

CORPUS = os.environ.get("HFK_CORPUS_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "corpus"))

TREFOIL = "max 1\nmax 1\no 2\no 2\no 2\nmin 1\n"


def test_trefoil_invariants():
    r = hfkpy.compute(TREFOIL, name="trefoil")
    assert r["knot"] == "trefoil"
    assert r["alexander"] == {"-1": 1, "0": -1, "1": 1}
    assert (r["tau"], r["nu"]) == (1, 1)
    assert sum(h["dim"] for h in r["hfk_hat"]) == 3


def test_integer_ring_matches_f2_on_figure_eight():
    a = hfkpy.compute_file(os.path.join(CORPUS, "figure_eight.knot"))
    b = hfkpy.compute_file(os.path.join(CORPUS, "figure_eight.knot"), ring="z")
    assert a["alexander"] == b["alexander"]
    assert b["nu_p"]["2"] == a["nu"]
    assert a["tau"] == 0


def test_braid_closure_is_the_trefoil():
    text = hfkpy.braid_closure(2, [2, 2, 2])
    assert hfkpy.compute(text)["hfk_hat"] == hfkpy.compute(TREFOIL)["hfk_hat"]


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError, match="line 1"):
        hfkpy.compute("max one\n")
    with pytest.raises(ValueError):
        hfkpy.compute("max 1\nmax 1\nmin 1\n")
