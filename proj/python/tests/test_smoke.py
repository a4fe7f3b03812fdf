import os
from pathlib import Path

import pytest

import ci0

CORPUS = Path(os.environ.get("CI0_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))


@pytest.fixture
def ewi():
    return ci0.Algebra(["x", "y", "z"], ["x^2", "y^2", "z^2"])


def test_invariants(ewi):
    assert ewi.dim == 8
    assert ewi.exponent == 4
    assert ewi.embedding_dim == 3
    assert ewi.hilbert == [1, 3, 3, 1]
    assert ewi.is_gorenstein
    assert "dim 8" in repr(ewi)


def test_socle(ewi):
    assert ewi.socle() == {"gens": ["x*y*z"]}
    assert ewi.matches("socle", None, {"power": 3})


def test_ci0(ewi):
    assert ewi.ci0_test(["x", "y"])["verdict"] is True
    assert ewi.ann_ci0_test("x")["verdict"] is True
    assert ewi.ann_ci0_test("x+y+z")["verdict"] is False


def test_nice_and_wiebe(ewi):
    diag = [["1", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]]
    res = ewi.is_x_nice(diag)
    assert res["verdict"] is True
    assert res["det"] == "y*z"
    assert ewi.matches("nice", {"matrix": diag}, {"ideal": ["x"]})
    assert ewi.is_wiebe([["x", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]])
    assert not ewi.is_wiebe([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])


def test_chains():
    eouf = ci0.Algebra(["x", "y"], ["x^3", "y^3"])
    chain = eouf.chain_from_socle(["x", "x", "y", "y"])
    assert chain["length"] == 4
    assert all(chain["strict"])
    probe = eouf.maxchain()
    assert probe["best_length"] == 4


def test_profile_and_realize():
    eiar = ci0.Algebra.from_file(CORPUS / "rings" / "eiar.json")
    assert eiar.profile("y")["verdict"] is True
    assert eiar.realize("y")["verdict"] is True


def test_decompose_over_finite_fields():
    a5 = ci0.Algebra(["x", "y"], ["x^2", "y^2"], field="GF(5)")
    a7 = ci0.Algebra(["x", "y"], ["x^2", "y^2"], field="GF(7)")
    psi = [["x", "-y"], ["y", "x+y"]]
    assert a5.decompose(matrix=psi)["status"] == "indecomposable_certified"
    assert a7.decompose(matrix=psi)["status"] == "decomposed"


def test_errors(ewi):
    with pytest.raises(ci0.InputError):
        ewi.run("frobnicate", {})
    with pytest.raises(ci0.Error):
        ewi.run("chain_triangular", {"z": "vars", "matrix": [["1", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]]})
    with pytest.raises(ci0.Error):
        ci0.Algebra(["x"], ["x^2"], field="GF(6)")
    assert "ci0" in ci0.operations()


def test_suite():
    report = ci0.run_suite(CORPUS / "scenarios", threads=2)
    assert report["failed"] == 0
    assert report["passed"] > 90
