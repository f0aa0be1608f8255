import json

import numpy as np
import pytest

from ncfree.algebra import Algebra, LinMap
from ncfree.cli import main
from ncfree.jacobi import (
    params_to_json,
    scalar_jacobi,
    semicircular,
    word_to_json,
)
from ncfree.joint import colored_word, colored_word_to_json
from ncfree.partitions import BLUE, RED

ALG1 = Algebra("full", 1)
ONE1 = np.eye(1, dtype=complex)


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def semicircular_file(tmp_path, name="sc.json", scale=1.0):
    sc = semicircular(ALG1, LinMap.from_dense(ALG1, scale * ONE1))
    return write_json(tmp_path, name, params_to_json(sc))


def unit_word_file(tmp_path, n, name="w.json"):
    return write_json(tmp_path, name, word_to_json(ALG1, [ONE1] * (n + 1)))


# -- count ----------------------------------------------------------------------


def test_count_nc12(capsys):
    assert main(["count", "--family", "NC12", "--n", "4"]) == 0
    assert capsys.readouterr().out.strip() == "9"
    assert main(["count", "--family", "NC2", "--n", "6"]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_count_nc12_n0(capsys):
    assert main(["count", "--family", "NC12", "--n", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_count_tcnc2_all_methods(capsys):
    rc = main(["count", "--family", "TCNC2", "--n", "10", "--k", "4", "--l", "4", "--method", "all"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines == ["1308", "1308", "1308"]


def test_count_tcnc2_recursion_single(capsys):
    rc = main(["count", "--family", "TCNC2", "--n", "0", "--k", "2", "--l", "2", "--method", "recursion"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"


def test_count_usage_errors(capsys):
    assert main(["count", "--family", "TCNC2", "--n", "4"]) == 2
    assert main(["count", "--family", "TCNC2", "--n", "4", "--k", "2", "--l", "3", "--method", "recursion"]) == 2
    assert main(["count", "--family", "NC12", "--n", "4", "--method", "recursion"]) == 2


# -- table ----------------------------------------------------------------------


def test_table_output(capsys):
    assert main(["table", "--kmax", "6", "--nmax", "12"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].split("\t")[0] == "k"
    rows = {ln.split("\t")[0]: [int(x) for x in ln.split("\t")[1:]] for ln in lines[1:]}
    assert rows["2"] == [2, 6, 20, 70, 252, 924]
    assert rows["3"] == [2, 8, 38, 196, 1062, 5948]
    assert rows["6"] == [2, 8, 40, 224, 1344, 8446]
    assert rows["k>6"] == [2, 8, 40, 224, 1344, 8448]


def test_table_usage(capsys):
    assert main(["table", "--kmax", "1", "--nmax", "4"]) == 2
    assert main(["table", "--kmax", "3", "--nmax", "5"]) == 2


# -- moments / joint / convolve ---------------------------------------------------


def test_moments_with_oracle(tmp_path, capsys):
    pf = semicircular_file(tmp_path)
    wf = unit_word_file(tmp_path, 6)
    assert main(["moments", "--params", pf, "--word", wf, "--oracle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 6
    assert np.isclose(out["value"][0][0][0], 5.0)  # Catalan number c_3
    assert out["max_deviation"] < 1e-9


def test_moments_pretty_flag(tmp_path, capsys):
    pf = semicircular_file(tmp_path)
    wf = unit_word_file(tmp_path, 2)
    assert main(["moments", "--params", pf, "--word", wf, "--pretty"]) == 0
    assert "\n" in capsys.readouterr().out.strip()


def test_joint_with_oracle(tmp_path, capsys):
    sc = params_to_json(semicircular(ALG1, LinMap.from_dense(ALG1, ONE1)))
    mf = write_json(tmp_path, "model.json", {"params1": sc, "params2": sc})
    w = colored_word(ALG1, [ONE1] * 5, [BLUE, RED, BLUE, RED])
    wf = write_json(tmp_path, "cw.json", colored_word_to_json(w))
    assert main(["joint", "--model", mf, "--word", wf, "--oracle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 4
    # E[S1 S2 S1 S2] = 0 for free standard semicirculars
    assert abs(out["value"][0][0][0]) < 1e-12
    assert out["max_deviation"] < 1e-9


def test_convolve_semicirculars(tmp_path, capsys):
    p1 = semicircular_file(tmp_path, "a.json", scale=1.0)
    p2 = semicircular_file(tmp_path, "b.json", scale=2.0)
    assert main(["convolve", "--p1", p1, "--p2", p2, "--degree", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    vals = [m[0][0][0] for m in out["moments"]]
    # semicircular of variance 3: m_{2n} = 3^n Catalan(n)
    assert np.allclose(vals, [1, 0, 3, 0, 18, 0, 135])


def test_moments_degree_cap_exit(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NCFREE_DEGREE_CAP", "3")
    pf = semicircular_file(tmp_path)
    wf = unit_word_file(tmp_path, 5)
    assert main(["moments", "--params", pf, "--word", wf]) == 3


def test_bad_json_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    wf = unit_word_file(tmp_path, 2)
    assert main(["moments", "--params", str(bad), "--word", wf]) == 2
    missing = str(tmp_path / "missing.json")
    assert main(["moments", "--params", missing, "--word", wf]) == 2


def test_mismatched_algebras_usage(tmp_path, capsys):
    pf = semicircular_file(tmp_path)
    alg2 = Algebra("full", 2)
    w2 = write_json(tmp_path, "w2.json", word_to_json(alg2, [np.eye(2)] * 3))
    assert main(["moments", "--params", pf, "--word", w2]) == 2


# -- verify -----------------------------------------------------------------------


@pytest.mark.parametrize("suite", ["table", "counterexample", "two_by_two", "poisson_limit"])
def test_verify_suites(suite, capsys):
    assert main(["verify", "--suite", suite]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] is True


def test_verify_all(capsys):
    assert main(["verify", "--suite", "all", "--pretty"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] is True
    assert set(out["suites"]) == {"table", "counterexample", "two_by_two", "poisson_limit"}
