import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from fermat_galois.cli import main
from fermat_galois.cohomology import D2Instance

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "cli-output.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    record = json.loads(out)
    jsonschema.validate(record, SCHEMA)
    return code, record


def test_bq_examples(capsys):
    assert run(capsys, "bq", "--p", "3", "--q", "1,0")[1].strip() == "1 + xy + 2xy(x+y)"
    assert run(capsys, "bq", "--p", "5", "--q", "0,0,0")[1].strip() == "1"
    code, out, _ = run(capsys, "bq", "--p", "5", "--q", "0,1,0", "--style", "expanded", "--cross-check")
    assert code == 0 and out.startswith("2x^4y^4 + 2x^4y^3") and out.strip().endswith("+ 1")


def test_bq_json(capsys):
    code, rec = run_json(capsys, "bq", "--p", "5", "--q", "0,0,1")
    assert code == 0 and rec["alpha"] == 4 and rec["c_vector"] == [0, 0, 1]
    assert np.array(rec["B"]).shape == (5, 5)
    assert not np.array(rec["norm"]).any()
    _, rec = run_json(capsys, "bq", "--p", "3", "--q", "1,0")
    assert rec["alpha"] is None


def test_gamma_and_norm(capsys):
    code, out, _ = run(capsys, "gamma", "--p", "3", "--q", "1,0")
    assert code == 0 and "gamma(y) = Fy + (F + 1)y^2" in out
    _, rec = run_json(capsys, "gamma", "--p", "3", "--q", "0,1")
    assert rec["extended_c"] == [0, 1, 1] and rec["c"] == 2
    code, out, _ = run(capsys, "norm", "--p", "3", "--q", "1,0")
    assert code == 0 and out.splitlines()[0] == "N_q = x^2y^2"
    _, rec = run_json(capsys, "norm", "--p", "5", "--q", "1,0,0")
    assert rec["tilde_gamma_ideal_degree"] == 3


def test_invariants(capsys):
    code, rec = run_json(capsys, "invariants", "--p", "5")
    assert code == 0 and rec["dim_MQ"] == 11 and rec["dim_MQ_cap_H1U"] == 9
    code, rec = run_json(capsys, "invariants", "--p", "7", "--probe-question")
    assert rec["kernel_probe"]["kernel_dims"] == [19] * 4
    assert "kernels equal" in run(capsys, "invariants", "--p", "3", "--probe-question")[1]


def test_cohomology(capsys):
    code, rec = run_json(capsys, "cohomology", "--p", "5")
    assert code == 0 and rec["dim_H1"] == 33 and rec["rho"] == 6


def test_d2check(capsys, tmp_path):
    p = 5
    m = np.random.default_rng(0).integers(0, p, (3, p * p))
    inst = D2Instance.from_certificate(p, m)
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"u": inst.u.tolist(), "w": inst.w.tolist()}))
    code, rec = run_json(capsys, "d2check", "--p", "5", "--instance", str(path))
    assert code == 0 and rec["in_kernel"]
    cert = np.array(rec["certificate"])
    back = D2Instance.from_certificate(p, cert)
    assert np.array_equal(back.w, inst.w) and np.array_equal(back.u, inst.u)
    bad = inst.to_dict()
    bad["u"][0][0] = (bad["u"][0][0] + 1) % p
    path.write_text(json.dumps(bad))
    code, rec = run_json(capsys, "d2check", "--p", "5", "--instance", str(path),
                         "--method", "vanishing-norm")
    assert code == 0 and not rec["in_kernel"]


def test_d2check_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "d2check", "--p", "5", "--instance", str(path))[0] == 2
    assert run(capsys, "d2check", "--p", "5", "--instance", str(tmp_path / "missing.json"))[0] == 2
    path.write_text(json.dumps(D2Instance.zero(3).to_dict()))
    code, _, err = run(capsys, "d2check", "--p", "5", "--instance", str(path))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "d2check", "--p", "3", "--instance", str(path), "--method", "vanishing-norm")
    assert code == 2


def test_zeta_and_jacobi(capsys):
    code, rec = run_json(capsys, "zeta", "--p", "3", "--ell", "7", "--m-max", "2")
    assert code == 0 and rec["agrees"] and [c["N"] for c in rec["counts"]] == [9, 63]
    code, rec = run_json(capsys, "jacobi", "--p", "3", "--ell", "7")
    assert code == 0 and set(rec["jacobi_sums"]) == {"1,1", "2,2"}
    assert run(capsys, "zeta", "--p", "3", "--ell", "7", "--m-max", "3", "--cap", "10")[0] == 2
    assert run(capsys, "zeta", "--p", "5", "--ell", "7")[0] == 2
    assert run(capsys, "jacobi", "--p", "5", "--ell", "7")[0] == 2


@pytest.mark.parametrize("argv", [
    ["bq", "--p", "4", "--q", "1,0"],
    ["bq", "--p", "3"],
    ["nonsense"],
    ["zeta", "--p", "3", "--ell", "7", "--f", "0"],
])
def test_argparse_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_cvector(capsys):
    code, _, err = run(capsys, "bq", "--p", "5", "--q", "1,2")
    assert code == 2 and "error" in err


def test_verify_paper(capsys):
    code, rec = run_json(capsys, "verify-paper", "--p", "5")
    assert code == 0 and rec["passed"]
    names = {c["check"] for c in rec["checks"]}
    assert {"b-unit-table", "norm-vanishing", "h1-dimension"} <= names
    code, out, _ = run(capsys, "verify-paper", "--p", "3", "--only", "b-unit-table", "norm-vanishing")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3 and lines[-1].split() == ["overall", "PASS"]
    assert run(capsys, "verify-paper", "--p", "3", "--only", "bogus")[0] == 2


def test_deterministic_output(capsys):
    argv = ["verify-paper", "--p", "3", "--seed", "7", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "fermat_galois", "bq", "--p", "3", "--q", "0,1"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "1 + 2xy(x+y) + x^2y^2"
