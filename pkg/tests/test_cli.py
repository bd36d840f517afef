import json
from fractions import Fraction

import pytest

from ktverify.cli import dispatch, render
from ktverify.exact import Surd


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pmatrix_csv(capsys):
    code, out, _ = run(capsys, "pmatrix", "--d", "1", "--format", "csv")
    assert code == 0
    assert out == "c0,c1\n1,3\n1,-1\n"


def test_f43_example(capsys):
    code, out, _ = run(capsys, "f43", "--upper=-1,2,-1,2", "--lower=1,4,-2")
    assert (code, out) == (0, "1/2\n")


def test_w_desk(capsys):
    assert run(capsys, "w", "--spins", "1,1,2,2,2,1")[:2] == (0, "1/3\n")
    assert run(capsys, "w", "--spins", "1,1,1,1,0,0", "--half")[:2] == (0, "-1/2\n")
    assert run(capsys, "w", "--spins", "1,1,1,1,1,1")[:2] == (0, "0\n")


def test_w_surd_json(capsys):
    # W(0,0,1/2,1/2;0,1/2) = sqrt(2)/2
    code, out, _ = run(capsys, "w", "--spins", "0,0,1,1,0,1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"coeff": "1/2", "radicand": "2", "approx": 0.707106781187}


def test_exit_codes(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "pmatrix")[0] == 2
    assert run(capsys, "f43", "--upper=1,2,3,4", "--lower=1,1,1")[0] == 1
    assert run(capsys, "w", "--spins", "1,1")[0] == 1
    assert run(capsys, "system", "--d", "0")[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_verify_pass_and_json_idempotent(capsys):
    code, out, _ = run(capsys, "verify", "kt", "--d-max", "4", "--format", "json")
    assert code == 0
    s = out.rstrip("\n")
    assert json.dumps(json.loads(s), indent=2) == s
    obj = json.loads(s)
    assert obj["passed"] is True and obj["campaign"] == "kt"


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "leonard", "--d", "3"),
        ("verify", "orthogonality", "--d-max", "3"),
        ("verify", "intersection", "--d-max", "3", "--route", "racah"),
        ("verify", "wclosed", "--d-max", "4"),
        ("verify", "be", "--samples", "10"),
        ("verify", "whipple", "--samples", "10", "--seed", "3"),
    ],
)
def test_verify_campaigns(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "csv")
    assert code == 0
    head, row = out.strip().split("\n")
    assert head.startswith("campaign,params,checks_run")
    assert row.endswith(",True")


def test_ptensor_all(capsys):
    code, out, _ = run(capsys, "ptensor", "--d", "2", "--route", "all", "--format", "csv")
    assert code == 0
    assert "2,1,1,3/4" in out.splitlines()
    assert out.splitlines()[0] == "h,i,j,p"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bmatrix", "--d", "2", "--i", "2", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "c0,c1,c2\n0,0,5\n0,5/4,15/4\n1,9/4,7/4\n"


def test_render_examples():
    s = Surd(Fraction(1, 6), 6)
    obj = json.loads(render(s, "json"))
    assert obj == {"coeff": "1/6", "radicand": "6", "approx": 0.408248290464}
    assert render(Fraction(-1, 3), "csv") == "-1/3"
    assert render(Fraction(1, 3), "pretty") == "1/3"
    with pytest.raises(ValueError):
        render(Fraction(1), "xml")
