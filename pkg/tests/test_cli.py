import json

import pytest

from einstab.cli import EXIT_MISMATCH, EXIT_NOT_EINSTEIN, EXIT_OK, EXIT_USAGE, main, parse_metric
from einstab.tables import TableReport, Row
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spaces_list_and_show(capsys):
    code, out, _ = run(capsys, "spaces", "list")
    assert code == EXIT_OK and len(out.strip().splitlines()) == 17
    code, out, _ = run(capsys, "spaces", "show", "W2:1,1,2", "--format", "json")
    assert code == EXIT_OK and sorted(json.loads(out)["dims"]) == [2, 4, 4]
    code, _, err = run(capsys, "spaces", "show", "nosuch")
    assert code == EXIT_USAGE and "error" in err


def test_parse_metric_keeps_rationals_exact():
    assert parse_metric("1/2,1,3").x == (Fraction(1, 2), 1, 3)
    assert isinstance(parse_metric("0.5,1,1").x[0], float)


def test_curvature_json(capsys):
    code, out, _ = run(capsys, "curvature", "--space", "W2:1,1,1", "--metric", "1,1,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["einstein_residual"] == 0.0
    assert len(doc["ricci"]) == 3


def test_classify_stable_exceptional(capsys):
    code, out, _ = run(capsys, "classify", "--space", "W13", "--metric", "1,1,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["kind"] == "GStable" and doc["coindex"] == 0
    assert doc["two_rho_exact"] == "11/15"
    assert doc["lambda_p"] == pytest.approx(0.8)


def test_classify_kahler_einstein_saddle(capsys):
    code, out, _ = run(capsys, "classify", "--space", "W2:1,1,1", "--metric", "2,1,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and (doc["kind"], doc["coindex"]) == ("Saddle", 1)
    assert doc["ricci_locally_invertible"] is False


def test_classify_rejects_non_einstein(capsys):
    code, _, err = run(capsys, "classify", "--space", "W2:1,1,1", "--metric", "1,1,3")
    assert code == EXIT_NOT_EINSTEIN and "not an Einstein metric" in err


def test_classify_wrong_length_is_usage_error(capsys):
    code, _, _ = run(capsys, "classify", "--space", "W2:1,1,1", "--metric", "1,1")
    assert code == EXIT_USAGE


def test_tolerance_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ESW_TOL", "1e-3")
    code, out, _ = run(capsys, "classify", "--space", "W13", "--metric", "1,1,1", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["tolerance"] == pytest.approx(1e-3)


@pytest.mark.parametrize("space,count", [("W5:l=5", 4), ("W12", 2)])
def test_einstein_counts(capsys, space, count):
    code, out, _ = run(capsys, "einstein", "--space", space, "--format", "json")
    sols = [s for s in json.loads(out)["solutions"] if s["exists"]]
    assert code == EXIT_OK and len(sols) == count
    assert all(s["residual"] <= 1e-10 for s in sols)


def test_einstein_numeric(capsys):
    code, out, _ = run(capsys, "einstein", "--space", "W8", "--method", "numeric")
    assert code == EXIT_OK and "Einstein metrics found: 2" in out


def test_reproduce_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "reproduce", "--table", "W4_2")
    assert code == EXIT_OK and out.strip().endswith("PASS")
    code, _, _ = run(capsys, "reproduce", "--table", "FS3")
    assert code == EXIT_USAGE
    bad = TableReport("W2", (Row("x", 1, 2, 1.0, 0.0, False, "published"),))
    monkeypatch.setattr("einstab.cli.reproduce", lambda *a: bad)
    code, out, _ = run(capsys, "reproduce", "--table", "W2", "--format", "json")
    assert code == EXIT_MISMATCH and json.loads(out)["passed"] is False


def test_flow_writes_csv(capsys, tmp_path):
    path = tmp_path / "flow.csv"
    code, out, _ = run(capsys, "flow", "--space", "W11", "--x0", "1.05,0.97,1.0",
                       "--t-max", "200", "--dt", "0.01", "--out", str(path))
    assert code == EXIT_OK and "ConvergedToEinstein" in out
    assert path.read_text().splitlines()[0] == "t,x1,x2,x3,scalar"


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--space", "W13"])
    assert exc.value.code == EXIT_USAGE
