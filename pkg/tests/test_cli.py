import csv
import io
import json

import pytest

from sincpow.cli import run
from sincpow.exact_core import exact_sinc_integral
from sincpow.report import parse_frac


def invoke(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


def test_exact():
    code, out = invoke(["exact", "4", "--digits", "30"])
    data = json.loads(out)
    assert code == 0
    assert data["results"]["r"] == "1/3"
    assert data["results"]["value"]["value"].startswith("1.04719755119659774615421446109")
    assert data["results"]["value"]["precision_bits"] >= 128
    assert data["schema"] == "sincpow-report/1"


def test_coeffs_json_and_csv():
    code, out = invoke(["coeffs", "--order", "4"])
    assert code == 0
    c = json.loads(out)["results"]["coefficients"]
    assert [c[str(i)] for i in range(1, 5)] == ["-3/20", "-13/1120", "27/3200", "52791/3942400"]
    code, out = invoke(["coeffs", "--order", "4", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["computed"] for r in rows] == ["-3/20", "-13/1120", "27/3200", "52791/3942400"]


def test_coeffs_order10_reports_discrepancy():
    code, out = invoke(["coeffs", "--order", "10"])
    assert code == 3
    check = json.loads(out)["checks"][0]
    assert check["status"] == "discrepancy"
    assert check["detail"]["mismatched"] == [10]


def test_asympt():
    code, out = invoke(["asympt", "50", "--order", "4"])
    data = json.loads(out)
    assert code == 0 and data["checks"][0]["status"] == "pass"
    code, out = invoke(["asympt", "3", "--order", "4"])
    assert code == 3
    code, out = invoke(["asympt", "4", "--order", "4"])
    assert code == 0 and json.loads(out)["results"]["excluded_n"]


def test_schneider():
    code, out = invoke(["schneider", "--max-n", "100"])
    data = json.loads(out)
    assert code == 3
    assert [(v["n"], v["relation"]) for v in data["results"]["non_strict"]] == [
        (1, "EQ"), (2, "EQ"), (4, "EQ")]


def test_oracle():
    code, out = invoke(["oracle", "5"])
    assert code == 0
    assert json.loads(out)["checks"][0]["status"] == "pass"


def test_table_roundtrip(tmp_path):
    target = tmp_path / "t.csv"
    code, out = invoke(["--out", str(target), "table", "--from", "1", "--to", "30"])
    assert code == 0
    assert target.read_text() == out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 30
    for row in rows:
        assert parse_frac(row["r"]) == exact_sinc_integral(int(row["n"])).r


def test_determinism():
    a = json.loads(invoke(["coeffs", "--order", "6"])[1])
    b = json.loads(invoke(["coeffs", "--order", "6"])[1])
    a.pop("timings_s"), b.pop("timings_s")
    assert a == b


@pytest.mark.parametrize("argv", [[], ["bogus"], ["exact"], ["exact", "0"], ["coeffs"],
                                  ["table", "--from", "5", "--to", "2"]])
def test_usage_errors(argv):
    assert invoke(argv)[0] == 1


def test_certify_exit_code():
    code, out = invoke(["certify", "--max-n", "40"])
    data = json.loads(out)
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert statuses.pop("prop2_envelope") == "discrepancy"
    assert set(statuses.values()) == {"pass"}
    assert code == 3
