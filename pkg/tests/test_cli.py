import csv
import io
import json
import subprocess
import sys

import pytest

from crysalite import serialize
from crysalite.cli import parse_config, run
from crysalite.conjugate import crys_dimensions
from conftest import ring
from golden_cases import GOLDEN, cases, render

NODE = ["--prime", "5", "--vars", "x0,x1", "--poly", "x0*x1"]
CUBIC = ["--prime", "7", "--vars", "x0,x1,x2", "--poly", "x0^3+x1^3+x2^3"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestExamples:
    def test_analyze_node(self):
        code, out, _ = call("analyze", *NODE, "--nmax", "10")
        assert code == 0
        doc = json.loads(out)
        assert doc["license"] == "FrobeniusLiftToric"
        assert [p["n"] for p in doc["pieces"]] == list(range(11))
        assert {t["cohdeg"] for t in doc["totals"]} == {0, 1, 2}
        h2 = next(t for t in doc["totals"] if t["cohdeg"] == 2)
        assert h2["weights"] == {str(2 * n - 2): 1 for n in range(2, 11)}

    def test_wedge_closed_form_match(self):
        code, out, _ = call("verify", "wedge-closed-form", *CUBIC, "--n", "5")
        assert (code, out) == (0, "MATCH\n")

    def test_low_degree_boundary(self):
        assert call("verify", "low-degree", "--N", "2", "--d", "6")[:2] == (0, "false\n")
        assert call("verify", "low-degree", "--N", "2", "--d", "5")[:2] == (0, "true\n")


class TestExitCodes:
    def test_p_divides_d(self):
        code, out, err = call(
            "verify", "wedge-closed-form", "--prime", "3", "--vars", "x0,x1,x2",
            "--poly", "x0^3+x1^3+x2^3", "--n", "5",
        )
        assert code == 1 and out == ""
        assert "characteristic p must not divide deg f" in err

    def test_index_too_small(self):
        code, _, err = call("verify", "wedge-closed-form", *CUBIC, "--n", "2")
        assert code == 1 and "wedge index" in err

    def test_not_smooth(self):
        code, _, err = call(
            "verify", "wedge-closed-form", "--prime", "5", "--vars", "x0,x1,x2",
            "--poly", "x0^2*x2-x1^3", "--n", "4",
        )
        assert code == 1 and "smooth" in err

    def test_certificate_smooth_point(self):
        code, _, err = call("report", "certificate", "--prime", "5", "--vars", "x0,x1", "--poly", "x0", "--nmax", "4")
        assert code == 1 and "singular" in err

    @pytest.mark.parametrize(
        "argv,flag",
        [
            (["analyze", "--prime", "6", "--vars", "x0,x1", "--poly", "x0*x1", "--nmax", "4"], "--prime"),
            (["analyze", "--prime", "5", "--vars", "x0,x1", "--poly", "x0*y", "--nmax", "4"], "--poly"),
            (["analyze", "--prime", "5", "--vars", "x0,x1", "--poly", "x0^^2", "--nmax", "4"], "--poly"),
            (["analyze", "--prime", "5", "--vars", "x0,x1", "--poly", "5*x0", "--nmax", "4"], "--poly"),
            (["analyze", "--prime", "5", "--vars", "x0,x1", "--poly", "x0+x1^2", "--nmax", "4"], "homogeneous"),
            (["analyze", *NODE, "--nmax", "0"], "--nmax"),
            (["analyze", *NODE, "--nmax", "1"], "--nmax"),
            (["analyze", *NODE, "--nmax", "x"], "--nmax"),
            (["analyze", *NODE, "--nmax", "4", "--format", "xml"], "--format"),
            (["analyze", *NODE], "--nmax"),
            (["verify", "low-degree", "--N", "2"], "--d"),
            (["verify", "special-fiber", "--n", "3"], "--N"),
            (["bogus"], "bogus"),
            ([], "command"),
        ],
    )
    def test_input_errors(self, argv, flag):
        code, out, err = call(*argv)
        assert code == 2 and out == ""
        assert flag in err

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "crysalite", "verify", "low-degree", "--N", "1", "--d", "40"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0 and proc.stdout == "true\n"


class TestVerify:
    def test_koszul(self):
        code, out, _ = call("verify", "koszul", *CUBIC)
        assert (code, out) == (0, "MATCH\n")

    def test_koszul_not_finite_length(self):
        code, _, _ = call("verify", "koszul", "--prime", "3", "--vars", "x0,x1", "--poly", "x0^3+x1^3")
        assert code == 1

    def test_euler(self):
        code, out, _ = call("verify", "euler", "--prime", "3", "--vars", "x0,x1", "--poly", "x0^3+x1^3", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["result"] == "true"
        assert doc["p_divides_d"] and not doc["f_in_jacobian"]

    def test_special_fiber_numeric(self):
        assert call("verify", "special-fiber", "--N", "3", "--n", "5")[:2] == (0, "-5:1 -4:3 -3:3 -2:1\n")

    def test_special_fiber_against_ring(self):
        assert call("verify", "special-fiber", *CUBIC, "--n", "4")[:2] == (0, "MATCH\n")

    def test_csv_verdict(self):
        code, out, _ = call("verify", "wedge-closed-form", *CUBIC, "--n", "4", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["key", "value"] and rows[1] == ["result", "MATCH"]


def test_parse_config():
    cfg = parse_config(["analyze", *NODE, "--nmax", "6", "--wmax", "9", "--format", "table"])
    assert (cfg.subcommand, cfg.prime, cfg.names, cfg.n_max, cfg.w_max, cfg.format) == (
        "analyze", 5, ("x0", "x1"), 6, 9, "table",
    )
    assert parse_config(["verify", "low-degree", "--N", "1", "--d", "2"]).subcommand == "verify low-degree"


def test_threads_env_does_not_change_output(monkeypatch):
    argv = ["analyze", *CUBIC, "--nmax", "4"]
    monkeypatch.setenv("CRYSALITE_THREADS", "1")
    one = call(*argv)[1]
    monkeypatch.setenv("CRYSALITE_THREADS", "3")
    assert call(*argv)[1] == one


def test_bad_threads_env(monkeypatch):
    monkeypatch.setenv("CRYSALITE_THREADS", "zero")
    code, _, err = call("analyze", *NODE, "--nmax", "3")
    assert code == 2 and "CRYSALITE_THREADS" in err


class TestSerialization:
    @pytest.mark.parametrize("fx", [("x0*x1", 2, 5, 6), ("x^5", 1, 5, 4), ("x0^4+x1^4+x2^4+x3^4", 4, 5, 4)])
    def test_json_round_trip(self, fx):
        R = ring(*fx[:3])
        rep = crys_dimensions(R, fx[3])
        again = serialize.report_from_json(serialize.report_to_json(rep))
        assert again == rep
        assert serialize.report_to_json(again) == serialize.report_to_json(rep)

    def test_csv_matches_json(self):
        code, js, _ = call("analyze", *CUBIC, "--nmax", "5")
        code2, cs, _ = call("analyze", *CUBIC, "--nmax", "5", "--format", "csv")
        assert code == code2 == 0
        doc = json.loads(js)
        from_json = set()
        for p in doc["pieces"]:
            for e in p["entries"]:
                from_json.add(("piece", p["n"], e["cohdeg"], e["weight"], e["dim"]))
        for t in doc["totals"]:
            for w, v in t["weights"].items():
                from_json.add(("total", None, t["cohdeg"], int(w), v))
            for n, v in enumerate(t["cumulative"]):
                from_json.add(("cumulative", n, t["cohdeg"], None, v))
        rows = list(csv.DictReader(io.StringIO(cs)))
        as_int = lambda s: int(s) if s != "" else None
        from_csv = {
            (r["section"], as_int(r["n"]), int(r["cohdeg"]), as_int(r["weight"]), int(r["dim"]))
            for r in rows
        }
        assert from_csv == from_json
        assert len(rows) == len(from_csv)

    def test_json_key_order(self):
        doc = json.loads(call("analyze", *NODE, "--nmax", "4")[1])
        assert list(doc) == [
            "prime", "vars", "poly", "degree", "embdim", "krull_dim", "license", "pieces", "totals", "flags",
        ]
        for t in doc["totals"]:
            assert [int(w) for w in t["weights"]] == sorted(int(w) for w in t["weights"])

    def test_table_format(self):
        code, out, _ = call("analyze", *NODE, "--nmax", "3", "--format", "table")
        assert code == 0 and "FrobeniusLiftToric" in out and "n=3" in out


@pytest.mark.parametrize("fname,argv", cases(), ids=[c[0] for c in cases()])
def test_golden(fname, argv):
    assert render(argv) == (GOLDEN / fname).read_text()
