import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from polydom.cli import run
from polydom.domination import decide_domination, lsc_hypothesis_check
from polydom.matpoly import MatrixPoly, pseudoinverse
from polydom.parser import parse_matrix_poly, parse_poly
from polydom.probe import ratio_estimate, ray_oscillation_probe
from polydom.report import emit_report, load_schema

M = parse_matrix_poly
COUNTER = "[x1^2+x2^2, x1; x2, 0]"
UNKNOWN_PAIR = ("[x1^2 - x2]", "[x1]")
SCHEMA = load_schema()


def doc_of(result, **kw):
    kw.setdefault("command", "test")
    kw.setdefault("inputs", {})
    data = json.loads(emit_report(result, "json", **kw))
    jsonschema.validate(data, SCHEMA)
    return data


def cli(*argv):
    out = io.BytesIO()
    code = run(list(argv), out)
    return code, out.getvalue()


class TestJson:
    def test_dominates_has_certificate(self):
        data = doc_of(decide_domination(M("[x1^2+x2^2]"), M("[x1]", 2)))
        assert data["result"]["verdict"] == "dominates"
        assert data["result"]["certificate"] is not None

    def test_not_dominates_has_witness_weights(self):
        data = doc_of(decide_domination(M(COUNTER), MatrixPoly.identity(2, 2)))
        res = data["result"]
        assert res["verdict"] == "not_dominates"
        assert res["witness"]["weights"] == [1, 0]
        assert res["failing_entry"] == [2, 2]

    def test_unknown_has_reason(self):
        P, Q = (M(t, 2) for t in UNKNOWN_PAIR)
        data = doc_of(decide_domination(P, Q))
        assert data["result"]["verdict"] == "unknown"
        assert isinstance(data["result"]["reason"], str) and data["result"]["reason"]

    def test_other_results_validate(self):
        P = M(COUNTER)
        doc_of(pseudoinverse(P))
        doc_of(lsc_hypothesis_check(M("[x1]", 2)))
        doc_of(ratio_estimate(P, MatrixPoly.identity(2, 2), trials=3, n=32))
        doc_of(ray_oscillation_probe(P, MatrixPoly.identity(2, 2), (1.0, 0.0), ts=(4, 8)))
        doc_of(parse_poly("x1^2 + 1"))

    def test_canonical_inputs_reparse(self):
        code, raw = cli("dominates", COUNTER, "[1, 0; 0, 1]", "--json")
        inputs = json.loads(raw)["inputs"]
        d = int(inputs["d"])
        assert M(inputs["P"], d) == M(COUNTER)
        assert M(inputs["Q"], d) == MatrixPoly.identity(2, 2)

    def test_deterministic(self):
        rep = decide_domination(M(COUNTER), MatrixPoly.identity(2, 2))
        kw = dict(command="dominates", inputs={"P": COUNTER}, seed=0, timings_ms={"total": 1.0})
        assert emit_report(rep, "json", **kw) == emit_report(rep, "json", **kw)
        again = decide_domination(M(COUNTER), MatrixPoly.identity(2, 2))
        assert emit_report(again, "json", **kw) == emit_report(rep, "json", **kw)

    def test_cli_reports_equal_up_to_timing(self):
        docs = []
        for _ in range(2):
            _, raw = cli("dominates", *UNKNOWN_PAIR, "--json", "--seed", "5")
            data = json.loads(raw)
            data.pop("timings_ms")
            docs.append(data)
        assert docs[0] == docs[1] and docs[0]["seed"] == 5


class TestText:
    def test_not_dominates_text(self):
        text = emit_report(decide_domination(M(COUNTER), MatrixPoly.identity(2, 2)), "text").decode()
        assert "verdict: not_dominates" in text
        assert "failing entry: (2,2)" in text
        assert "x1=1*t" in text

    def test_dominates_text_names_certificate(self):
        text = emit_report(decide_domination(M("[x1^2+x2^2]"), M("[x1]", 2)), "text").decode()
        assert "verdict: dominates" in text and "elliptic" in text


class TestExitCodes:
    def test_dominates(self):
        assert cli("dominates", "[x1^2+x2^2]", "[x1]")[0] == 0

    def test_not_dominates(self):
        assert cli("dominates", COUNTER, "[1, 0; 0, 1]")[0] == 1

    def test_unknown(self):
        assert cli("dominates", *UNKNOWN_PAIR)[0] == 2

    def test_compact(self):
        assert cli("compactly-dominates", "[x1]", "[1]", "--dim", "2")[0] == 1
        assert cli("compactly-dominates", "[x1^2+x2^2]", "[1]")[0] == 0

    def test_parse_error(self, capsys):
        assert cli("dominates", "[x1,; x2]", "[1]")[0] == 3
        assert "column 5" in capsys.readouterr().err

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            run(["frobnicate"], io.BytesIO())
        assert info.value.code == 3

    def test_shape_error(self):
        assert cli("dominates", "[x1, x2]", "[1, 0, 0; 0, 1, 0]")[0] == 3

    def test_lsc(self):
        assert cli("lsc-check", "[x1^2+x2^2]")[0] == 0
        assert cli("lsc-check", "[x1]", "--dim", "2")[0] == 1

    def test_pinv_and_tilde(self):
        code, raw = cli("pinv", "[x1, x2]", "--json")
        res = json.loads(raw)["result"]
        assert code == 0 and res["delta"] == "x1^2 + x2^2" and res["rank"] == 1
        code, raw = cli("tilde", "x1^2")
        assert code == 0 and raw.decode().strip().endswith("x1^4 + 4*x1^2 + 4")

    def test_console_script_module(self):
        proc = subprocess.run([sys.executable, "-m", "polydom.cli", "dominates", COUNTER, "[1,0;0,1]"],
                              capture_output=True)
        assert proc.returncode == 1


class TestFilesAndProbe:
    def test_at_file_inputs(self, tmp_path):
        f = tmp_path / "P.txt"
        f.write_text("[x1^2+x2^2, x1;\n x2, 0]\n")
        assert cli("dominates", f"@{f}", "[1, 0; 0, 1]")[0] == 1
        assert cli("dominates", f"@{tmp_path / 'missing'}", "[1]")[0] == 3

    def test_probe_csv(self, tmp_path):
        path = tmp_path / "ratios.csv"
        code, raw = cli("probe", "[x1, x2]", "[1, 0; 0, 1]", "--trials", "4", "--grid", "32",
                        "--csv", str(path), "--json")
        assert code == 0
        res = json.loads(raw)["result"]
        rows = list(csv.DictReader(path.open()))
        assert len(rows) == len(res["ratios"]) == 4
        assert res["label"] == "empirical"

    def test_probe_ray(self):
        code, raw = cli("probe", COUNTER, "[1, 0; 0, 1]", "--ray", "1,0", "--json")
        ratios = json.loads(raw)["result"]["ratios"]
        assert code == 0 and ratios[-1] / ratios[0] > 10

    def test_probe_bad_ray(self):
        with pytest.raises(SystemExit) as info:
            run(["probe", COUNTER, "[1, 0; 0, 1]", "--ray", "1,0,0"], io.BytesIO())
        assert info.value.code == 3
