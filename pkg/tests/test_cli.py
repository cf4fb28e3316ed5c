import io
import json

import pytest

from whitney.cli import UsageError, parse_spec, run
from whitney.dagger import FreeDaggerCategory, codiscrete_groupoid, z2
from whitney.stratgraph import circle, interval, wedge


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, X in (("circle", circle()), ("interval", interval()), ("wedge", wedge(2))):
        p = tmp_path / f"{name}.json"
        p.write_text(X.dumps())
        paths[name] = str(p)
    for name, D in (("z2", z2()), ("pair", codiscrete_groupoid(["a", "b"]))):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(D.to_json()))
        paths[name] = str(p)
    p = tmp_path / "free.json"
    p.write_text(json.dumps(FreeDaggerCategory(circle()).to_json()))
    paths["free"] = str(p)
    p = tmp_path / "broken.json"
    p.write_text('{"vertices": ["a"], "edges": [{"name": "x", "src": "a", "dst": "b"}]}')
    paths["broken"] = str(p)
    p = tmp_path / "bad_dagger.json"
    doc = z2().to_json()
    doc["dagger"] = {"1": "1", "g": "1"}
    p.write_text(json.dumps(doc))
    paths["bad_dagger"] = str(p)
    return paths


class TestExitCodes:
    def test_validate_graph(self, files):
        assert call("validate-graph", files["circle"])[0] == 0
        code, _, err = call("validate-graph", files["broken"])
        assert code == 2 and "endpoint" in err

    def test_missing_file(self, tmp_path):
        code, _, err = call("validate-graph", str(tmp_path / "nope.json"))
        assert code == 2 and err

    def test_unknown_flag(self, files):
        assert call("validate-graph", files["circle"], "--colour")[0] == 2

    def test_negative_bound(self, files):
        assert call("eval", "tang01", files["circle"], "--bound", "-1")[0] == 2

    def test_validate_dagger(self, files):
        assert call("validate-dagger", files["z2"])[0] == 0
        assert call("validate-dagger", files["free"], "--bound", "2")[0] == 0
        code, out, _ = call("validate-dagger", files["bad_dagger"])
        assert code == 1 and "FAIL" in out

    def test_bad_specifier(self, files):
        code, _, err = call("eval", "rep:", files["circle"], "--bound", "1")
        assert code == 2
        assert call("eval", "nonsense", files["circle"], "--bound", "1")[0] == 2


class TestCommands:
    def test_hom_lists_four(self, files):
        code, out, _ = call("hom", files["interval"], files["interval"], "--word-bound", "1", "--json")
        assert code == 0
        assert len(json.loads(out)["morphisms"]) == 4

    def test_hom_text(self, files):
        code, out, _ = call("hom", "interval", "interval", "--word-bound", "1")
        assert code == 0 and out.count("\n") >= 4

    def test_eval_json(self, files):
        code, out, _ = call("eval", "psi11", files["circle"], "--bound", "2", "--json")
        doc = json.loads(out)
        assert code == 0 and len(doc["elements"]) == 7

    def test_sheaf_check(self, files):
        code, out, _ = call("sheaf-check", "tang01", "chain2", "--bound", "2")
        assert code == 0 and "PASS" in out

    def test_dagger_roundtrip(self, files):
        assert call("dagger-roundtrip", files["pair"], "--bound", "2")[0] == 0

    def test_whitney_roundtrip(self, files):
        assert call("whitney-roundtrip", f"rep:{files['circle']}", "--bound", "2")[0] == 0
        assert call("whitney-roundtrip", f"wd:{files['z2']}", "--bound", "1")[0] == 0

    def test_omega1(self):
        code, out, _ = call("omega1", "tang01", "--bound", "2", "--json")
        doc = json.loads(out)
        assert code == 0 and len(doc["elements"]) == 7 and doc["involution"][doc["unit"]] == doc["unit"]

    def test_tangle_hypothesis(self):
        code, out, _ = call("tangle-hypothesis", "--max-vertices", "1", "--max-edges", "1",
                            "--word-bound", "1", "--bound", "1")
        assert code == 0 and out.startswith("PASS")

    def test_out_file(self, files, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = call("eval", "tang01", files["circle"], "--bound", "1", "--json", "--out", str(target))
        assert code == 0 and out == ""
        assert len(json.loads(target.read_text())["elements"]) == 3


def test_product_specifier(files):
    P = parse_spec(f"prod(tang01, rep:{files['circle']})")
    assert len(P(circle(), 1)) == 9
    with pytest.raises(UsageError, match="two"):
        parse_spec("prod(tang01)")
