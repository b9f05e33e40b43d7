import json
import math
import xml.etree.ElementTree as ET

import pytest

from grational.carpets import tennenbaum_scene
from grational.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert out.count("\n") == 1, "expected exactly one JSON line on stdout"
    return code, json.loads(out), err


class TestCheck:
    def test_nine(self, capsys):
        code, obj, _ = run_json(capsys, "check", "9")
        assert code == 0 and obj == {"grational": True, "witness": [3, 1]}

    def test_seven(self, capsys):
        code, obj, _ = run_json(capsys, "check", "7")
        assert code == 0 and obj == {"grational": False, "witness": None}

    def test_two(self, capsys):
        code, out, err = run(capsys, "check", "2")
        assert code == 2 and out == "" and "error" in err

    def test_range(self, capsys):
        code, obj, _ = run_json(capsys, "check", "--range", "3..20")
        assert code == 0
        assert [r["n"] for r in obj["results"]] == list(range(3, 21))
        assert [r["n"] for r in obj["results"] if r["grational"]] == [4, 9, 16]

    def test_bad_range(self, capsys):
        assert run(capsys, "check", "--range", "3-9")[0] == 2
        assert run(capsys, "check", "--range", "1..9")[0] == 2


class TestDescend:
    def test_paper3(self, capsys):
        code, obj, _ = run_json(capsys, "descend", "3", "7", "4", "paper3")
        assert code == 0
        assert [(c["a"], c["b"], c["defect"]) for c in obj["chain"]] == [(7, 4, 1), (2, 1, 1)]

    def test_generic(self, capsys):
        code, obj, _ = run_json(capsys, "descend", "5", "9", "4", "generic")
        assert code == 0
        assert [(c["a"], c["b"], c["defect"]) for c in obj["chain"]] == [(9, 4, 1), (2, 1, -1)]
        assert obj["strategy"] == "generic(k=2)"

    def test_mismatch(self, capsys):
        code, out, err = run(capsys, "descend", "5", "9", "4", "paper3")
        assert code == 2 and out == "" and err


class TestOverlay:
    def test_triangle_json(self, capsys):
        code, obj, _ = run_json(capsys, "overlay", "3", "--exact-ratio", "--json")
        assert code == 0
        assert obj["doubly"] == 3 and obj["uncovered"] == 1
        assert abs(obj["residual"]) < 1e-9

    def test_hexagon_text(self, capsys):
        code, out, _ = run(capsys, "overlay", "6", "--exact-ratio")
        assert code == 0
        assert "6 doubly covered" in out and "7 uncovered" in out and "PASS" in out

    def test_render(self, capsys, tmp_path):
        target = tmp_path / "fig18.svg"
        code, _, _ = run(capsys, "overlay", "5", "--exact-ratio", "--render", str(target))
        assert code == 0
        root = ET.parse(target).getroot()
        assert root.tag.endswith("svg")

    def test_sides(self, capsys):
        code, obj, _ = run_json(capsys, "overlay", "5", "--sides", "2.1", "1", "--json")
        assert code == 0 and obj["passed"]

    def test_carpet_too_big(self, capsys):
        assert run(capsys, "overlay", "5", "--sides", "1", "2")[0] == 2

    def test_missing_mode(self):
        with pytest.raises(SystemExit) as ei:
            main(["overlay", "5"])
        assert ei.value.code == 2

    def test_scene_round_trip(self, capsys, tmp_path):
        path = tmp_path / "scene.json"
        code, overlay, _ = run_json(capsys, "overlay", "5", "--exact-ratio", "--json", "--json-scene", str(path))
        assert code == 0
        code, rep, _ = run_json(capsys, "carpets", str(path))
        assert code == 0 and rep["passed"]
        assert rep["uncovered"] == pytest.approx(overlay["uncovered_area"], rel=1e-12)
        assert rep["regions_by_depth"] == overlay["census"]["regions_by_depth"]


class TestCarpets:
    def write(self, tmp_path, obj, name="scene.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    def test_tennenbaum(self, capsys, tmp_path):
        path = self.write(tmp_path, tennenbaum_scene(math.sqrt(2), 1.0).dumps())
        code, rep, _ = run_json(capsys, "carpets", path)
        assert code == 0
        assert rep["uncovered"] == pytest.approx(0.343146, abs=1e-6)
        assert rep["excess"] == pytest.approx(0.343146, abs=1e-6)

    def test_short_carpets(self, capsys, tmp_path):
        scene = {
            "room": {"n": 4, "side": 4, "center": [0, 0], "rotation": math.pi / 4},
            "carpets": [{"n": 4, "side": 1, "center": [0, 0], "rotation": math.pi / 4}],
        }
        code, rep, _ = run_json(capsys, "carpets", self.write(tmp_path, scene))
        assert code == 0
        assert rep["imbalance"] == pytest.approx(15.0)
        assert rep["uncovered"] - rep["excess"] == pytest.approx(15.0)
        assert abs(rep["residual"]) <= 1e-9

    def test_malformed(self, capsys, tmp_path):
        code, out, err = run(capsys, "carpets", self.write(tmp_path, "{not json"))
        assert code == 2 and out == "" and err

    def test_unknown_field(self, capsys, tmp_path):
        scene = {"room": {"n": 4, "side": 2, "colour": "red"}, "carpets": []}
        code, _, err = run(capsys, "carpets", self.write(tmp_path, scene))
        assert code == 2 and "colour" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "carpets", str(tmp_path / "nope.json"))[0] == 2


class TestTile:
    def test_triangle(self, capsys):
        code, obj, _ = run_json(capsys, "tile", "triangle", "3", "--json")
        assert code == 0 and obj["count"] == 9 and obj["rows"] == [1, 3, 5]

    def test_rows(self, capsys):
        code, obj, _ = run_json(capsys, "tile", "rows", "9", "3", "1", "--json")
        assert code == 0
        assert (obj["k"], obj["lambda"], obj["total"]) == (3, "0", 9)

    def test_rows_non_witness(self, capsys):
        assert run(capsys, "tile", "rows", "5", "2", "1", "--json")[0] == 2

    def test_ngon(self, capsys):
        code, obj, _ = run_json(capsys, "tile", "ngon", "9", "3", "--json")
        assert code == 0 and obj["wedges"] == 81

    def test_arity(self, capsys):
        assert run(capsys, "tile", "ngon", "9")[0] == 2

    def test_render(self, capsys, tmp_path):
        target = tmp_path / "t.svg"
        code, _, _ = run(capsys, "tile", "triangle", "4", "--render", str(target))
        assert code == 0
        assert len(ET.parse(target).getroot().findall("{http://www.w3.org/2000/svg}path")) == 16


class TestFigure:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "figure", "--list")
        assert code == 0 and "fig15" in out.split()

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "figure", "fig9")
        assert code == 0 and out.startswith("<?xml")

    def test_unknown(self, capsys):
        assert run(capsys, "figure", "fig999")[0] == 2
