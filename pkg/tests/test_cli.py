import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from algseries.cli import main
from algseries.errors import UnsupportedDimension
from algseries.geometry import Cone, ConeBound
from algseries.support import SupportHull
from algseries.svg import render_svg

from helpers import TWO_BRANCH, RATIONAL, vec

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_expand_two_branch(capsys):
    code, out = run(capsys, "expand", "-p", TWO_BRANCH, "-e", "(0,2,0)-(0,0,2)", "-w", "(-sqrt(2),-1)", "-k", "2")
    assert code == 0
    got = json.loads(out.out)
    assert sorted(b["truncation"] for b in got["branches"]) == ["-y - x*y", "y + x*y"]


def test_list_edges_and_index(capsys):
    code, out = run(capsys, "expand", "-p", RATIONAL, "--list-edges")
    edges = json.loads(out.out)["admissible_edges"]
    idx = next(e["index"] for e in edges if e["edge"] == "{(1,0,0),(0,0,1)}")
    code, out = run(capsys, "expand", "-p", RATIONAL, "--edge-index", str(idx), "-w", "(-1+1/2*sqrt(2),-2)", "-k", "3")
    assert code == 0
    assert json.loads(out.out)["branches"][0]["truncation"] == "x - x^2 + x^3"


@pytest.fixture
def rational_files(tmp_path, capsys):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    assert main(["encode", "-p", RATIONAL, "-e", "(1,0,0)-(0,0,1)", "-w", "(-1+1/2*sqrt(2),-2)", "-o", str(a)]) == 0
    assert main(["encode", "-p", RATIONAL, "-e", "(0,1,0)-(0,0,1)", "-w", "(-2+1/2*sqrt(2),-1)", "-o", str(b)]) == 0
    assert main(["encode", "-p", RATIONAL, "-e", "(0,1,0)-(0,1,1)", "-w", "(-1+1/2*sqrt(2),1)", "-o", str(c)]) == 0
    capsys.readouterr()
    return a, b, c


def test_equal_exit_codes(capsys, rational_files):
    a, b, c = rational_files
    code, out = run(capsys, "equal", str(a), str(b))
    assert code == 0 and json.loads(out.out)["verdict"] == "Equal"
    code, out = run(capsys, "equal", str(a), str(c))
    assert code == 1 and json.loads(out.out)["verdict"] == "NotEqual"
    code, out = run(capsys, "equal", str(a), str(b), "--budget", "0")
    assert code == 2 and json.loads(out.out)["verdict"] == "Unknown"


def test_refine_round_trip(capsys, rational_files, tmp_path):
    a, _, _ = rational_files
    r = tmp_path / "r.json"
    assert main(["refine", str(a), "-k", "4", "-o", str(r)]) == 0
    code, out = run(capsys, "equal", str(a), str(r))
    assert code == 0


def test_support_hull_and_render(capsys, rational_files, tmp_path):
    a, _, _ = rational_files
    hull, svg1, svg2 = tmp_path / "h.json", tmp_path / "1.svg", tmp_path / "2.svg"
    assert main(["support-hull", str(a), "-o", str(hull)]) == 0
    assert len(json.loads(hull.read_text())["vertices"]) == 2
    assert main(["render", str(hull), "-o", str(svg1)]) == 0
    assert main(["render", str(hull), "-o", str(svg2)]) == 0
    assert svg1.read_bytes() == svg2.read_bytes()
    ET.fromstring(svg1.read_text().split("\n", 1)[1])


def test_arithmetic_commands(capsys, tmp_path):
    g = tmp_path / "g.json"
    assert main(["encode", "-p", "(1-x)*z - 1", "--vars", "x", "-e", "(0,0)-(0,1)", "-w", "(-1)", "-o", str(g)]) == 0
    capsys.readouterr()
    for cmd, ann in [("add", "2 - z + x*z"), ("mul", "-1 + z - 2*x*z + x^2*z")]:
        code, out = run(capsys, cmd, str(g), str(g))
        assert code == 0 and json.loads(out.out)["annihilator"] == ann
    code, out = run(capsys, "inv", str(g))
    assert code == 0 and json.loads(out.out)["annihilator"] == "-1 + z + x"


def test_errors(capsys, tmp_path):
    code, out = run(capsys, "expand", "-p", "x +", "-e", "(0,0,0)-(0,0,1)", "-w", "(-1,-2)")
    assert code > 2 and "position 3" in out.err
    code, out = run(capsys, "equal", str(tmp_path / "missing.json"), str(tmp_path / "missing.json"))
    assert code > 2
    with pytest.raises(SystemExit) as info:
        main(["expand", "-p", "x"])
    assert info.value.code > 2


def test_text_format(capsys):
    code, out = run(capsys, "expand", "-p", TWO_BRANCH, "-e", "(0,2,0)-(0,0,2)", "-w", "(-sqrt(2),-1)", "-k", "2",
                    "--format", "text")
    assert code == 0 and "truncation: y + x*y" in out.out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "algseries", "expand", "-p", RATIONAL, "--list-edges"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "admissible_edges" in res.stdout


# ------------------------------------------------------------------- svg

def _parse(svg):
    return ET.fromstring(svg.split("\n", 1)[1])


def test_svg_two_vertex_hull():
    hull = SupportHull([vec(0, 1), vec(1, 0)],
                       {vec(1, 0): Cone.from_points([vec(1, 0), vec(-1, 1)], 2),
                        vec(0, 1): Cone.from_points([vec(0, 1), vec(1, -1)], 2)},
                       [[vec(0, 1)], [vec(1, 0)], [vec(0, 1), vec(1, 0)]],
                       {vec(0, 1): True, vec(1, 0): True})
    root = _parse(render_svg(hull))
    assert len(root.findall(f".//{SVG}circle")) == 2
    assert len(root.findall(f".//{SVG}polygon")) == 2
    assert len(root.findall(f".//{SVG}line")) == 1


def test_svg_single_vertex_zero_cone():
    hull = SupportHull([vec(0, 0)], {vec(0, 0): Cone.zero(2)}, [[vec(0, 0)]], {vec(0, 0): True})
    root = _parse(render_svg(hull))
    assert len(root.findall(f".//{SVG}circle")) == 1
    assert not root.findall(f".//{SVG}polygon")


def test_svg_quadratic_bound():
    bound = ConeBound((vec(0, 0), vec(1, 0)), vec(1, 1), Cone.from_points([vec(1, 1), vec(1, 2)], 2))
    svg = render_svg(bound)
    root = _parse(svg)
    assert len(root.findall(f".//{SVG}circle")) == 3
    assert len(root.findall(f".//{SVG}polygon")) == 1
    assert svg == render_svg(bound)


def test_svg_needs_plane():
    with pytest.raises(UnsupportedDimension):
        render_svg(ConeBound((), vec(0), Cone.zero(1)))
