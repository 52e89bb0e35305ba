import csv
import io
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from shadowlab.cli import main
from shadowlab.polytope import read_hpoly, sparsity


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def summary(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


@pytest.fixture
def km(tmp_path):
    def make(d, eps="1/4"):
        path = tmp_path / f"km{d}.hpoly"
        code, _ = run("gen", "km", "--dim", str(d), "--eps", eps, "-o", str(path))
        assert code == 0
        return str(path)

    return make


def test_gen_km(tmp_path):
    path = tmp_path / "km3.hpoly"
    code, out = run("gen", "km", "--dim", "3", "--eps", "1/4", "-o", str(path))
    assert code == 0
    assert summary(out) == {"rows": "6", "dim": "3", "sparsity": "2"}
    P = read_hpoly(path)
    assert P.n_rows == 6 and sparsity(P) == 2


def test_gen_box(tmp_path):
    path = tmp_path / "sq.hpoly"
    code, _ = run("gen", "box", "--dim", "2", "--bounds", "0,1,0,1", "-o", str(path))
    assert code == 0
    P = read_hpoly(path)
    assert P.A == ((-1, 0), (1, 0), (0, -1), (0, 1)) and P.b == (0, 1, 0, 1)


def test_gen_to_stdout():
    code, out = run("gen", "box", "--dim", "1")
    assert code == 0 and out.startswith("2 1\n# generator: box\n")


def test_gen_bad_eps(capsys):
    code, _ = run("gen", "km", "--dim", "3", "--eps", "1/2")
    assert code == 2
    assert "0 < eps < 1/2" in capsys.readouterr().err


def test_gen_degenerate_box():
    assert run("gen", "box", "--dim", "2", "--bounds", "0,0,0,1")[0] == 2


def test_shadow_km10_prints_1024(km):
    code, out = run("shadow", km(10), "--km-objectives")
    assert code == 0 and summary(out)["hull_vertices"] == "1024"


def test_shadow_box_random_pair(tmp_path):
    path = tmp_path / "box.hpoly"
    run("gen", "box", "--dim", "4", "--bounds", "0,1,-1,2,0,1/3,5,6", "-o", str(path))
    code, out = run("shadow", str(path), "--c", "1,-2,3/2,1/5", "--d", "2,1,-1,7/3")
    assert code == 0 and int(summary(out)["hull_vertices"]) <= 8


def test_shadow_dependent_pair(km, capsys):
    code, _ = run("shadow", km(2), "--c", "1,2", "--d", "2,4")
    assert code == 2
    assert "independent" in capsys.readouterr().err


def test_shadow_enumerate_agrees_with_closed_form(km, tmp_path):
    path = km(4)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run("shadow", path, "--km-objectives", "--csv", str(a))
    run("shadow", path, "--km-objectives", "--csv", str(b), "--enumerate")
    rows_a = list(csv.reader(a.open()))
    rows_b = list(csv.reader(b.open()))
    assert [r[:5] for r in rows_a] == [r[:5] for r in rows_b]


def test_shadow_csv_and_svg(km, tmp_path):
    csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
    code, _ = run("shadow", km(3), "--km-objectives", "--csv", str(csv_path), "--svg", str(svg_path),
                  "--path-overlay", "--km-start")
    assert code == 0
    rows = list(csv.DictReader(csv_path.open()))
    assert list(rows[0]) == ["k", "y1_exact", "y2_exact", "y1_dec", "y2_dec", "preimage_codes"]
    assert len(rows) == 8
    assert rows[1]["y1_exact"] == "17/4096" and rows[1]["preimage_codes"] == "100"
    assert float(rows[1]["y1_dec"]) == pytest.approx(17 / 4096)
    assert sorted(r["preimage_codes"] for r in rows) == sorted(f"{i:03b}" for i in range(8))
    root = ET.parse(svg_path).getroot()
    tags = [el.tag.split("}")[1] for el in root]
    assert tags.count("circle") == 8 and "polygon" in tags and "polyline" in tags


def test_shadow_custom_polytope_labels(tmp_path):
    path = tmp_path / "tri.hpoly"
    path.write_text("3 2\n-1 0 | 0\n0 -1 | 0\n1 1 | 1\n")
    csv_path = tmp_path / "t.csv"
    code, out = run("shadow", str(path), "--c", "1,0", "--d", "0,1", "--csv", str(csv_path))
    assert code == 0 and summary(out)["hull_vertices"] == "3"
    labels = [r["preimage_codes"] for r in csv.DictReader(csv_path.open())]
    assert labels == ["0+1", "1+2", "0+2"]


def test_path_km8(km):
    code, out = run("path", km(8), "--km-objectives", "--km-start")
    assert code == 0 and summary(out)["M"] == "256"


def test_path_interval(tmp_path):
    path = tmp_path / "iv.hpoly"
    run("gen", "box", "--dim", "1", "-o", str(path))
    csv_path = tmp_path / "p.csv"
    code, out = run("path", str(path), "--c", "1", "--d", "1", "--start", "0", "--csv", str(csv_path))
    assert code == 0 and summary(out)["M"] == "2"
    rows = list(csv.reader(csv_path.open()))
    assert rows == [
        ["k", "lambda_exact", "lambda_dec", "code", "x1"],
        ["0", "-inf", "-inf", "", "0"],
        ["1", "-1", "-1", "", "1"],
    ]


def test_path_csv_km(km, tmp_path):
    csv_path = tmp_path / "p.csv"
    run("path", km(2), "--km-objectives", "--km-start", "--csv", str(csv_path))
    rows = list(csv.DictReader(csv_path.open()))
    assert [r["code"] for r in rows] == ["00", "10", "11", "01"]
    assert [r["lambda_exact"] for r in rows] == ["-inf", "-1/16", "0", "1/16"]
    assert [(r["x1"], r["x2"]) for r in rows] == [("0", "0"), ("1", "1/4"), ("1", "3/4"), ("0", "1")]


def test_path_tie_exit_3(tmp_path, capsys):
    path = tmp_path / "sq.hpoly"
    run("gen", "box", "--dim", "2", "-o", str(path))
    code, _ = run("path", str(path), "--c", "1,1", "--d", "1,1", "--start", "0,2")
    assert code == 3
    err = capsys.readouterr().err
    assert "witnesses: 0 2" in err


def test_path_needs_start(km):
    assert run("path", km(2), "--km-objectives")[0] == 2


def test_km_flags_need_km_polytope(tmp_path):
    path = tmp_path / "sq.hpoly"
    run("gen", "box", "--dim", "2", "-o", str(path))
    assert run("path", str(path), "--km-objectives", "--km-start")[0] == 2


def test_verify_km_lemmas():
    code, out = run("verify", "km-lemmas", "--dim", "10", "--eps", "1/4")
    s = summary(out)
    assert code == 0 and out.endswith("PASS\n")
    assert s["lemma_main.checks"] == s["lemma_main.negative"] == str(10 * 2**10)


def test_verify_box_bound():
    code, out = run("verify", "box-bound", "--dim", "8", "--trials", "100", "--seed", "42")
    assert code == 0 and int(summary(out)["max_hull_size"]) <= 16


def test_verify_path_oracle():
    code, out = run("verify", "path-oracle", "--dim", "6")
    assert code == 0 and summary(out)["oracle.failures"] == "0"


def test_verify_km_shadow():
    code, out = run("verify", "km-shadow", "--dim", "5", "--eps", "1/3")
    assert code == 0 and summary(out)["hull_vertices"] == "32"


def test_verify_bad_suite():
    with pytest.raises(SystemExit) as info:
        run("verify", "nope")
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["verify", "box-bound", "--dim", "5", "--trials", "30", "--seed", "7"],
    ["verify", "km-lemmas", "--dim", "6", "--eps", "2/5"],
])
def test_verify_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_trial_streams_depend_on_seed_and_trial():
    from shadowlab.verify import trial_rng

    draw = lambda s, t: [trial_rng(s, t).random() for _ in range(3)]
    assert draw(1, 0) == draw(1, 0)
    assert draw(1, 0) != draw(2, 0)
    assert draw(1, 0) != draw(1, 1)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "shadowlab", "verify", "km-shadow", "--dim", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.endswith("PASS\n")
