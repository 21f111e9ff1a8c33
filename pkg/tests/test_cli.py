import json
import re

import pytest

from waringloci import cli
from waringloci.frontend import from_dict, to_dict


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_rank_of_xyz(capsys):
    code, d = run_json(capsys, "rank", "x*y*z")
    assert code == 0 and d["rank"] == 4 and d["method"] == "monomial"


def test_rank_text_output(capsys):
    code, out, _ = run(capsys, "rank", "x*y*z")
    assert code == 0 and "4" in out and "monomial" in out


def test_locus_equation(capsys):
    code, d = run_json(capsys, "locus", "x*(y*z+x^2)", "--equation")
    assert code == 0 and d["factored"] == "X*Y*Z*(X^2 - 12*Y*Z)"


def test_locus_point(capsys):
    code, d = run_json(capsys, "locus", "x*(y*z+x^2)", "--point", "[1:1:1]")
    assert code == 0 and d["in_waring_locus"]
    code, d = run_json(capsys, "locus", "x*(y*z+x^2)", "--point", "[1:0:0]")
    assert code == 0 and d["forbidden"]


def test_locus_enumerate(capsys):
    code, d = run_json(capsys, "locus", "x*(x*y+z^2)", "--enumerate")
    assert code == 0 and d["points"] == ["[1:0:0]"]


def test_apolar_slices(capsys):
    code, d = run_json(capsys, "apolar", "x*y*z", "--degree", "2", "--degree", "3")
    assert code == 0 and [s["dimension"] for s in d] == [3, 9]


def test_classify(capsys):
    code, d = run_json(capsys, "classify", "x*y*z-(y+z)^3")
    assert code == 0 and (d["type"], d["rank"]) == (7, 4)


def test_strassen_check(capsys):
    code, d = run_json(capsys, "strassen-check", "x^2*y^2+u^2*v^2")
    assert code == 0 and d["certified"] and d["rank"] == 6


def test_decompose_through_point(capsys):
    code, d = run_json(capsys, "decompose", "x*y*z", "--through", "[1:1:1]")
    assert code == 0 and d["exact"] and len(d["terms"]) == 4


def test_forbidden_point_is_an_error(capsys):
    code, out, err = run(capsys, "decompose", "x*y*z", "--through", "[1:0:2]")
    assert code == 1 and err.startswith("error:") and out == ""


def test_parse_error(capsys):
    code, _, err = run(capsys, "rank", "x*)")
    assert code == 1 and "error" in err


def test_numeric_result_exit_code(capsys):
    code, d = run_json(capsys, "decompose", "x*(y*z+x^2)")
    assert code == 2 and not d["exact"]


def test_unsupported_rank_exit_code(capsys):
    code, d = run_json(capsys, "rank", "x^4+y^4+z^4+x*y*z*(x+y+z)")
    assert code == 2 and not d["certified"]


def test_seed_makes_output_reproducible(capsys):
    a = run(capsys, "decompose", "x^4+x*y^3+y^4", "--seed", "5", "--format", "json")[1]
    b = run(capsys, "decompose", "x^4+x*y^3+y^4", "--seed", "5", "--format", "json")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["rank", "x*y*z"],
    ["decompose", "x^3+y^3"],
    ["decompose", "x*y*z", "--through", "[1:1:1]"],
    ["locus", "x*(y*z+x^2)", "--equation"],
    ["locus", "x*(y*z+x^2)", "--point", "[1:1:1]"],
    ["locus", "x*(x*y+z^2)", "--enumerate"],
    ["classify", "x*y*z-(y+z)^3"],
    ["strassen-check", "x^2*y^2+u^2*v^2"],
    ["apolar", "x*y*z", "--degree", "2"],
])
def test_json_round_trip(capsys, argv):
    _, d = run_json(capsys, *argv)
    items = d if isinstance(d, list) else [d]
    for item in items:
        obj = from_dict(item)
        assert from_dict(to_dict(obj)) == obj
        emitted = to_dict(obj)
        assert all(item[k] == v for k, v in emitted.items())


def test_plot_writes_svg(capsys, tmp_path):
    out = tmp_path / "f.svg"
    code, d = run_json(capsys, "plot", "x*(y*z+x^2)", "--chart", "z=1", "--out", str(out))
    assert code == 0 and d["output"] == str(out)
    svg = out.read_text()
    assert svg.lstrip().startswith("<?xml") and "<svg" in svg
    ids = set(re.findall(r'id="(locus-factor-\d+)"', svg))
    assert len(ids) == 4


def test_plot_other_chart(capsys, tmp_path):
    out = tmp_path / "g.svg"
    code, _ = run_json(capsys, "plot", "y^2*z-x^3-x*z^2", "--chart", "x=1", "--grid", "120",
                       "--window=-3,3", "--out", str(out))
    assert code == 0 and out.exists()


def test_plot_points_locus(capsys, tmp_path):
    out = tmp_path / "h.svg"
    code, _ = run_json(capsys, "plot", "x*(x*y+z^2)", "--chart", "x=1", "--out", str(out))
    assert code == 0 and 'id="locus-point-0"' in out.read_text()
