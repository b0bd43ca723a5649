import io
import json
from contextlib import redirect_stderr, redirect_stdout

from brauercensus.cli import (
    EXIT_OK,
    EXIT_USAGE,
    census_report,
    classical_invariant_dimension,
    main,
)
from brauercensus.census import make_group_config
from brauercensus.rootdata import TypeLabel


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_info_e6():
    code, out, _ = run(["info", "--type", "E6"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["fundamental_group"]["order"] == 3
    assert report["invariant_dimensions"] == {"0": 6, "1": 2, "6": 2}
    assert report["roots"] == 72


def test_info_e8():
    code, out, _ = run(["info", "--type", "E8"])
    report = json.loads(out)
    assert report["fundamental_group"]["order"] == 1
    assert report["invariant_dimensions"] == {"0": 8}


def test_info_a1():
    code, out, _ = run(["info", "--type", "A1"])
    report = json.loads(out)
    assert report["roots"] == 2
    assert report["minuscule_nodes"] == [0, 1]


def test_census_json_values():
    code, out, _ = run(["census", "--type", "A1", "--isogeny", "ad", "--q", "3"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["counts"]["rational_total"] == 4
    assert report["counts"]["geometric_total"] == 3
    assert report["counts"]["pprime_char_total"] == 6
    # rationals serialized as exact strings
    reps = {tuple(c["rep_affine"]) for c in report["classes"]}
    assert ("1/2", "1/2") in reps


def test_census_e6_twisted():
    code, out, _ = run(
        ["census", "--type", "E6", "--isogeny", "ad", "--q", "2", "--twisted"]
    )
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["counts"]["rational_total"] == 72
    assert report["counts"]["by_component_order"] == {"1": 60, "3": 4}
    assert report["twisted"] is True


def test_census_deterministic_output():
    args = ["census", "--type", "B2", "--isogeny", "ad", "--q", "3"]
    _, out1, _ = run(args)
    _, out2, _ = run(args)
    assert out1 == out2


def test_census_json_roundtrip():
    code, out, _ = run(["census", "--type", "A2", "--isogeny", "sc", "--q", "2"])
    report = json.loads(out)
    assert json.loads(json.dumps(report)) == report


def test_census_tsv():
    code, out, _ = run(
        ["census", "--type", "A1", "--isogeny", "ad", "--q", "3", "--format", "tsv"]
    )
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0].startswith("rep_affine\t")
    assert len(lines) == 4


def test_census_sub_isogeny():
    code, out, _ = run(
        ["census", "--type", "D4", "--isogeny", "sub:alpha1", "--q", "3"]
    )
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["isogeny"] == "sub:1"
    assert report["isogeny_order"] == 2


def test_usage_errors():
    assert run(["info", "--type", "Z9"])[0] == EXIT_USAGE
    assert run(["census", "--type", "A1", "--isogeny", "ad", "--q", "6"])[0] == EXIT_USAGE
    assert run(["census", "--type", "A1", "--isogeny", "xx", "--q", "3"])[0] == EXIT_USAGE
    assert run(["census", "--type", "B3", "--isogeny", "ad", "--q", "3", "--twisted"])[0] == EXIT_USAGE
    assert run(["verify", "--suite", "nope"])[0] == EXIT_USAGE
    assert run(["bogus"])[0] == EXIT_USAGE


def test_resource_cap_exit():
    code, _, err = run(
        ["census", "--type", "E7", "--isogeny", "ad", "--q", "3",
         "--max-subalcoves", "10"]
    )
    assert code == 3


def test_verify_small_suites():
    code, out, _ = run(["verify", "--suite", "table2"])
    assert code == EXIT_OK
    assert all(line.startswith("PASS") for line in out.strip().split("\n"))
    code, out, _ = run(["verify", "--suite", "table1", "--types", "A1,A2,E6"])
    assert code == EXIT_OK
    code, out, _ = run(
        ["verify", "--suite", "alovefixe", "--types", "A1,A2", "--max-q", "3"]
    )
    assert code == EXIT_OK
    assert "alcove-fixed/A2/q3/node1" in out


def test_d_odd_report_block():
    report = census_report(make_group_config("D3", "ad", 3))
    assert "d_odd_comparison" in report
    block = report["d_odd_comparison"]
    assert set(block) == {"rational_total", "closed_form", "agree", "q_mod_4"}


def test_classical_dimension_table():
    assert classical_invariant_dimension(TypeLabel("A", 5), 3) == 2
    assert classical_invariant_dimension(TypeLabel("D", 5), 4) == 1
    assert classical_invariant_dimension(TypeLabel("D", 6), 6) == 3
    assert classical_invariant_dimension(TypeLabel("E", 7), 7) == 4
