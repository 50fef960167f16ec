import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import given, settings
from hypothesis import strategies as st

from pingpong_lab.cli import main
from pingpong_lab.errors import ParseError, ValidationError
from pingpong_lab.report import run
from pingpong_lab.scenario import parse_scenario, parse_surd
from pingpong_lab.serialize import decode_point, dumps, encode
from pingpong_lab.surd import Surd
from pingpong_lab.svg import chord_diagram

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"
MINI = "[scenario]\nname = mini\n[generators]\nh = [[4,0],[0,1]]\n[commands]\nclassify h\n"


def load(name):
    return parse_scenario((SCENARIOS / f"{name}.scn").read_text())


def test_minimal_scenario():
    sc = parse_scenario(MINI)
    assert sc.name == "mini" and sc.commands[0].name == "classify"
    assert run(sc).results[0]["result"]["class"].value == "Hyperbolic"


def test_validation_errors():
    with pytest.raises(ValidationError, match="determinant 0"):
        parse_scenario(MINI.replace("[[4,0],[0,1]]", "[[1,2],[2,4]]"))
    with pytest.raises(ValidationError, match=r"write 2\*sqrt\(2\)"):
        parse_surd("1 + sqrt(8)")
    with pytest.raises(ValidationError, match="undefined generator"):
        parse_scenario(MINI.replace("classify h", "classify g"))


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_scenario(MINI.replace("h = [[4,0],[0,1]]", "h = [[4,0],[0]]"))
    assert info.value.line == 4 and info.value.col == 5


@settings(max_examples=200, deadline=None)
@given(st.fractions(-50, 50, max_denominator=99), st.fractions(-50, 50, max_denominator=99),
       st.sampled_from([0, 2, 3, 5, 7, 13]))
def test_surd_json_round_trip(a, b, d):
    x = Surd(a, b, d)
    assert decode_point(json.loads(json.dumps(encode(x)))) == x
    assert parse_surd(str(x)) == x


def test_linked_report_has_verified_axis():
    rep = run(load("linked-flagship"))
    reports = rep.results[0]["result"]["reports"]
    assert [r["status"] for r in reports] == ["Verified", "Verified"]
    assert reports[0]["mode"] == "axis"
    assert rep.exit_code == 0


def test_refuted_certificate_is_flagged():
    rep = run(load("refuted"))
    res = rep.results[0]["result"]
    assert res["status"] == "Refuted"
    assert res["non_hyperbolic_like_witness"]["word"] == "f"
    assert rep.exit_code == 2


def test_svg_structure():
    sym = chord_diagram(run(load("linked-flagship")).diagram)
    assert sym.count("<line") == 4 and sym.count("<path") == 4
    par = chord_diagram(run(load("unlinked-parallel")).diagram)
    assert par.count("gaps_p") == 2 and par.count("gaps_q") == 2
    empty = chord_diagram({})
    assert empty.count("<circle") == 1 and "<line" not in empty


def test_cli_exit_codes(tmp_path):
    runner = CliRunner()
    ok = runner.invoke(main, ["run", str(SCENARIOS / "schottky.scn"), "--out", str(tmp_path), "--svg"])
    assert ok.exit_code == 0
    assert (tmp_path / "schottky.json").exists() and (tmp_path / "schottky.svg").exists()
    bad = tmp_path / "bad.scn"
    bad.write_text(MINI.replace("[commands]", "[nonsense]"))
    assert runner.invoke(main, ["run", str(bad)]).exit_code == 1
    cex = runner.invoke(main, ["run", str(SCENARIOS / "hand-chain.scn")])
    assert cex.exit_code == 2 and "COUNTEREXAMPLE" in cex.output
    inap = runner.invoke(main, ["verify", "[[4,0],[0,1]]", "[[65,-63],[-63,65]]", "--u-h", "(-1/2, 1/2), (2, -2)",
                                "--u-k", "(3/4, 4/3), (-4/3, -3/4)", "--mode", "axis"])
    assert inap.exit_code == 3


def test_inline_commands():
    runner = CliRunner()
    out = runner.invoke(main, ["classify-pair", "[[4,0],[0,1]]", "[[5,-3],[-3,5]]"])
    assert out.exit_code == 0
    assert json.loads(out.output)["results"][0]["result"]["word"] == "a_f a_fg a_gf a_g r_f r_gf r_fg r_g"
    assert runner.invoke(main, ["census", "--samples", "50", "--seed", "1"]).exit_code == 0


def test_report_is_deterministic():
    a = dumps(run(load("schottky")).as_dict())
    b = dumps(run(load("schottky")).as_dict())
    assert a == b
