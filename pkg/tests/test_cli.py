import json
import random
import subprocess

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preplay import ParseError, apply_offer_set, make_game
from preplay.cli import (
    format_matrix,
    parse_game,
    parse_offers,
    parse_seed_assignments,
    run,
    serialize_game,
    serialize_offers,
)
from conftest import random_game

M0_DOC = """{
  "schema": 1,
  "players": ["I", "II"],
  "strategies": [["C", "D"], ["C", "D"]],
  "payoffs": [[["4", "4"], ["0", "5"]], [["5", "0"], ["1", "1"]]]
}
"""

M2_DOC = M0_DOC.replace('["0", "5"]', '["2", "3"]').replace('["5", "0"]', '["3", "2"]')

OFFER_DOC = """{
  "schema": 1,
  "offers": [{"payer": "I", "payee": "II", "strategy": "C", "amount": 2}]
}
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


# ---------------------------------------------------------------------------
# document layer


def test_parse_game_roundtrip(m0):
    parsed = parse_game(M0_DOC)
    assert parsed == m0
    assert parse_game(serialize_game(parsed)) == parsed


def test_serialize_is_fixpoint():
    once = serialize_game(parse_game(M0_DOC))
    assert serialize_game(parse_game(once)) == once


def test_rational_forms_accepted_and_normalized():
    doc = json.loads(M0_DOC)
    doc["payoffs"][0][0] = [4, "0.5"]
    doc["payoffs"][0][1] = ["-2/4", "11/2"]
    game = parse_game(json.dumps(doc))
    rendered = serialize_game(game)
    assert '"4"' in rendered and '"1/2"' in rendered and '"-1/2"' in rendered
    assert "0.5" not in rendered


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_parse_serialize_identity_on_random_games(seed):
    game = random_game(random.Random(seed))
    assert parse_game(serialize_game(game)) == game
    rendered = serialize_game(game)
    assert serialize_game(parse_game(rendered)) == rendered


def test_parse_game_error_paths():
    with pytest.raises(ParseError) as info:
        parse_game("{", source="g.json")
    assert "g.json" in str(info.value)

    bad_dims = json.loads(M0_DOC)
    bad_dims["payoffs"][0] = bad_dims["payoffs"][0][:1]
    with pytest.raises(ParseError) as info:
        parse_game(json.dumps(bad_dims))
    assert "payoffs[0]" in str(info.value)

    bad_cell = json.loads(M0_DOC)
    bad_cell["payoffs"][1][1] = ["1", "x"]
    with pytest.raises(ParseError) as info:
        parse_game(json.dumps(bad_cell))
    assert "payoffs[1][1][1]" in str(info.value)

    bad_float = json.loads(M0_DOC)
    bad_float["payoffs"][0][0] = [0.5, "4"]
    with pytest.raises(ParseError):
        parse_game(json.dumps(bad_float))

    with pytest.raises(ParseError):
        parse_game(json.dumps({**json.loads(M0_DOC), "schema": 2}))


def test_parse_offers_validates(m0):
    offers = parse_offers(OFFER_DOC, m0.space)
    assert len(offers) == 1 and offers.offers[0].amount == 2
    doc = json.loads(OFFER_DOC)
    doc["offers"][0]["payee"] = "XX"
    with pytest.raises(ParseError) as info:
        parse_offers(json.dumps(doc), m0.space)
    assert "offers[0]" in str(info.value)
    doc = json.loads(OFFER_DOC)
    doc["offers"][0]["payee"] = "I"
    with pytest.raises(ParseError):
        parse_offers(json.dumps(doc), m0.space)


def test_parse_offers_strict_mode(m0):
    doc = json.loads(OFFER_DOC)
    doc["offers"][0]["amount"] = "-2"
    text = json.dumps(doc)
    parsed = parse_offers(text, m0.space)  # negative fine by default
    assert parsed.offers[0].amount == -2
    with pytest.raises(ParseError) as info:
        parse_offers(text, m0.space, strict=True)
    assert "strict" in str(info.value)


def test_offer_doc_roundtrip(m0):
    offers = parse_offers(OFFER_DOC, m0.space)
    assert parse_offers(serialize_offers(offers), m0.space) == offers


def test_parse_seed_assignments(m0):
    doc = json.loads(M0_DOC)
    doc["payoffs"][1][1] = None
    assignments = parse_seed_assignments(json.dumps(doc), m0)
    assert set(assignments) == {(0, 0), (0, 1), (1, 0)}
    assert assignments[(1, 0)] == (5, 0)

    doc["players"] = ["I", "III"]
    doc["strategies"] = [["C", "D"], ["C", "D"]]
    with pytest.raises(ParseError):
        parse_seed_assignments(json.dumps(doc), m0)


# ---------------------------------------------------------------------------
# commands and exit codes


def test_apply_command(files, capsys, m0, m1):
    code = run(["apply", files("m0.json", M0_DOC), files("o.json", OFFER_DOC)])
    assert code == 0
    assert parse_game(capsys.readouterr().out) == m1


def test_apply_writes_output_file(files, tmp_path, m1):
    out = tmp_path / "result.json"
    code = run(
        ["apply", files("m0.json", M0_DOC), files("o.json", OFFER_DOC), "-o", str(out)]
    )
    assert code == 0
    assert parse_game(out.read_text()) == m1


def test_check_command(files, capsys):
    m0 = files("m0.json", M0_DOC)
    m2 = files("m2.json", M2_DOC)
    assert run(["check", m0, m2]) == 0
    assert capsys.readouterr().out == "EQUIVALENT\n"

    bad = json.loads(M0_DOC)
    bad["payoffs"][1][1] = ["2", "0"]
    bad_path = files("bad.json", json.dumps(bad))
    assert run(["check", m0, bad_path]) == 1
    out = capsys.readouterr().out
    assert out.startswith("NOT-EQUIVALENT: C2 at ")


def test_synth_command(files, capsys, m0, m2):
    code = run(["synth", files("m0.json", M0_DOC), files("m2.json", M2_DOC)])
    assert code == 0
    offers = parse_offers(capsys.readouterr().out, m0.space)
    assert apply_offer_set(m0, offers) == m2


def test_synth_unreachable_exits_1(files, capsys):
    bad = json.loads(M0_DOC)
    bad["payoffs"][1][1] = ["2", "0"]
    code = run(["synth", files("m0.json", M0_DOC), files("bad.json", json.dumps(bad))])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("NOT-EQUIVALENT: C2 at ")


def test_synth_nonnegative_flag(files, capsys, m0):
    # target needs a negative net offer unless decomposed
    negative = apply_offer_set(
        m0, parse_offers(OFFER_DOC, m0.space)
    )  # M1, reachable from m0; invert direction by swapping source/target
    m1_path = files("m1.json", serialize_game(negative))
    code = run(["synth", m1_path, files("m0.json", M0_DOC), "--nonnegative"])
    assert code == 0
    offers = parse_offers(capsys.readouterr().out, m0.space)
    assert all(o.amount >= 0 for o in offers)
    assert apply_offer_set(negative, offers) == m0


def test_complete_command(files, capsys, wide_source):
    seed_doc = {
        "schema": 1,
        "players": ["A", "B"],
        "strategies": [["A1", "A2", "A3", "A4"], ["B1", "B2", "B3"]],
        "payoffs": [
            [["1", "7"], ["4", "4"], ["2", "4"]],
            [["7", "1"], None, None],
            [["3", "2"], None, None],
            [["0", "0"], None, None],
        ],
    }
    game_path = files("wide.json", serialize_game(wide_source))
    seed_path = files("seed.json", json.dumps(seed_doc))
    assert run(["complete", game_path, seed_path]) == 0
    completed = parse_game(capsys.readouterr().out)
    assert completed.payoff((1, 2)) == (12, -8)

    # explicit base naming the same profile
    assert run(["complete", game_path, seed_path, "--base", "A1,B1"]) == 0
    assert parse_game(capsys.readouterr().out) == completed

    seed_doc["payoffs"][0][0] = ["2", "7"]
    bad_path = files("seed_bad.json", json.dumps(seed_doc))
    assert run(["complete", game_path, bad_path]) == 1
    assert "payoff total" in capsys.readouterr().err

    seed_doc["payoffs"][0][0] = None
    missing_path = files("seed_missing.json", json.dumps(seed_doc))
    assert run(["complete", game_path, missing_path]) == 2
    assert "star" in capsys.readouterr().err


def test_invert_command(files, capsys, m0):
    code = run(["invert", files("m0.json", M0_DOC), files("o.json", OFFER_DOC)])
    assert code == 0
    inverse = parse_offers(capsys.readouterr().out, m0.space)
    stepped = apply_offer_set(m0, parse_offers(OFFER_DOC, m0.space))
    assert apply_offer_set(stepped, inverse) == m0


def test_dominate_command(files, capsys, m0, m2):
    code = run(["dominate", files("m0.json", M0_DOC), "--profile", "C,C"])
    assert code == 0
    offers = parse_offers(capsys.readouterr().out, m0.space)
    assert apply_offer_set(m0, offers) == m2

    assert run(["dominate", files("m.json", M0_DOC), "--profile", "C,C", "--margin", "0"]) == 1
    capsys.readouterr()
    assert run(["dominate", files("m.json", M0_DOC), "--profile", "C,X"]) == 2
    capsys.readouterr()
    assert run(["dominate", files("m.json", M0_DOC), "--profile", "C,C", "--margin", "x"]) == 2
    capsys.readouterr()


def test_analyze_command(files, capsys):
    assert run(["analyze", files("m0.json", M0_DOC)]) == 0
    out = capsys.readouterr().out
    assert "pure Nash equilibria: (D,D)" in out
    assert "D strictly dominates C" in out
    assert "constant sum: none" in out
    assert "Pareto optimal: (C,C), (C,D), (D,C)" in out


def test_analyze_json(files, capsys):
    assert run(["analyze", files("m2.json", M2_DOC), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pure_nash"] == [["C", "C"]]
    assert doc["strictly_dominant_profile"] == ["C", "C"]
    assert doc["constant_sum"] is None
    assert {pair["kind"] for pair in doc["dominance"]["I"]} == {"strict", "weak"}


def test_demo_pd(capsys):
    assert run(["demo", "pd"]) == 0
    out = capsys.readouterr().out
    for row in ("4,4 | 0,5", "5,0 | 1,1", "2,6 | 0,5", "3,2 | 1,1", "4,4 | 2,3"):
        assert row in out
    for nash in ("(D,D)", "(D,C)", "(C,C)"):
        assert f"pure Nash equilibria: {nash}" in out


def test_missing_file_exits_2(capsys):
    assert run(["analyze", "does-not-exist.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_json_exits_2(files, capsys):
    assert run(["analyze", files("broken.json", "{nope")]) == 2
    err = capsys.readouterr().err
    assert "broken.json" in err and "line 1" in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        run(["not-a-command"])
    assert info.value.code == 2


def test_strict_flag_rejects_negative(files, capsys):
    doc = json.loads(OFFER_DOC)
    doc["offers"][0]["amount"] = "-1"
    code = run(
        ["apply", files("m0.json", M0_DOC), files("neg.json", json.dumps(doc)), "--strict"]
    )
    assert code == 2
    assert "strict" in capsys.readouterr().err


def test_console_script_entry_point():
    result = subprocess.run(["preplay", "demo", "pd"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "pure Nash equilibria: (C,C)" in result.stdout


def test_format_matrix_three_person_fallback():
    cube = make_game(
        ("a", "b", "c"),
        (("x", "y"), ("x", "y"), ("x", "y")),
        {
            (sa, sb, sc): (1, 2, 3)
            for sa in ("x", "y")
            for sb in ("x", "y")
            for sc in ("x", "y")
        },
    )
    text = format_matrix(cube)
    assert "(x,x,x): 1,2,3" in text
