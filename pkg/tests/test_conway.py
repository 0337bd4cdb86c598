import pytest

from qalt.conway import (MontesinosPresentation, ParseError, RationalTangleWord, designated_slot,
                         load_table, parse_montesinos, parse_tangle_word, read_table,
                         render_montesinos, render_word, word)


@pytest.mark.parametrize("text, entries, tail", [
    ("221", (2, 2, 1), False),
    ("2-", (2, -1), True),
    ("(-2)(-1)", (-2, -1), False),
    ("21-", (2, 1, -1), True),
    ("-3", (-3,), False),
    ("(12)3", (12, 3), False),
    ("12,3", (12, 3), False),
    ("2,-1", (2, -1), True),
    ("(-2),(-1)", (-2, -1), False),
])
def test_parse_tangle_word(text, entries, tail):
    w = parse_tangle_word(text)
    assert w.entries == entries
    assert w.horizontal_tail is tail


@pytest.mark.parametrize("text, position", [
    ("0", 0),
    ("203", 1),
    ("", 0),
    ("2x", 1),
    ("(2", 0),
    ("2,,3", 2),
])
def test_parse_tangle_word_errors(text, position):
    with pytest.raises(ParseError) as exc:
        parse_tangle_word(text)
    assert exc.value.position == position


def test_parse_montesinos_examples():
    p = parse_montesinos("[221;22;2-]")
    assert [w.entries for w in p.tangles] == [(2, 2, 1), (2, 2), (2, -1)]
    assert p.half_twists == 0
    p = parse_montesinos("[41;3;3-]")
    assert [w.entries for w in p.tangles] == [(4, 1), (3,), (3, -1)]
    assert len(parse_montesinos("[221]").tangles) == 1


@pytest.mark.parametrize("text", ["221;22", "[221;;2-]", "[]", "[22;0]", "[22;2-"])
def test_parse_montesinos_errors(text):
    with pytest.raises(ParseError):
        parse_montesinos(text)


def test_designated_slot():
    p, i = designated_slot("[*23*;211;2-]")
    assert i == 0 and p.tangles[0].entries == (2, 3)
    p, i = designated_slot("[21111;*3*;2-]")
    assert i == 1 and p.tangles[1].entries == (3,)
    with pytest.raises(ParseError):
        designated_slot("[23;211;2-]")
    with pytest.raises(ParseError):
        designated_slot("[*23*;*211*;2-]")


def test_word_validation():
    with pytest.raises(ValueError):
        RationalTangleWord(())
    with pytest.raises(ValueError):
        RationalTangleWord((2, 0))
    with pytest.raises(ValueError):
        MontesinosPresentation(())
    with pytest.raises(ValueError):
        MontesinosPresentation((word(2),), -1)


def test_tables_shipped():
    t1, t2 = load_table("table1.csv"), load_table("table2.csv")
    assert len(t1) == 23 and len(t2) == 17
    assert (t1[0].knot, t1[0].conway) == ("11n2", "[221;211;2-]")
    assert (t2[0].knot, t2[0].conway) == ("11n1", "[*23*;211;2-]")


@pytest.mark.parametrize("name", ["table1.csv", "table2.csv"])
def test_round_trip_tables(name):
    for row in load_table(name):
        p = parse_montesinos(row.conway)
        again = parse_montesinos(render_montesinos(p))
        assert again == p
        if name == "table2.csv":
            _, slot = designated_slot(row.conway)
            assert render_montesinos(p, slot) == row.conway
        else:
            assert render_montesinos(p) == row.conway


def test_render_word_multi_digit():
    assert render_word(RationalTangleWord((12, -3))) == "(12)(-3)"
    assert parse_tangle_word(render_word(RationalTangleWord((12, -3)))).entries == (12, -3)


def test_read_table_header_and_empty(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert read_table(empty) == []
    bad = tmp_path / "bad.csv"
    bad.write_text("name,notation\n11n2,[221;211;2-]\n")
    with pytest.raises(ValueError):
        read_table(bad)
