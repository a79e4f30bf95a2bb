import json

import pytest
from hypothesis import given

from conftest import P, W
from opgs.coeffs import LAMBDA, Laurent
from opgs.poly import OpPoly
from opgs.syntax import (
    ParseError,
    identifiers,
    parse_context,
    parse_poly,
    parse_word,
    poly_from_json,
    poly_to_json,
    render,
    word_from_json,
    word_to_json,
)
from opgs.terms import Mode, ModeError, Word, make_alphabet
from strategies import ALPHA, polys, words_or_unit

N = Mode.NONUNITARY


@pytest.mark.parametrize(
    "text, shown",
    [
        ("[x]y - [x y] + x[y]", "[x]y - [x y] + x[y]"),
        ("[1] + L", "[1] + L"),
        ("-x[y] + [x y]", "[x y] - x[y]"),
        ("2/3 x - L^-2 [x]", "-L^-2 [x] + 2/3 x"),
        ("(L + 1) [x] - 1", "(L + 1) [x] - 1"),
        ("x - x", "0"),
        ("1", "1"),
        ("λ x + lambda y", "L y + L x"),
        ("3 * L * [x]", "3 L [x]"),
        ("(2 L) / (4 L^3) x", "1/2 L^-2 x"),
    ],
)
def test_parse_render_examples(text, shown):
    assert render(P(text)) == shown
    assert P(shown) == P(text)


def test_coefficient_grammar():
    assert P("L^-1 [x]").coeff(W("[x]")) == LAMBDA.inverse()
    assert P("(L - 1)(L + 1) x").coeff(W("x")) == LAMBDA * LAMBDA - 1
    assert P("-(-2) x").coeff(W("x")) == 2
    assert P("2 L^2 x").coeff(W("x")) == Laurent({2: 2})


@pytest.mark.parametrize(
    "text",
    ["[x", "x]", "x +", "[x] ++ y", "x / (1 + L)", "L^ x", "q", "2 x )", ""],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, "x,y")


def test_parse_error_points_at_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x + ]", "x")
    assert exc.value.pos == 4
    assert "^" in str(exc.value)


def test_alphabets():
    a = make_alphabet(["y", "x"])
    w = parse_word("x y", a)
    assert [f.rank for f in w.factors] == [1, 0]
    assert parse_word("b a") == parse_word("b a", "a,b")
    assert parse_word("x", ["x"]) == parse_word("x", make_alphabet(["x"]))
    assert identifiers("[b]a + L c") == ["a", "b", "c"]


def test_modes():
    with pytest.raises(ModeError):
        parse_word("[1]", "x", N)
    with pytest.raises(ModeError):
        parse_poly("x + 1", "x", N)
    assert parse_word("1") == Word()


def test_contexts():
    q = parse_context("[x *]z", "x,y,z")
    assert q(W("y")) == W("[x y]z")
    assert str(q) == "[x *]z"
    assert parse_context("*").is_hole
    for bad in ("x", "* *", "[*][*]"):
        with pytest.raises(ParseError):
            parse_context(bad, "x")


def test_json_shapes():
    assert word_to_json(W("x[y[1]]")) == ["cat", "x", ["op", ["cat", "y", ["op", ["one"]]]]]
    assert word_to_json(Word()) == ["one"]
    f = P("[x] - 1/2 L^-1 y")
    assert poly_to_json(f) == [
        {"coeff": {"0": "1"}, "word": ["cat", ["op", ["cat", "x"]]]},
        {"coeff": {"-1": "-1/2"}, "word": ["cat", "y"]},
    ]
    assert poly_from_json(json.dumps(poly_to_json(f)), "x,y,z,u,v") == f
    with pytest.raises(ParseError):
        word_from_json(["cat", "q"], ALPHA)
    with pytest.raises(ParseError):
        word_from_json(["op"], ALPHA)


@given(polys())
def test_round_trip_text(f):
    assert parse_poly(render(f), ALPHA) == f


@given(polys(mode=N))
def test_round_trip_nonunitary(f):
    assert parse_poly(render(f), ALPHA, N) == f


@given(polys())
def test_round_trip_json(f):
    assert poly_from_json(render(f, "json"), ALPHA) == f


@given(words_or_unit())
def test_word_round_trip(w):
    assert parse_word(str(w), ALPHA) == w
    assert word_from_json(word_to_json(w), ALPHA) == w


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(OpPoly.zero(), "latex")
