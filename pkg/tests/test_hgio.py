import json

import pytest
from hypothesis import given

from conftest import hypergraphs
from shadowlab.construct import prop16_family
from shadowlab.core import Hypergraph, ShadowLabError
from shadowlab.hgio import ParseError, format_json, format_text, parse_any, parse_json, parse_text


@given(hypergraphs())
def test_text_round_trip(h):
    text = format_text(h, ["a comment"])
    back = parse_text(text)
    assert back == h and back.n == h.n
    assert format_text(back, ["a comment"]) == text


@given(hypergraphs())
def test_json_round_trip(h):
    text = format_json(h)
    assert parse_json(text) == h
    assert format_json(parse_any(text)) == text


def test_known_text():
    h = Hypergraph(2, 4, [(3, 4), (1, 2)])
    assert format_text(h) == "2 4 2\n1 2\n3 4\n"
    assert json.loads(format_json(h)) == {"k": 2, "n": 4, "edges": [[1, 2], [3, 4]]}


def test_comments_and_blank_lines():
    text = "# header follows\n\n3 5 2\n# mid comment\n1 2 3\n\n2 4 5\n"
    assert parse_text(text).edges == ((1, 2, 3), (2, 4, 5))


def test_isolated_vertices_survive():
    h = parse_text("2 9 1\n1 2\n")
    assert h.n == 9 and format_text(h).startswith("2 9 1")


def test_prop16_round_trip():
    h = prop16_family(3, 4)
    assert parse_any(format_text(h)) == h


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("3 5 2\n1 2 3\n", 2),
        ("3 5 1\n1 2\n", 2),
        ("3 5 1\n1 2 9\n", 2),
        ("3 5 1\n3 2 1\n", 2),
        ("3 5 2\n1 2 3\n# c\n1 2 3\n", 4),
        ("3 5\n", 1),
        ("# only\n3 x 1\n1 2 3\n", 2),
        ("3 5 1\n1 2 a\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_missing_header():
    with pytest.raises(ParseError):
        parse_text("# nothing here\n")


@pytest.mark.parametrize(
    "text",
    [
        '{"k": 2, "n": 3}',
        '{"k": 2, "n": 3, "edges": [[2, 1]]}',
        '{"k": 2, "n": 3, "edges": [[1, "2"]]}',
        '{"k": 2, "n": 3, "edges": [[1, 4]]}',
        '{"k": 2, ',
    ],
)
def test_json_errors(text):
    with pytest.raises(ShadowLabError):
        parse_any(text)
