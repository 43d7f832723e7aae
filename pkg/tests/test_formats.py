import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from pfoliation import FieldSpec, LogPresentation, construct_exceptional, construct_log
from pfoliation.census import random_linear_pullback
from pfoliation.errors import ParseError
from pfoliation.formats import (dump_form, dump_log, dump_poly, form_to_json, parse_form, parse_log,
                                parse_poly_file)

from helpers import poly, rand_form, seeds

F4 = FieldSpec.get(2, 2)


def test_form_file_layout():
    w = construct_exceptional(5).form
    obj = form_to_json(w)
    assert obj["field"] == {"p": 5, "k": 1}
    assert obj["nvars"] == 4 and obj["q"] == 1
    assert [t["idx"] for t in obj["terms"]] == [[0], [1], [2], [3]]


@settings(deadline=None)
@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]), seeds(), st.integers(1, 3))
def test_form_round_trip_is_byte_exact(pk, seed, q):
    spec = FieldSpec.get(*pk)
    w = rand_form(spec, 4, q, q + 2, random.Random(seed))
    text = dump_form(w)
    back = parse_form(text)
    assert back == w
    assert dump_form(back) == text


def test_log_round_trip():
    t = F4.gen
    L = LogPresentation([t, F4.one], [poly(F4, 4, "x0*x1 + [0,1]*x2^2"), poly(F4, 4, "x3^2 + x1*x2")])
    text = dump_log(L)
    back = parse_log(text)
    assert back.lambdas == L.lambdas and back.factors == L.factors
    assert dump_log(back) == text
    assert json.loads(text)["lambdas"] == ["[0,1]", "[1,0]"]


def test_poly_file():
    spec = FieldSpec.get(5)
    h = parse_poly_file("# three lines\n\nx0*x1*x2\n", spec)
    assert h.nvars == 3 and h == poly(spec, 3, "x0*x1*x2")
    assert parse_poly_file(dump_poly(h), spec) == h
    assert parse_poly_file("x0", spec, nvars=4).nvars == 4
    with pytest.raises(ParseError):
        parse_poly_file("x0\nx1\n", spec)


@pytest.mark.parametrize("text,line", [
    ('{"field": {"p": 5}, "nvars": 4,\n "q": 1, "terms": [', 2),
    ('{"field": {"p": 4}, "nvars": 2, "q": 1, "terms": []}', 1),
    ('{"field": {"p": 5}, "nvars": 2, "q": 1,\n "terms": [{"idx": [0], "coeff": "x0 + x9"}]}', 2),
    ('{"field": {"p": 5}, "nvars": 2, "q": 1, "terms": [{"idx": [1, 0], "coeff": "x0"}]}', 1),
])
def test_parse_errors_report_line_and_column(text, line):
    with pytest.raises(ParseError) as exc:
        parse_form(text)
    assert exc.value.line == line
    assert exc.value.column >= 1


def test_repeated_index_is_rejected():
    text = '{"field": {"p": 5}, "nvars": 2, "q": 1, "terms": [{"idx": [0], "coeff": "x0"}, {"idx": [0], "coeff": "x1"}]}'
    with pytest.raises(ParseError):
        parse_form(text)
