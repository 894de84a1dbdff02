from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivergrad.errors import ParseError, QuiverError
from quivergrad.quiver import (Element, Quiver, all_paths, format_element, lazy, multiply,
                               parse_element, paths_between, unit)

Q = Quiver(("e", "f"), (("a", "e", "f"), ("b", "e", "f"), ("a*", "f", "e"), ("b*", "f", "e")))


def test_parse_and_print():
    x = parse_element(Q, "a.a* + b.b*")
    assert format_element(x) == "a.a* + b.b*"
    y = parse_element(Q, "3/2*a* - e")
    assert y.terms[lazy("e")] == -1
    assert y.terms[Q.path(["a*"])] == Fraction(3, 2)


def test_zero_prints_as_zero():
    x = parse_element(Q, "a - a")
    assert not x
    assert format_element(x) == "0"


@pytest.mark.parametrize("text", ["", "a +", "a..b", "a.b", "q", "1/0*a", "a b"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_element(Q, text)


def test_bad_quivers():
    with pytest.raises(QuiverError):
        Quiver(("e", "e"))
    with pytest.raises(QuiverError):
        Quiver(("e",), (("a", "e", "x"),))
    with pytest.raises(QuiverError):
        Quiver(("e",), (("a", "e", "e"), ("a", "e", "e")))
    with pytest.raises(QuiverError):
        Quiver(("e",), (("e", "e", "e"),))
    with pytest.raises(QuiverError):
        Q.path(["a", "b"])


def test_multiplication_left_to_right():
    a = parse_element(Q, "a")
    ast = parse_element(Q, "a*")
    assert format_element(multiply(a, ast)) == "a.a*"
    # f then e: does not compose
    assert not multiply(ast, ast)
    one = unit(Q)
    assert multiply(one, a) == a and multiply(a, one) == a


def test_path_counts():
    # paths of length d from e to e in the double Kronecker quiver: 4^(d/2)
    assert len(paths_between(Q, "e", "e", 2)) == 4
    assert len(paths_between(Q, "e", "f", 3)) == 8
    assert len(all_paths(Q, 0)) == 2


coef = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
words = st.sampled_from(["a.a*", "b.b*", "a.b*", "e", "a.a*.a.b*", "a.b*.b.a*"])


@given(st.lists(st.tuples(coef, words), min_size=1, max_size=4))
@settings(max_examples=100, deadline=None)
def test_round_trip(terms):
    x = Element([(Q.path(w.split(".")) if w != "e" else lazy("e"), c) for c, w in terms])
    if not x:
        return
    assert parse_element(Q, format_element(x)) == x
