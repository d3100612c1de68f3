import pytest
from hypothesis import given, settings, strategies as st

from ktdist.matrix_io import (
    MatrixFormatError,
    format_csv,
    format_json,
    format_text,
    parse_csv,
    parse_json,
    parse_matrix,
    parse_text,
)

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-10**30, 10**30), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_round_trips(m):
    assert parse_text(format_text(m)) == m
    assert parse_json(format_json(m)) == m
    assert parse_csv(format_csv(m))[0] == m
    for text in (format_text(m), format_json(m), format_csv(m)):
        assert parse_matrix(text) == m


def test_text_layout():
    assert format_text([[0, 1], [1, 0]]) == "2 2\n0 1\n1 0\n"


def test_big_numbers_are_plain_decimal():
    text = format_text([[10**40]])
    assert "e" not in text and str(10**40) in text


def test_csv_labels():
    text = format_csv([[0, 1], [1, 0]], ["01", "02"])
    assert text.splitlines()[0] == ",01,02"
    m, labels = parse_csv(text)
    assert m == [[0, 1], [1, 0]] and labels == ["01", "02"]


@pytest.mark.parametrize(
    "text,where",
    [
        ("", "line 1"),
        ("2\n1 2\n", "line 1"),
        ("2 2\n1 2\n", "line 3"),
        ("2 2\n1 2\n3\n", "line 3, column 2"),
        ("2 2\n1 2\n3 x\n", "line 3, column 2"),
    ],
)
def test_text_diagnostics(text, where):
    with pytest.raises(MatrixFormatError, match=where):
        parse_text(text)


def test_json_diagnostics():
    with pytest.raises(MatrixFormatError, match="line 1"):
        parse_json('{"rows": 1,')
    with pytest.raises(MatrixFormatError, match="row 1, column 2"):
        parse_json('{"rows": 1, "cols": 2, "data": [[1, 1.5]]}')
