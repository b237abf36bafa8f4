import pytest

from normal_cover import utils
from normal_cover.errors import InputError


def test_bits():
    assert utils.popcount(0b101101) == 4
    assert list(utils.iter_bits(0b1011)) == [0, 1, 3]
    assert list(utils.iter_bits(0)) == []


def test_parse_int_list():
    assert utils.parse_int_list("1, 2 3") == [1, 2, 3]
    assert utils.parse_int_list("") == []
    with pytest.raises(InputError):
        utils.parse_int_list("1,a")


def test_parse_range():
    assert utils.parse_range("6..10") == (6, 10)
    assert utils.parse_range("7") == (7, 7)
    for text in ("10..6", "a..b", ""):
        with pytest.raises(InputError):
            utils.parse_range(text)


def test_parse_groups():
    assert utils.parse_groups("s, a") == ["S", "A"]
    assert utils.parse_groups("A,A") == ["A"]
    with pytest.raises(InputError):
        utils.parse_groups("X")


def test_simplify_number():
    assert utils.simplify_number(0) == "0"
    assert utils.simplify_number(950) == "950"
    assert utils.simplify_number(12345) == "12K"
