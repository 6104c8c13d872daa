import pytest
from hypothesis import given
from hypothesis import strategies as st

from huffkit.bits import EMPTY, Bits


def bits_strategy(max_length=64):
    return st.integers(0, max_length).flatmap(
        lambda length: st.builds(Bits, st.integers(0, (1 << length) - 1), st.just(length))
    )


def test_str_goldens():
    assert str(Bits(6, 3)) == "110"
    assert str(Bits(0, 3)) == "000"
    assert str(Bits(0, 0)) == ""
    assert str(Bits(1, 1)) == "1"


def test_value_must_fit():
    with pytest.raises(ValueError):
        Bits(8, 3)
    with pytest.raises(ValueError):
        Bits(-1, 3)
    with pytest.raises(ValueError):
        Bits(0, -1)


def test_from_string_rejects_non_bits():
    with pytest.raises(ValueError):
        Bits.from_string("10x")


def test_from_string_empty():
    assert Bits.from_string("") == EMPTY


@given(bits_strategy())
def test_string_roundtrip(b):
    assert Bits.from_string(str(b)) == b
    assert len(str(b)) == len(b) == b.length


@given(bits_strategy())
def test_iteration_is_msb_first(b):
    assert "".join(str(bit) for bit in b) == str(b)


@given(bits_strategy(32), bits_strategy(32))
def test_concatenation(a, b):
    joined = a + b
    assert str(joined) == str(a) + str(b)
    assert joined.length == a.length + b.length


@given(bits_strategy(32))
def test_empty_is_concat_identity(b):
    assert EMPTY + b == b
    assert b + EMPTY == b


@given(bits_strategy(24), bits_strategy(24))
def test_prefix_matches_string_prefix(a, b):
    assert a.is_prefix_of(b) == str(b).startswith(str(a))


def test_prefix_goldens():
    assert Bits.from_string("0").is_prefix_of(Bits.from_string("01"))
    assert not Bits.from_string("1").is_prefix_of(Bits.from_string("01"))
    assert not Bits.from_string("011").is_prefix_of(Bits.from_string("01"))
    assert EMPTY.is_prefix_of(Bits.from_string("0"))


def test_equality_includes_length():
    # "0" and "00" share the value 0 but are different strings
    assert Bits(0, 1) != Bits(0, 2)
    assert hash(Bits(5, 4)) == hash(Bits(5, 4))
