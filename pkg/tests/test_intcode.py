import math

import pytest
from hypothesis import given
import hypothesis.strategies as st

from randef.errors import MalformedBits
from randef.intcode import gamma_decode, gamma_encode, gamma_length, signed_delta_length


@pytest.mark.parametrize("n,length", [(1, 1), (2, 3), (3, 3), (4, 5), (7, 5), (8, 7), (64, 13)])
def test_gamma_lengths(n, length):
    assert gamma_length(n) == length
    assert len(gamma_encode(n)) == length


@given(st.integers(1, 10 ** 9))
def test_gamma_round_trip(n):
    value, pos = gamma_decode(gamma_encode(n))
    assert value == n
    assert pos == gamma_length(n)


@given(st.integers(1, 10 ** 6))
def test_gamma_length_bound(n):
    assert gamma_length(n) <= 2 * math.log2(n) + 1


def test_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_encode(0)
    with pytest.raises(ValueError):
        gamma_length(0)


def test_gamma_decode_truncated():
    with pytest.raises(MalformedBits):
        gamma_decode("001")


def test_signed_delta_lengths():
    assert signed_delta_length(0) == 1
    assert signed_delta_length(1) == 3
    assert signed_delta_length(-1) == 3
    assert signed_delta_length(128) == 2 + gamma_length(128)
