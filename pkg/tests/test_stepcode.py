import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from randef.errors import (
    DuplicateNumberInDraw,
    InvalidDecode,
    InvalidSequence,
    MalformedBits,
    OutOfRange,
)
from randef.stepcode import (
    CODEBOOK,
    REPEAT,
    BitString,
    CodecParams,
    baseline_bits,
    build_codebook,
    compressed_length,
    decode,
    deficiency,
    encode,
    to_steps,
    validate_sequence,
)

valid_sequences = st.lists(
    st.integers(1, 45), min_size=6, max_size=6, unique=True
).map(lambda ns: tuple(sorted(ns)))


# --- codebook ---

def test_codeword_lengths_match_published_table():
    expected = {1: 2, REPEAT: 2, 2: 3, 3: 3, 4: 4, 5: 5, 6: 6, 7: 7, 8: 7}
    expected.update({s: 8 for s in range(9, 41)})
    for sym, length in expected.items():
        assert CODEBOOK.codeword_length(sym) == length
    assert CODEBOOK.codeword_length(22) == 8


def test_kraft_sum_is_exactly_one():
    # 2*2^-2 + 2*2^-3 + 2^-4 + 2^-5 + 2^-6 + 2*2^-7 + 32*2^-8
    assert CODEBOOK.kraft_sum() == Fraction(1)


def test_prefix_free_pairwise():
    words = list(CODEBOOK.entries.values())
    assert len(set(words)) == len(words)
    for a in words:
        for b in words:
            if a is not b:
                assert not b.startswith(a)


def test_canonical_assignment():
    assert CODEBOOK.codeword(1) == "00"
    assert CODEBOOK.codeword(REPEAT) == "01"
    assert CODEBOOK.codeword(2) == "100"
    assert CODEBOOK.codeword(9) == "11100000"
    assert CODEBOOK.codeword(40) == "11111111"
    assert build_codebook().entries == CODEBOOK.entries


# --- steps ---

def test_to_steps_worked_example():
    assert to_steps((10, 32, 33, 35, 39, 45)).steps == (10, 22, 1, 2, 4, 6)


def test_to_steps_consecutive_run():
    assert to_steps((1, 2, 3, 4, 5, 6)).steps == (1, 1, 1, 1, 1, 1)


def test_to_steps_most_deficient_draw():
    # direct subtraction; total cost cross-checks to the published 20 bits
    assert to_steps((2, 4, 32, 34, 36, 37)).steps == (2, 2, 28, 2, 2, 1)
    assert compressed_length((2, 4, 32, 34, 36, 37)) == 20


def test_to_steps_rejects_invalid():
    with pytest.raises(InvalidSequence):
        to_steps((1, 2, 3, 4, 5))
    with pytest.raises(InvalidSequence):
        to_steps((6, 5, 4, 3, 2, 1))
    with pytest.raises(DuplicateNumberInDraw):
        validate_sequence((1, 1, 3, 4, 5, 6))
    with pytest.raises(OutOfRange):
        validate_sequence((1, 2, 3, 4, 5, 46))


# --- encode / decode ---

@pytest.mark.parametrize(
    "seq,bits",
    [
        ((10, 32, 33, 35, 39, 45), 31),
        ((1, 2, 3, 4, 5, 6), 12),
        ((2, 4, 32, 34, 36, 37), 20),
        ((7, 13, 20, 29, 36, 45), 43),
        ((9, 20, 26, 27, 34, 45), 39),
    ],
)
def test_published_bit_counts(seq, bits):
    assert len(encode(seq)) == bits
    assert compressed_length(seq) == bits


def test_repeat_is_mandatory():
    # +1 then five repeats: 2 + 5*2 = 12 bits
    assert encode((1, 2, 3, 4, 5, 6)).bits == "00" + "01" * 5


def test_decode_round_trips_worked_examples():
    for seq in [(10, 32, 33, 35, 39, 45), (1, 2, 3, 4, 5, 6)]:
        assert decode(encode(seq)) == seq


def test_decode_rejects_leading_repeat():
    with pytest.raises(InvalidDecode):
        decode(CODEBOOK.codeword(REPEAT) + CODEBOOK.codeword(1) * 5)


def test_decode_rejects_garbage_and_slack():
    with pytest.raises(MalformedBits):
        decode("1")  # ends mid-codeword
    with pytest.raises(InvalidDecode):
        decode(encode((1, 2, 3, 4, 5, 6)).bits + "00")  # trailing symbol


def test_decode_rejects_oversum():
    # six literal +8 steps parse fine but sum to 48 > 45
    with pytest.raises(InvalidDecode):
        decode(CODEBOOK.codeword(8) * 6)


def test_encode_is_deterministic():
    a = encode((3, 9, 14, 27, 33, 41))
    b = encode((3, 9, 14, 27, 33, 41))
    assert a == b


@settings(max_examples=300)
@given(valid_sequences)
def test_round_trip_property(seq):
    assert decode(encode(seq)) == seq


def test_generalized_params_reject_steps_beyond_table():
    params = CodecParams(pool_size=60, draw_count=6)
    with pytest.raises(InvalidSequence):
        encode((1, 2, 3, 4, 5, 60), params)  # step +55 has no codeword


# --- bit string serialization ---

def test_hex_round_trip():
    bits = encode((10, 32, 33, 35, 39, 45))
    blob = bits.to_json()
    assert blob["bit_len"] == 31
    assert BitString.from_json(blob) == bits


@settings(max_examples=100)
@given(valid_sequences)
def test_hex_round_trip_property(seq):
    bits = encode(seq)
    assert BitString.from_hex(bits.to_hex(), len(bits)) == bits


# --- baseline and deficiency ---

def test_baseline_bits():
    assert baseline_bits() == pytest.approx(22.96, abs=0.01)
    assert baseline_bits() == math.log2(8145060)
    assert baseline_bits(CodecParams(2, 1)) == 1.0
    assert baseline_bits(CodecParams(45, 45)) == 0.0


def test_deficiency_signs():
    assert deficiency((1, 2, 3, 4, 5, 6)) == pytest.approx(22.96 - 12, abs=0.01)
    assert deficiency((9, 20, 26, 27, 34, 45)) == pytest.approx(22.96 - 39, abs=0.01)
    assert deficiency((2, 4, 32, 34, 36, 37)) == pytest.approx(2.96, abs=0.01)
