"""Step-size Huffman codec for ordered lottery sequences.

A draw of six ascending numbers is rewritten as six step sizes (the first
number counts as the first step) and each step is emitted as a codeword
from a fixed canonical prefix code:

    symbol    length   symbol    length
    +1        2        +6        6
    REPEAT    2        +7, +8    7
    +2, +3    3        +9..+40   8
    +4        4
    +5        5

REPEAT encodes a step equal to the immediately preceding step and is
mandatory whenever it applies; it is illegal as the first symbol.
Codewords are canonical: at each length, leaves take the numerically
smallest available values in the order listed above, so the code is
complete (Kraft sum exactly 1) and decoding is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateNumberInDraw,
    InvalidDecode,
    InvalidSequence,
    MalformedBits,
    OutOfRange,
)

REPEAT = "repeat"

# (codeword length, symbols at that length, in canonical order)
_CODE_TABLE = (
    (2, (1, REPEAT)),
    (3, (2, 3)),
    (4, (4,)),
    (5, (5,)),
    (6, (6,)),
    (7, (7, 8)),
    (8, tuple(range(9, 41))),
)

MAX_STEP = 40


@dataclass(frozen=True)
class CodecParams:
    pool_size: int = 45
    draw_count: int = 6

    def __post_init__(self):
        if self.draw_count < 1:
            raise InvalidSequence(f"draw_count must be >= 1, got {self.draw_count}")
        if self.pool_size < self.draw_count:
            raise InvalidSequence(
                f"pool_size {self.pool_size} smaller than draw_count {self.draw_count}"
            )


DEFAULT_PARAMS = CodecParams()


def validate_sequence(numbers: Sequence[int], params: CodecParams = DEFAULT_PARAMS) -> tuple[int, ...]:
    """Validate and return the numbers as a tuple; raises InvalidSequence subclasses."""
    nums = tuple(int(n) for n in numbers)
    if len(nums) != params.draw_count:
        raise InvalidSequence(
            f"expected {params.draw_count} numbers, got {len(nums)}"
        )
    if len(set(nums)) != len(nums):
        raise DuplicateNumberInDraw(f"duplicate number in {nums}")
    for n in nums:
        if not 1 <= n <= params.pool_size:
            raise OutOfRange(f"number {n} outside [1, {params.pool_size}]")
    if any(a >= b for a, b in zip(nums, nums[1:])):
        raise InvalidSequence(f"numbers not strictly increasing: {nums}")
    return nums


@dataclass(frozen=True)
class LotterySequence:
    numbers: tuple[int, ...]

    @classmethod
    def make(cls, numbers: Iterable[int], params: CodecParams = DEFAULT_PARAMS) -> "LotterySequence":
        return cls(validate_sequence(tuple(numbers), params))

    def __iter__(self):
        return iter(self.numbers)


def _numbers(seq) -> tuple[int, ...]:
    if isinstance(seq, LotterySequence):
        return seq.numbers
    return tuple(int(n) for n in seq)


@dataclass(frozen=True)
class BitString:
    """An ordered bit sequence, first-transmitted bit first."""

    bits: str

    def __post_init__(self):
        if any(b not in "01" for b in self.bits):
            raise MalformedBits("non-binary character in bit string")

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def length(self) -> int:
        return len(self.bits)

    def to_hex(self) -> str:
        """Pack bits big-endian (first bit = MSB of first byte), zero-padded."""
        padded = self.bits + "0" * (-len(self.bits) % 8)
        return bytes(
            int(padded[i:i + 8], 2) for i in range(0, len(padded), 8)
        ).hex()

    @classmethod
    def from_hex(cls, hex_str: str, bit_len: int) -> "BitString":
        raw = bytes.fromhex(hex_str)
        if bit_len > 8 * len(raw):
            raise MalformedBits(f"bit_len {bit_len} exceeds {8 * len(raw)} available bits")
        all_bits = "".join(format(byte, "08b") for byte in raw)
        return cls(all_bits[:bit_len])

    def to_json(self) -> dict:
        return {"bits_hex": self.to_hex(), "bit_len": len(self.bits)}

    @classmethod
    def from_json(cls, obj: dict) -> "BitString":
        return cls.from_hex(obj["bits_hex"], int(obj["bit_len"]))


@dataclass(frozen=True)
class Codebook:
    """Complete prefix code over step symbols; immutable and shareable."""

    entries: dict  # symbol -> codeword string

    def codeword(self, symbol) -> str:
        return self.entries[symbol]

    def codeword_length(self, symbol) -> int:
        return len(self.entries[symbol])

    def kraft_sum(self) -> Fraction:
        return sum(
            (Fraction(1, 2 ** len(cw)) for cw in self.entries.values()),
            Fraction(0),
        )

    def decode_map(self) -> dict:
        return {cw: sym for sym, cw in self.entries.items()}

    def rows(self) -> list[tuple[str, int, str]]:
        """(symbol, length, bits) rows for the --dump table."""
        out = []
        for sym, cw in self.entries.items():
            label = REPEAT if sym == REPEAT else f"+{sym}"
            out.append((label, len(cw), cw))
        return out


def build_codebook() -> Codebook:
    entries = {}
    code = 0
    prev_len = 0
    for length, symbols in _CODE_TABLE:
        code <<= length - prev_len
        for sym in symbols:
            entries[sym] = format(code, f"0{length}b")
            code += 1
        prev_len = length
    return Codebook(entries)


CODEBOOK = build_codebook()

# step value -> codeword length, index 0 unused
STEP_LENGTHS = [0] + [len(CODEBOOK.entries[s]) for s in range(1, MAX_STEP + 1)]
REPEAT_LENGTH = len(CODEBOOK.entries[REPEAT])


@dataclass(frozen=True)
class StepVector:
    steps: tuple[int, ...]


def to_steps(seq, params: CodecParams = DEFAULT_PARAMS) -> StepVector:
    nums = validate_sequence(_numbers(seq), params)
    steps = (nums[0],) + tuple(b - a for a, b in zip(nums, nums[1:]))
    return StepVector(steps)


def _step_symbols(steps: Sequence[int]) -> list:
    """Steps to emitted symbols; REPEAT is mandatory after an equal step."""
    symbols = []
    prev = None
    for st in steps:
        if st > MAX_STEP:
            raise InvalidSequence(f"step +{st} exceeds the code's maximum +{MAX_STEP}")
        symbols.append(REPEAT if st == prev else st)
        prev = st
    return symbols


def encode(seq, params: CodecParams = DEFAULT_PARAMS) -> BitString:
    steps = to_steps(seq, params).steps
    return BitString("".join(CODEBOOK.entries[s] for s in _step_symbols(steps)))


def decode(bits, params: CodecParams = DEFAULT_PARAMS) -> tuple[int, ...]:
    """Inverse of encode; expects exactly draw_count symbols and no slack bits."""
    raw = bits.bits if isinstance(bits, BitString) else str(bits)
    table = CODEBOOK.decode_map()
    max_len = max(len(cw) for cw in table)
    pos = 0
    steps: list[int] = []
    while len(steps) < params.draw_count:
        for width in range(2, max_len + 1):
            if pos + width > len(raw):
                raise MalformedBits("bit string ends mid-codeword")
            sym = table.get(raw[pos:pos + width])
            if sym is not None:
                pos += width
                break
        else:
            raise MalformedBits(f"no codeword at bit offset {pos}")
        if sym == REPEAT:
            if not steps:
                raise InvalidDecode("REPEAT cannot be the first symbol")
            steps.append(steps[-1])
        else:
            steps.append(sym)
    if pos != len(raw):
        raise InvalidDecode(f"{len(raw) - pos} trailing bits after {params.draw_count} symbols")
    if sum(steps) > params.pool_size:
        raise InvalidDecode(f"steps sum to {sum(steps)} > pool size {params.pool_size}")
    numbers = []
    total = 0
    for st in steps:
        total += st
        numbers.append(total)
    return tuple(numbers)


def compressed_length(seq, params: CodecParams = DEFAULT_PARAMS) -> int:
    return len(encode(seq, params))


def baseline_bits(params: CodecParams = DEFAULT_PARAMS) -> float:
    """log2 of the number of possible draws; the perfect-code benchmark."""
    return math.log2(math.comb(params.pool_size, params.draw_count))


def deficiency(seq, params: CodecParams = DEFAULT_PARAMS) -> float:
    """baseline minus compressed length; positive means compressible."""
    return baseline_bits(params) - compressed_length(seq, params)
