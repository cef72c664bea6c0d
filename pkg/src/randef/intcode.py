"""Prefix-free integer codes.

Elias gamma for n >= 1: floor(log2 n) zero bits, then n in binary.
Code length is 2*floor(log2 n) + 1 <= 2*log2(n) + 1 bits.

The signed variant used for model deltas spends one flag bit on
"unchanged" (delta 0); a nonzero delta costs flag + sign + gamma(|delta|).
"""

from .errors import MalformedBits


def gamma_length(n: int) -> int:
    if n < 1:
        raise ValueError(f"gamma code requires n >= 1, got {n}")
    return 2 * (n.bit_length() - 1) + 1


def gamma_encode(n: int) -> str:
    if n < 1:
        raise ValueError(f"gamma code requires n >= 1, got {n}")
    payload = format(n, "b")
    return "0" * (len(payload) - 1) + payload


def gamma_decode(bits: str, pos: int = 0) -> tuple[int, int]:
    """Decode one gamma codeword starting at pos; return (value, new_pos)."""
    zeros = 0
    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1
    end = pos + zeros + zeros + 1
    if end > len(bits):
        raise MalformedBits("truncated gamma codeword")
    value = int(bits[pos + zeros:end], 2)
    return value, end


def signed_delta_length(delta: int) -> int:
    """Bit cost of one per-symbol model delta (flag [+ sign + gamma])."""
    if delta == 0:
        return 1
    return 2 + gamma_length(abs(delta))
