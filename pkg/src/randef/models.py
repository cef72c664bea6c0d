"""Computable probability models and description-length predicates.

A QuantizedPMF assigns each k-bit block a dyadic probability w / 2^q and
extends multiplicatively to longer strings. True Kolmogorov complexity is
uncomputable, so conditional description cost is approximated by the
minimum over a fixed suite of three effective codes (LITERAL, RUN_LENGTH,
BLOCK_REPEAT), each carrying an 8-bit program-selector header. The suite
upper-bounds the true conditional complexity, which makes a "surprising"
verdict sound and a "typical" verdict conservative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from itertools import groupby

from .errors import (
    IncompatibleModels,
    NegativeCost,
    ZeroProbabilityBlock,
)
from .intcode import gamma_decode, gamma_encode, gamma_length, signed_delta_length

SELECTOR_BITS = 8
DEFAULT_SLACK_BETA = 16.0
UPDATE_HEADER_BITS = 8


@dataclass(frozen=True)
class SurpriseThreshold:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"surprise threshold must be positive, got {self.alpha}")


def _alpha_value(alpha) -> float:
    a = alpha.alpha if isinstance(alpha, SurpriseThreshold) else float(alpha)
    if not a > 0:
        raise ValueError(f"surprise threshold must be positive, got {a}")
    return a


@dataclass(frozen=True)
class QuantizedPMF:
    """Probability model over k-bit blocks with integer weights / 2^q."""

    block_bits: int
    precision_bits: int
    weights: tuple[int, ...]  # lexicographic symbol order

    def __post_init__(self):
        k, q = self.block_bits, self.precision_bits
        if k < 1 or q < 1:
            raise ValueError(f"need block_bits >= 1 and precision_bits >= 1, got k={k} q={q}")
        if len(self.weights) != 2 ** k:
            raise ValueError(f"expected {2 ** k} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if sum(self.weights) != 2 ** q:
            raise ValueError(f"weights must sum to 2^{q} = {2 ** q}, got {sum(self.weights)}")

    @classmethod
    def uniform(cls, block_bits: int, precision_bits: int | None = None) -> "QuantizedPMF":
        q = block_bits if precision_bits is None else precision_bits
        if q < block_bits:
            raise ValueError("uniform model needs precision_bits >= block_bits")
        return cls(block_bits, q, (2 ** (q - block_bits),) * 2 ** block_bits)

    def symbols(self) -> list[str]:
        k = self.block_bits
        return [format(i, f"0{k}b") for i in range(2 ** k)]

    def weight_of(self, block: str) -> int:
        return self.weights[int(block, 2)]

    def log2_prob(self, block: str) -> float:
        w = self.weight_of(block)
        if w == 0:
            raise ZeroProbabilityBlock(f"block {block!r} has probability 0")
        return math.log2(w) - self.precision_bits

    def is_point_mass(self) -> bool:
        return sum(1 for w in self.weights if w > 0) == 1

    def to_json(self) -> dict:
        return {"k": self.block_bits, "q": self.precision_bits, "weights": list(self.weights)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuantizedPMF":
        return cls(int(obj["k"]), int(obj["q"]), tuple(int(w) for w in obj["weights"]))

    @classmethod
    def load(cls, path) -> "QuantizedPMF":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, sort_keys=True)
            fh.write("\n")


def split_blocks(x: str, k: int) -> list[str]:
    if not x:
        raise ValueError("event string must be non-empty")
    if len(x) % k != 0:
        raise ValueError(f"length {len(x)} is not a multiple of block size {k}")
    if any(c not in "01" for c in x):
        raise ValueError("event string must be binary")
    return [x[i:i + k] for i in range(0, len(x), k)]


def shannon_fano_bits(p: QuantizedPMF, x: str) -> float:
    """-log2 p(x) under the multiplicative block extension."""
    return -sum(p.log2_prob(b) for b in split_blocks(x, p.block_bits))


@dataclass(frozen=True)
class ModelDescription:
    """A model plus its self-description length in bits."""

    model: QuantizedPMF
    description_bits: float

    @classmethod
    def of(cls, p: QuantizedPMF) -> "ModelDescription":
        # header codes k and q; the last numerator is implied by the sum
        bits = (
            gamma_length(p.block_bits)
            + gamma_length(p.precision_bits)
            + (2 ** p.block_bits - 1) * p.precision_bits
        )
        return cls(p, float(bits))


class PatternCode(str, Enum):
    LITERAL = "LITERAL"
    RUN_LENGTH = "RUN_LENGTH"
    BLOCK_REPEAT = "BLOCK_REPEAT"


def run_length_encode(x: str, k: int) -> str:
    """gamma(#runs), then per run gamma(length) + the k raw block bits."""
    runs = [(block, len(list(g))) for block, g in groupby(split_blocks(x, k))]
    out = [gamma_encode(len(runs))]
    for block, count in runs:
        out.append(gamma_encode(count))
        out.append(block)
    return "".join(out)


def run_length_decode(payload: str, k: int) -> str:
    n_runs, pos = gamma_decode(payload, 0)
    parts = []
    for _ in range(n_runs):
        count, pos = gamma_decode(payload, pos)
        block = payload[pos:pos + k]
        pos += k
        parts.append(block * count)
    return "".join(parts)


def block_repeat_encode(x: str, k: int, period_blocks: int) -> str:
    """Raw bits of the repeating unit, then gamma of the repeat count."""
    n_blocks = len(x) // k
    unit = x[: period_blocks * k]
    return unit + gamma_encode(n_blocks // period_blocks)


def block_repeat_decode(payload: str, k: int, period_blocks: int) -> str:
    unit = payload[: period_blocks * k]
    count, _ = gamma_decode(payload, period_blocks * k)
    return unit * count


@dataclass(frozen=True)
class ConditionalCostReport:
    string_id: str
    shannon_fano_bits: float
    best_pattern_bits: float
    winning_code: PatternCode
    candidate_bits: tuple[tuple[PatternCode, float], ...]
    payload: str
    period_blocks: int | None

    def reconstruct(self, k: int) -> str:
        """Decode the winning pattern back to the original string."""
        if self.winning_code is PatternCode.LITERAL:
            return self.string_id
        if self.winning_code is PatternCode.RUN_LENGTH:
            return run_length_decode(self.payload, k)
        return block_repeat_decode(self.payload, k, self.period_blocks)


def _block_repeat_best(x: str, k: int) -> tuple[float, int]:
    """Min cost over all repeating-unit periods (in blocks) dividing x."""
    n_blocks = len(x) // k
    best_bits = math.inf
    best_period = n_blocks
    for d in range(1, n_blocks + 1):
        if n_blocks % d != 0:
            continue
        unit = x[: d * k]
        if unit * (n_blocks // d) != x:
            continue
        bits = d * k + gamma_length(n_blocks // d) + SELECTOR_BITS
        if bits < best_bits:
            best_bits = bits
            best_period = d
    return float(best_bits), best_period


def conditional_cost(p: QuantizedPMF, x: str) -> ConditionalCostReport:
    """Upper bound on the conditional description cost of x given p."""
    k = p.block_bits
    sf = shannon_fano_bits(p, x)

    rl_payload = run_length_encode(x, k)
    br_bits, br_period = _block_repeat_best(x, k)
    candidates = (
        (PatternCode.LITERAL, sf + SELECTOR_BITS),
        (PatternCode.RUN_LENGTH, float(len(rl_payload) + SELECTOR_BITS)),
        (PatternCode.BLOCK_REPEAT, br_bits),
    )
    winner, best = min(candidates, key=lambda cb: cb[1])

    if winner is PatternCode.RUN_LENGTH:
        payload, period = rl_payload, None
    elif winner is PatternCode.BLOCK_REPEAT:
        payload, period = block_repeat_encode(x, k, br_period), br_period
    else:
        payload, period = x, None
    return ConditionalCostReport(
        string_id=x,
        shannon_fano_bits=sf,
        best_pattern_bits=best,
        winning_code=winner,
        candidate_bits=candidates,
        payload=payload,
        period_blocks=period,
    )


def is_typical(p: QuantizedPMF, x: str, alpha) -> bool:
    """True iff x is not compressible by more than alpha bits relative to p."""
    a = _alpha_value(alpha)
    return conditional_cost(p, x).best_pattern_bits >= shannon_fano_bits(p, x) - a


def is_surprising(p: QuantizedPMF, x: str, alpha) -> bool:
    return not is_typical(p, x, alpha)


def standalone_cost(x: str, k: int) -> float:
    """Stand-in for the unconditional description cost: suite under the uniform model."""
    return conditional_cost(QuantizedPMF.uniform(k), x).best_pattern_bits


def is_optimal(p: ModelDescription, x: str, slack_beta: float = DEFAULT_SLACK_BETA) -> bool:
    """Two-part cost of x under p matches its standalone cost within slack_beta bits."""
    two_part = p.description_bits + shannon_fano_bits(p.model, x)
    return abs(standalone_cost(x, p.model.block_bits) - two_part) <= slack_beta


def model_update_cost(old: ModelDescription, new: ModelDescription) -> float:
    """Bits to describe the new model given the old one (per-symbol deltas)."""
    po, pn = old.model, new.model
    if po.block_bits != pn.block_bits or po.precision_bits != pn.precision_bits:
        raise IncompatibleModels(
            f"(k={po.block_bits}, q={po.precision_bits}) vs (k={pn.block_bits}, q={pn.precision_bits})"
        )
    bits = UPDATE_HEADER_BITS + sum(
        signed_delta_length(wn - wo) for wo, wn in zip(po.weights, pn.weights)
    )
    return float(bits)


def subjective_probability(update_cost: float) -> float:
    if update_cost < 0:
        raise NegativeCost(f"update cost must be nonnegative, got {update_cost}")
    return 2.0 ** (-update_cost)
