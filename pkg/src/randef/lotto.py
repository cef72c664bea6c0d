"""Lottery-draw analysis: corpus ingestion, exhaustive enumeration,
band-constrained distractor generation and rank/correlation statistics."""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import stats as scipy_stats

from .errors import (
    BandUnsatisfiable,
    BudgetExceeded,
    DuplicateNumberInDraw,
    EmptyCorpus,
    OutOfRange,
    ParseError,
    TooFewCandidates,
)
from .stepcode import (
    CODEBOOK,
    DEFAULT_PARAMS,
    REPEAT,
    CodecParams,
    compressed_length,
    validate_sequence,
)

DEFAULT_ENUM_BUDGET = 10 ** 8

# Exhaustive 6-of-45 regression constants (recomputed by the test suite):
# total compressed bits over all C(45,6) = 8,145,060 sequences.
EXHAUSTIVE_COUNT_45_6 = 8_145_060
EXHAUSTIVE_TOTAL_BITS_45_6 = 248_924_383
EXHAUSTIVE_MIN_BITS = 12
EXHAUSTIVE_MAX_BITS = 43

CORPUS_HEADER = ("date", "n1", "n2", "n3", "n4", "n5", "n6")


@dataclass(frozen=True)
class DrawCorpus:
    draws: tuple[tuple[str, tuple[int, ...]], ...]

    def __len__(self):
        return len(self.draws)


def load_corpus(path, params: CodecParams = DEFAULT_PARAMS) -> DrawCorpus:
    """Read a `date,n1..n6` CSV; rows are sorted ascending and validated."""
    draws = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("row 1: missing header") from None
        if tuple(h.strip() for h in header) != CORPUS_HEADER:
            raise ParseError(f"row 1: expected header {','.join(CORPUS_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 7:
                raise ParseError(f"row {lineno}: expected 7 fields, got {len(row)}")
            label = row[0].strip()
            try:
                nums = sorted(int(f) for f in row[1:])
            except ValueError as exc:
                raise ParseError(f"row {lineno}: {exc}") from None
            try:
                seq = validate_sequence(nums, params)
            except (DuplicateNumberInDraw, OutOfRange) as exc:
                raise type(exc)(f"row {lineno}: {exc}") from None
            draws.append((label, seq))
    return DrawCorpus(tuple(draws))


@dataclass(frozen=True)
class CorpusStats:
    count: int
    mean_bits: float
    mode_bits: int
    min_bits: int
    max_bits: int
    argmin_seq: tuple[int, ...]
    argmax_seq: tuple[int, ...]
    histogram: dict

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "mean_bits": self.mean_bits,
            "mode_bits": self.mode_bits,
            "min_bits": self.min_bits,
            "max_bits": self.max_bits,
            "argmin_seq": list(self.argmin_seq),
            "argmax_seq": list(self.argmax_seq),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def corpus_stats(corpus: DrawCorpus, params: CodecParams = DEFAULT_PARAMS) -> CorpusStats:
    if not corpus.draws:
        raise EmptyCorpus("corpus has no draws")
    lengths = [(compressed_length(seq, params), seq) for _, seq in corpus.draws]
    histogram: dict[int, int] = {}
    total = 0
    for bits, _ in lengths:
        histogram[bits] = histogram.get(bits, 0) + 1
        total += bits
    min_bits, argmin = min(lengths)
    max_bits, argmax = max(lengths)
    # most frequent integer length; ties to the smaller value
    mode_bits = min(histogram, key=lambda b: (-histogram[b], b))
    return CorpusStats(
        count=len(lengths),
        mean_bits=total / len(lengths),
        mode_bits=mode_bits,
        min_bits=min_bits,
        max_bits=max_bits,
        argmin_seq=argmin,
        argmax_seq=argmax,
        histogram=histogram,
    )


@dataclass(frozen=True)
class EnumerationSummary:
    count: int
    histogram: dict
    min_bits: int
    max_bits: int
    argmin_seq: tuple[int, ...]
    argmax_seq: tuple[int, ...]
    min_is_unique: bool
    total_bits: int

    @property
    def mean_bits(self) -> float:
        return self.total_bits / self.count


def enumerate_all(params: CodecParams = DEFAULT_PARAMS, visitor=None,
                  budget: int = DEFAULT_ENUM_BUDGET) -> EnumerationSummary:
    """Visit every valid sequence in lexicographic order; returns bit statistics."""
    space = math.comb(params.pool_size, params.draw_count)
    if space > budget:
        raise BudgetExceeded(f"{space} sequences exceed the budget of {budget}")

    # local lookups keep the 8.1M-iteration loop tight
    lengths = [0] + [len(CODEBOOK.entries[s]) for s in range(1, 41)]
    repeat_len = len(CODEBOOK.entries[REPEAT])
    histogram: dict[int, int] = {}
    total_bits = 0
    min_bits, max_bits = None, None
    argmin = argmax = None
    min_count = 0

    for combo in combinations(range(1, params.pool_size + 1), params.draw_count):
        prev_num = combo[0]
        prev_step = prev_num
        bits = lengths[prev_step]
        for n in combo[1:]:
            step = n - prev_num
            bits += repeat_len if step == prev_step else lengths[step]
            prev_step = step
            prev_num = n
        histogram[bits] = histogram.get(bits, 0) + 1
        total_bits += bits
        if min_bits is None or bits < min_bits:
            min_bits, argmin, min_count = bits, combo, 1
        elif bits == min_bits:
            min_count += 1
        if max_bits is None or bits > max_bits:
            max_bits, argmax = bits, combo
        if visitor is not None:
            visitor(combo, bits)

    return EnumerationSummary(
        count=space,
        histogram=histogram,
        min_bits=min_bits,
        max_bits=max_bits,
        argmin_seq=argmin,
        argmax_seq=argmax,
        min_is_unique=min_count == 1,
        total_bits=total_bits,
    )


@dataclass(frozen=True)
class BitBand:
    lo: int
    hi: int

    def __post_init__(self):
        if not 12 <= self.lo <= self.hi <= 43:
            raise BandUnsatisfiable(f"band [{self.lo}, {self.hi}] outside [12, 43]")

    @classmethod
    def parse(cls, text: str) -> "BitBand":
        lo, _, hi = text.partition("-")
        return cls(int(lo), int(hi))


PAPER_BANDS = (BitBand(15, 18), BitBand(19, 22), BitBand(23, 26), BitBand(27, 29))


def _sample_symbol(rng: random.Random, decode_map: dict) -> object:
    """Walk the code tree with fair coin flips; pattern of length L has prob 2^-L."""
    bits = ""
    while bits not in decode_map:
        bits += str(rng.getrandbits(1))
    return decode_map[bits]


def _sample_sequence(rng: random.Random, params: CodecParams):
    decode_map = CODEBOOK.decode_map()
    steps = []
    total = 0
    for i in range(params.draw_count):
        sym = _sample_symbol(rng, decode_map)
        if sym == REPEAT:
            if not steps:
                return None  # REPEAT with no predecessor: reject the attempt
            sym = steps[-1]
        total += sym
        if total > params.pool_size:
            return None
        steps.append(sym)
    numbers = []
    acc = 0
    for st in steps:
        acc += st
        numbers.append(acc)
    return tuple(numbers)


def generate_distractor(band: BitBand, seed: int, max_tries: int = 10000,
                        params: CodecParams = DEFAULT_PARAMS,
                        rng: random.Random | None = None) -> tuple[int, ...]:
    """Seeded sequence whose canonical encoding lands inside the band."""
    rng = rng if rng is not None else random.Random(seed)
    for _ in range(max_tries):
        seq = _sample_sequence(rng, params)
        if seq is None:
            continue
        if band.lo <= compressed_length(seq, params) <= band.hi:
            return seq
    raise BandUnsatisfiable(f"no sequence in [{band.lo}, {band.hi}] after {max_tries} tries")


def generate_distractors(bands, seed: int, max_tries: int = 10000,
                         params: CodecParams = DEFAULT_PARAMS) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    return [generate_distractor(b, seed, max_tries, params, rng=rng) for b in bands]


@dataclass(frozen=True)
class RankingResult:
    items: tuple  # (sequence, compressed_bits, rank) with rank 1 = longest
    pearson_r: float
    spearman_rho: float

    def to_json(self) -> dict:
        return {
            "items": [
                {"sequence": list(seq), "bits": bits, "rank": rank}
                for seq, bits, rank in self.items
            ],
            "pearson_r": self.pearson_r,
            "spearman_rho": self.spearman_rho,
        }


def rank_candidates(candidates, params: CodecParams = DEFAULT_PARAMS) -> RankingResult:
    """Rank by compressed bits descending (rank 1 = most plausibly random)."""
    seqs = [validate_sequence(c, params) for c in candidates]
    if len(seqs) < 2:
        raise TooFewCandidates(f"need at least 2 candidates, got {len(seqs)}")
    scored = [(compressed_length(s, params), s) for s in seqs]
    ordered = sorted(scored, key=lambda bs: (-bs[0], bs[1]))
    items = tuple((seq, bits, rank) for rank, (bits, seq) in enumerate(ordered, start=1))
    ranks = [rank for _, _, rank in items]
    bits = [b for _, b, _ in items]
    pearson = float(scipy_stats.pearsonr(ranks, bits).statistic)
    spearman = float(scipy_stats.spearmanr(ranks, bits).statistic)  # midranks on ties
    return RankingResult(items, pearson, spearman)


@dataclass(frozen=True)
class PanelResult:
    """Simulated-responder stand-in for the human ranking study."""

    candidates: tuple
    bits: tuple
    mean_ranks: tuple
    pearson_r: float
    spearman_rho: float


def simulate_responder_panel(candidates, n_responders: int = 130,
                             noise_bits: float = 1.0, seed: int = 0,
                             params: CodecParams = DEFAULT_PARAMS) -> PanelResult:
    """Each responder ranks by compressed bits plus Gaussian noise; the panel's
    mean rank per candidate is correlated against the true bit lengths."""
    seqs = [validate_sequence(c, params) for c in candidates]
    if len(seqs) < 2:
        raise TooFewCandidates(f"need at least 2 candidates, got {len(seqs)}")
    bits = np.array([compressed_length(s, params) for s in seqs], dtype=float)
    rng = np.random.default_rng(seed)
    noisy = bits[None, :] + rng.normal(0.0, noise_bits, size=(n_responders, len(seqs)))
    # rank 1 = largest perceived bit length
    order = np.argsort(-noisy, axis=1, kind="stable")
    ranks = np.empty_like(order)
    rows = np.arange(n_responders)[:, None]
    ranks[rows, order] = np.arange(1, len(seqs) + 1)[None, :]
    mean_ranks = ranks.mean(axis=0)
    pearson = float(scipy_stats.pearsonr(mean_ranks, bits).statistic)
    spearman = float(scipy_stats.spearmanr(mean_ranks, bits).statistic)
    return PanelResult(
        candidates=tuple(seqs),
        bits=tuple(int(b) for b in bits),
        mean_ranks=tuple(float(r) for r in mean_ranks),
        pearson_r=pearson,
        spearman_rho=spearman,
    )


def sample_uniform_sequence(rng: np.random.Generator,
                            params: CodecParams = DEFAULT_PARAMS) -> tuple[int, ...]:
    """A uniform draw from the full sequence space (the quickpick stand-in)."""
    picks = rng.choice(params.pool_size, size=params.draw_count, replace=False) + 1
    return tuple(sorted(int(n) for n in picks))
