"""Constructive conjunction-effect witnesses.

A typical string y of n blocks must contain some block s at least
n / 2^k times (pigeonhole). Repeating that block l times gives a string
x that is cheap to describe ("print s, l times" costs about
k + 2*log2(l) + 1 bits plus the program header) yet has Shannon-Fano
cost c*l, so for large enough n the constituent x is surprising while
the conjunction y stays typical and p(x) > p(y).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModel, EmptyString, NotFoundWithinBudget, NoTypicalSample
from .models import (
    ConditionalCostReport,
    QuantizedPMF,
    _alpha_value,
    conditional_cost,
    is_typical,
    shannon_fano_bits,
    split_blocks,
    SELECTOR_BITS,
)
from .observer import sample_string


def most_frequent_block(y: str, k: int) -> tuple[str, int]:
    """Most frequent k-block of y and its count; ties break lex-smallest."""
    if not y:
        raise EmptyString("cannot take the most frequent block of an empty string")
    counts = Counter(split_blocks(y, k))
    best_count = max(counts.values())
    block = min(b for b, c in counts.items() if c == best_count)
    return block, best_count


@dataclass(frozen=True)
class ConjunctionWitness:
    y: str
    s: str
    l: int
    x: str
    c: float                  # -log2 p(s)
    p_x: float
    p_y: float
    log2_p_x: float
    log2_p_y: float
    cost_x: ConditionalCostReport
    cost_y: ConditionalCostReport
    y_typical: bool
    x_surprising: bool
    prob_order_ok: bool

    def all_true(self) -> bool:
        return self.y_typical and self.x_surprising and self.prob_order_ok

    def to_json(self) -> dict:
        def report(r: ConditionalCostReport) -> dict:
            return {
                "shannon_fano_bits": r.shannon_fano_bits,
                "best_pattern_bits": r.best_pattern_bits,
                "winning_code": r.winning_code.value,
            }

        return {
            "y": self.y,
            "s": self.s,
            "l": self.l,
            "x": self.x,
            "c": self.c,
            "p_x": self.p_x,
            "p_y": self.p_y,
            "log2_p_x": self.log2_p_x,
            "log2_p_y": self.log2_p_y,
            "cost_x": report(self.cost_x),
            "cost_y": report(self.cost_y),
            "verdicts": {
                "y_typical": self.y_typical,
                "x_surprising": self.x_surprising,
                "prob_order_ok": self.prob_order_ok,
            },
        }


def build_witness(p: QuantizedPMF, alpha, n: int, seed: int,
                  max_tries: int = 1000) -> ConjunctionWitness:
    """Sample a typical n-block conjunction and certify its repeated constituent."""
    a = _alpha_value(alpha)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p.is_point_mass():
        raise DegenerateModel("a point-mass model admits no witness (c would be 0)")

    rng = np.random.default_rng(seed)
    y = None
    for _ in range(max_tries):
        candidate = sample_string(p, n, rng)
        if is_typical(p, candidate, a):
            y = candidate
            break
    if y is None:
        raise NoTypicalSample(f"no typical sample of {n} blocks in {max_tries} tries")

    k = p.block_bits
    s, l = most_frequent_block(y, k)
    x = s * l
    c = -p.log2_prob(s)
    log2_p_x = -c * l
    log2_p_y = -shannon_fano_bits(p, y)
    cost_x = conditional_cost(p, x)
    cost_y = conditional_cost(p, y)
    return ConjunctionWitness(
        y=y,
        s=s,
        l=l,
        x=x,
        c=c,
        p_x=2.0 ** log2_p_x,
        p_y=2.0 ** log2_p_y,
        log2_p_x=log2_p_x,
        log2_p_y=log2_p_y,
        cost_x=cost_x,
        cost_y=cost_y,
        y_typical=True,
        x_surprising=cost_x.best_pattern_bits < -log2_p_x - a,
        prob_order_ok=log2_p_x > log2_p_y,
    )


def minimal_n(p: QuantizedPMF, alpha, n_max: int, seed: int,
              seeds_per_n: int = 10) -> int:
    """Smallest n whose witnesses fire all three verdicts on every tried seed."""
    for n in range(1, n_max + 1):
        ok = True
        for i in range(seeds_per_n):
            try:
                w = build_witness(p, alpha, n, seed + 1000 * n + i)
            except NoTypicalSample:
                ok = False
                break
            if not w.all_true():
                ok = False
                break
        if ok:
            return n
    raise NotFoundWithinBudget(f"no all-true n found up to {n_max}")


def inequality_scan_minimal_n(p: QuantizedPMF, alpha, n_max: int) -> int:
    """Deterministic oracle: smallest n whose pigeonhole-guaranteed repeat
    count already violates typicality for the most probable block."""
    a = _alpha_value(alpha)
    if p.is_point_mass():
        raise DegenerateModel("a point-mass model admits no witness")
    k = p.block_bits
    w_max = max(p.weights)
    s = min(b for b in p.symbols() if p.weight_of(b) == w_max)
    c = -p.log2_prob(s)
    for n in range(1, n_max + 1):
        l = math.ceil(n / 2 ** k)
        if conditional_cost(p, s * l).best_pattern_bits < c * l - a:
            return n
    raise NotFoundWithinBudget(f"inequality never fires up to n = {n_max}")


def scan(p: QuantizedPMF, alpha, n_max: int, seed: int,
         seeds_per_n: int = 10) -> list[tuple[int, float]]:
    """(n, fraction of seeds with all-true verdicts) for n = 1..n_max."""
    rows = []
    for n in range(1, n_max + 1):
        hits = 0
        for i in range(seeds_per_n):
            try:
                w = build_witness(p, alpha, n, seed + 1000 * n + i)
            except NoTypicalSample:
                continue
            if w.all_true():
                hits += 1
        rows.append((n, hits / seeds_per_n))
    return rows


def explicit_cost_bound(k: int, l: int) -> float:
    """The declared BLOCK_REPEAT bound: k + 2*log2(l) + 1 + selector header."""
    return k + 2 * math.log2(l) + 1 + SELECTOR_BITS
