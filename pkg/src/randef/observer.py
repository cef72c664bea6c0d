"""Streaming observer: shortest optimal model, surprise detection, updates.

The observer holds the minimum-description candidate model that is both
optimal for and typical of everything seen so far. A surprising
observation (one compressible by more than alpha bits relative to the
current model) triggers re-selection over the candidate family; the bits
needed to describe the new model given the old one are ledgered as
subjective information, with subjective probability 2^(-bits).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import NoAdmissibleModel
from .models import (
    DEFAULT_SLACK_BETA,
    ModelDescription,
    QuantizedPMF,
    ZeroProbabilityBlock,
    _alpha_value,
    is_optimal,
    is_surprising,
    is_typical,
    model_update_cost,
    subjective_probability,
)


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of the given length summing to total, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class CandidateFamily:
    """Finite, enumerable model class: block sizes k, fixed precision q."""

    k_values: tuple[int, ...] = (1,)
    q: int = 3
    slack_beta: float = DEFAULT_SLACK_BETA

    def members(self):
        for k in self.k_values:
            for weights in _compositions(2 ** self.q, 2 ** k):
                yield QuantizedPMF(k, self.q, weights)

    def uniform_model(self) -> ModelDescription:
        return ModelDescription.of(QuantizedPMF.uniform(self.k_values[0], self.q))

    def to_json(self) -> dict:
        return {"k_values": list(self.k_values), "q": self.q, "slack_beta": self.slack_beta}

    @classmethod
    def from_json(cls, obj: dict) -> "CandidateFamily":
        return cls(
            tuple(int(k) for k in obj.get("k_values", [1])),
            int(obj.get("q", 3)),
            float(obj.get("slack_beta", DEFAULT_SLACK_BETA)),
        )


def select_model(history, family: CandidateFamily, alpha) -> ModelDescription:
    """Minimum-description family member optimal for and typical of the history.

    Ties on description length break to the lexicographically smallest
    weight vector (members are already enumerated in that order).
    """
    if not history:
        raise NoAdmissibleModel("history is empty")
    joined = "".join(history)
    best = None
    for p in family.members():
        if len(joined) % p.block_bits != 0:
            continue
        md = ModelDescription.of(p)
        # members enumerate lex-smallest weights first, so strict < keeps the tie-break
        if best is not None and md.description_bits >= best[0]:
            continue
        try:
            if is_optimal(md, joined, family.slack_beta) and is_typical(p, joined, alpha):
                best = (md.description_bits, md)
        except ZeroProbabilityBlock:
            continue
    if best is None:
        raise NoAdmissibleModel(
            f"no member of the family (k in {family.k_values}, q={family.q}) "
            f"is optimal and typical for the {len(history)}-string history"
        )
    return best[1]


@dataclass(frozen=True)
class UpdateRecord:
    step_index: int
    was_surprising: bool
    old_model: ModelDescription
    new_model: ModelDescription
    subjective_information: float
    subjective_probability: float


@dataclass(frozen=True)
class ObserverState:
    current_model: ModelDescription
    history: tuple[str, ...]
    alpha: float
    family: CandidateFamily
    patience: int = 1
    surprise_streak: int = 0

    @classmethod
    def initial(cls, family: CandidateFamily, alpha, model: ModelDescription | None = None,
                patience: int = 1) -> "ObserverState":
        return cls(
            current_model=model if model is not None else family.uniform_model(),
            history=(),
            alpha=_alpha_value(alpha),
            family=family,
            patience=patience,
        )


def observe(state: ObserverState, d: str) -> tuple[ObserverState, UpdateRecord]:
    """Process one observation; returns the new state and its ledger record."""
    model = state.current_model
    k = model.model.block_bits
    if not d or len(d) % k != 0:
        raise ValueError(f"observation length must be a positive multiple of {k}")
    history = state.history + (d,)
    step = len(history)

    surprising = is_surprising(model.model, d, state.alpha)
    if not surprising:
        record = UpdateRecord(step, False, model, model, 0.0, 1.0)
        return replace(state, history=history, surprise_streak=0), record

    streak = state.surprise_streak + 1
    if streak < state.patience:
        record = UpdateRecord(step, True, model, model, 0.0, 1.0)
        return replace(state, history=history, surprise_streak=streak), record

    new_model = select_model(history, state.family, state.alpha)
    info = model_update_cost(model, new_model)
    record = UpdateRecord(step, True, model, new_model, info, subjective_probability(info))
    new_state = replace(state, current_model=new_model, history=history, surprise_streak=0)
    return new_state, record


def sample_string(source: QuantizedPMF, n_blocks: int, rng: np.random.Generator) -> str:
    k, q = source.block_bits, source.precision_bits
    probs = np.asarray(source.weights, dtype=float) / 2 ** q
    idx = rng.choice(2 ** k, size=n_blocks, p=probs)
    return "".join(format(int(i), f"0{k}b") for i in idx)


def run_scenario(source: QuantizedPMF, initial: ObserverState, n_steps: int,
                 obs_len: int, seed: int) -> list[UpdateRecord]:
    """Feed n_steps seeded observations from the source through the observer."""
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if obs_len < 1:
        raise ValueError(f"obs_len must be >= 1, got {obs_len}")
    rng = np.random.default_rng(seed)
    state = initial
    records = []
    for _ in range(n_steps):
        d = sample_string(source, obs_len, rng)
        state, record = observe(state, d)
        records.append(record)
    return records


LEDGER_FIELDS = ("step", "surprising", "subj_info_bits", "subj_prob", "model_weights")


def ledger_rows(records) -> list[dict]:
    return [
        {
            "step": r.step_index,
            "surprising": int(r.was_surprising),
            "subj_info_bits": r.subjective_information,
            "subj_prob": repr(r.subjective_probability),
            "model_weights": "|".join(str(w) for w in r.new_model.model.weights),
        }
        for r in records
    ]


def write_ledger_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=LEDGER_FIELDS)
        writer.writeheader()
        writer.writerows(ledger_rows(records))
