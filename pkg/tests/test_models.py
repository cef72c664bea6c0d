import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from randef.errors import IncompatibleModels, NegativeCost, ZeroProbabilityBlock
from randef.models import (
    ModelDescription,
    PatternCode,
    QuantizedPMF,
    SurpriseThreshold,
    block_repeat_decode,
    block_repeat_encode,
    conditional_cost,
    is_optimal,
    is_surprising,
    is_typical,
    model_update_cost,
    run_length_decode,
    run_length_encode,
    shannon_fano_bits,
    subjective_probability,
)

UNIFORM1 = QuantizedPMF.uniform(1)


def random_bits(rng, n):
    return "".join(rng.choice(["0", "1"], size=n))


# --- QuantizedPMF ---

def test_pmf_validation():
    with pytest.raises(ValueError):
        QuantizedPMF(1, 3, (4, 5))  # sums to 9, not 8
    with pytest.raises(ValueError):
        QuantizedPMF(1, 3, (9, -1))
    with pytest.raises(ValueError):
        QuantizedPMF(2, 3, (8,))  # wrong arity


def test_pmf_json_round_trip(tmp_path):
    p = QuantizedPMF(2, 3, (4, 2, 1, 1))
    path = tmp_path / "m.json"
    p.save(path)
    assert QuantizedPMF.load(path) == p


# --- Shannon-Fano bits ---

def test_sf_uniform():
    assert shannon_fano_bits(UNIFORM1, "0101") == 4.0


def test_sf_quarter():
    p = QuantizedPMF(1, 2, (3, 1))
    assert shannon_fano_bits(p, "1") == 2.0


def test_sf_blockwise():
    p = QuantizedPMF(2, 3, (4, 2, 1, 1))
    assert shannon_fano_bits(p, "0001") == 3.0  # 1 + 2


def test_sf_zero_probability():
    p = QuantizedPMF(1, 3, (8, 0))
    with pytest.raises(ZeroProbabilityBlock):
        shannon_fano_bits(p, "01")


# --- conditional cost ---

def test_block_repeat_wins_on_constant_string():
    report = conditional_cost(UNIFORM1, "0" * 64)
    assert report.winning_code is PatternCode.BLOCK_REPEAT
    assert report.best_pattern_bits <= 24  # 1 + gamma(64) + 8 at worst
    literal = dict(report.candidate_bits)[PatternCode.LITERAL]
    assert literal == 64 + 8


def test_literal_wins_on_random_strings():
    rng = np.random.default_rng(7)
    wins = sum(
        conditional_cost(UNIFORM1, random_bits(rng, 64)).winning_code is PatternCode.LITERAL
        for _ in range(1000)
    )
    assert wins / 1000 > 0.95


def test_single_block_degenerate_case():
    report = conditional_cost(UNIFORM1, "0")
    by_code = dict(report.candidate_bits)
    assert by_code[PatternCode.LITERAL] == 1 + 8
    assert by_code[PatternCode.BLOCK_REPEAT] == 1 + 1 + 8  # l = 1
    assert report.best_pattern_bits == min(by_code.values())


def test_cost_never_exceeds_literal():
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = random_bits(rng, int(rng.integers(1, 65)))
        report = conditional_cost(UNIFORM1, x)
        assert report.best_pattern_bits <= dict(report.candidate_bits)[PatternCode.LITERAL]


def test_periodic_structure_detected():
    # 2-periodic string on 1-bit blocks: the repeat code sees the longer unit
    report = conditional_cost(UNIFORM1, "01" * 32)
    assert report.winning_code is PatternCode.BLOCK_REPEAT
    assert report.period_blocks == 2
    assert report.best_pattern_bits < 64 - 8


# --- pattern codecs round-trip ---

@settings(max_examples=200)
@given(st.text(alphabet="01", min_size=1, max_size=48))
def test_run_length_round_trip(x):
    assert run_length_decode(run_length_encode(x, 1), 1) == x


def test_block_repeat_round_trip():
    x = "011" * 7
    payload = block_repeat_encode(x, 3, 1)
    assert block_repeat_decode(payload, 3, 1) == x


def test_winning_pattern_reconstructs_surprising_strings():
    # soundness: whenever the inequality fires, the winning program is real
    rng = np.random.default_rng(11)
    fired = 0
    for _ in range(200):
        unit = random_bits(rng, int(rng.integers(1, 4)))
        x = unit * int(rng.integers(2, 40))
        report = conditional_cost(UNIFORM1, x)
        if report.best_pattern_bits < report.shannon_fano_bits - 8:
            fired += 1
            assert report.reconstruct(1) == x
    assert fired > 0


# --- typicality and surprise ---

def test_random_strings_are_typical():
    rng = np.random.default_rng(5)
    typical = sum(is_typical(UNIFORM1, random_bits(rng, 64), 8) for _ in range(500))
    assert typical / 500 >= 0.99


def test_constant_string_is_surprising():
    assert not is_typical(UNIFORM1, "0" * 64, 8)
    assert is_surprising(UNIFORM1, "0" * 64, 8)


def test_alpha_dominating_code_length_forces_typical():
    assert is_typical(UNIFORM1, "0" * 64, 65)  # alpha >= sf, cost nonnegative


def test_alternating_string_is_surprising():
    assert is_surprising(UNIFORM1, "01" * 32, 8)


def test_point_mass_is_never_surprised_by_its_symbol():
    p = QuantizedPMF(1, 3, (8, 0))
    assert not is_surprising(p, "0" * 64, 8)


def test_typicality_monotone_in_alpha():
    rng = np.random.default_rng(9)
    for _ in range(300):
        x = random_bits(rng, int(rng.integers(1, 65)))
        a = float(rng.uniform(0.5, 20))
        b = a + float(rng.uniform(0.1, 20))
        if is_typical(UNIFORM1, x, a):
            assert is_typical(UNIFORM1, x, b)


def test_surprise_threshold_validation():
    with pytest.raises(ValueError):
        SurpriseThreshold(0.0)
    with pytest.raises(ValueError):
        is_typical(UNIFORM1, "01", -1)


# --- optimality ---

def test_description_bits():
    md = ModelDescription.of(QuantizedPMF(1, 3, (4, 4)))
    assert md.description_bits == 1 + 3 + 3  # gamma(1) + gamma(3) + (2^1 - 1)*3


def test_uniform_model_optimal_for_its_own_samples():
    rng = np.random.default_rng(13)
    md = ModelDescription.of(UNIFORM1)
    hits = sum(is_optimal(md, random_bits(rng, 64), 16) for _ in range(200))
    assert hits / 200 >= 0.95


def test_point_mass_optimal_for_its_repeated_symbol():
    md = ModelDescription.of(QuantizedPMF(1, 3, (8, 0)))
    assert is_optimal(md, "0" * 64, 16)


def test_uniform_model_not_optimal_for_constant_string():
    md = ModelDescription.of(UNIFORM1)
    assert not is_optimal(md, "0" * 64, 8)


def test_skewed_model_fails_optimality_on_long_histories():
    # the uniform-standalone stand-in caps how much two-part compression
    # can be certified: skewed models on long strings exceed any small slack
    rng = np.random.default_rng(17)
    x = "".join("0" if rng.random() < 0.75 else "1" for _ in range(512))
    md = ModelDescription.of(QuantizedPMF(1, 3, (6, 2)))
    assert not is_optimal(md, x, 16)


# --- model updates ---

def test_identity_update_cost():
    md = ModelDescription.of(QuantizedPMF(1, 3, (4, 4)))
    assert model_update_cost(md, md) == 8 + 2  # header + unchanged flags


def test_identity_is_unique_minimum():
    base = ModelDescription.of(QuantizedPMF(1, 3, (4, 4)))
    identity = model_update_cost(base, base)
    for w0 in range(9):
        target = ModelDescription.of(QuantizedPMF(1, 3, (w0, 8 - w0)))
        if w0 != 4:
            assert model_update_cost(base, target) > identity


def test_update_cost_ordering():
    uniform = ModelDescription.of(QuantizedPMF(1, 8, (128, 128)))
    nudge = ModelDescription.of(QuantizedPMF(1, 8, (129, 127)))
    point = ModelDescription.of(QuantizedPMF(1, 8, (256, 0)))
    identity = model_update_cost(uniform, uniform)
    assert identity < model_update_cost(uniform, nudge) < model_update_cost(uniform, point)


def test_incompatible_models_rejected():
    a = ModelDescription.of(QuantizedPMF(1, 3, (4, 4)))
    b = ModelDescription.of(QuantizedPMF(1, 4, (8, 8)))
    with pytest.raises(IncompatibleModels):
        model_update_cost(a, b)


# --- subjective probability ---

def test_subjective_probability_values():
    assert subjective_probability(0) == 1.0
    assert subjective_probability(1) == 0.5
    assert subjective_probability(10) == pytest.approx(0.000977, abs=1e-6)


def test_subjective_probability_negative_cost():
    with pytest.raises(NegativeCost):
        subjective_probability(-1)


def test_subjective_probability_multiplicative():
    # update costs are integer bit counts, so powers of two multiply exactly
    for a in range(0, 60, 7):
        for b in range(0, 60, 11):
            assert subjective_probability(a + b) == subjective_probability(a) * subjective_probability(b)


def test_subjective_probability_strictly_decreasing():
    costs = [0, 0.5, 1, 2, 10, 100]
    probs = [subjective_probability(c) for c in costs]
    assert all(x > y for x, y in zip(probs, probs[1:]))
