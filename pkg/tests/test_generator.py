import random
from collections import Counter
from fractions import Fraction

import pytest
import scipy.stats as st

from canalis import (
    CanalizingGenerator,
    GeneratorConfig,
    RejectionLimitExceeded,
    category_weights,
    generate,
    is_canalizing,
    prob_canalizing,
    sample_category,
    to_hex,
)
from canalis.generator import sample_index
from sampler_checks import record_consistent

HALF = Fraction(1, 2)


class ScriptedBits:
    """rng stub with a fixed script of getrandbits return values."""

    def __init__(self, script):
        self.script = list(script)

    def getrandbits(self, k):
        if not self.script:
            raise AssertionError("script exhausted")
        width, value = self.script.pop(0)
        assert width == k, f"expected getrandbits({width}), got getrandbits({k})"
        return value


class ConstantBits:
    """rng stub returning all-ones words of any width forever."""

    def getrandbits(self, k):
        return (1 << k) - 1


def test_category_weights_n1():
    w = category_weights(1, HALF)
    assert w.w_bc == HALF
    assert w.w_pce == {1: Fraction(1, 4)}
    assert w.w_nce == {1: Fraction(1, 4)}
    assert w.total == 1


def test_category_weights_n2():
    w = category_weights(2, HALF)
    assert w.w_bc == Fraction(1, 4)
    assert w.w_pce == {1: 0, 2: Fraction(5, 16)}
    assert w.w_nce == {1: 0, 2: Fraction(5, 16)}
    assert w.total == prob_canalizing(2, HALF) == Fraction(7, 8)
    # cumulative cuts over q = 0..2, normalized
    assert w.q_cuts == (Fraction(2, 7), Fraction(2, 7), Fraction(1))


def test_category_weights_rejects_degenerate_bias():
    with pytest.raises(ValueError):
        category_weights(2, Fraction(0))
    with pytest.raises(ValueError):
        category_weights(2, Fraction(1))


def test_sample_index_scripted():
    cuts = (Fraction(2, 7), Fraction(2, 7), Fraction(1))
    # bits 0,0 pin the expansion into [0, 1/4) inside [0, 2/7)
    assert sample_index(cuts, ScriptedBits([(1, 0), (1, 0)])) == 0
    # a single 1 bit pins [1/2, 1) past both 2/7 cuts
    assert sample_index(cuts, ScriptedBits([(1, 1)])) == 2


def test_sample_index_skips_empty_category():
    cuts = (Fraction(1, 2), Fraction(1, 2), Fraction(1))
    for script in ([(1, 0), (1, 0)], [(1, 1)], [(1, 0), (1, 1)]):
        idx = sample_index(cuts, ScriptedBits(list(script)))
        assert idx != 1


def test_sample_index_degenerate_no_bits():
    # single category taking all mass resolves without consuming bits
    assert sample_index((Fraction(1),), ScriptedBits([])) == 0
    assert sample_index((Fraction(0), Fraction(1)), ScriptedBits([])) == 1


def test_sample_category_scripted():
    w = category_weights(2, HALF)
    # q: one 1 bit lands in category 2; r: a 0 bit picks positive
    q, r = sample_category(w, ScriptedBits([(1, 1), (1, 0)]))
    assert (q, r) == (2, 1)
    # q: two 0 bits land in the both-ways category; no r draw
    q, r = sample_category(w, ScriptedBits([(1, 0), (1, 0)]))
    assert (q, r) == (0, None)


def test_sample_category_never_draws_zero_weight():
    w = category_weights(2, HALF)  # category q = 1 has zero weight
    rng = random.Random(3)
    for _ in range(2000):
        q, _ = sample_category(w, rng)
        assert q in (0, 2)


def test_generate_soundness_and_records():
    config = GeneratorConfig(n=3, p=HALF, seed=42)
    gen = CanalizingGenerator(config)
    for table, record in gen.draws(1500):
        assert is_canalizing(table)
        assert record_consistent(table, record)
        assert record.rejections < config.max_rejections


def test_generate_asymmetric_bias_soundness():
    config = GeneratorConfig(n=4, p=Fraction(1, 5), seed=9)
    gen = CanalizingGenerator(config)
    for table, record in gen.draws(400):
        assert is_canalizing(table)
        assert record_consistent(table, record)


def test_generate_n1_support():
    gen = CanalizingGenerator(GeneratorConfig(n=1, p=HALF, seed=1))
    seen = Counter()
    for table, record in gen.draws(1500):
        seen[table.bits] += 1
        if record.q == 1 and record.r == 1:
            # the only positively-exactly-1 function at n = 1 is constant 1
            assert table.bits == 0b11
        if record.q == 1 and record.r == 0:
            assert table.bits == 0b00
    assert set(seen) == {0b00, 0b01, 0b10, 0b11}


def test_generate_deterministic_sequence():
    config = GeneratorConfig(n=4, p=Fraction(1, 3), seed=77)
    first = [to_hex(t) for t, _ in CanalizingGenerator(config).draws(200)]
    second = [to_hex(t) for t, _ in CanalizingGenerator(config).draws(200)]
    assert first == second


def test_generate_function_signature_uses_external_stream():
    config = GeneratorConfig(n=2, p=HALF, seed=0)
    rng = random.Random(5)
    table, record = generate(config, rng)
    assert is_canalizing(table)
    assert record_consistent(table, record)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_mean_rejections_bounded(n):
    gen = CanalizingGenerator(GeneratorConfig(n=n, p=HALF, seed=5))
    records = [r for _, r in gen.draws(400)]
    assert sum(r.rejections for r in records) / len(records) < 3


def test_rejection_limit_exceeded():
    # all-ones bits: q lands at 2, r = 0; every fill then makes the
    # non-canonical constant 0, which is rejected forever
    config = GeneratorConfig(n=2, p=HALF, seed=0, max_rejections=5)
    with pytest.raises(RejectionLimitExceeded) as info:
        generate(config, ConstantBits())
    assert info.value.rejections == 5
    assert info.value.q == 2 and info.value.r == 0


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(n=2, p=Fraction(1), seed=0)
    with pytest.raises(ValueError):
        GeneratorConfig(n=2, p=HALF, seed=-1)
    with pytest.raises(ValueError):
        GeneratorConfig(n=2, p=HALF, seed=1 << 64)
    with pytest.raises(ValueError):
        GeneratorConfig(n=2, p=HALF, seed=0, max_rejections=0)
    with pytest.raises(Exception):
        GeneratorConfig(n=0, p=HALF, seed=0)


def test_conditional_law_n2_chi_square():
    # empirical per-function frequencies against the exact conditional law
    p = Fraction(1, 3)
    gen = CanalizingGenerator(GeneratorConfig(n=2, p=p, seed=7))
    draws = 40000
    counts = Counter(t.bits for t, _ in gen.draws(draws))
    pr_c = prob_canalizing(2, p)
    observed, expected = [], []
    for bits in range(16):
        from canalis import TruthTable

        if not is_canalizing(TruthTable(2, bits)):
            assert counts[bits] == 0
            continue
        w = bits.bit_count()
        law = p**w * (1 - p) ** (4 - w) / pr_c
        observed.append(counts[bits])
        expected.append(float(law) * draws)
    statistic, _ = st.chisquare(observed, expected)
    assert statistic < st.chi2.ppf(0.999, len(observed) - 1)


def test_category_marginal_n2_chi_square():
    p = Fraction(1, 4)
    weights = category_weights(2, p)
    gen = CanalizingGenerator(GeneratorConfig(n=2, p=p, seed=13))
    draws = 30000
    tally = Counter()
    for _, record in gen.draws(draws):
        tally[(record.q, record.r)] += 1
    keys, expected = [], []
    for q in range(3):
        if q == 0:
            keys.append((0, None))
            expected.append(float(weights.w_bc / weights.total) * draws)
            continue
        for r, w in ((1, weights.w_pce[q]), (0, weights.w_nce[q])):
            if w:
                keys.append((q, r))
                expected.append(float(w / weights.total) * draws)
    observed = [tally[k] for k in keys]
    assert sum(observed) == draws  # zero-weight categories never drawn
    statistic, _ = st.chisquare(observed, expected)
    assert statistic < st.chi2.ppf(0.999, len(keys) - 1)
