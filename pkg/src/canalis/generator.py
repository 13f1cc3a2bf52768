"""Random canalizing functions with an exactly correct conditional law.

A draw proceeds in the class decomposition's order: pick the category
(both-ways, or one direction with an exact variable count q) with its
exact rational probability, pick the direction, then rejection-sample
inside the category: draw the canalizing variable set and its forcing
values uniformly, force the corresponding half tables, fill the remaining
2^(n-q) entries independently with bias p, and start the attempt over if
the result lands outside the chosen class. Redrawing the variable set and
forcing values together with the fill makes every attempt an independent
sample of the whole category, so acceptance renormalizes all members by
one common factor and the conditional law is exact. (Refilling only the
free entries under a pinned signature would renormalize each signature's
route separately; the exactly-n classes are then skewed, because the
constant function shares routes with nonconstant members.)

Constants need one more care point: the constant function belongs to the
exactly-n classes but would be reachable through every choice of forcing
values, overweighting it by 2^n. A constant result is therefore accepted
only when the drawn forcing values are the canonical all-zeros map, which
restores the one-accepting-route-per-function property.

No floating point is involved anywhere: category draws compare a lazily
extended uniform bit expansion against exact cumulative fractions, and
each biased fill bit is an exact integer comparison. Every random bit
comes from ``rng.getrandbits``; with ``random.Random`` (the Mersenne
Twister, Python's default) a fixed seed therefore reproduces the exact
output sequence across runs and Python releases. The per-draw consumption
order is: category bits, direction bits, then per attempt the
variable-set rank, forcing values, and fill bits.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .limits import DEFAULT_GEN_MAX_N, check_n
from .probability import prob_breakdown, validate_bias
from .truth_table import TruthTable, classify, variable_mask

__all__ = [
    "RejectionLimitExceeded",
    "GeneratorConfig",
    "CategoryWeights",
    "DrawRecord",
    "category_weights",
    "sample_index",
    "sample_category",
    "generate",
    "CanalizingGenerator",
]


class RejectionLimitExceeded(RuntimeError):
    """Raised when one draw rejects ``max_rejections`` fills in a row."""

    def __init__(self, q: int, r: int | None, rejections: int):
        super().__init__(
            f"gave up after {rejections} rejected fills in category "
            f"(q={q}, direction={'positive' if r == 1 else 'negative'})"
        )
        self.q = q
        self.r = r
        self.rejections = rejections


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    p: Fraction
    seed: int = 0
    max_rejections: int = 10000

    def __post_init__(self):
        check_n(self.n, DEFAULT_GEN_MAX_N)
        object.__setattr__(self, "p", validate_bias(self.p, strict=True))
        if not isinstance(self.seed, int) or not 0 <= self.seed < (1 << 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.max_rejections < 1:
            raise ValueError(f"max_rejections must be >= 1, got {self.max_rejections}")


@dataclass(frozen=True)
class CategoryWeights:
    """Class weights for one (n, p) plus the precomputed cut points used
    for sampling. ``q_cuts[j]`` is the cumulative share of categories
    q <= j of the total; ``positive_share[k]`` is the positive direction's
    share inside category k."""

    n: int
    p: Fraction
    w_bc: Fraction
    w_pce: dict[int, Fraction]
    w_nce: dict[int, Fraction]
    total: Fraction
    q_cuts: tuple[Fraction, ...] = field(repr=False)
    positive_share: dict[int, Fraction] = field(repr=False)


def category_weights(n: int, p) -> CategoryWeights:
    """Assemble the category weights from the exact class probabilities."""
    breakdown = prob_breakdown(n, validate_bias(p, strict=True))
    w_bc = breakdown.pr_bc
    w_pce = dict(breakdown.pr_pce)
    w_nce = dict(breakdown.pr_nce)
    total = breakdown.pr_c

    cuts = []
    acc = w_bc / total
    cuts.append(acc)
    shares = {}
    for k in range(1, n + 1):
        both = w_pce[k] + w_nce[k]
        acc += both / total
        cuts.append(acc)
        shares[k] = w_pce[k] / both if both else Fraction(0)
    assert cuts[-1] == 1
    return CategoryWeights(
        n=n,
        p=breakdown.p,
        w_bc=w_bc,
        w_pce=w_pce,
        w_nce=w_nce,
        total=total,
        q_cuts=tuple(cuts),
        positive_share=shares,
    )


@dataclass
class DrawRecord:
    """How one table was produced: category q (0 = both-ways), direction r
    (1 positive, 0 negative, None in the both-ways branch), the chosen
    variable subset, the forcing input values, and the rejected-fill count.
    In the both-ways branch ``values`` maps the variable to the input value
    that forces output 1."""

    q: int
    r: int | None
    subset: tuple[int, ...]
    values: dict[int, int]
    rejections: int


def sample_index(cuts, rng) -> int:
    """Exact categorical draw against ascending cumulative ``cuts``
    (the last cut must equal 1).

    Extends a uniform bit expansion until the dyadic interval it pins down
    lies inside a single category; empty categories (repeated cuts) are
    never selected. Expected bit usage is O(1 + entropy of the law).
    """
    numer, bits = 0, 0
    while True:
        lo = Fraction(numer, 1 << bits)
        idx = bisect_right(cuts, lo)
        if Fraction(numer + 1, 1 << bits) <= cuts[idx]:
            return idx
        numer = (numer << 1) | rng.getrandbits(1)
        bits += 1


def _uniform_below(rng, m: int) -> int:
    """Exact uniform integer in [0, m) from raw bits (rejection on the top
    range); consumes no bits when m == 1."""
    if m == 1:
        return 0
    k = (m - 1).bit_length()
    while True:
        v = rng.getrandbits(k)
        if v < m:
            return v


def _bernoulli(rng, numer: int, denom: int) -> bool:
    """Exact coin with probability numer/denom."""
    return _uniform_below(rng, denom) < numer


def _subset_unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    """The ``rank``-th k-subset of range(n) in lexicographic order."""
    out = []
    v = 0
    while k:
        c = comb(n - v - 1, k - 1)
        if rank < c:
            out.append(v)
            k -= 1
        else:
            rank -= c
        v += 1
    return tuple(out)


def sample_category(weights: CategoryWeights, rng) -> tuple[int, int | None]:
    """Draw (q, r): q = 0 for the both-ways category, else the exact
    variable count, with r the direction drawn inside category q."""
    q = sample_index(weights.q_cuts, rng)
    if q == 0:
        return 0, None
    share = weights.positive_share[q]
    r = 1 if sample_index((share, Fraction(1)), rng) == 0 else 0
    return q, r


def _free_entries(n: int, subset: tuple[int, ...], values: dict[int, int]) -> list[int]:
    """Table indices not pinned by the forcing: entries whose input has
    x_i = 1 - values[i] for every chosen variable i."""
    base = 0
    for i in subset:
        if not values[i]:
            base |= 1 << i
    others = [i for i in range(n) if i not in subset]
    entries = []
    for m in range(1 << len(others)):
        e = base
        for j, pos in enumerate(others):
            if (m >> j) & 1:
                e |= 1 << pos
        entries.append(e)
    return entries


def generate(
    config: GeneratorConfig, rng, weights: CategoryWeights | None = None
) -> tuple[TruthTable, DrawRecord]:
    """One draw from the bias-p law conditioned on the canalizing class.

    ``rng`` is any object with ``getrandbits``; pass ``weights`` to reuse
    the category weights across draws. Raises RejectionLimitExceeded after
    ``config.max_rejections`` consecutive rejected fills.
    """
    n = config.n
    if weights is None:
        weights = category_weights(n, config.p)
    q, r = sample_category(weights, rng)

    if q == 0:
        i = _uniform_below(rng, n)
        s = rng.getrandbits(1)
        table = TruthTable(n, variable_mask(n, i, s))
        return table, DrawRecord(q=0, r=None, subset=(i,), values={i: s}, rejections=0)

    full = (1 << (1 << n)) - 1
    numer, denom = config.p.numerator, config.p.denominator
    n_choose_q = comb(n, q)

    rejections = 0
    while True:
        # a fresh (subset, values, fill) triple every attempt: rejection
        # then renormalizes over the whole category at once, which is what
        # makes the conditional law exact (per-route refilling would skew
        # the exactly-n classes, where the constant breaks route symmetry)
        rank = _uniform_below(rng, n_choose_q)
        subset = _subset_unrank(rank, n, q)
        s_bits = rng.getrandbits(q)
        values = {i: (s_bits >> j) & 1 for j, i in enumerate(subset)}
        canonical = s_bits == 0

        free = _free_entries(n, subset, values)
        free_bits = 0
        for e in free:
            free_bits |= 1 << e
        forced = (full ^ free_bits) if r == 1 else 0

        fill = 0
        for e in free:
            if _bernoulli(rng, numer, denom):
                fill |= 1 << e
        table = TruthTable(n, forced | fill)
        profile = classify(table)
        if profile.is_constant:
            ok = q == n and profile.constant_value == r and canonical
        elif r == 1:
            ok = not profile.negative and profile.positive_variables() == set(subset)
        else:
            ok = not profile.positive and profile.negative_variables() == set(subset)
        if ok:
            return table, DrawRecord(
                q=q, r=r, subset=subset, values=values, rejections=rejections
            )
        rejections += 1
        if rejections >= config.max_rejections:
            raise RejectionLimitExceeded(q, r, rejections)


class CanalizingGenerator:
    """Stateful wrapper owning the seeded stream and cached weights.

    Instances are single-threaded; run several with independent seeds for
    parallel sampling.
    """

    def __init__(self, config: GeneratorConfig):
        self.config = config
        self.weights = category_weights(config.n, config.p)
        self.rng = random.Random(config.seed)

    def draw(self) -> tuple[TruthTable, DrawRecord]:
        return generate(self.config, self.rng, self.weights)

    def draws(self, count: int) -> list[tuple[TruthTable, DrawRecord]]:
        return [self.draw() for _ in range(count)]
