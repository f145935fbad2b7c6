import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genlimit.adversaries import Enumerator, LittlestoneAdversary, VennAdversary
from genlimit.algebra import (FiniteSet, Language, LanguageClass, Progression, intersect_all,
                              smallest_unseen)
from genlimit.classes import littlestone, random_class, tradeoff, venn
from genlimit.game import run_game
from genlimit.weighted import (BASEL, BASEL_UPPER, INF, ActiveSetTooLarge, Constant, InverseSquare,
                               PotentialViolation, PowerOfTwo, UnboundedIndex, Uniform,
                               WeightedGenerator, f_inverse, floor_log2, log2_at_least,
                               log_index_bound, mistake_bound_formula, weighted_argmax)

import oracles


def hybrid(cls):
    return WeightedGenerator(cls, Uniform(cls.max_index), Constant(cls.max_index))


@pytest.mark.parametrize("f, i, expected", [
    (PowerOfTwo(), 5, 2), (PowerOfTwo(), 1, 0), (PowerOfTwo(), 2, 0), (PowerOfTwo(), 3, 1),
    (PowerOfTwo(), 4, 1), (PowerOfTwo(), 9, 3), (Constant(8), 1, 0), (Constant(8), 8, 0),
    (Constant(8), 9, INF),
])
def test_f_inverse(f, i, expected):
    assert f_inverse(f, i) == expected


@given(st.integers(1, 5000))
def test_f_inverse_pow2_is_largest_t_below(i):
    brute = max((t for t in range(1, 20) if 2**t < i), default=0)
    assert f_inverse(PowerOfTwo(), i) == brute


def test_basel_rational_is_an_upper_bound():
    assert float(BASEL_UPPER) > BASEL
    assert math.fsum(1 / k**2 for k in range(1, 200_000)) < float(BASEL_UPPER)


@pytest.mark.parametrize("f, prior, i, expected", [
    (Constant(8), Uniform(8), 1, 3), (Constant(8), Uniform(8), 8, 3),
    (PowerOfTwo(), InverseSquare(), 1, 0), (PowerOfTwo(), InverseSquare(), 4, 5),
])
def test_mistake_bound_formula(f, prior, i, expected):
    assert mistake_bound_formula(f, prior, i) == expected


def test_mistake_bound_formula_unbounded():
    with pytest.raises(UnboundedIndex):
        mistake_bound_formula(Constant(4), Uniform(4), 5)


def test_coarser_total_gives_one():
    assert floor_log2(Fraction(2)) == 1


@given(st.integers(1, 10**12), st.integers(1, 10**12))
def test_floor_log2_exact(p, q):
    k = floor_log2(Fraction(p, q))
    assert Fraction(2) ** k <= Fraction(p, q) < Fraction(2) ** (k + 1)


@given(st.fractions(min_value=Fraction(1, 50), max_value=1000, max_denominator=50), st.integers(-30, 30), st.integers(1, 6))
def test_log2_at_least(rho, num, den):
    # v <= log2(rho)  <=>  2^num <= rho^den  for v = num/den, den > 0
    v = Fraction(num, den)
    assert log2_at_least(rho, v) == (Fraction(2) ** num <= rho**den)


def test_log_index_bound_dominates_formula():
    for i in range(1, 200):
        assert mistake_bound_formula(PowerOfTwo(), InverseSquare(), i) <= math.floor(log_index_bound(i))


# --- argmax ----------------------------------------------------------------

def three_languages():
    # L1 ∩ L2 ∩ L3 = {0}, L1 ∩ L2 also holds 12, 24, ...
    l1 = Language((FiniteSet.of([0]), Progression(12, 12)))
    l2 = Language((FiniteSet.of([0]), Progression(12, 6)))
    l3 = Language((FiniteSet.of([0]), Progression(1, 2)))
    return {1: l1, 2: l2, 3: l3}


def test_argmax_falls_back_to_best_pair():
    langs = three_languages()
    weights = {1: Fraction(2), 2: Fraction(1), 3: Fraction(1)}
    x, chosen = weighted_argmax(weights, lambda i: langs[i].expr, {0})
    assert chosen == (1, 2)
    assert x == 12
    best, _ = oracles.argmax_scan(weights, langs, {0}, 10_000)
    assert best == 3


def test_argmax_single_language():
    lang = Language((Progression(7, 3),))
    x, chosen = weighted_argmax({1: Fraction(1)}, lambda i: lang.expr, {7, 10})
    assert (x, chosen) == (13, (1,))


def test_argmax_empty_active_set():
    x, chosen = weighted_argmax({1: Fraction(0)}, None, {0, 1, 3})
    assert (x, chosen) == (2, ())


def test_argmax_cap():
    weights = {i: Fraction(1) for i in range(1, 27)}
    with pytest.raises(ActiveSetTooLarge):
        weighted_argmax(weights, lambda i: None, set())


def test_argmax_venn_starts_in_core():
    cls = venn(6)
    x, _ = weighted_argmax({1: Fraction(1), 2: Fraction(1)}, lambda i: cls[i].expr, set())
    assert x == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.lists(st.integers(0, 4), min_size=5, max_size=5),
       st.sets(st.integers(0, 70), max_size=15))
def test_argmax_value_matches_scan(seed, exps, seen):
    cls = random_class(seed)
    langs = {i: cls[i] for i in range(1, 6)}
    weights = {i: Fraction(2) ** e if e else Fraction(0) for i, e in zip(range(1, 6), exps)}
    x, chosen = weighted_argmax(weights, lambda i: langs[i].expr, seen)
    assert x not in seen
    score = sum(w for i, w in weights.items() if x in langs[i])
    best, _ = oracles.argmax_scan(weights, langs, seen, 2000)
    assert score == best


# --- update rule -------------------------------------------------------------

def test_update_doubles_and_zeroes():
    # venn(3): L1 = {0,1,2} u {3+3k}, L2 = {0,1,2} u {4+3k}
    cls = venn(3)
    g = hybrid(cls)
    for x in range(3):
        assert g.propose(list(range(x))) == x
        g.observe(x, x)
    assert g.weights == {1: 1, 2: 1}
    xhat = g.propose([0, 1, 2])
    assert xhat == 3
    g.observe(xhat, 4)
    assert g.weights == {1: 0, 2: 2}
    g.observe(g.propose([0, 1, 2, 4]), 6)  # 6 is in L1's tail, but L1 stays dead
    assert g.weights[1] == 0


def test_off_argmax_play_breaks_potential():
    # doubling L2 while L1 keeps its weight is only possible if the move was not the argmax
    g = hybrid(venn(3))
    with pytest.raises(PotentialViolation):
        g.observe(5, 0)


def test_pow2_initialization_checks_history():
    langs = [Language((FiniteSet.of([1, 2] if i % 2 else [1]), Progression(100 + i, 50)))
             for i in range(1, 9)]
    cls = LanguageClass.stream(lambda i: langs[i - 1], 8)
    g = WeightedGenerator(cls, InverseSquare(), PowerOfTwo())
    assert set(g.weights) == {1, 2}
    g.observe(g.propose([]), 1)
    assert set(g.weights) == {1, 2, 3, 4}
    g.observe(g.propose([1]), 2)
    assert set(g.weights) == set(range(1, 9))
    for i in range(5, 9):
        assert g.weights[i] == (InverseSquare().weight(i) if i % 2 else 0)


class CheckedHybrid(WeightedGenerator):
    """Asserts the proposal lies in the consistent intersection whenever that has room."""

    def propose(self, revealed):
        x = super().propose(revealed)
        consistent = [i for i in range(1, self.cls.max_index + 1)
                      if all(r in self.cls[i] for r in revealed)]
        if consistent:
            room = smallest_unseen(intersect_all(self.cls[i] for i in consistent), set(revealed))
            if room is not None:
                assert all(x in self.cls[i] for i in consistent)
        return x


@pytest.mark.parametrize("seed", range(10))
def test_hybrid_plays_inside_consistent_meet(seed):
    cls = random_class(seed)
    for target in range(1, 6):
        g = CheckedHybrid(cls, Uniform(5), Constant(5))
        r = run_game(g, Enumerator(cls, target), 40)
        assert r.total_mistakes <= mistake_bound_formula(Constant(5), Uniform(5), target)
        for t, after, before, added in g.potential_log:
            assert after <= before + added


def test_single_language_never_errs():
    cls = LanguageClass.from_languages([Language((FiniteSet.of([4, 9]), Progression(20, 7)))])
    r = run_game(hybrid(cls), Enumerator(cls, 1), 30)
    assert r.total_mistakes == 0


def test_zero_weights_absorbing():
    cls = littlestone(8)
    g = hybrid(cls)
    run_game(g, LittlestoneAdversary(8), 30)
    dead = {i for i, w in g.weights.items() if w == 0}
    assert len(dead) == 7
    for _, after, before, added in g.potential_log:
        assert after <= before + added


def test_stream_weights_are_prior_times_power_of_two():
    cls = tradeoff(3, 8)
    g = WeightedGenerator(cls, InverseSquare(), PowerOfTwo())
    run_game(g, Enumerator(cls, 3), 30)
    for i, w in g.weights.items():
        if w:
            ratio = w / InverseSquare().weight(i)
            assert ratio.denominator == 1 and ratio.numerator & (ratio.numerator - 1) == 0
