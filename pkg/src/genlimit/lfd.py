"""Learning from demonstrations over a stream of reward functions, and the
reduction that turns such a learner into a language generator.

In the reduction the context is the revealed history ``s`` and the reward of
``L_i`` is ``r_i(s, y) = 1[y in L_i and y not in s]``.  Since every language
is infinite, ``sup_y r_i(s, y) = 1`` in every context.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import LanguageClass
from .game import Generator
from .weighted import (INF, GrowthFunction, PriorWeights, PotentialViolation, f_inverse,
                       floor_log2, log2_at_least, weighted_argmax)


class InvalidGamma(ValueError):
    pass


def check_gamma(gamma) -> Fraction:
    g = Fraction(gamma)
    if not (g == 1 or 0 < g <= Fraction(3, 4)):
        raise InvalidGamma(f"gamma must be 1 or lie in (0, 3/4], got {gamma}")
    return g


class LanguageReward:
    """r(s, y) = 1 if y is in the language and not in the context ``s``."""

    def __init__(self, language):
        self.language = language

    def __call__(self, ctx: Sequence[int], y: int) -> int:
        return int(y in self.language and y not in ctx)

    def sup(self, ctx) -> int:
        return 1


class TableReward:
    """Reward given by an explicit ``{action: value}`` table, the same in every context."""

    def __init__(self, table: dict):
        self.table = {a: Fraction(v) for a, v in table.items()}

    def __call__(self, ctx, y):
        return self.table.get(y, Fraction(0))

    def sup(self, ctx):
        return max(self.table.values(), default=Fraction(0))


class LfdLearner:
    """Weighted learner over rewards ``r_1, r_2, ...`` with window ``f`` and prior ``w0``.

    With ``gamma == 1`` a reward function is dropped the first time a
    demonstration scores 0 under it and doubled when the demonstration scores
    but the learner's action did not.  With ``gamma`` in (0, 3/4] weights are
    multiplied by (1+gamma)^regret(learner) (1-gamma)^regret(demonstrator)
    and never reach zero.

    ``actions`` fixes a finite action set for generic rewards; when omitted the
    rewards must be :class:`LanguageReward` and the argmax runs over all
    naturals outside the context.
    """

    def __init__(self, reward: Callable[[int], object], max_index: int, gamma,
                 prior: PriorWeights, growth: GrowthFunction,
                 actions: Optional[Sequence[int]] = None):
        self.reward = reward
        self.max_index = max_index
        self.gamma = check_gamma(gamma)
        self.prior = prior
        self.growth = growth
        self.actions = None if actions is None else sorted(actions)
        self.t = 0
        self.demos: list[tuple[tuple, int]] = []
        self.moves: list[int] = []
        self.potential_log: list[tuple[int, Fraction, Fraction, Fraction]] = []
        self.weights = {i: prior.weight(i) for i in range(1, self.window(1) + 1)}

    def window(self, t: int) -> int:
        return min(self.growth(t), self.max_index)

    def potential(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def propose(self, ctx: Sequence[int]) -> int:
        ctx = tuple(ctx)
        if self.actions is None:
            seen = set(ctx)
            y, _ = weighted_argmax(self.weights, lambda i: self.reward(i).language.expr, seen)
            return y

        def score(y):
            return sum((w * Fraction(self.reward(i)(ctx, y)) for i, w in self.weights.items()), Fraction(0))

        return max(self.actions, key=lambda y: (score(y), -y))

    def _factor(self, lam) -> Fraction:
        lam = Fraction(lam)
        if lam < 0 or lam > 1:
            raise ValueError(f"regret {lam} outside [0, 1]")
        if lam.denominator != 1:
            raise ValueError("fractional regret needs real-valued exponents; only binary rewards are exact")
        return lam

    def update(self, ctx: Sequence[int], yhat: int, y: int) -> None:
        ctx = tuple(ctx)
        self.t += 1
        t = self.t
        g = self.gamma
        before = self.potential()
        for i in range(1, self.window(t) + 1):
            r = self.reward(i)
            w = self.weights[i]
            if g == 1:
                if r(ctx, y) == 0:
                    self.weights[i] = Fraction(0)
                elif r(ctx, yhat) == 0:
                    self.weights[i] = 2 * w
            else:
                sup = r.sup(ctx)
                a = self._factor(sup - r(ctx, yhat))
                b = self._factor(sup - r(ctx, y))
                self.weights[i] = w * (1 + g) ** int(a) * (1 - g) ** int(b)
        self.demos.append((ctx, y))
        self.moves.append(yhat)
        added = Fraction(0)
        for i in range(self.window(t) + 1, self.window(t + 1) + 1):
            w0 = self.prior.weight(i)
            added += w0
            if g == 1:
                r = self.reward(i)
                ok = all(r(c, d) == 1 for c, d in self.demos)
                self.weights[i] = w0 if ok else Fraction(0)
            else:
                self.weights[i] = w0
        after = self.potential()
        self.potential_log.append((t, after, before, added))
        if after > before + added:
            raise PotentialViolation(f"step {t}: W_t={after} > W_(t-1)+{added}={before + added}")

    def demonstrator_regret(self, i: int, start: int, end: int) -> Fraction:
        """Sum over steps start..end (1-based, inclusive) of sup r_i - r_i(demonstration)."""
        r = self.reward(i)
        lo = max(start, 1)
        return sum((Fraction(r.sup(c)) - Fraction(r(c, d)) for c, d in self.demos[lo - 1:end]),
                   Fraction(0))

    def learner_regret(self, i: int, end: int) -> Fraction:
        """M_opt - M_alg over steps 1..end for reward ``r_i``."""
        r = self.reward(i)
        return sum((Fraction(r.sup(c)) - Fraction(r(c, yh))
                    for (c, _), yh in zip(self.demos[:end], self.moves[:end])), Fraction(0))


class LfdGenerator(Generator):
    """Generator obtained from an :class:`LfdLearner` by the history-as-context reduction."""

    name = "lfd"

    def __init__(self, learner: LfdLearner):
        self.learner = learner
        self._ctx: tuple = ()

    @property
    def weights(self):
        return self.learner.weights

    @property
    def potential_log(self):
        return self.learner.potential_log

    def propose(self, revealed) -> int:
        self._ctx = tuple(revealed)
        return self.learner.propose(self._ctx)

    def observe(self, generated: int, revealed: int) -> None:
        self.learner.update(self._ctx, generated, revealed)


def reduce_generation_to_lfd(language_class: LanguageClass, gamma, prior: PriorWeights,
                             growth: GrowthFunction) -> LfdGenerator:
    rewards: dict[int, LanguageReward] = {}

    def reward(i: int) -> LanguageReward:
        r = rewards.get(i)
        if r is None:
            r = rewards[i] = LanguageReward(language_class[i])
        return r

    return LfdGenerator(LfdLearner(reward, language_class.max_index, gamma, prior, growth))


def largest_integer_within(offset: Fraction, scale: Fraction, rho: Fraction) -> int:
    """Largest integer M with M <= offset + scale * log2(rho), decided exactly."""
    offset, scale, rho = Fraction(offset), Fraction(scale), Fraction(rho)
    guess = math.floor(float(offset) + float(scale) * math.log2(rho)) + 2
    while not log2_at_least(rho, (guess - offset) / scale):
        guess -= 1
    return guess


def consistent_bound(prior: PriorWeights, f: GrowthFunction, i: int) -> tuple[int, float]:
    """Mistakes on a consistent stream: log2(W/w0(i)) + f^{-1}(i)."""
    fi = f_inverse(f, i)
    if fi == INF:
        raise ValueError(f"L_{i} never enters the window")
    rho = prior.total / prior.weight(i)
    return int(fi) + floor_log2(rho), math.log2(rho) + fi


def regret_bound(prior: PriorWeights, f: GrowthFunction, i: int, gamma,
                 demonstrator_regret) -> tuple[int, float]:
    """M_opt - M_alg <= log2(W/w0(i))/gamma + (1+2 gamma) R_i(f^{-1}(i)+1 : T) + f^{-1}(i)."""
    g = check_gamma(gamma)
    fi = f_inverse(f, i)
    if fi == INF:
        raise ValueError(f"L_{i} never enters the window")
    rho = prior.total / prior.weight(i)
    offset = (1 + 2 * g) * Fraction(demonstrator_regret) + int(fi)
    return (largest_integer_within(offset, 1 / g, rho),
            float(offset) + math.log2(rho) / float(g))


def noisy_finite_bound(class_size: int, gamma, noise: int) -> tuple[int, float]:
    """Mistakes <= (1+2 gamma) M + log2|L| / gamma."""
    g = check_gamma(gamma)
    offset = (1 + 2 * g) * noise
    return (largest_integer_within(offset, 1 / g, Fraction(class_size)),
            float(offset) + math.log2(class_size) / float(g))


def noisy_stream_bound(i: int, gamma, noise_sum: int) -> tuple[int, float]:
    """Mistakes <= (1+2 gamma) (noise in the window) + (1 + 2/gamma) log2 i."""
    g = check_gamma(gamma)
    offset = (1 + 2 * g) * noise_sum
    return (largest_integer_within(offset, 1 + 2 / g, Fraction(i)),
            float(offset) + (1 + 2 / float(g)) * math.log2(i))
