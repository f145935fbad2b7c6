"""Weighted generation with a prior over the stream and a growth schedule.

The generator keeps an exact rational weight per language in its active
window ``1..f(t)``; each step it outputs an unseen element of maximum total
weight, then zeroes languages that miss the revealed element and doubles
those that contained the revealed element but not its own output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .algebra import (BRUTE_FORCE_CAP, UNIVERSE, LanguageClass, SetExpr,
                      intersect, smallest_unseen)
from .game import Generator

INF = math.inf

# A rational strictly above pi^2/6 = 1.64493406684...
BASEL_UPPER = Fraction(1644935, 1000000)
BASEL = math.pi**2 / 6


class ActiveSetTooLarge(RuntimeError):
    pass


class PotentialViolation(AssertionError):
    pass


class UnboundedIndex(ValueError):
    pass


@dataclass(frozen=True)
class Constant:
    n: int

    def __call__(self, t: int) -> int:
        return self.n

    def __str__(self):
        return f"constant:{self.n}"


@dataclass(frozen=True)
class PowerOfTwo:
    def __call__(self, t: int) -> int:
        return 2**t

    def __str__(self):
        return "pow2"


GrowthFunction = Union[Constant, PowerOfTwo]


def f_inverse(f: GrowthFunction, i: int) -> Union[int, float]:
    """Largest t >= 1 with f(t) < i; 0 when f(t) >= i for every t >= 1; inf if f never reaches i."""
    if i < 1:
        raise ValueError("language indices start at 1")
    if isinstance(f, Constant):
        return 0 if i <= f.n else INF
    if isinstance(f, PowerOfTwo):
        return 0 if i <= 2 else (i - 1).bit_length() - 1
    raise TypeError(f"unknown growth function {f!r}")


@dataclass(frozen=True)
class Uniform:
    """w0(i) = 1 over a class of ``n`` languages; total W = n."""

    n: int

    def weight(self, i: int) -> Fraction:
        return Fraction(1)

    @property
    def total(self) -> Fraction:
        return Fraction(self.n)

    def partial_sum(self, k: int) -> Fraction:
        return Fraction(min(k, self.n))

    def __str__(self):
        return "uniform"


@dataclass(frozen=True)
class InverseSquare:
    """w0(i) = 1/i^2; the total is bounded by a rational just above pi^2/6."""

    def weight(self, i: int) -> Fraction:
        return Fraction(1, i * i)

    @property
    def total(self) -> Fraction:
        return BASEL_UPPER

    def partial_sum(self, k: int) -> Fraction:
        return sum((Fraction(1, i * i) for i in range(1, k + 1)), Fraction(0))

    def __str__(self):
        return "inverse_square"


PriorWeights = Union[Uniform, InverseSquare]


def floor_log2(q: Fraction) -> int:
    """Exact floor(log2 q) for a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log2 of a non-positive number")
    p, d = q.numerator, q.denominator
    k = p.bit_length() - d.bit_length()
    # now 2^(k-1) < p/d < 2^(k+1)
    if Fraction(2) ** k > q:
        k -= 1
    return k


def log2_at_least(rho: Fraction, value: Fraction) -> bool:
    """Exact test of ``value <= log2(rho)`` for rationals."""
    value, rho = Fraction(value), Fraction(rho)
    if rho <= 0:
        raise ValueError("log2 of a non-positive number")
    # float screening first; the exact power comparison only near equality
    approx = math.log2(rho.numerator) - math.log2(rho.denominator)
    margin = 1e-9 * max(1.0, abs(approx))
    if float(value) < approx - margin:
        return True
    if float(value) > approx + margin:
        return False
    return Fraction(2) ** value.numerator <= rho ** value.denominator


def mistake_bound_formula(f: GrowthFunction, prior: PriorWeights, i: int) -> int:
    """f^{-1}(i) + floor(log2(W / w0(i))), the weighted generator's mistake bound on L_i."""
    fi = f_inverse(f, i)
    if fi == INF:
        raise UnboundedIndex(f"L_{i} never enters the window of {f}")
    return int(fi) + floor_log2(prior.total / prior.weight(i))


def log_index_bound(i: int) -> float:
    """Closed-form mistake bound 3 log2 i + log2(pi^2/6) for the 1/i^2, 2^t instantiation."""
    return 3 * math.log2(i) + math.log2(BASEL)


def weighted_argmax(weights: dict[int, Fraction], language: Callable[[int], SetExpr],
                    seen) -> tuple[int, tuple[int, ...]]:
    """Unseen element maximizing the total weight of the languages containing it.

    Returns ``(element, S)`` where ``S`` is the set of positive-weight indices
    whose languages contain the element.  Subsets are ranked by total weight,
    then by the lexicographically smaller index tuple; the element is the
    smallest unseen one in the winning subset's intersection.  Any element's
    membership pattern is itself a subset with an unseen witness, so the
    first subset with an unseen witness attains the maximum.
    """
    active = sorted(i for i, w in weights.items() if w > 0)
    if not active:
        return smallest_unseen(UNIVERSE_EXPR, seen), ()
    if len(active) > BRUTE_FORCE_CAP:
        raise ActiveSetTooLarge(f"{len(active)} positive-weight languages exceeds {BRUTE_FORCE_CAP}")
    wts = [weights[i] for i in active]
    suffix = [Fraction(0)] * (len(active) + 1)
    for k in range(len(active) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + wts[k]

    best_w = Fraction(-1)
    best: Optional[tuple[tuple[int, ...], SetExpr]] = None

    def visit(k: int, expr: SetExpr, w: Fraction, chosen: tuple[int, ...]):
        nonlocal best_w, best
        if chosen and (w > best_w or (w == best_w and chosen < best[0])):
            best_w, best = w, (chosen, expr)
        for j in range(k, len(active)):
            if w + suffix[j] < best_w:
                break
            nxt = intersect(expr, language(active[j]))
            if smallest_unseen(nxt, seen) is None:
                continue
            visit(j + 1, nxt, w + wts[j], chosen + (active[j],))

    visit(0, UNIVERSE_EXPR, Fraction(0), ())
    if best is None:
        return smallest_unseen(UNIVERSE_EXPR, seen), ()
    return smallest_unseen(best[1], seen), best[0]


UNIVERSE_EXPR = SetExpr(progressions=(UNIVERSE,))


class WeightedGenerator(Generator):
    """Multiplicative-weights generator over a (possibly streamed) class.

    ``potential_log`` records ``(t, W_t, W_{t-1}, added)`` for every step; a
    step where ``W_t > W_{t-1} + added`` raises :class:`PotentialViolation`.
    """

    name = "weighted"

    def __init__(self, language_class: LanguageClass, prior: PriorWeights, growth: GrowthFunction):
        self.cls = language_class
        self.prior = prior
        self.growth = growth
        self.t = 0
        self.seen: set[int] = set()
        self.history: list[int] = []
        self.potential_log: list[tuple[int, Fraction, Fraction, Fraction]] = []
        if prior.partial_sum(self.window(1)) > prior.total:
            raise ValueError("prior mass in the first window exceeds its declared total")
        self.weights: dict[int, Fraction] = {i: prior.weight(i) for i in range(1, self.window(1) + 1)}
        self.last_choice: tuple[int, ...] = ()

    def window(self, t: int) -> int:
        return min(self.growth(t), self.cls.max_index)

    def potential(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def propose(self, revealed: Sequence[int]) -> int:
        x, self.last_choice = weighted_argmax(self.weights, lambda i: self.cls[i].expr, self.seen)
        return x

    def observe(self, generated: int, revealed: int) -> None:
        self.t += 1
        t = self.t
        before = self.potential()
        for i in range(1, self.window(t) + 1):
            w = self.weights[i]
            lang = self.cls[i]
            if revealed not in lang:
                self.weights[i] = Fraction(0)
            elif generated not in lang:
                self.weights[i] = 2 * w
        self.seen.add(revealed)
        self.history.append(revealed)
        added = Fraction(0)
        for i in range(self.window(t) + 1, self.window(t + 1) + 1):
            w0 = self.prior.weight(i)
            added += w0
            lang = self.cls[i]
            self.weights[i] = w0 if all(x in lang for x in self.history) else Fraction(0)
        after = self.potential()
        self.potential_log.append((t, after, before, added))
        if after > before + added:
            raise PotentialViolation(f"step {t}: W_t={after} > W_(t-1)+{added}={before + added}")
        if self.prior.partial_sum(self.window(t + 1)) > self.prior.total:
            raise PotentialViolation(f"step {t}: prior mass in window exceeds declared total")
