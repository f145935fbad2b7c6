"""Consistency-based generators: the uniform-generation baseline and Modified-Greedy."""

from __future__ import annotations

from .algebra import (UNIVERSE, LanguageClass, SetExpr, intersect, intersect_all,
                      nonuniform_complexity, smallest_unseen)
from .game import Generator

_UNIVERSE = SetExpr(progressions=(UNIVERSE,))


class ConsistencyTracker:
    """Indices of languages containing every revealed element, kept incrementally.

    Languages of a stream are materialized only when first asked about.
    """

    def __init__(self, language_class: LanguageClass):
        self.cls = language_class
        self.history: list[int] = []
        self._known: dict[int, bool] = {}

    def add(self, x: int) -> None:
        self.history.append(x)
        for i, ok in self._known.items():
            if ok and x not in self.cls[i]:
                self._known[i] = False

    def is_consistent(self, i: int) -> bool:
        ok = self._known.get(i)
        if ok is None:
            lang = self.cls[i]
            ok = self._known[i] = all(x in lang for x in self.history)
        return ok

    def consistent(self, upto: int) -> list[int]:
        return [i for i in range(1, upto + 1) if self.is_consistent(i)]

    def recompute(self, upto: int) -> list[int]:
        return [i for i in range(1, upto + 1) if all(x in self.cls[i] for x in self.history)]


class UniformBaseline(Generator):
    """Plays the smallest unseen element of the intersection of all consistent languages.

    When that intersection has nothing unseen left (or nothing is consistent)
    it falls back to the smallest unseen natural.
    """

    name = "uniform_baseline"

    def __init__(self, language_class: LanguageClass, cross_check: bool = True):
        if not language_class.is_finite:
            raise ValueError("the uniform baseline needs a finite class")
        self.cls = language_class
        self.tracker = ConsistencyTracker(language_class)
        self.seen: set[int] = set()
        self.cross_check = cross_check

    def consistent(self) -> list[int]:
        c = self.tracker.consistent(self.cls.max_index)
        if self.cross_check:
            assert c == self.tracker.recompute(self.cls.max_index), "incremental consistent set drifted"
        return c

    def propose(self, revealed) -> int:
        c = self.consistent()
        if c:
            x = smallest_unseen(intersect_all(self.cls[i] for i in c), self.seen)
            if x is not None:
                return x
        return smallest_unseen(_UNIVERSE, self.seen)

    def observe(self, generated: int, revealed: int) -> None:
        self.seen.add(revealed)
        self.tracker.add(revealed)


class ModifiedGreedy(Generator):
    """Refines by the earliest consistent languages, skipping any that would empty the pool.

    At step t the pool starts as every unseen natural; for i = 1..t, a
    consistent L_i that still meets the pool is intersected in.  The output
    is the pool's smallest unseen element.
    """

    name = "modified_greedy"

    def __init__(self, language_class: LanguageClass):
        self.cls = language_class
        self.tracker = ConsistencyTracker(language_class)
        self.seen: set[int] = set()
        self.t = 0
        self.last_refined: list[int] = []

    def propose(self, revealed) -> int:
        t = self.t + 1
        pool = _UNIVERSE
        refined = []
        for i in range(1, min(t, self.cls.max_index) + 1):
            if not self.tracker.is_consistent(i):
                continue
            nxt = intersect(pool, self.cls[i])
            if smallest_unseen(nxt, self.seen) is not None:
                pool = nxt
                refined.append(i)
        self.last_refined = refined
        return smallest_unseen(pool, self.seen)

    def observe(self, generated: int, revealed: int) -> None:
        self.t += 1
        self.seen.add(revealed)
        self.tracker.add(revealed)


def greedy_bounds(language_class: LanguageClass, i: int) -> tuple[int, int]:
    """(last-mistake bound, mistake bound) of Modified-Greedy on target L_i."""
    m = nonuniform_complexity(language_class, i)
    last = max(i - 1, m + 1)
    return last, min(2 * (i - 1), last)
