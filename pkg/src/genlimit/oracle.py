"""Exhaustive game-tree search for the number of mistakes an adversary can force.

Elements are quotiented by membership pattern (the set of languages that
contain them): two elements with the same pattern are interchangeable for
both players.  Beyond the largest explicit element or progression start,
membership is periodic in the lcm of all strides, so one period decides
which patterns are infinite.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Union

from .algebra import LanguageClass, as_expr

MAX_CLASS = 4
MAX_DEPTH = 12


class SearchBudgetExceeded(RuntimeError):
    pass


def membership_patterns(languages, cap: Union[int, float] = math.inf) -> dict[frozenset, Union[int, float]]:
    """Map each membership pattern (over all naturals) to its element count, capped at ``cap``."""
    exprs = [as_expr(L) for L in languages]
    threshold, period = 0, 1
    for e in exprs:
        if e.finite:
            threshold = max(threshold, max(e.finite))
        for p in e.progressions:
            threshold = max(threshold, p.start)
            period = math.lcm(period, p.stride)
    counts: dict[frozenset, Union[int, float]] = {}
    for x in range(threshold + 1):
        key = frozenset(i for i, e in enumerate(exprs) if x in e)
        counts[key] = counts.get(key, 0) + 1
    for x in range(threshold + 1, threshold + period + 1):
        key = frozenset(i for i, e in enumerate(exprs) if x in e)
        counts[key] = math.inf
    return {k: min(v, cap) for k, v in counts.items()}


def minimax_oracle(language_class: Union[LanguageClass, list], depth: int, budget: int = 2_000_000) -> int:
    """Mistakes a best adversary forces on a best generator within ``depth`` steps.

    The adversary must keep at least one language consistent with everything
    it reveals and never repeats an element; the target is chosen at the end
    among the languages still consistent.
    """
    langs = list(language_class)
    if len(langs) > MAX_CLASS:
        raise ValueError(f"oracle supports at most {MAX_CLASS} languages")
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    counts = membership_patterns(langs, cap=depth + 1)
    patterns = sorted(counts, key=lambda p: (len(p), sorted(p)))
    sizes = [counts[p] for p in patterns]
    k = len(langs)
    everyone = frozenset(range(k))
    nodes = 0

    @lru_cache(maxsize=None)
    def value(left: int, used: tuple, alive: frozenset, mistakes: tuple) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"more than {budget} positions")
        if left == 0:
            return max(mistakes[i] for i in alive)
        best = math.inf
        for gi, gp in enumerate(patterns):
            if used[gi] >= sizes[gi]:
                continue
            charged = tuple(m + (i in alive and i not in gp) for i, m in enumerate(mistakes))
            worst = -1
            for ai, ap in enumerate(patterns):
                if used[ai] >= sizes[ai]:
                    continue
                nxt = alive & ap
                if not nxt:
                    continue
                bumped = used[:ai] + (used[ai] + 1,) + used[ai + 1:]
                masked = tuple(m if i in nxt else 0 for i, m in enumerate(charged))
                worst = max(worst, value(left - 1, bumped, nxt, masked))
                if worst >= best:
                    break
            best = min(best, worst)
        return int(best)

    return value(depth, tuple(0 for _ in patterns), everyone, tuple(0 for _ in range(k)))
