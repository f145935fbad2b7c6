"""Adversary strategies: plain enumerators, the adaptive lower-bound constructions, and noise."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .algebra import LanguageClass, Progression, intersect, iter_elements
from .classes import littlestone, tradeoff, tree_depth, tree_point, venn
from .game import Adversary


class NoiseSourceCollision(ValueError):
    pass


def _fresh(elements: Iterable[int], revealed) -> Iterator[int]:
    for x in elements:
        if x not in revealed:
            yield x


class Enumerator(Adversary):
    """Reveals the target language in ascending order."""

    name = "enumerator"

    def __init__(self, language_class: LanguageClass, target: int):
        super().__init__(language_class, target)
        self._stream = iter_elements(language_class[target])

    def reveal(self, generated, revealed):
        seen = set(revealed)
        return next(_fresh(self._stream, seen))


class _Committing(Adversary):
    """Shared tail behaviour: once a target is declared, enumerate what is left of it."""

    def _enumerate_target(self, revealed) -> int:
        if getattr(self, "_tail", None) is None:
            self._tail = iter_elements(self.language_class[self.target])
        return next(_fresh(self._tail, set(revealed)))


class VennAdversary(_Committing):
    """Two-language separation.

    Reveals the shared core for ``n`` steps; at step n+1 it reads the
    generator's output and commits to whichever language that output misses
    (L1 if it misses both).
    """

    name = "venn"

    def __init__(self, n: int):
        super().__init__(venn(n))
        self.n = n
        self._core = iter(range(n))
        self._core_left = n

    def reveal(self, generated, revealed):
        if self.target is None and self._core_left:
            self._core_left -= 1
            return next(_fresh(self._core, set(revealed)))
        if self.target is None:
            xhat = generated[-1]
            l1, l2 = self.language_class[1], self.language_class[2]
            if xhat in l1 and xhat not in l2:
                self.declare(2, len(generated))
            else:
                self.declare(1, len(generated))
        return self._enumerate_target(revealed)


class LittlestoneAdversary(_Committing):
    """Walks the prefix tree against the generator, one forced mistake per level.

    The adversary holds a bit string ``s``.  Each probing step it reads the
    generator's output; if that output belongs to some ``L_v`` with ``s`` a
    prefix of ``v`` (or is a tree point extending ``s``), it appends the
    complement of the next bit of ``v``, otherwise it appends 0.  It then
    reveals the tree point of ``s``.  After m = floor(log2 n) probes it
    commits to ``L_s``.
    """

    name = "littlestone"

    def __init__(self, n: int):
        super().__init__(littlestone(n))
        self.n = n
        self.m = tree_depth(n)
        self.s = ""
        self._base = (1 << (self.m + 1)) - 2

    def _branch_bit(self, x: int) -> Optional[str]:
        """Next bit after ``s`` of the subtree the element points into, if any."""
        if x < self._base:
            length = (x + 2).bit_length() - 1
            p = format(x + 2 - (1 << length), f"0{length}b")
            if len(p) > len(self.s) and p.startswith(self.s):
                return p[len(self.s)]
            return None
        k = (x - self._base) % (self.n + 1)
        if k < 2**self.m:
            v = format(k, f"0{self.m}b")
            if v.startswith(self.s):
                return v[len(self.s)]
        return None

    def reveal(self, generated, revealed):
        if len(self.s) < self.m:
            bit = self._branch_bit(generated[-1])
            self.s += "0" if bit is None else ("1" if bit == "0" else "0")
            if len(self.s) == self.m:
                self.declare(int(self.s, 2) + 1, len(generated))
            return tree_point(self.s)
        if self.target is None:
            # m = 0 cannot happen (n >= 2), but keep the strategy total
            self.declare(1, len(generated))
        return self._enumerate_target(revealed)


class TradeoffAdversary(_Committing):
    """Nested-prefix adversary that forces slow convergence or linearly many mistakes.

    Enumerates column 1 rows 1..n, column 2 rows 1..n^2, and so on.  At the
    step where cell (i, 1) is next (i >= 2) it reads the generator's output:
    if the output lies outside L_{i-1} it commits to L_{i-1} (rule 1);
    otherwise, when i equals ``i_star``, it commits to L_{i_star} (rule 2).
    """

    name = "tradeoff"

    def __init__(self, n: int, i_star: int, max_index: Optional[int] = None,
                 row_cap: Optional[int] = None):
        if i_star < 2:
            raise ValueError("i_star must be at least 2")
        max_index = max_index if max_index is not None else 2 * i_star
        if max_index < i_star:
            raise ValueError("max_index must be at least i_star")
        super().__init__(tradeoff(n, max_index, row_cap))
        self.n = n
        self.i_star = i_star
        self.code = self.language_class.code
        self._col, self._row = 1, 1
        self.halt_rule: Optional[int] = None
        self.halt_boundary: Optional[int] = None
        self.boundary_steps: dict[int, int] = {}

    def reveal(self, generated, revealed):
        if self.target is None and self._row == 1 and self._col >= 2:
            i, t = self._col, len(generated)
            self.boundary_steps[i] = t
            if generated[-1] not in self.language_class[i - 1]:
                self.halt_rule, self.halt_boundary = 1, i
                self.declare(i - 1, t)
            elif i == self.i_star:
                self.halt_rule, self.halt_boundary = 2, i
                self.declare(self.i_star, t)
        if self.target is not None:
            return self._enumerate_target(revealed)
        x = self.code.encode(self._col, self._row)
        self._row += 1
        if self._row > self.n**self._col:
            self._col, self._row = self._col + 1, 1
        return x


class NoisyAdversary(Adversary):
    """Wraps a base adversary and substitutes noise at scheduled steps.

    At a scheduled step the next unused element of ``source`` is revealed and
    the base adversary is not consulted, so its own stream is deferred rather
    than skipped.  ``source`` must miss every language of the class.
    """

    name = "noisy"

    def __init__(self, base: Adversary, steps: Iterable[int], source: Optional[Progression] = None):
        self.base = base
        self.steps = frozenset(steps)
        source = source if source is not None else base.language_class.noise_source
        if source is None:
            raise NoiseSourceCollision("no noise source given and the class declares none")
        for i in range(1, base.language_class.max_index + 1):
            if not intersect(base.language_class[i], source).is_empty:
                raise NoiseSourceCollision(f"noise source {source} meets language {i}")
        self.source = source
        self._noise = iter_elements(source)

    @property
    def language_class(self):
        return self.base.language_class

    @property
    def target(self):
        return self.base.target

    @property
    def declared_at(self):
        return self.base.declared_at

    def reveal(self, generated, revealed):
        if len(generated) in self.steps:
            return next(_fresh(self._noise, set(revealed)))
        return self.base.reveal(generated, revealed)
