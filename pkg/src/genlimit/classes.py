"""Builders for the concrete language classes used by the adversaries.

Every builder leaves one residue class (or one column) unused by all of its
languages and exposes it as ``noise_source``, so noisy adversaries always have
a supply of elements outside every language.
"""

from __future__ import annotations

import random

from .algebra import FiniteSet, Language, LanguageClass, PairCode, Progression


def venn(n: int) -> LanguageClass:
    """Two languages sharing exactly ``{0, ..., n-1}``, with disjoint tails."""
    if n < 1:
        raise ValueError("venn class needs n >= 1")
    core = FiniteSet(tuple(range(n)))
    l1 = Language((core, Progression(n, 3)), label="L1")
    l2 = Language((core, Progression(n + 1, 3)), label="L2")
    return LanguageClass.from_languages([l1, l2], name=f"venn({n})",
                                        noise_source=Progression(n + 2, 3))


def tree_depth(n: int) -> int:
    return n.bit_length() - 1


def tree_point(bits: str) -> int:
    """Element standing for the tree node labelled by a nonempty bit string."""
    return (1 << len(bits)) - 2 + int(bits, 2)


def littlestone(n: int) -> LanguageClass:
    """Prefix-coded class of size ``n`` over a complete binary tree of depth floor(log2 n).

    ``L_v`` (for each bit string ``v`` of length m) holds the tree points of
    every nonempty prefix of ``v`` plus a private infinite tail.  Indices
    1..2^m are the tree languages in lexicographic order of ``v``; the rest
    are disjoint padding languages made only of a tail.
    """
    if not 2 <= n <= 2**10:
        raise ValueError("littlestone class size must lie in [2, 1024]")
    m = tree_depth(n)
    base = (1 << (m + 1)) - 2
    stride = n + 1

    def build(i: int) -> Language:
        tail = Progression(base + i - 1, stride)
        if i > 2**m:
            return Language((tail,), label=f"pad{i}")
        v = format(i - 1, f"0{m}b")
        points = FiniteSet.of(tree_point(v[:k]) for k in range(1, m + 1))
        return Language((points, tail), label=f"L_{v}")

    langs = [build(i) for i in range(1, n + 1)]
    return LanguageClass.from_languages(langs, name=f"littlestone({n})",
                                        noise_source=Progression(base + n, stride))


def tradeoff(n: int, max_index: int, row_cap: int | None = None) -> LanguageClass:
    """Nested-prefix stream: L_i = column i  ∪  first n^k cells of every column k < i.

    Pairs (column, row) are packed with :class:`PairCode`; column ``row_cap``
    is never used by a language and serves as the noise source.
    """
    if n < 2:
        raise ValueError("trade-off class needs n >= 2")
    if row_cap is None:
        row_cap = max_index + 1
    if row_cap <= max_index:
        raise ValueError("row_cap must exceed max_index so a spare column is left for noise")
    code = PairCode(row_cap)

    def build(i: int) -> Language:
        prefix = [code.encode(k, j) for k in range(1, i) for j in range(1, n**k + 1)]
        atoms = (FiniteSet.of(prefix), code.column(i)) if prefix else (code.column(i),)
        return Language(atoms, label=f"L{i}")

    cls = LanguageClass.stream(build, max_index, name=f"tradeoff({n})",
                               noise_source=code.column(row_cap))
    cls.code = code
    cls.n = n
    return cls


def random_class(seed: int, size: int = 5, max_element: int = 64, max_stride: int = 8) -> LanguageClass:
    """Small random class: each language is a random finite set plus one or two progressions.

    Every explicit element and every progression start is at most ``max_element``.
    """
    rng = random.Random(seed)
    langs = []
    for i in range(size):
        atoms = []
        finite = rng.sample(range(max_element + 1), rng.randint(0, 8))
        if finite:
            atoms.append(FiniteSet.of(finite))
        for _ in range(rng.randint(1, 2)):
            atoms.append(Progression(rng.randint(0, max_element), rng.randint(1, max_stride)))
        langs.append(Language(tuple(atoms), label=f"R{i + 1}"))
    return LanguageClass.from_languages(langs, name=f"random({seed})")
