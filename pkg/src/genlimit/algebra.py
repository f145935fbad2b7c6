"""Set algebra for infinite languages over the naturals.

A language is a finite union of *atoms*: explicit finite sets and arithmetic
progressions ``{start + k*stride : k >= 0}``.  That carrier is closed under
intersection (progressions meet in a progression or nothing, by congruence
solving), so membership, intersection, finiteness and smallest-element queries
are all decidable and exact.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

INFINITE = math.inf
MAX_ELEMENT = 2**64 - 1
BRUTE_FORCE_CAP = 25


class ClassTooLarge(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def _check_element(x: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"elements are naturals, got {x!r}")
    if x < 0 or x > MAX_ELEMENT:
        raise ValueError(f"element {x} outside the universe [0, 2**64)")
    return x


@dataclass(frozen=True)
class FiniteSet:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        for v in vals:
            _check_element(v)
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError("FiniteSet values must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable[int]) -> "FiniteSet":
        return cls(tuple(sorted(set(values))))

    def __contains__(self, x: int) -> bool:
        # values are sorted; bisect keeps this O(log n)
        from bisect import bisect_left

        i = bisect_left(self.values, x)
        return i < len(self.values) and self.values[i] == x

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Progression:
    start: int
    stride: int

    def __post_init__(self):
        _check_element(self.start)
        if isinstance(self.stride, bool) or not isinstance(self.stride, int) or self.stride < 1:
            raise ValueError(f"stride must be a positive integer, got {self.stride!r}")

    def __contains__(self, x: int) -> bool:
        return x >= self.start and (x - self.start) % self.stride == 0

    def __iter__(self) -> Iterator[int]:
        x = self.start
        while True:
            yield x
            x += self.stride

    def issubset(self, other: "Progression") -> bool:
        return self.stride % other.stride == 0 and self.start in other

    def first_at_least(self, lo: int) -> int:
        if lo <= self.start:
            return self.start
        k = -(-(lo - self.start) // self.stride)
        return self.start + k * self.stride


Atom = Union[FiniteSet, Progression]

UNIVERSE = Progression(0, 1)


def _crt(a1: int, m1: int, a2: int, m2: int) -> Optional[tuple[int, int]]:
    """Solve x = a1 (mod m1), x = a2 (mod m2); returns (residue, lcm) or None."""
    g = math.gcd(m1, m2)
    if (a2 - a1) % g:
        return None
    lcm = m1 // g * m2
    # m1 * k = a2 - a1 (mod m2)
    k = ((a2 - a1) // g) * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (a1 + m1 * k) % lcm, lcm


def intersect_progressions(p: Progression, q: Progression) -> Optional[Progression]:
    sol = _crt(p.start % p.stride, p.stride, q.start % q.stride, q.stride)
    if sol is None:
        return None
    r, lcm = sol
    lo = max(p.start, q.start)
    start = lo + (r - lo) % lcm
    return Progression(start, lcm)


@dataclass(frozen=True)
class SetExpr:
    """Canonical finite union of atoms.

    ``finite`` holds the explicit elements not already covered by a
    progression; ``progressions`` holds no progression contained in another.
    """

    finite: frozenset = frozenset()
    progressions: tuple[Progression, ...] = ()

    @classmethod
    def from_atoms(cls, atoms: Iterable[Atom]) -> "SetExpr":
        finite: set[int] = set()
        progs: list[Progression] = []
        for a in atoms:
            if isinstance(a, FiniteSet):
                finite.update(a.values)
            elif isinstance(a, Progression):
                progs.append(a)
            else:
                raise TypeError(f"not an atom: {a!r}")
        return cls._canonical(finite, progs)

    @classmethod
    def _canonical(cls, finite, progs, finite_is_clean: bool = False) -> "SetExpr":
        uniq = sorted(set(progs), key=lambda p: (p.stride, p.start))
        kept = []
        for i, p in enumerate(uniq):
            if not any(j != i and p.issubset(q) for j, q in enumerate(uniq)):
                kept.append(p)
        kept = tuple(sorted(kept, key=lambda p: (p.start, p.stride)))
        if kept and not finite_is_clean:
            finite = frozenset(x for x in finite if not any(x in p for p in kept))
        else:
            finite = frozenset(finite)
        return cls(finite, kept)

    @property
    def atoms(self) -> tuple[Atom, ...]:
        out: list[Atom] = []
        if self.finite:
            out.append(FiniteSet(tuple(sorted(self.finite))))
        out.extend(self.progressions)
        return tuple(out)

    def __contains__(self, x: int) -> bool:
        return x in self.finite or any(x in p for p in self.progressions)

    def __iter__(self) -> Iterator[int]:
        return iter_elements(self)

    @property
    def is_empty(self) -> bool:
        return not self.finite and not self.progressions


EMPTY = SetExpr()


@dataclass(frozen=True)
class Language:
    atoms: tuple[Atom, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise ValueError("a language needs at least one atom")
        if not any(isinstance(a, Progression) for a in atoms):
            raise ValueError("a language must contain a progression (infinite support)")
        object.__setattr__(self, "atoms", atoms)

    @cached_property
    def expr(self) -> SetExpr:
        return SetExpr.from_atoms(self.atoms)

    def __contains__(self, x: int) -> bool:
        return x in self.expr

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<Language{name} atoms={len(self.atoms)}>"


SetLike = Union[SetExpr, Language, FiniteSet, Progression]


def as_expr(s: SetLike) -> SetExpr:
    if isinstance(s, Language):
        return s.expr
    if isinstance(s, (FiniteSet, Progression)):
        return SetExpr.from_atoms((s,))
    return s


def contains(s: SetLike, x: int) -> bool:
    return x in as_expr(s)


def _is_universe(e: SetExpr) -> bool:
    return e.progressions == (UNIVERSE,)


def _filter_into(values, other: SetExpr, out: set) -> None:
    fin, progs = other.finite, other.progressions
    if not progs:
        out.update(x for x in values if x in fin)
        return
    for x in values:
        if x in fin:
            out.add(x)
            continue
        for p in progs:
            if x >= p.start and (x - p.start) % p.stride == 0:
                out.add(x)
                break


def intersect(a: SetLike, b: SetLike) -> SetExpr:
    a, b = as_expr(a), as_expr(b)
    if a.is_empty or b.is_empty:
        return EMPTY
    if _is_universe(a):
        return b
    if _is_universe(b):
        return a
    finite: set[int] = set()
    _filter_into(a.finite, b, finite)
    _filter_into(b.finite, a, finite)
    progs = []
    for p in a.progressions:
        for q in b.progressions:
            r = intersect_progressions(p, q)
            if r is not None:
                progs.append(r)
    # Every result progression lies inside a progression of each operand, and
    # canonical operands keep their explicit elements off their own
    # progressions, so the explicit part needs no further filtering.
    return SetExpr._canonical(finite, progs, finite_is_clean=True)


def intersect_all(sets: Iterable[SetLike]) -> SetExpr:
    """Intersection of a nonempty collection (the empty collection is the universe)."""
    out: Optional[SetExpr] = None
    for s in sets:
        out = as_expr(s) if out is None else intersect(out, s)
        if out.is_empty:
            return EMPTY
    return SetExpr(progressions=(UNIVERSE,)) if out is None else out


def classify_size(s: SetLike) -> Union[int, float]:
    """Cardinality of ``s``: an int when finite, :data:`INFINITE` otherwise."""
    s = as_expr(s)
    return INFINITE if s.progressions else len(s.finite)


def smallest_unseen(s: SetLike, seen) -> Optional[int]:
    s = as_expr(s)
    best = min((x for x in s.finite if x not in seen), default=None)
    for p in s.progressions:
        x = p.start
        while x in seen:
            if best is not None and x >= best:
                break
            x += p.stride
        if best is None or x < best:
            best = x
    return best


def iter_elements(s: SetLike) -> Iterator[int]:
    """All elements of ``s`` in ascending order (infinite when ``s`` is)."""
    s = as_expr(s)
    streams = [iter(sorted(s.finite))] + [iter(p) for p in s.progressions]
    last = None
    for x in heapq.merge(*streams):
        if x != last:
            yield x
            last = x


class LanguageClass:
    """Enumerated class L_1, L_2, ... (1-indexed).

    A finite class wraps an explicit list.  A stream wraps a deterministic
    constructor ``index -> Language`` together with the largest index that
    may be materialized.
    """

    def __init__(self, build: Callable[[int], Language], max_index: int, finite: bool,
                 name: str = "", noise_source: Optional[Progression] = None):
        if max_index < 1:
            raise ValueError("a class needs at least one language")
        self._build = build
        self.max_index = max_index
        self.is_finite = finite
        self.name = name
        self.noise_source = noise_source
        self._cache: dict[int, Language] = {}

    @classmethod
    def from_languages(cls, languages: Sequence[Language], name: str = "",
                       noise_source: Optional[Progression] = None) -> "LanguageClass":
        langs = tuple(languages)
        if not langs:
            raise ValueError("a finite class needs at least one language")
        return cls(lambda i: langs[i - 1], len(langs), True, name, noise_source)

    @classmethod
    def stream(cls, build: Callable[[int], Language], max_index: int, name: str = "",
               noise_source: Optional[Progression] = None) -> "LanguageClass":
        return cls(build, max_index, False, name, noise_source)

    def __getitem__(self, i: int) -> Language:
        if not 1 <= i <= self.max_index:
            raise IndexOutOfRange(f"language index {i} outside [1, {self.max_index}]")
        lang = self._cache.get(i)
        if lang is None:
            lang = self._cache[i] = self._build(i)
        return lang

    def __len__(self) -> int:
        return self.max_index

    def __iter__(self) -> Iterator[Language]:
        return (self[i] for i in range(1, self.max_index + 1))

    def __repr__(self):
        kind = "finite" if self.is_finite else "stream"
        return f"<LanguageClass {self.name or '?'} {kind} n={self.max_index}>"


def _max_finite_meet(base: Optional[SetExpr], candidates: Sequence[SetExpr]) -> int:
    # Depth-first over subcollections in index order. A finite intersection
    # only shrinks when more languages are added, so the search stops there.
    best = 0

    def visit(current: SetExpr, start: int):
        nonlocal best
        for k in range(start, len(candidates)):
            nxt = intersect(current, candidates[k])
            size = classify_size(nxt)
            if size != INFINITE:
                best = max(best, size)
            else:
                visit(nxt, k + 1)

    if base is None:
        for k, c in enumerate(candidates):
            size = classify_size(c)
            if size != INFINITE:
                best = max(best, size)
            else:
                visit(c, k + 1)
    else:
        if classify_size(base) != INFINITE:
            return classify_size(base)
        visit(base, 0)
    return int(best)


def closure_dimension(cls: Union[LanguageClass, Sequence[Language]]) -> int:
    """Largest finite intersection over nonempty subcollections; 0 if none is finite."""
    langs = list(cls)
    if len(langs) > BRUTE_FORCE_CAP:
        raise ClassTooLarge(f"{len(langs)} languages exceeds the brute-force cap of {BRUTE_FORCE_CAP}")
    return _max_finite_meet(None, [as_expr(L) for L in langs])


def nonuniform_complexity(cls: LanguageClass, i: int) -> int:
    """Largest finite |L_i ∩ (meet of a subcollection of L_1..L_{i-1})|; 0 if none."""
    if not 1 <= i <= cls.max_index:
        raise IndexOutOfRange(f"index {i} outside [1, {cls.max_index}]")
    if i > BRUTE_FORCE_CAP:
        raise ClassTooLarge(f"index {i} exceeds the brute-force cap of {BRUTE_FORCE_CAP}")
    return _max_finite_meet(cls[i].expr, [cls[j].expr for j in range(1, i)])


@dataclass(frozen=True)
class PairCode:
    """Embedding of N x N (1-indexed pairs) into N with column ``i`` a progression."""

    row_cap: int

    def encode(self, i: int, j: int) -> int:
        if not (1 <= i <= self.row_cap and j >= 1):
            raise ValueError(f"pair ({i}, {j}) outside the code (row_cap={self.row_cap})")
        return (j - 1) * self.row_cap + (i - 1)

    def decode(self, x: int) -> tuple[int, int]:
        j, i = divmod(x, self.row_cap)
        return i + 1, j + 1

    def column(self, i: int) -> Progression:
        return Progression(self.encode(i, 1), self.row_cap)
