"""The simplex category and its augmented version as combinatorial data.

Objects are integers ``n >= 0``: ``0`` is the empty set and ``n >= 1`` is
``{1, .., n}``.  Maps are nondecreasing functions stored by their values,
1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator

__all__ = [
    "MonotoneMap",
    "compose",
    "identity",
    "enumerate_maps",
    "is_exact_cartesian",
    "exact_cartesian_squares",
    "inclusion",
    "DEFAULT_TRUNCATION",
]

DEFAULT_TRUNCATION = 4


@dataclass(frozen=True)
class MonotoneMap:
    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.source < 0 or self.target < 0:
            raise ValueError("objects are nonnegative integers")
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.source:
            raise ValueError(f"expected {self.source} values, got {len(vals)}")
        if any(not 1 <= v <= self.target for v in vals):
            raise ValueError(f"values {vals} out of range 1..{self.target}")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"values {vals} are not nondecreasing")

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        return compose(self, other)

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(1, self.target + 1))

    def image(self) -> frozenset:
        return frozenset(self.values)

    def is_identity(self) -> bool:
        return self.source == self.target and self.values == tuple(range(1, self.source + 1))

    def label(self) -> str:
        if self.source == 0:
            return f"0->{self.target}"
        return "".join(map(str, self.values)) + f"/{self.target}"

    def __repr__(self):
        return f"MonotoneMap({self.source}->{self.target}: {list(self.values)})"


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: target {f.target} != source {g.source}")
    return MonotoneMap(f.source, g.target, tuple(g.values[v - 1] for v in f.values))


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(1, n + 1)))


def inclusion(target: int, *values: int) -> MonotoneMap:
    """Shorthand: ``inclusion(3, 1, 3)`` is the map [1,2] -> [1,2,3] with values (1,3)."""
    return MonotoneMap(len(values), target, tuple(values))


def enumerate_maps(m: int, n: int) -> list[MonotoneMap]:
    """All nondecreasing maps from m to n in lexicographic order of values."""
    if m == 0:
        return [MonotoneMap(0, n, ())]
    if n == 0:
        return []
    return [MonotoneMap(m, n, vals) for vals in combinations_with_replacement(range(1, n + 1), m)]


def is_exact_cartesian(f: MonotoneMap, g: MonotoneMap, f2: MonotoneMap, g2: MonotoneMap) -> bool:
    """Square with ``f: r -> m``, ``g: r -> n``, ``f2: n -> t``, ``g2: m -> t``.

    Requires ``g2 . f == f2 . g``; raises ValueError otherwise.
    """
    if f.source != g.source or f2.source != g.target or g2.source != f.target or f2.target != g2.target:
        raise ValueError("maps do not form a square")
    if compose(g2, f) != compose(f2, g):
        raise ValueError("square does not commute")
    injective = (f.is_injective() and f2.is_injective()) or (g.is_injective() and g2.is_injective())
    covers = (f2.image() | g2.image()) == frozenset(range(1, f2.target + 1))
    return injective and covers


def _value_lists(m: int, n: int) -> list[tuple[int, ...]]:
    if m == 0:
        return [()]
    if n == 0:
        return []
    return list(combinations_with_replacement(range(1, n + 1), m))


@lru_cache(maxsize=None)
def _squares(max_object: int, min_object: int) -> tuple:
    found = []
    for r in range(min_object, max_object + 1):
        for m in range(min_object, max_object + 1):
            for n in range(min_object, max_object + 1):
                t = m + n - r
                if t > max_object or t < 1:
                    continue
                everything = frozenset(range(1, t + 1))
                fs, gs = _value_lists(r, m), _value_lists(r, n)
                f2s, g2s = _value_lists(n, t), _value_lists(m, t)
                for fv in fs:
                    f_inj = len(set(fv)) == r
                    by_composite: dict = {}
                    for g2v in g2s:
                        by_composite.setdefault(tuple(g2v[v - 1] for v in fv), []).append(g2v)
                    for gv in gs:
                        g_inj = len(set(gv)) == r
                        for f2v in f2s:
                            matches = by_composite.get(tuple(f2v[v - 1] for v in gv))
                            if not matches:
                                continue
                            f2_inj = len(set(f2v)) == n
                            for g2v in matches:
                                injective = (f_inj and f2_inj) or (g_inj and len(set(g2v)) == m)
                                if not injective or (set(f2v) | set(g2v)) != everything:
                                    continue
                                found.append((
                                    MonotoneMap(r, m, fv), MonotoneMap(r, n, gv),
                                    MonotoneMap(n, t, f2v), MonotoneMap(m, t, g2v),
                                ))
    return tuple(found)


def exact_cartesian_squares(max_object: int, min_object: int = 1) -> Iterator[tuple]:
    """All exact Cartesian squares whose corners have size in [min_object, max_object].

    The far corner has size ``m + n - r`` as in the pushout-shaped squares.
    """
    return iter(_squares(max_object, min_object))
