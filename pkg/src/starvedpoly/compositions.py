"""Integer compositions of d and their refinement lattice.

A composition u = (u_1, ..., u_l) of d is an ordered tuple of positive parts
summing to d.  The partial-sum set {u_1, u_1+u_2, ..., d} identifies u
uniquely, and the refinement order is containment of these sets: u <= v when
v can be merged down to u by replacing commas with plus signs.  Join is union
of partial-sum sets, meet is intersection; bottom is (d), top is (1,...,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate, combinations
from typing import Iterable, Iterator

from .errors import InvalidRange, LengthMismatch


@dataclass(frozen=True, order=True)
class Composition:
    """An ordered tuple of positive integer parts.

    The dataclass ordering (tuple-lexicographic on parts) is only used for
    deterministic listings; the refinement order lives in :func:`leq`.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise InvalidRange(f"composition parts must be positive integers, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def partial_sums(self) -> tuple[int, ...]:
        """All partial sums, ending in d."""
        return tuple(accumulate(self.parts))

    def proper_sums(self) -> frozenset[int]:
        """Partial sums strictly below d."""
        return frozenset(self.partial_sums()[:-1])

    @classmethod
    def from_proper_sums(cls, sums: Iterable[int], d: int) -> "Composition":
        cuts = sorted(set(sums))
        if cuts and not (0 < cuts[0] and cuts[-1] < d):
            raise InvalidRange(f"proper sums {cuts} out of range for d={d}")
        points = [0, *cuts, d]
        return cls(tuple(b - a for a, b in zip(points, points[1:])))

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Composition":
        return cls(tuple(data))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def _check_same_d(u: Composition, v: Composition) -> int:
    if u.d != v.d:
        raise LengthMismatch(f"compositions of different totals: {u.d} vs {v.d}")
    return u.d


def leq(u: Composition, v: Composition) -> bool:
    """True when u <= v in refinement order (v merges down to u)."""
    _check_same_d(u, v)
    return u.proper_sums() <= v.proper_sums()


def join(u: Composition, v: Composition) -> Composition:
    """Least common refinement: union of partial-sum sets."""
    d = _check_same_d(u, v)
    return Composition.from_proper_sums(u.proper_sums() | v.proper_sums(), d)


def meet(u: Composition, v: Composition) -> Composition:
    """Greatest common coarsening: intersection of partial-sum sets."""
    d = _check_same_d(u, v)
    return Composition.from_proper_sums(u.proper_sums() & v.proper_sums(), d)


def enumerate_compositions(
    d: int, min_len: int | None = None, max_len: int | None = None
) -> list[Composition]:
    """All compositions of d with length in [min_len, max_len].

    Canonical order: lexicographic on the increasing tuple of proper partial
    sums, so (d) comes first and (1,...,1) last.
    """
    if d < 1:
        raise InvalidRange(f"d must be a positive integer, got {d}")
    lo = 1 if min_len is None else min_len
    hi = d if max_len is None else max_len
    if not (1 <= lo <= hi <= d):
        raise InvalidRange(f"need 1 <= min_len <= max_len <= d, got [{lo}, {hi}] for d={d}")
    out = []
    for length in range(lo, hi + 1):
        for cuts in combinations(range(1, d), length - 1):
            out.append(Composition.from_proper_sums(cuts, d))
    out.sort(key=lambda u: tuple(sorted(u.proper_sums())))
    return out


def covers_of(u: Composition) -> list[Composition]:
    """Compositions covering u in the refinement order (one extra cut).

    Returns [] for the top (1,...,1).
    """
    d = u.d
    have = u.proper_sums()
    out = [
        Composition.from_proper_sums(have | {c}, d)
        for c in range(1, d)
        if c not in have
    ]
    out.sort(key=lambda w: tuple(sorted(w.proper_sums())))
    return out


def upward_closure(vs: Iterable[Composition]) -> set[Composition]:
    """All compositions refining at least one element of vs."""
    vs = list(vs)
    if not vs:
        return set()
    d = vs[0].d
    for v in vs:
        _check_same_d(vs[0], v)
    out: set[Composition] = set()
    for v in vs:
        base = v.proper_sums()
        rest = sorted(set(range(1, d)) - base)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                out.add(Composition.from_proper_sums(base | set(extra), d))
    return out


def iter_refinements(u: Composition) -> Iterator[Composition]:
    """All w >= u, i.e. the principal up-set of u."""
    yield from sorted(upward_closure([u]), key=lambda w: tuple(sorted(w.proper_sums())))


def iter_coarsenings(u: Composition) -> Iterator[Composition]:
    """All w <= u, i.e. the principal down-set of u."""
    base = sorted(u.proper_sums())
    d = u.d
    out = []
    for k in range(len(base) + 1):
        for keep in combinations(base, k):
            out.append(Composition.from_proper_sums(keep, d))
    out.sort(key=lambda w: tuple(sorted(w.proper_sums())))
    yield from out
