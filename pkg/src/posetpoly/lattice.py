"""Lattice points of marked order and chain polytopes.

Both enumerations walk the unmarked elements in a fixed linear extension and
only ever branch on values that extend to a full point, so the work is
proportional to the output size.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .poset import MarkedPoset, ResourceError

DEFAULT_MAX_POINTS = 10**7
ENV_MAX_POINTS = "POSETPOLY_MAX_POINTS"


def max_points() -> int:
    raw = os.environ.get(ENV_MAX_POINTS)
    if raw is None:
        return DEFAULT_MAX_POINTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_POINTS} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_MAX_POINTS} must be positive")
    return value


@dataclass(frozen=True)
class LatticePointSet:
    """Integer points over named coordinates, stored sorted and duplicate-free."""

    coordinates: tuple[str, ...]
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, coordinates: Sequence[str], points: Iterable[Sequence[int]]) -> "LatticePointSet":
        return cls(tuple(coordinates), tuple(sorted({tuple(p) for p in points})))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._set

    @property
    def _set(self) -> frozenset[tuple[int, ...]]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.points)
            object.__setattr__(self, "_cached_set", s)
        return s

    def to_text(self) -> str:
        lines = [" ".join(self.coordinates)]
        lines += [" ".join(map(str, p)) for p in self.points]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LatticePointSet":
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty point-set text")
        coords = tuple(lines[0].split())
        pts = []
        for ln in lines[1:]:
            if not ln.strip() and coords:
                continue
            vals = tuple(int(t) for t in ln.split())
            if len(vals) != len(coords):
                raise ValueError(f"point {ln!r} has wrong length")
            pts.append(vals)
        return cls.build(coords, pts)


def _bounds_above(poset: MarkedPoset) -> dict[str, int]:
    lam = poset.marking
    return {x: min(lam[b] for b in poset.above(x) if b in lam) for x in poset.unmarked}


def _extension(poset: MarkedPoset) -> list[str]:
    return [x for x in poset.topological_order if x not in poset.marking]


def enumerate_order_points(poset: MarkedPoset, limit: int | None = None) -> LatticePointSet:
    limit = max_points() if limit is None else limit
    lam = poset.marking
    order = _extension(poset)
    hi = _bounds_above(poset)
    coords = poset.unmarked
    slot = {x: i for i, x in enumerate(coords)}
    lower_marks = {x: max((lam[a] for a in poset.lower_covers[x] if a in lam), default=None) for x in order}
    lower_free = {x: [y for y in poset.lower_covers[x] if y not in lam] for x in order}

    out: list[tuple[int, ...]] = []
    value = [0] * len(coords)

    def walk(i: int) -> None:
        if i == len(order):
            out.append(tuple(value))
            if len(out) > limit:
                raise ResourceError(f"more than {limit} lattice points")
            return
        x = order[i]
        lo = max([value[slot[y]] for y in lower_free[x]] + ([lower_marks[x]] if lower_marks[x] is not None else []))
        for v in range(lo, hi[x] + 1):
            value[slot[x]] = v
            walk(i + 1)

    walk(0)
    return LatticePointSet.build(coords, out)


def _reach_bounds(poset: MarkedPoset) -> dict[str, int]:
    # smallest mark reachable upward from x through unmarked elements only
    lam = poset.marking
    best: dict[str, int] = {}
    for x in reversed(poset.topological_order):
        if x in lam:
            continue
        best[x] = min(lam[y] if y in lam else best[y] for y in poset.upper_covers[x])
    return best


def enumerate_chain_points(poset: MarkedPoset, limit: int | None = None) -> LatticePointSet:
    """Points with ``s >= 0`` and every unmarked-interior chain sum bounded.

    ``g[x]`` tracks the largest value of ``λ_a + s_{x1} + ... + s_x`` over
    chains from a mark ``a`` up to ``x``; it must stay below every mark
    reachable from ``x``.
    """
    limit = max_points() if limit is None else limit
    lam = poset.marking
    order = _extension(poset)
    cap = _reach_bounds(poset)
    coords = poset.unmarked
    slot = {x: i for i, x in enumerate(coords)}
    base_marks = {x: max((lam[a] for a in poset.lower_covers[x] if a in lam), default=None) for x in order}
    lower_free = {x: [y for y in poset.lower_covers[x] if y not in lam] for x in order}

    out: list[tuple[int, ...]] = []
    value = [0] * len(coords)
    g: dict[str, int] = {}

    def walk(i: int) -> None:
        if i == len(order):
            out.append(tuple(value))
            if len(out) > limit:
                raise ResourceError(f"more than {limit} lattice points")
            return
        x = order[i]
        cands = [g[y] for y in lower_free[x]]
        if base_marks[x] is not None:
            cands.append(base_marks[x])
        base = max(cands)
        for v in range(0, cap[x] - base + 1):
            value[slot[x]] = v
            g[x] = base + v
            walk(i + 1)

    walk(0)
    return LatticePointSet.build(coords, out)


def dilate_counts(poset: MarkedPoset, max_k: int, limit: int | None = None) -> list[tuple[int, int, int]]:
    """``(k, |S_C(kλ)|, |S_O(kλ)|)`` for ``k = 1..max_k``."""
    rows = []
    for k in range(1, max_k + 1):
        scaled = poset.scaled(k)
        rows.append((k, len(enumerate_chain_points(scaled, limit)), len(enumerate_order_points(scaled, limit))))
    return rows


def minkowski_sum(a: LatticePointSet, b: LatticePointSet, limit: int | None = None) -> LatticePointSet:
    if a.coordinates != b.coordinates:
        raise ValueError("coordinate mismatch in Minkowski sum")
    limit = max_points() if limit is None else limit
    out = set()
    for p in a.points:
        for q in b.points:
            out.add(tuple(x + y for x, y in zip(p, q)))
        if len(out) > limit:
            raise ResourceError(f"more than {limit} lattice points")
    return LatticePointSet(a.coordinates, tuple(sorted(out)))


def chain_points_for(poset: MarkedPoset, marking: Mapping[str, int], limit: int | None = None) -> LatticePointSet:
    return enumerate_chain_points(poset.with_marking(marking), limit)


def order_points_for(poset: MarkedPoset, marking: Mapping[str, int], limit: int | None = None) -> LatticePointSet:
    return enumerate_order_points(poset.with_marking(marking), limit)


def box_points(poset: MarkedPoset, hrep) -> LatticePointSet:
    """Brute-force lattice points: every integer vector in ``[0, max λ]^d``
    that satisfies ``hrep``.  Only meant for tiny cross-checks."""
    from itertools import product

    top = max(poset.marking.values(), default=0)
    d = len(poset.unmarked)
    pts = [p for p in product(range(top + 1), repeat=d) if hrep.contains(p)]
    return LatticePointSet.build(poset.unmarked, pts)
