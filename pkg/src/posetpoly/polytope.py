"""Inequality descriptions of marked order and marked chain polytopes.

Coordinates are the unmarked elements, in poset order.  Each row
``(coeffs, rhs)`` means ``coeffs . s <= rhs``; everything is an exact integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .poset import (
    DEFAULT_CHAIN_CAP,
    MarkedPoset,
    ResourceError,
    _chain_counts_from,
    count_saturated_chains,
)
from .regularize import regularity_violations

Row = tuple[tuple[int, ...], int]


class NotRegularError(ValueError):
    pass


@dataclass(frozen=True)
class HRep:
    coordinates: tuple[str, ...]
    rows: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def contains(self, point: Sequence) -> bool:
        return all(sum(c * v for c, v in zip(coeffs, point)) <= rhs for coeffs, rhs in self.rows)

    def to_text(self) -> str:
        lines = [" ".join(self.coordinates)]
        for coeffs, rhs in self.rows:
            lines.append(" ".join(str(c) for c in coeffs) + f" <= {rhs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HRep":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty HRep text")
        coords = tuple(lines[0].split())
        rows = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != len(coords) + 2 or parts[-2] != "<=":
                raise ValueError(f"malformed HRep row: {ln!r}")
            try:
                coeffs = tuple(int(t) for t in parts[:-2])
                rhs = int(parts[-1])
            except ValueError:
                raise ValueError(f"non-integer entry in HRep row: {ln!r}") from None
            rows.append((coeffs, rhs))
        return cls(coords, tuple(rows))


def _unit(index: dict[str, int], terms: dict[str, int]) -> tuple[int, ...]:
    v = [0] * len(index)
    for x, c in terms.items():
        v[index[x]] += c
    return tuple(v)


def order_hrep(poset: MarkedPoset) -> HRep:
    """One row per cover with at least one unmarked end."""
    coords = poset.unmarked
    index = {x: i for i, x in enumerate(coords)}
    lam = poset.marking
    rows: list[Row] = []
    for x, y in poset.covers:
        xm, ym = x in lam, y in lam
        if xm and ym:
            continue
        if xm:
            rows.append((_unit(index, {y: -1}), -lam[x]))
        elif ym:
            rows.append((_unit(index, {x: 1}), lam[y]))
        else:
            rows.append((_unit(index, {x: 1, y: -1}), 0))
    return HRep(coords, tuple(rows))


def chain_rows(poset: MarkedPoset, cap: int = DEFAULT_CHAIN_CAP) -> list[tuple[str, str, tuple[str, ...]]]:
    """All saturated chains with unmarked interior of length >= 1.

    Returned as ``(a, b, interior)`` triples, grouped by start mark in poset
    order and then lexicographically.
    """
    lam = poset.marking
    out: list[tuple[str, str, tuple[str, ...]]] = []
    ups = poset.upper_covers
    for a in poset.elements:
        if a not in lam:
            continue
        found: list[tuple[str, str, tuple[str, ...]]] = []
        stack = [(y,) for y in ups[a] if y not in lam]
        while stack:
            path = stack.pop()
            for y in ups[path[-1]]:
                if y in lam:
                    found.append((a, y, path))
                    if len(out) + len(found) > cap:
                        raise ResourceError(f"more than {cap} chain inequalities")
                else:
                    stack.append(path + (y,))
        found.sort(key=lambda t: (t[1], t[2]))
        out.extend(found)
    return out


def chain_hrep(poset: MarkedPoset, cap: int = DEFAULT_CHAIN_CAP) -> HRep:
    """Nonnegativity rows, then one row per saturated chain."""
    coords = poset.unmarked
    index = {x: i for i, x in enumerate(coords)}
    lam = poset.marking
    rows: list[Row] = [(_unit(index, {x: -1}), 0) for x in coords]
    for a, b, interior in chain_rows(poset, cap):
        rows.append((_unit(index, {x: 1 for x in interior}), lam[b] - lam[a]))
    return HRep(coords, tuple(rows))


def _require_regular(poset: MarkedPoset) -> None:
    problems = regularity_violations(poset)
    if problems:
        raise NotRegularError("poset is not regular: " + "; ".join(problems))


def cover_count(poset: MarkedPoset) -> int:
    return len(poset.covers)


def chain_count_total(poset: MarkedPoset) -> int:
    """Sum over marked pairs of the number of unmarked-interior saturated chains."""
    total = 0
    for a in poset.marking:
        counts = _chain_counts_from(poset, a)
        for b, n in counts.items():
            if b in poset.marking:
                total += n - (1 if b in poset.upper_covers[a] else 0)
    return total


def facet_count_order(poset: MarkedPoset) -> int:
    """Number of cover relations of a regular marked poset."""
    _require_regular(poset)
    return cover_count(poset)


def facet_count_chain(poset: MarkedPoset) -> int:
    """Unmarked elements plus saturated chains between marks (regular input)."""
    _require_regular(poset)
    return len(poset.unmarked) + chain_count_total(poset)


def chain_counts_by_pair(poset: MarkedPoset) -> dict[tuple[str, str], int]:
    out = {}
    for a in poset.marking:
        for b in poset.above(a):
            if b in poset.marking:
                n = count_saturated_chains(poset, a, b)
                if n:
                    out[(a, b)] = n
    return out


# ---------------------------------------------------------------------------
# star relations


@dataclass(frozen=True)
class StarWitness:
    center: str
    lower: tuple[str, str]
    upper: tuple[str, str]

    def elements(self) -> tuple[str, ...]:
        return (*self.lower, self.center, *self.upper)


def _incomparable_pair(poset: MarkedPoset, candidates, covers) -> Optional[tuple[str, str]]:
    # pairs of covers first, then anything further away, each lexicographically
    ordered = sorted(candidates, key=lambda z: (z not in covers, z))
    for u, v in combinations(ordered, 2):
        if not poset.comparable(u, v):
            return (u, v) if u < v else (v, u)
    return None


def _reach(poset: MarkedPoset, x: str, upward: bool) -> set[str]:
    """Elements reachable from ``x`` by cover steps through unmarked elements
    only; marks are included but not passed."""
    step = poset.upper_covers if upward else poset.lower_covers
    seen: set[str] = set()
    stack = [x]
    while stack:
        z = stack.pop()
        for y in step[z]:
            if y not in seen:
                seen.add(y)
                if y not in poset.marking:
                    stack.append(y)
    return seen


def has_star_relation(poset: MarkedPoset) -> Optional[StarWitness]:
    """First unmarked ``x`` with two incomparable elements below it and two
    incomparable elements above it, all joined to ``x`` through unmarked
    elements; ``None`` if there is no such ``x``.

    Such five elements induce the star as a subposet.  They need not be
    covers of ``x`` (an unmarked chain between the center and a pair still
    counts), but a path through a mark does not, since the mark splits every
    chain inequality there.  Equivalently, ``x`` has more than one saturated
    chain to the marks in each direction.  Centers are scanned in sorted name
    order; pairs made of covers are preferred.  The outer four elements may be
    marked.
    """
    for x in sorted(poset.unmarked):
        low = _incomparable_pair(poset, _reach(poset, x, False), set(poset.lower_covers[x]))
        if low is None:
            continue
        high = _incomparable_pair(poset, _reach(poset, x, True), set(poset.upper_covers[x]))
        if high is not None:
            return StarWitness(x, low, high)
    return None


def interior_point(poset: MarkedPoset) -> Optional[tuple[Fraction, ...]]:
    """A point strictly inside the order polytope, or ``None`` if none exists.

    Each coordinate interpolates between the largest mark below and the
    smallest mark above it, shifted by the element's height in the unmarked
    part so that covers are strict.
    """
    lam = poset.marking
    coords = poset.unmarked
    if not coords:
        return ()
    height: dict[str, int] = {}
    for x in poset.topological_order:
        if x not in lam:
            height[x] = 1 + max((height[y] for y in poset.lower_covers[x] if y in height), default=0)
    depth: dict[str, int] = {}
    for x in reversed(poset.topological_order):
        if x not in lam:
            depth[x] = 1 + max((depth[y] for y in poset.upper_covers[x] if y in depth), default=0)
    point = []
    for x in coords:
        lo = max(lam[a] for a in poset.below(x) if a in lam)
        hi = min(lam[b] for b in poset.above(x) if b in lam)
        if lo >= hi:
            return None
        # strictly between lo and hi, increasing along covers
        t = Fraction(height[x], height[x] + depth[x])
        point.append(lo + (hi - lo) * t)
    return tuple(point)


def check_rows(hrep: HRep, points: Iterable[Sequence]) -> bool:
    return all(hrep.contains(p) for p in points)
