"""Finite marked posets given by their cover relations.

A marked poset is a finite poset together with a subset ``A`` of marked
elements (containing every minimal and every maximal element) and a
nonnegative integer marking on ``A`` that is monotone along the order.
Elements are opaque strings.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping

DEFAULT_CHAIN_CAP = 10**6


class ResourceError(RuntimeError):
    """A configured enumeration cap or size guard was exceeded."""


class UnknownElementError(KeyError):
    pass


@dataclass(frozen=True)
class Poset:
    """A plain finite poset (no marking) given by its cover pairs."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    @cached_property
    def upper_covers(self) -> dict[str, tuple[str, ...]]:
        up: dict[str, list[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            up[x].append(y)
        return {x: tuple(v) for x, v in up.items()}

    @cached_property
    def lower_covers(self) -> dict[str, tuple[str, ...]]:
        down: dict[str, list[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            down[y].append(x)
        return {x: tuple(v) for x, v in down.items()}

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Elements listed so that every element precedes its upper covers.

        Ties are broken by the element order of the poset, which keeps the
        result deterministic.
        """
        position = {x: i for i, x in enumerate(self.elements)}
        sorter = TopologicalSorter({y: self.lower_covers[y] for y in self.elements})
        sorter.prepare()
        order: list[str] = []
        while sorter.is_active():
            ready = sorted(sorter.get_ready(), key=position.__getitem__)
            order.extend(ready)
            sorter.done(*ready)
        return tuple(order)

    @cached_property
    def _above(self) -> dict[str, frozenset[str]]:
        above: dict[str, frozenset[str]] = {}
        for x in reversed(self.topological_order):
            acc: set[str] = set()
            for y in self.upper_covers[x]:
                acc.add(y)
                acc |= above[y]
            above[x] = frozenset(acc)
        return above

    @cached_property
    def _below(self) -> dict[str, frozenset[str]]:
        below: dict[str, frozenset[str]] = {}
        for y in self.topological_order:
            acc: set[str] = set()
            for x in self.lower_covers[y]:
                acc.add(x)
                acc |= below[x]
            below[y] = frozenset(acc)
        return below

    def _check(self, *xs: str) -> None:
        for x in xs:
            if x not in self.upper_covers:
                raise UnknownElementError(x)

    def above(self, x: str) -> frozenset[str]:
        """All elements strictly greater than ``x``."""
        self._check(x)
        return self._above[x]

    def below(self, x: str) -> frozenset[str]:
        """All elements strictly smaller than ``x``."""
        self._check(x)
        return self._below[x]

    def less_than(self, x: str, y: str) -> bool:
        self._check(x, y)
        return y in self._above[x]

    def comparable(self, x: str, y: str) -> bool:
        self._check(x, y)
        return x == y or y in self._above[x] or x in self._above[y]

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self.lower_covers[x])

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self.upper_covers[x])

    def induced(self, keep: Iterable[str]) -> "Poset":
        """The induced subposet on ``keep``, with its own cover relations."""
        keep = set(keep)
        elements = tuple(x for x in self.elements if x in keep)
        pairs = [(x, y) for x in elements for y in self._above[x] if y in keep]
        return Poset(elements, _reduce_pairs(elements, pairs))


@dataclass(frozen=True)
class MarkedPoset(Poset):
    """A poset with marked elements ``A`` and an integer marking on them.

    ``marking`` maps each marked element to its value; the marked set is
    exactly its key set.  Instances are treated as immutable.
    """

    marking: Mapping[str, int] = field(default_factory=dict)

    @cached_property
    def marked(self) -> frozenset[str]:
        return frozenset(self.marking)

    @cached_property
    def unmarked(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if x not in self.marking)

    def is_marked(self, x: str) -> bool:
        return x in self.marking

    def with_marking(self, marking: Mapping[str, int]) -> "MarkedPoset":
        if set(marking) != set(self.marking):
            raise ValueError("new marking must be defined on the same marked set")
        ordered = {a: int(marking[a]) for a in self.marking}
        return MarkedPoset(self.elements, self.covers, ordered)

    def scaled(self, k: int) -> "MarkedPoset":
        """The same poset with marking multiplied by ``k``."""
        return self.with_marking({a: k * v for a, v in self.marking.items()})

    def plain(self) -> Poset:
        return Poset(self.elements, self.covers)

    def __repr__(self) -> str:
        return (
            f"MarkedPoset(elements={list(self.elements)!r}, covers={list(self.covers)!r}, "
            f"marking={dict(self.marking)!r})"
        )


def marked_poset(
    elements: Iterable[str],
    covers: Iterable[tuple[str, str]],
    marking: Mapping[str, int],
) -> MarkedPoset:
    """Convenience constructor accepting any iterables."""
    return MarkedPoset(
        tuple(elements),
        tuple((str(x), str(y)) for x, y in covers),
        {str(a): v for a, v in marking.items()},
    )


def _reduce_pairs(
    elements: tuple[str, ...], pairs: Iterable[tuple[str, str]]
) -> tuple[tuple[str, str], ...]:
    """Transitive reduction of an acyclic relation, in a deterministic order."""
    pairs = list(dict.fromkeys(pairs))
    graph = Poset(elements, tuple(pairs))
    # the closure of a DAG's edge set, whatever its redundancy, is the order
    above = graph._above
    keep = []
    for x, y in pairs:
        if not any(y in above[z] for z in graph.upper_covers[x] if z != y):
            keep.append((x, y))
    return tuple(keep)


def transitive_reduction(
    elements: Iterable[str], pairs: Iterable[tuple[str, str]]
) -> tuple[tuple[str, str], ...]:
    """Cover pairs of the order generated by ``pairs`` (which must be acyclic)."""
    elements = tuple(elements)
    pairs = [(x, y) for x, y in pairs if x != y]
    return _reduce_pairs(elements, pairs)


# ---------------------------------------------------------------------------
# validation


def validate(poset: MarkedPoset) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems: list[str] = []
    elements = poset.elements
    seen: set[str] = set()
    for x in elements:
        if x in seen:
            problems.append(f"duplicate element {x}")
        seen.add(x)
    bad_refs = False
    for x, y in poset.covers:
        for z in (x, y):
            if z not in seen:
                problems.append(f"cover ({x},{y}) uses unknown element {z}")
                bad_refs = True
        if x == y:
            problems.append(f"reflexive cover ({x},{x})")
    pair_counts: dict[tuple[str, str], int] = {}
    for pair in poset.covers:
        pair_counts[pair] = pair_counts.get(pair, 0) + 1
    for (x, y), n in pair_counts.items():
        if n > 1:
            problems.append(f"cover ({x},{y}) listed {n} times")
    for a, v in poset.marking.items():
        if a not in seen:
            problems.append(f"marking uses unknown element {a}")
            bad_refs = True
        if isinstance(v, bool) or not isinstance(v, int):
            problems.append(f"marking of {a} is not an integer: {v!r}")
        elif v < 0:
            problems.append(f"marking of {a} is negative: {v}")
    if bad_refs or len(seen) != len(elements):
        return problems

    proper = tuple((x, y) for x, y in dict.fromkeys(poset.covers) if x != y)
    graph = Poset(elements, proper)
    try:
        graph.topological_order
    except CycleError as exc:
        cycle = exc.args[1] if len(exc.args) > 1 else []
        problems.append("cover relation has a cycle through " + ", ".join(map(str, cycle)))
        return problems

    reduced = set(_reduce_pairs(elements, proper))
    for x, y in proper:
        if (x, y) not in reduced:
            problems.append(f"cover ({x},{y}) is implied transitively")

    for x in graph.minimal_elements():
        if x not in poset.marking:
            problems.append(f"A lacks minimal element {x}")
    for x in graph.maximal_elements():
        if x not in poset.marking:
            problems.append(f"A lacks maximal element {x}")

    for a in elements:
        if a not in poset.marking:
            continue
        for b in graph.above(a):
            if b in poset.marking and _num(poset.marking[a]) > _num(poset.marking[b]):
                problems.append(f"marking not monotone on ({a},{b})")
    return problems


def _num(v: object) -> float:
    return v if isinstance(v, (int, float)) else float("nan")  # type: ignore[return-value]


def ensure_valid(poset: MarkedPoset) -> MarkedPoset:
    problems = validate(poset)
    if problems:
        raise ValueError("invalid marked poset: " + "; ".join(problems))
    return poset


# ---------------------------------------------------------------------------
# order queries


def less_than(poset: Poset, x: str, y: str) -> bool:
    return poset.less_than(x, y)


def comparable(poset: Poset, x: str, y: str) -> bool:
    return poset.comparable(x, y)


def saturated_chains_between(
    poset: MarkedPoset, a: str, b: str, cap: int = DEFAULT_CHAIN_CAP
) -> list[tuple[str, ...]]:
    """Cover-step chains ``a < x1 < ... < xs < b`` whose interior is unmarked.

    The direct cover ``a < b`` (``s = 0``) is included when present.  Raises
    :class:`ResourceError` if more than ``cap`` chains exist.
    """
    for z in (a, b):
        poset._check(z)
        if z not in poset.marking:
            raise ValueError(f"{z} is not a marked element")
    if b not in poset.above(a):
        return []
    chains: list[tuple[str, ...]] = []
    stack: list[tuple[str, ...]] = [(a,)]
    ups = poset.upper_covers
    while stack:
        path = stack.pop()
        for y in reversed(ups[path[-1]]):
            if y == b:
                chains.append(path + (b,))
                if len(chains) > cap:
                    raise ResourceError(f"more than {cap} saturated chains between {a} and {b}")
            elif y not in poset.marking and b in poset.above(y):
                stack.append(path + (y,))
    chains.sort()
    return chains


def count_saturated_chains(poset: MarkedPoset, a: str, b: str, interior_only: bool = True) -> int:
    """Number of unmarked-interior saturated chains from ``a`` to ``b``.

    Counted by dynamic programming, so it never materializes the chains.
    With ``interior_only`` the direct cover ``a < b`` is not counted.
    """
    counts = _chain_counts_from(poset, a)
    total = counts.get(b, 0)
    if interior_only and b in poset.upper_covers[a]:
        total -= 1
    return total


def _chain_counts_from(poset: MarkedPoset, a: str) -> dict[str, int]:
    # counts[z] = number of cover paths a -> z with all interior vertices unmarked
    counts: dict[str, int] = {a: 1}
    for z in poset.topological_order:
        c = counts.get(z)
        if not c or (z != a and z in poset.marking):
            continue
        for y in poset.upper_covers[z]:
            counts[y] = counts.get(y, 0) + c
    counts.pop(a)
    return counts


# ---------------------------------------------------------------------------
# markings and reduced posets


def normalize_marking(poset: MarkedPoset) -> tuple[MarkedPoset, int]:
    """Subtract the minimum marking value; return the new poset and the shift."""
    if not poset.marking:
        return poset, 0
    c = min(poset.marking.values())
    if c == 0:
        return poset, 0
    return poset.with_marking({a: v - c for a, v in poset.marking.items()}), c


def is_normalized(marking: Mapping[str, int]) -> bool:
    return not marking or min(marking.values()) == 0


def reduced_poset(poset: MarkedPoset, marking: Mapping[str, int] | None = None) -> Poset:
    """Drop every element lying weakly below a 0-marked element."""
    if marking is None:
        marking = poset.marking
    zeros = [a for a in poset.marking if marking[a] == 0]
    removed: set[str] = set(zeros)
    for a in zeros:
        removed |= poset.below(a)
    return poset.induced(x for x in poset.elements if x not in removed)


def connected_components(poset: Poset) -> list[list[str]]:
    """Connected components of the undirected Hasse diagram.

    Components are listed by their first element in poset order, and each
    component keeps the poset's element order.
    """
    neighbours: dict[str, set[str]] = {x: set() for x in poset.elements}
    for x, y in poset.covers:
        neighbours[x].add(y)
        neighbours[y].add(x)
    label: dict[str, int] = {}
    comps: list[list[str]] = []
    for start in poset.elements:
        if start in label:
            continue
        label[start] = len(comps)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in neighbours[x]:
                if y not in label:
                    label[y] = len(comps)
                    queue.append(y)
        comps.append([])
    for x in poset.elements:
        comps[label[x]].append(x)
    return comps


# ---------------------------------------------------------------------------
# file format


def to_json_obj(poset: MarkedPoset) -> dict:
    return {
        "elements": list(poset.elements),
        "covers": [list(p) for p in poset.covers],
        "marking": dict(poset.marking),
    }


def from_json_obj(obj: Mapping) -> MarkedPoset:
    try:
        elements = obj["elements"]
        covers = obj["covers"]
        marking = obj["marking"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"marked-poset object lacks field {exc}") from None
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise ValueError('"elements" must be a list of strings')
    if not isinstance(covers, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(z, str) for z in p) for p in covers
    ):
        raise ValueError('"covers" must be a list of [lower, upper] string pairs')
    if not isinstance(marking, dict):
        raise ValueError('"marking" must be an object')
    return MarkedPoset(tuple(elements), tuple((x, y) for x, y in covers), dict(marking))


def dumps(poset: MarkedPoset) -> str:
    return json.dumps(to_json_obj(poset), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> MarkedPoset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None
    return from_json_obj(obj)


def load(path) -> MarkedPoset:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(poset: MarkedPoset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(poset))
