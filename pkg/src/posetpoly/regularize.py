"""Rewrite a marked poset into its regular form.

Four rewrites are applied, each one step at a time on the lexicographically
smallest applicable configuration:

* ``collapse-equal-chain``: a comparable pair of marks with equal value pins
  every element between them, so the whole interval becomes one new mark;
* ``drop-redundant-cover``: a cover whose inequality is implied through some
  other mark is deleted;
* ``merge-equal-marks``: incomparable marks with equal value are identified;
* ``drop-AA-cover``: covers between two marks carry no inequality and are
  deleted.

Fresh marks are named ``⊕1``, ``⊕2``, ... continuing after any such names
already present.  None of the rewrites changes the two polytopes beyond
deleting coordinates that were constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

from .poset import MarkedPoset, Poset, ensure_valid, transitive_reduction

FRESH_PREFIX = "⊕"
_FRESH_RE = re.compile(r"^⊕(\d+)$")


@dataclass(frozen=True)
class RegularizationTrace:
    """Ordered rewrite records plus where each input element ended up."""

    steps: tuple[dict, ...] = ()
    element_map: dict[str, str] = field(default_factory=dict)

    def to_json_obj(self) -> list[dict]:
        return [dict(s) for s in self.steps]

    def __add__(self, other: "RegularizationTrace") -> "RegularizationTrace":
        mapping = {x: other.element_map.get(y, y) for x, y in self.element_map.items()}
        for x, y in other.element_map.items():
            mapping.setdefault(x, y)
        return RegularizationTrace(self.steps + other.steps, mapping)


class _Work:
    """Mutable scratch state used while rewriting."""

    def __init__(self, poset: MarkedPoset, counter: Optional[list[int]] = None):
        self.elements = list(poset.elements)
        self.covers = list(poset.covers)
        self.marking = dict(poset.marking)
        self.steps: list[dict] = []
        self.element_map = {x: x for x in poset.elements}
        if counter is None:
            used = [int(m.group(1)) for x in poset.elements if (m := _FRESH_RE.match(x))]
            counter = [max(used, default=0)]
        self.counter = counter

    def poset(self) -> MarkedPoset:
        return MarkedPoset(tuple(self.elements), tuple(self.covers), dict(self.marking))

    def fresh(self) -> str:
        self.counter[0] += 1
        name = f"{FRESH_PREFIX}{self.counter[0]}"
        while name in self.element_map or name in self.elements:
            self.counter[0] += 1
            name = f"{FRESH_PREFIX}{self.counter[0]}"
        return name

    def identify(self, group: set[str], value: int) -> tuple[str, list[tuple[str, str]]]:
        """Replace ``group`` by one fresh mark; return it and the covers dropped
        by the transitive reduction afterwards."""
        c = self.fresh()
        pairs = []
        for x, y in self.covers:
            x2 = c if x in group else x
            y2 = c if y in group else y
            if x2 != y2:
                pairs.append((x2, y2))
        pairs = list(dict.fromkeys(pairs))
        self.elements = [x for x in self.elements if x not in group] + [c]
        for a in group:
            self.marking.pop(a, None)
        self.marking[c] = value
        _check_acyclic(self.elements, pairs)
        reduced = transitive_reduction(self.elements, pairs)
        dropped = [p for p in pairs if p not in set(reduced)]
        self.covers = list(reduced)
        for x, y in self.element_map.items():
            if y in group:
                self.element_map[x] = c
        return c, dropped

    def trace(self) -> RegularizationTrace:
        return RegularizationTrace(tuple(self.steps), dict(self.element_map))


def _check_acyclic(elements, pairs) -> None:
    from graphlib import CycleError

    try:
        Poset(tuple(elements), tuple(pairs)).topological_order
    except CycleError:
        raise ValueError(
            "identifying equal marks creates a cycle; the marking is not monotone"
        ) from None


# ---------------------------------------------------------------------------
# individual rewrites


def _equal_chain_pair(p: MarkedPoset) -> Optional[tuple[str, str]]:
    candidates = [
        (a, b)
        for a in p.marking
        for b in p.above(a)
        if b in p.marking and p.marking[a] == p.marking[b]
    ]
    return min(candidates) if candidates else None


def _collapse_once(w: _Work) -> bool:
    p = w.poset()
    pair = _equal_chain_pair(p)
    if pair is None:
        return False
    a, b = pair
    group = ({a, b} | p.above(a)) & ({a, b} | p.below(b))
    value = p.marking[b]
    c, dropped = w.identify(group, value)
    w.steps.append(
        {
            "kind": "collapse-equal-chain",
            "pair": [a, b],
            "removed": sorted(group),
            "created": c,
            "value": value,
            "covers_dropped": [list(q) for q in dropped],
        }
    )
    return True


def _redundant_cover(p: MarkedPoset, strict: bool = True) -> Optional[tuple[tuple[str, str], str, str]]:
    """Smallest cover whose inequality is implied through other marks.

    Returns ``(cover, rule, witness)``.  Three configurations qualify:

    * ``a < x`` with ``a`` marked and another mark ``b < x``, ``λ_b > λ_a``;
    * ``x < a`` with ``a`` marked and another mark ``b > x``, ``λ_b < λ_a``;
    * ``x < y`` with both unmarked, a mark ``b > x`` and a mark ``a < y``
      with ``λ_b < λ_a`` (then ``s_x <= λ_b < λ_a <= s_y`` already).

    Equal values are left to the merge step unless ``strict`` is false.
    """
    lam = p.marking

    def beats(u: int, v: int) -> bool:
        return u > v if strict else u >= v

    hits = []
    for x, y in p.covers:
        xm, ym = x in lam, y in lam
        if xm and not ym:
            for b in p.below(y):
                if b != x and b in lam and beats(lam[b], lam[x]):
                    hits.append(((x, y), "lower-mark", b))
                    break
        elif ym and not xm:
            for b in p.above(x):
                if b != y and b in lam and beats(lam[y], lam[b]):
                    hits.append(((x, y), "upper-mark", b))
                    break
        elif not xm and not ym:
            ups = [lam[b] for b in p.above(x) if b in lam]
            downs = [lam[a] for a in p.below(y) if a in lam]
            if ups and downs and beats(max(downs), min(ups)):
                hits.append(((x, y), "interior", ""))
    return min(hits) if hits else None


def _drop_once(w: _Work) -> bool:
    p = w.poset()
    hit = _redundant_cover(p)
    if hit is None:
        return False
    cover, rule, witness = hit
    w.covers.remove(cover)
    rec = {"kind": "drop-redundant-cover", "rule": rule, "cover": list(cover)}
    if witness:
        rec["witness"] = witness
    w.steps.append(rec)
    return True


def _merge_once(w: _Work) -> bool:
    p = w.poset()
    by_value: dict[int, list[str]] = {}
    for a in p.marking:
        by_value.setdefault(p.marking[a], []).append(a)
    pairs = [
        (a, b)
        for group in by_value.values()
        for i, a in enumerate(sorted(group))
        for b in sorted(group)[i + 1 :]
    ]
    if not pairs:
        return False
    a, b = min(pairs)
    value = p.marking[a]
    c, dropped = w.identify({a, b}, value)
    w.steps.append(
        {
            "kind": "merge-equal-marks",
            "pair": [a, b],
            "removed": [a, b],
            "created": c,
            "value": value,
            "covers_dropped": [list(q) for q in dropped],
        }
    )
    return True


def _drop_aa_covers(w: _Work) -> bool:
    aa = [q for q in w.covers if q[0] in w.marking and q[1] in w.marking]
    if not aa:
        return False
    w.covers = [q for q in w.covers if q not in aa]
    for q in aa:
        w.steps.append({"kind": "drop-AA-cover", "cover": list(q)})
    return True


def _fixpoint(w: _Work, step: Callable[[_Work], bool]) -> None:
    while step(w):
        pass


def _run(poset: MarkedPoset, *phases: Callable[[_Work], None]) -> tuple[MarkedPoset, RegularizationTrace]:
    ensure_valid(poset)
    w = _Work(poset)
    for phase in phases:
        phase(w)
    return w.poset(), w.trace()


def _collapse_phase(w: _Work) -> None:
    _fixpoint(w, _collapse_once)


def _drop_phase(w: _Work) -> None:
    _fixpoint(w, _drop_once)


def _merge_phase(w: _Work) -> None:
    _fixpoint(w, _merge_once)
    _drop_aa_covers(w)


def collapse_equal_chains(poset: MarkedPoset) -> tuple[MarkedPoset, RegularizationTrace]:
    return _run(poset, _collapse_phase)


def drop_redundant_covers(poset: MarkedPoset) -> tuple[MarkedPoset, RegularizationTrace]:
    return _run(poset, _drop_phase)


def merge_equal_marks(poset: MarkedPoset) -> tuple[MarkedPoset, RegularizationTrace]:
    return _run(poset, _merge_phase)


def regularize(poset: MarkedPoset) -> tuple[MarkedPoset, RegularizationTrace]:
    """Apply collapse, drop, merge, drop (each to a fixpoint)."""
    return _run(poset, _collapse_phase, _drop_phase, _merge_phase, _drop_phase)


# ---------------------------------------------------------------------------
# regularity predicate


def regularity_violations(poset: MarkedPoset) -> list[str]:
    problems = []
    lam = poset.marking
    seen: dict[int, str] = {}
    for a in lam:
        if lam[a] in seen:
            problems.append(f"marks {seen[lam[a]]} and {a} share value {lam[a]}")
        else:
            seen[lam[a]] = a
    pair = _equal_chain_pair(poset)
    if pair:
        problems.append(f"equal-marked comparable pair {pair}")
    for x, y in poset.covers:
        if x in lam and y in lam:
            problems.append(f"cover ({x},{y}) between marks")
    hit = _redundant_cover(poset, strict=False)
    if hit:
        problems.append(f"redundant cover {hit[0]} ({hit[1]})")
    return problems


def is_regular(poset: MarkedPoset) -> bool:
    return not regularity_violations(poset)
