"""Minkowski decomposition of chain-polytope lattice points.

A normalized marking is peeled into 0/1 layers by repeatedly subtracting its
support indicator, and every layer is split further along the connected
components of its reduced poset.  The resulting parts are C-indecomposable
and their lattice-point sets add up to the original one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional

from .lattice import LatticePointSet, enumerate_chain_points, minkowski_sum
from .poset import MarkedPoset, ResourceError, connected_components, reduced_poset

Marking = dict[str, int]

BRUTE_MAX_MARKS = 6
BRUTE_MAX_VALUE = 4
SEARCH_SPACE = "mu + tau = lambda, mu and tau monotone, both nonzero"


def omega(marking: Mapping[str, int]) -> Marking:
    """Support indicator: 1 where the marking is nonzero, else 0."""
    return {a: 1 if v != 0 else 0 for a, v in marking.items()}


def _is_monotone(poset: MarkedPoset, marking: Mapping[str, int]) -> bool:
    return all(
        marking[a] <= marking[b]
        for a in poset.marking
        for b in poset.above(a)
        if b in poset.marking
    )


def component_split(poset: MarkedPoset, marking: Mapping[str, int]) -> list[tuple[Marking, list[str]]]:
    """Split a 0/1 marking along the components of its reduced poset.

    Returns ``(part, component)`` pairs; part ``j`` keeps the value of every
    mark in component ``j`` and is 0 elsewhere.
    """
    parts = []
    for comp in connected_components(reduced_poset(poset, marking)):
        members = set(comp)
        part = {a: (marking[a] if a in members else 0) for a in poset.marking}
        parts.append((part, comp))
    return parts


@dataclass(frozen=True)
class Verdict:
    indecomposable: bool
    witness: object = None
    metadata: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.indecomposable


def is_c_indecomposable(poset: MarkedPoset, marking: Optional[Mapping[str, int]] = None) -> Verdict:
    """Decide indecomposability from the marks and the reduced poset.

    The marking must be normalized.  Indecomposable exactly when every mark
    is 0 or 1 and the reduced poset has at most one connected component
    (the zero marking has an empty reduced poset and is indecomposable).
    """
    marking = dict(poset.marking if marking is None else marking)
    if marking and min(marking.values()) != 0:
        raise ValueError("marking is not normalized (no mark has value 0)")
    big = sorted(a for a, v in marking.items() if v > 1)
    if big:
        return Verdict(False, {"mark_above_one": big[0], "value": marking[big[0]]})
    comps = connected_components(reduced_poset(poset, marking))
    if len(comps) > 1:
        return Verdict(False, {"components": comps})
    return Verdict(True, "indecomposable")


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[Marking, ...]
    provenance: tuple[dict, ...]

    def total(self, marks) -> Marking:
        out = {a: 0 for a in marks}
        for p in self.parts:
            for a, v in p.items():
                out[a] += v
        return out

    def to_json_obj(self) -> list[dict]:
        return [
            {"marking": dict(p), "round": prov["round"], "component": prov["component"]}
            for p, prov in zip(self.parts, self.provenance)
        ]


def decompose(poset: MarkedPoset, marking: Optional[Mapping[str, int]] = None) -> Decomposition:
    marking = dict(poset.marking if marking is None else marking)
    if marking and min(marking.values()) != 0:
        raise ValueError("marking is not normalized (no mark has value 0)")
    if not _is_monotone(poset, marking):
        raise ValueError("marking is not monotone")
    parts: list[Marking] = []
    prov: list[dict] = []
    rest = marking
    rnd = 0
    while any(rest.values()):
        layer = omega(rest)
        rest = {a: rest[a] - layer[a] for a in rest}
        for j, (part, comp) in enumerate(component_split(poset, layer)):
            parts.append(part)
            prov.append({"round": rnd, "component": j, "elements": comp})
        rnd += 1
    return Decomposition(tuple(parts), tuple(prov))


def chain_points(poset: MarkedPoset, marking: Mapping[str, int], limit: int | None = None) -> LatticePointSet:
    return enumerate_chain_points(poset.with_marking(marking), limit)


def sum_of_parts(poset: MarkedPoset, parts, limit: int | None = None) -> LatticePointSet:
    acc = LatticePointSet(poset.unmarked, (tuple(0 for _ in poset.unmarked),))
    for part in parts:
        acc = minkowski_sum(acc, chain_points(poset, part, limit), limit)
    return acc


def verify_minkowski(poset: MarkedPoset, marking: Mapping[str, int], parts, limit: int | None = None) -> bool:
    """True iff the chain lattice points of ``marking`` equal the Minkowski
    sum of those of ``parts``."""
    total = {a: 0 for a in poset.marking}
    for p in parts:
        for a in poset.marking:
            total[a] += p.get(a, 0)
    if total != {a: marking[a] for a in poset.marking}:
        raise ValueError("parts do not sum to the marking")
    return chain_points(poset, marking, limit) == sum_of_parts(poset, parts, limit)


def brute_force_indecomposable(poset: MarkedPoset, marking: Optional[Mapping[str, int]] = None) -> Verdict:
    """Search all splits ``λ = μ + τ`` into nonzero monotone markings.

    Decomposable iff some split reproduces the chain lattice points as a
    Minkowski sum.  Only splits summing to ``λ`` are searched; this is
    reported in ``metadata``.
    """
    marking = dict(poset.marking if marking is None else marking)
    marks = list(poset.marking)
    if len(marks) > BRUTE_MAX_MARKS or max(marking.values(), default=0) > BRUTE_MAX_VALUE:
        raise ResourceError(
            f"brute force limited to {BRUTE_MAX_MARKS} marks with values <= {BRUTE_MAX_VALUE}"
        )
    meta = {"search_space": SEARCH_SPACE}
    target = chain_points(poset, marking)
    cache: dict[tuple[int, ...], LatticePointSet] = {}

    def points(m: Marking) -> LatticePointSet:
        key = tuple(m[a] for a in marks)
        if key not in cache:
            cache[key] = chain_points(poset, m)
        return cache[key]

    for values in product(*(range(marking[a] + 1) for a in marks)):
        mu = dict(zip(marks, values))
        tau = {a: marking[a] - mu[a] for a in marks}
        if not any(mu.values()) or not any(tau.values()):
            continue
        if not (_is_monotone(poset, mu) and _is_monotone(poset, tau)):
            continue
        pm, pt = points(mu), points(tau)
        if len(pm) * len(pt) < len(target):
            continue
        if minkowski_sum(pm, pt) == target:
            return Verdict(False, {"mu": mu, "tau": tau}, meta)
    return Verdict(True, None, meta)
