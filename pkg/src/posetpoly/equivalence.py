"""An explicit lattice-preserving affine map from the marked chain polytope
onto the marked order polytope, for regular posets without a star relation.

Every unmarked element ``x`` is sent to a signed partial chain sum:

1. ``x`` maximal (not minimal) among unmarked elements, covered by mark ``b``:
   ``λ_b - s_x``;
2. ``x`` minimal among unmarked elements, covering mark ``a``: ``s_x + λ_a``;
3. else, if exactly one saturated chain ``x < y1 < ... < ys < b`` leaves
   ``x`` upward: ``λ_b - s_x - s_y1 - ... - s_ys``;
4. else, if exactly one saturated chain ``a < y1 < ... < ys < x`` enters
   ``x`` from below: ``s_x + s_y1 + ... + s_ys + λ_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .lattice import enumerate_chain_points, enumerate_order_points
from .oracle import determinant, enumerate_vertices
from .polytope import NotRegularError, chain_hrep, has_star_relation, order_hrep
from .poset import MarkedPoset
from .regularize import regularity_violations


class StarRelationError(ValueError):
    pass


@dataclass(frozen=True)
class AffineLatticeMap:
    """``s -> matrix . s + translation`` over named coordinates."""

    coordinates: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]
    cases: tuple[int, ...] = ()

    def apply(self, point: Sequence, k: int = 1):
        """Image of ``point``; ``k`` scales the translation for the k-th dilate."""
        return tuple(
            sum(m * v for m, v in zip(row, point)) + k * w for row, w in zip(self.matrix, self.translation)
        )

    def determinant(self) -> int:
        return determinant(self.matrix)

    def compose(self, inner: "AffineLatticeMap") -> "AffineLatticeMap":
        """``self ∘ inner``."""
        n = len(self.coordinates)
        mat = tuple(
            tuple(sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        trans = tuple(
            sum(self.matrix[i][k] * inner.translation[k] for k in range(n)) + self.translation[i]
            for i in range(n)
        )
        return AffineLatticeMap(self.coordinates, mat, trans)

    @classmethod
    def identity(cls, coordinates: Sequence[str]) -> "AffineLatticeMap":
        n = len(coordinates)
        return cls(
            tuple(coordinates),
            tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
            (0,) * n,
        )


def _unique_chain(poset: MarkedPoset, x: str, upward: bool) -> Optional[tuple[list[str], str]]:
    """The only saturated chain from ``x`` to a mark in one direction.

    Returns ``(interior, mark)`` with ``interior`` listing the unmarked
    elements passed after ``x``, or ``None`` when the chain is not unique.
    """
    lam = poset.marking
    step = poset.upper_covers if upward else poset.lower_covers
    counts: dict[str, int] = {}

    def count(z: str) -> int:
        if z in lam:
            return 1
        if z not in counts:
            counts[z] = sum(count(y) for y in step[z])
        return counts[z]

    if count(x) != 1:
        return None
    interior: list[str] = []
    z = x
    while True:
        (nxt,) = step[z]
        if nxt in lam:
            return interior, nxt
        interior.append(nxt)
        z = nxt


def build_unimodular_map(poset: MarkedPoset) -> AffineLatticeMap:
    problems = regularity_violations(poset)
    if problems:
        raise NotRegularError("poset is not regular: " + "; ".join(problems))
    star = has_star_relation(poset)
    if star is not None:
        raise StarRelationError(f"poset has a star relation at {star.center}: {star.elements()}")
    lam = poset.marking
    coords = poset.unmarked
    index = {x: i for i, x in enumerate(coords)}
    n = len(coords)
    matrix = [[0] * n for _ in range(n)]
    translation = [0] * n
    cases = []
    for x in coords:
        i = index[x]
        ups = poset.upper_covers[x]
        downs = poset.lower_covers[x]
        is_max = all(y in lam for y in ups)
        is_min = all(y in lam for y in downs)
        if is_max and not is_min:
            (b,) = ups
            matrix[i][i] = -1
            translation[i] = lam[b]
            cases.append(1)
        elif is_min:
            (a,) = downs
            matrix[i][i] = 1
            translation[i] = lam[a]
            cases.append(2)
        elif (up := _unique_chain(poset, x, upward=True)) is not None:
            interior, b = up
            for z in [x, *interior]:
                matrix[i][index[z]] = -1
            translation[i] = lam[b]
            cases.append(3)
        elif (down := _unique_chain(poset, x, upward=False)) is not None:
            interior, a = down
            for z in [x, *interior]:
                matrix[i][index[z]] = 1
            translation[i] = lam[a]
            cases.append(4)
        else:
            raise StarRelationError(
                f"{x} has several saturated chains in both directions; no case applies"
            )
    return AffineLatticeMap(coords, tuple(map(tuple, matrix)), tuple(translation), tuple(cases))


def inverse_map(poset: MarkedPoset, psi: AffineLatticeMap) -> AffineLatticeMap:
    """Inverse of a map from :func:`build_unimodular_map`, read off the cases.

    An element of the "upward" kind (cases 1, 3) is recovered as the
    difference to its upper neighbour on the chain (or from ``λ_b``), an
    element of the "downward" kind (cases 2, 4) as the difference to its
    lower neighbour (or from ``λ_a``).
    """
    lam = poset.marking
    coords = psi.coordinates
    index = {x: i for i, x in enumerate(coords)}
    n = len(coords)
    matrix = [[0] * n for _ in range(n)]
    translation = [0] * n
    for x, case in zip(coords, psi.cases):
        i = index[x]
        if case in (1, 3):
            (nxt,) = poset.upper_covers[x]
            # t_x = λ_b - s_x - (rest of chain), t_next = λ_b - (rest of chain)
            matrix[i][i] = -1
            if nxt in lam:
                translation[i] = lam[nxt]
            else:
                matrix[i][index[nxt]] = 1
        else:
            (prev,) = poset.lower_covers[x] if case == 2 else _single_lower(poset, x)
            matrix[i][i] = 1
            if prev in lam:
                translation[i] = -lam[prev]
            else:
                matrix[i][index[prev]] = -1
    return AffineLatticeMap(coords, tuple(map(tuple, matrix)), tuple(translation))


def _single_lower(poset: MarkedPoset, x: str) -> tuple[str]:
    downs = poset.lower_covers[x]
    if len(downs) != 1:
        raise ValueError(f"{x} does not have a unique lower cover")
    return (downs[0],)


@dataclass
class EquivalenceReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        return [f"{name}: {'pass' if good else 'FAIL'}" for name, good in self.checks.items()]


def verify_equivalence(poset: MarkedPoset, psi: AffineLatticeMap, dilates: Sequence[int] = (1, 2)) -> EquivalenceReport:
    """Check determinant, lattice-point images for each dilate, and vertex images."""
    report = EquivalenceReport()
    det = psi.determinant()
    report.details["determinant"] = det
    report.checks["determinant is ±1"] = abs(det) == 1
    for k in dilates:
        scaled = poset.scaled(k)
        image = {psi.apply(p, k) for p in enumerate_chain_points(scaled)}
        target = set(enumerate_order_points(scaled).points)
        report.checks[f"lattice points k={k}"] = image == target
    chain_v = enumerate_vertices(chain_hrep(poset))
    order_v = enumerate_vertices(order_hrep(poset))
    image_v = sorted(psi.apply(v) for v in chain_v)
    report.details["chain_vertices"] = len(chain_v)
    report.details["order_vertices"] = len(order_v)
    report.checks["vertex images"] = image_v == sorted(order_v)
    return report
