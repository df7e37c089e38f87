"""Generators for the named marked posets and the sl isomorphism predicate.

Element names are canonical so that outputs are stable:

* Gelfand-Tsetlin: ``mark_j`` for the top row, ``x_i_j`` for row ``i >= 1``;
* symplectic: ``mark_j`` for ``λ_j``, ``zero_c`` for the 0-marks at the bottom
  of even column ``c``, ``x_c_h`` for the unmarked grid point ``(c, h)``;
* Demazure: ``y_u_v`` for diagram cells, ``top`` and ``zero_u_v``.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .poset import MarkedPoset, ensure_valid, transitive_reduction


def _check_decreasing(lam: Sequence[int], what: str = "lambda") -> None:
    if any(not isinstance(v, int) or v < 0 for v in lam):
        raise ValueError(f"{what} must consist of nonnegative integers")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"{what} must be weakly decreasing, got {tuple(lam)}")


def gt_poset(lam: Sequence[int]) -> MarkedPoset:
    """The Gelfand-Tsetlin marked poset for ``λ = (λ_1, ..., λ_{n+1})``.

    Elements ``x_{i,j}`` for ``0 <= i <= n``, ``1 <= j <= n+1-i``; the top row
    carries the marks.  ``x_{i,j}`` covers ``x_{i-1,j+1}`` and is covered by
    ``x_{i-1,j}``.
    """
    lam = tuple(lam)
    if len(lam) < 2:
        raise ValueError("lambda needs at least two entries")
    _check_decreasing(lam)
    if lam[-1] != 0:
        raise ValueError("the last entry of lambda must be 0")
    n = len(lam) - 1

    def name(i: int, j: int) -> str:
        return f"mark_{j}" if i == 0 else f"x_{i}_{j}"

    elements = [name(0, j) for j in range(1, n + 2)]
    covers = []
    for i in range(1, n + 1):
        for j in range(1, n + 2 - i):
            elements.append(name(i, j))
            covers.append((name(i - 1, j + 1), name(i, j)))
            covers.append((name(i, j), name(i - 1, j)))
    marking = {name(0, j): lam[j - 1] for j in range(1, n + 2)}
    return ensure_valid(MarkedPoset(tuple(elements), tuple(covers), marking))


def symplectic_poset(lam: Sequence[int]) -> MarkedPoset:
    """The trapezoidal sp_n marked poset for ``λ = (λ_1, ..., λ_n)``.

    Grid points ``(c, h)`` with covers ``(c, h) < (c ± 1, h + 1)``:

    * column 0: a 0-mark at height 0 and ``λ_{n+1-j}`` at height ``2j``;
    * odd column ``2k+1``: unmarked points at heights ``1, 3, ..., 2(n-k)-1``;
    * even column ``2k`` (``0 < k < n``): a 0-mark at height 0 and unmarked
      points at heights ``2, 4, ..., 2(n-k)``;
    * column ``2n``: a single 0-mark at height 0.
    """
    lam = tuple(lam)
    if not lam:
        raise ValueError("lambda must be nonempty")
    _check_decreasing(lam)
    n = len(lam)
    names: dict[tuple[int, int], str] = {}
    marking: dict[str, int] = {}

    def put(c: int, h: int, label: str, value: Optional[int] = None) -> None:
        names[(c, h)] = label
        if value is not None:
            marking[label] = value

    put(0, 0, "zero_0", 0)
    for j in range(1, n + 1):
        put(0, 2 * j, f"mark_{n + 1 - j}", lam[n - j])
    for k in range(n):
        c = 2 * k + 1
        for t in range(n - k):
            put(c, 1 + 2 * t, f"x_{c}_{1 + 2 * t}")
    for k in range(1, n):
        c = 2 * k
        put(c, 0, f"zero_{c}", 0)
        for t in range(n - k):
            put(c, 2 + 2 * t, f"x_{c}_{2 + 2 * t}")
    put(2 * n, 0, f"zero_{2 * n}", 0)

    covers = []
    for (c, h), low in sorted(names.items()):
        for dc in (-1, 1):
            high = names.get((c + dc, h + 1))
            if high is not None:
                covers.append((low, high))
    elements = [names[key] for key in sorted(names)]
    return ensure_valid(MarkedPoset(tuple(elements), tuple(covers), marking))


def demazure_poset(
    lengths: Sequence[int],
    m: int,
    covers: Optional[Iterable[tuple[str, str]]] = None,
) -> MarkedPoset:
    """Minuscule Demazure marked poset with diagonals of the given lengths.

    Convention: diagonal ``u`` holds cells ``(u, 0), ..., (u, ℓ_{u+1} - 1)``,
    top-aligned, and ``(u, v)`` is covered by ``(u-1, v)`` and ``(u, v-1)``.
    A mark ``m`` sits on top of ``(0, 0)`` and a 0-mark under every minimal
    cell.  Passing ``covers`` (pairs of cell names ``y_u_v``) replaces the
    grid covers and bypasses the convention.
    """
    lengths = tuple(lengths)
    if not lengths:
        raise ValueError("lengths must be nonempty")
    if any(not isinstance(v, int) or v < 1 for v in lengths):
        raise ValueError("lengths must be positive integers")
    if any(lengths[i] < lengths[i + 1] for i in range(len(lengths) - 1)):
        raise ValueError("lengths must be weakly decreasing")
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be a positive integer")

    cells = [(u, v) for u, ell in enumerate(lengths) for v in range(ell)]
    cell_names = [f"y_{u}_{v}" for u, v in cells]
    if covers is None:
        present = set(cells)
        grid = []
        for u, v in cells:
            for up in ((u - 1, v), (u, v - 1)):
                if up in present:
                    grid.append((f"y_{u}_{v}", f"y_{up[0]}_{up[1]}"))
    else:
        grid = [(str(x), str(y)) for x, y in covers]
        known = set(cell_names)
        for x, y in grid:
            if x not in known or y not in known:
                raise ValueError(f"cover ({x}, {y}) mentions an unknown cell")
    grid = list(transitive_reduction(cell_names, grid))

    has_up = {x for x, _ in grid}
    has_down = {y for _, y in grid}
    extra = [(x, "top") for x in cell_names if x not in has_up]
    zeros = []
    for x in cell_names:
        if x not in has_down:
            z = "zero_" + x[2:]
            zeros.append(z)
            extra.append((z, x))
    elements = tuple(zeros + cell_names + ["top"])
    marking = {z: 0 for z in zeros}
    marking["top"] = m
    return ensure_valid(MarkedPoset(elements, tuple(grid + extra), marking))


def star_poset(bottom: int = 0, top: int = 1) -> MarkedPoset:
    """A regular marked poset that is a star around ``x``.

    ``l1, l2 < x < u1, u2`` with all five unmarked, pinned between one mark
    below and one mark above.  Marking the outer four directly would make
    their covers redundant, so regularizing would destroy the star.
    """
    if not 0 <= bottom < top:
        raise ValueError("need 0 <= bottom < top")
    elements = ("bottom", "l1", "l2", "x", "u1", "u2", "top")
    covers = (
        ("bottom", "l1"), ("bottom", "l2"), ("l1", "x"), ("l2", "x"),
        ("x", "u1"), ("x", "u2"), ("u1", "top"), ("u2", "top"),
    )
    return ensure_valid(MarkedPoset(elements, covers, {"bottom": bottom, "top": top}))


def lambda_from_m(m: Sequence[int]) -> tuple[int, ...]:
    """``λ_j = m_j + m_{j+1} + ... + m_n`` for ``j = 1..n+1`` (so ``λ_{n+1} = 0``)."""
    out = [0]
    for v in reversed(m):
        out.append(out[-1] + v)
    return tuple(reversed(out))


def sl_iso_condition(m: Sequence[int]) -> bool:
    """True iff ``m`` vanishes outside positions {1, 2}, outside {n-1, n}, or
    outside {1, n} (1-indexed)."""
    n = len(m)

    def zero_on(indices: Iterable[int]) -> bool:
        return all(m[i - 1] == 0 for i in indices)

    return (
        zero_on(range(3, n + 1))
        or zero_on(range(1, n - 1))
        or zero_on(range(2, n))
    )
