"""Hypothesis strategies for small valid marked posets."""

from __future__ import annotations

from hypothesis import strategies as st

from posetpoly.poset import MarkedPoset, ensure_valid, transitive_reduction


@st.composite
def marked_posets(draw, max_unmarked: int = 4, max_marks: int = 3, max_step: int = 2) -> MarkedPoset:
    """Random DAG on a shuffled linear order; extremal unmarked elements get
    their own marks, and the marking grows along the order."""
    k = draw(st.integers(1, max_unmarked))
    r = draw(st.integers(0, max_marks))
    names = draw(st.permutations([f"u{i}" for i in range(k)] + [f"m{i}" for i in range(r)]))
    n = len(names)
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    marks = {x for x in names if x.startswith("m")}
    has_up = {x for x, _ in pairs}
    has_down = {y for _, y in pairs}
    order = list(names)
    for x in names:
        if x in marks:
            continue
        if x not in has_down:
            order.insert(0, f"b_{x}")
            marks.add(f"b_{x}")
            pairs.append((f"b_{x}", x))
        if x not in has_up:
            order.append(f"t_{x}")
            marks.add(f"t_{x}")
            pairs.append((x, f"t_{x}"))
    covers = transitive_reduction(order, pairs)
    below: dict[str, set[str]] = {x: set() for x in order}
    for x in order:
        for a, b in covers:
            if b == x:
                below[x] |= below[a] | {a}
    marking: dict[str, int] = {}
    for x in order:
        if x in marks:
            base = max((marking[a] for a in below[x] if a in marking), default=0)
            marking[x] = base + draw(st.integers(0, max_step))
    return ensure_valid(MarkedPoset(tuple(order), covers, marking))
