import json

import pytest
from hypothesis import given, settings

from posetpoly.families import gt_poset
from posetpoly.poset import (
    MarkedPoset,
    ResourceError,
    UnknownElementError,
    connected_components,
    count_saturated_chains,
    dumps,
    is_normalized,
    loads,
    marked_poset,
    normalize_marking,
    reduced_poset,
    saturated_chains_between,
    transitive_reduction,
    validate,
)
from strategies import marked_posets


def chain(lo=0, hi=2):
    return marked_poset("axyb", [("a", "x"), ("x", "y"), ("y", "b")], {"a": lo, "b": hi})


def star():
    return marked_poset(
        ["u1", "u2", "c", "v1", "v2"],
        [("u1", "c"), ("u2", "c"), ("c", "v1"), ("c", "v2")],
        {"u1": 0, "u2": 0, "v1": 1, "v2": 1},
    )


def disjoint_chains():
    return marked_poset(
        ["a1", "x1", "b1", "a2", "x2", "b2"],
        [("a1", "x1"), ("x1", "b1"), ("a2", "x2"), ("x2", "b2")],
        {"a1": 0, "b1": 1, "a2": 0, "b2": 1},
    )


def brute_chains(p, a, b):
    # every cover path from a to b, interior unmarked
    out = []

    def walk(path):
        for y in p.upper_covers[path[-1]]:
            if y == b:
                out.append(path + (b,))
            elif y not in p.marking:
                walk(path + (y,))

    walk((a,))
    return sorted(out)


class TestValidate:
    def test_valid_chain(self):
        assert validate(chain()) == []

    def test_missing_maximal_mark(self):
        p = marked_poset("axyb", chain().covers, {"a": 0})
        assert "A lacks maximal element b" in validate(p)

    def test_non_monotone(self):
        p = marked_poset("ab", [("a", "b")], {"a": 2, "b": 1})
        assert "marking not monotone on (a,b)" in validate(p)

    def test_transitive_cover_rejected(self):
        p = marked_poset("axb", [("a", "x"), ("x", "b"), ("a", "b")], {"a": 0, "b": 1})
        assert any("implied transitively" in m for m in validate(p))

    def test_cycle(self):
        p = marked_poset("abx", [("a", "x"), ("x", "a"), ("x", "b")], {"a": 0, "b": 1})
        assert any("cycle" in m for m in validate(p))

    @pytest.mark.parametrize("value", [-1, 1.5, "2", True])
    def test_bad_values(self, value):
        p = marked_poset("axb", [("a", "x"), ("x", "b")], {"a": 0, "b": value})
        assert validate(p)

    def test_unknown_reference(self):
        p = marked_poset("ab", [("a", "z")], {"a": 0, "b": 0})
        assert any("unknown element z" in m for m in validate(p))

    def test_duplicate_and_reflexive(self):
        p = marked_poset("axb", [("a", "x"), ("a", "x"), ("x", "x"), ("x", "b")], {"a": 0, "b": 0})
        msgs = validate(p)
        assert any("listed 2 times" in m for m in msgs)
        assert any("reflexive" in m for m in msgs)


class TestOrder:
    def test_chain_order(self):
        p = chain()
        assert p.less_than("a", "b")
        assert not p.less_than("b", "a")
        assert not p.less_than("x", "x")

    def test_star_incomparable(self):
        p = star()
        assert not p.comparable("u1", "u2")
        assert p.comparable("u1", "v2")

    def test_unknown_element(self):
        with pytest.raises(UnknownElementError):
            chain().less_than("a", "nope")

    @given(marked_posets())
    def test_covers_are_reduction_of_order(self, p):
        pairs = [(x, y) for x in p.elements for y in p.above(x)]
        assert set(transitive_reduction(p.elements, pairs)) == set(p.covers)


class TestChains:
    def test_single_chain(self):
        assert saturated_chains_between(chain(), "a", "b") == [("a", "x", "y", "b")]

    def test_gt_bottom_to_top(self):
        p = gt_poset((3, 2, 1, 0))
        assert len(saturated_chains_between(p, "mark_4", "mark_1")) == 2
        assert count_saturated_chains(p, "mark_4", "mark_1") == 2

    def test_incomparable_marks(self):
        assert saturated_chains_between(disjoint_chains(), "a1", "b2") == []

    def test_direct_cover_counted(self):
        p = marked_poset("axb", [("a", "x"), ("x", "b")], {"a": 0, "b": 1, "x": 0})
        assert saturated_chains_between(p, "a", "x") == [("a", "x")]
        assert count_saturated_chains(p, "a", "x") == 0
        assert count_saturated_chains(p, "a", "x", interior_only=False) == 1

    def test_unmarked_endpoint_rejected(self):
        with pytest.raises(ValueError):
            saturated_chains_between(chain(), "a", "x")

    def test_cap(self):
        with pytest.raises(ResourceError):
            saturated_chains_between(gt_poset((3, 2, 1, 0)), "mark_4", "mark_1", cap=1)

    @settings(max_examples=60)
    @given(marked_posets())
    def test_matches_brute_force(self, p):
        for a in p.marking:
            for b in p.marking:
                if a == b:
                    continue
                found = saturated_chains_between(p, a, b)
                assert found == brute_chains(p, a, b)
                direct = 1 if b in p.upper_covers[a] else 0
                assert count_saturated_chains(p, a, b) == len(found) - direct


class TestNormalize:
    def test_shift(self):
        p, c = normalize_marking(marked_poset("axb", [("a", "x"), ("x", "b")], {"a": 2, "b": 5}))
        assert dict(p.marking) == {"a": 0, "b": 3} and c == 2

    def test_already_normal(self):
        p0 = chain()
        p, c = normalize_marking(p0)
        assert p is p0 and c == 0

    def test_constant(self):
        p, c = normalize_marking(chain(4, 4))
        assert set(p.marking.values()) == {0} and c == 4
        assert is_normalized(p.marking)


class TestReduced:
    def test_reduced_figure_example(self):
        # three 1-marks on top, x/y/z below them, 0-marks and w underneath
        p = marked_poset(
            ["z0", "w", "m0", "n0", "x", "y", "z", "t1", "t2", "t3"],
            [("z0", "w"), ("w", "m0"), ("m0", "x"), ("m0", "y"), ("n0", "z"),
             ("x", "t1"), ("y", "t2"), ("z", "t2"), ("z", "t3")],
            {"z0": 0, "m0": 0, "n0": 0, "t1": 1, "t2": 1, "t3": 1},
        )
        r = reduced_poset(p)
        assert set(r.elements) == {"x", "y", "z", "t1", "t2", "t3"}
        assert set(r.covers) == {("x", "t1"), ("y", "t2"), ("z", "t2"), ("z", "t3")}
        assert connected_components(r) == [["x", "t1"], ["y", "z", "t2", "t3"]]

    def test_all_zero(self):
        assert reduced_poset(chain(0, 0)).elements == ()
        assert connected_components(reduced_poset(chain(0, 0))) == []

    def test_disjoint_chains(self):
        r = reduced_poset(disjoint_chains())
        assert connected_components(r) == [["x1", "b1"], ["x2", "b2"]]

    def test_gt_one_component(self):
        r = reduced_poset(gt_poset((1, 1, 1, 0)))
        assert "mark_4" not in r.elements
        assert len(connected_components(r)) == 1

    @given(marked_posets())
    def test_lowering_marks_shrinks(self, p):
        base = set(reduced_poset(p).elements)
        for a in p.marking:
            lowered = {b: (0 if b == a or p.less_than(b, a) else v) for b, v in p.marking.items()}
            assert set(reduced_poset(p, lowered).elements) <= base


class TestJson:
    def test_format(self):
        obj = json.loads(dumps(chain()))
        assert obj == {
            "elements": ["a", "x", "y", "b"],
            "covers": [["a", "x"], ["x", "y"], ["y", "b"]],
            "marking": {"a": 0, "b": 2},
        }

    @given(marked_posets())
    def test_round_trip(self, p):
        text = dumps(p)
        q = loads(text)
        assert q.elements == p.elements and q.covers == p.covers
        assert dict(q.marking) == dict(p.marking)
        assert dumps(q) == text

    @pytest.mark.parametrize(
        "text",
        ["not json", "[]", '{"elements": ["a"]}', '{"elements": [1], "covers": [], "marking": {}}',
         '{"elements": ["a"], "covers": [["a"]], "marking": {}}'],
    )
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            loads(text)

    def test_marked_poset_is_immutable(self):
        with pytest.raises(AttributeError):
            chain().elements = ()
        assert isinstance(chain(), MarkedPoset)
