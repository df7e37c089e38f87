import pytest
from hypothesis import given, settings

from posetpoly.families import gt_poset
from posetpoly.lattice import (
    ENV_MAX_POINTS,
    LatticePointSet,
    box_points,
    dilate_counts,
    enumerate_chain_points,
    enumerate_order_points,
    max_points,
    minkowski_sum,
)
from posetpoly.polytope import chain_hrep, order_hrep
from posetpoly.poset import ResourceError, marked_poset
from strategies import marked_posets


def chain(hi=2):
    return marked_poset("axyb", [("a", "x"), ("x", "y"), ("y", "b")], {"a": 0, "b": hi})


def gt_patterns(top):
    # direct Gelfand-Tsetlin pattern enumeration: each row interlaces the one above
    def rows_below(row):
        if len(row) == 1:
            yield ()
            return

        def pick(i, acc):
            if i == len(row) - 1:
                yield tuple(acc)
                return
            for v in range(row[i + 1], row[i] + 1):
                yield from pick(i + 1, acc + [v])

        for nxt in pick(0, []):
            for rest in rows_below(nxt):
                yield (nxt,) + rest

    return sum(1 for _ in rows_below(tuple(top)))


class TestChainPoints:
    def test_triangle(self):
        pts = enumerate_chain_points(chain())
        assert set(pts) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}

    @pytest.mark.parametrize("lam,size", [((2, 1, 0), 8), ((3, 2, 1, 0), 64)])
    def test_gt(self, lam, size):
        assert len(enumerate_chain_points(gt_poset(lam))) == size

    def test_zero_marking(self):
        assert enumerate_chain_points(chain(0)).points == ((0, 0),)


class TestOrderPoints:
    def test_triangle(self):
        pts = enumerate_order_points(chain())
        assert set(pts) == {(x, y) for y in range(3) for x in range(y + 1)}

    @pytest.mark.parametrize("lam", [(2, 1, 0), (3, 2, 1, 0), (3, 1, 1, 0), (4, 2, 0)])
    def test_gt_patterns(self, lam):
        assert len(enumerate_order_points(gt_poset(lam))) == gt_patterns(lam)


class TestAgainstBox:
    @settings(max_examples=60, deadline=None)
    @given(marked_posets(max_unmarked=4))
    def test_matches_box(self, p):
        assert enumerate_chain_points(p) == box_points(p, chain_hrep(p))
        assert enumerate_order_points(p) == box_points(p, order_hrep(p))


class TestDilates:
    def test_chain(self):
        assert dilate_counts(chain(), 3) == [(1, 6, 6), (2, 15, 15), (3, 28, 28)]

    def test_zero(self):
        assert dilate_counts(chain(0), 3) == [(1, 1, 1), (2, 1, 1), (3, 1, 1)]

    @settings(max_examples=40, deadline=None)
    @given(marked_posets(max_unmarked=4))
    def test_equal_counts(self, p):
        for _, c, o in dilate_counts(p, 2):
            assert c == o


class TestMinkowski:
    def test_identity(self):
        s = enumerate_chain_points(chain())
        zero = LatticePointSet(s.coordinates, ((0, 0),))
        assert minkowski_sum(zero, s) == s

    def test_segments(self):
        seg = LatticePointSet.build(("x",), [(0,), (1,)])
        assert minkowski_sum(seg, seg).points == ((0,), (1,), (2,))

    def test_gt_split(self):
        p = gt_poset((2, 1, 0))
        a = enumerate_chain_points(p.with_marking({"mark_1": 1, "mark_2": 1, "mark_3": 0}))
        b = enumerate_chain_points(p.with_marking({"mark_1": 1, "mark_2": 0, "mark_3": 0}))
        assert len(a) == len(b) == 3
        total = minkowski_sum(a, b)
        assert total == enumerate_chain_points(p) and len(total) == 8

    def test_mismatch(self):
        with pytest.raises(ValueError):
            minkowski_sum(LatticePointSet(("x",), ()), LatticePointSet(("y",), ()))


class TestCaps:
    def test_limit_argument(self):
        with pytest.raises(ResourceError):
            enumerate_order_points(gt_poset((3, 2, 1, 0)), limit=10)

    def test_env_var(self, monkeypatch):
        monkeypatch.setenv(ENV_MAX_POINTS, "5")
        assert max_points() == 5
        with pytest.raises(ResourceError):
            enumerate_chain_points(chain())

    @pytest.mark.parametrize("raw", ["many", "0"])
    def test_bad_env_var(self, monkeypatch, raw):
        monkeypatch.setenv(ENV_MAX_POINTS, raw)
        with pytest.raises(ValueError):
            max_points()


class TestText:
    def test_round_trip(self):
        s = enumerate_order_points(gt_poset((2, 1, 0)))
        assert LatticePointSet.from_text(s.to_text()) == s

    def test_format(self):
        s = LatticePointSet.build(("x", "y"), [(1, 0), (0, 0)])
        assert s.to_text() == "x y\n0 0\n1 0\n"

    def test_bad_length(self):
        with pytest.raises(ValueError):
            LatticePointSet.from_text("x y\n1\n")
