from itertools import product

import pytest

from posetpoly.families import (
    demazure_poset,
    gt_poset,
    lambda_from_m,
    sl_iso_condition,
    star_poset,
    symplectic_poset,
)
from posetpoly.polytope import facet_count_chain, facet_count_order, has_star_relation
from posetpoly.poset import validate
from posetpoly.regularize import is_regular, regularize


class TestGT:
    @pytest.mark.parametrize(
        "lam,marked,unmarked,covers",
        [((2, 1, 0), 3, 3, 6), ((3, 2, 1, 0), 4, 6, 12), ((5, 0), 2, 1, 2)],
    )
    def test_sizes(self, lam, marked, unmarked, covers):
        p = gt_poset(lam)
        assert (len(p.marking), len(p.unmarked), len(p.covers)) == (marked, unmarked, covers)

    def test_single(self):
        p = gt_poset((4, 0))
        assert p.unmarked == ("x_1_1",)
        assert set(p.covers) == {("mark_2", "x_1_1"), ("x_1_1", "mark_1")}

    def test_interlacing(self):
        # x_{i-1,j+1} <= x_{i,j} <= x_{i-1,j}
        p = gt_poset((3, 2, 1, 0))
        assert ("mark_3", "x_1_2") in p.covers and ("x_1_2", "mark_2") in p.covers
        assert ("x_1_2", "x_2_1") in p.covers and ("x_2_1", "x_1_1") in p.covers

    @pytest.mark.parametrize("lam", [(1, 2, 0), (2, 1, 1), (2, -1, 0), (3,)])
    def test_rejects(self, lam):
        with pytest.raises(ValueError):
            gt_poset(lam)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_facets(self, n):
        p = gt_poset(tuple(range(n, -1, -1)))
        assert facet_count_order(p) == n * (n + 1)
        assert facet_count_chain(p) >= facet_count_order(p)


class TestSymplectic:
    def test_size(self):
        for n in (1, 2, 3, 4):
            p = symplectic_poset(tuple(range(n, 0, -1)))
            assert len(p.unmarked) == n * n
            assert validate(p) == []

    def test_small_star_free(self):
        q, _ = regularize(symplectic_poset((2, 1)))
        assert has_star_relation(q) is None

    def test_rank_four(self):
        q, _ = regularize(symplectic_poset((3, 2, 1, 1)))
        assert has_star_relation(q) is not None
        q, _ = regularize(symplectic_poset((2, 1, 0, 0)))
        assert has_star_relation(q) is None

    def test_rejects(self):
        with pytest.raises(ValueError):
            symplectic_poset((1, 2))
        with pytest.raises(ValueError):
            symplectic_poset(())


class TestDemazure:
    def test_figure_shape(self):
        p = demazure_poset((8, 7, 7, 5, 3, 3, 2, 2), 1)
        assert len(p.unmarked) == 37
        assert p.marking["top"] == 1 and len(p.marking) == 6

    def test_single(self):
        p = demazure_poset((1,), 1)
        assert p.unmarked == ("y_0_0",)
        assert dict(p.marking) == {"zero_0_0": 0, "top": 1}

    def test_square(self):
        p = demazure_poset((2, 2), 2)
        assert validate(p) == [] and is_regular(p)
        assert facet_count_order(p) == 6
        assert facet_count_chain(p) == 4 + 2

    def test_explicit_covers(self):
        p = demazure_poset((2,), 3, covers=[("y_0_0", "y_0_1")])
        assert ("y_0_0", "y_0_1") in p.covers
        assert ("y_0_1", "top") in p.covers and ("zero_0_0", "y_0_0") in p.covers

    def test_rejects(self):
        with pytest.raises(ValueError):
            demazure_poset((), 1)
        with pytest.raises(ValueError):
            demazure_poset((1, 2), 1)
        with pytest.raises(ValueError):
            demazure_poset((2,), 1, covers=[("y_0_0", "nope")])


class TestStarPoset:
    def test_star(self):
        p = star_poset()
        w = has_star_relation(p)
        assert w is not None and w.center == "x"
        assert is_regular(p)
        assert facet_count_order(p) == 8 and facet_count_chain(p) == 5 + 4

    def test_rejects(self):
        with pytest.raises(ValueError):
            star_poset(2, 2)


class TestSlCondition:
    def test_examples(self):
        assert not sl_iso_condition((1, 1, 1))
        assert sl_iso_condition((1, 1, 0, 0, 0))
        assert sl_iso_condition((1, 0, 0, 0, 1))
        assert sl_iso_condition((0, 0, 0, 1, 1))

    def test_lambda_from_m(self):
        assert lambda_from_m((1, 1, 1)) == (3, 2, 1, 0)
        assert lambda_from_m((2, 0, 1)) == (3, 1, 1, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_star_freeness(self, n):
        for m in product((0, 1), repeat=n):
            q, _ = regularize(gt_poset(lambda_from_m(m)))
            assert sl_iso_condition(m) == (has_star_relation(q) is None), m
