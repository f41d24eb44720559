"""The operator calculus: exchanges, merges, duals, splits, composites."""

import random

import pytest

from emseg.core import (
    MultiSegment, OrderError, Row, SegmentError, arthur_parameter, check_star,
    group_sign, make_row, multi_segment, parse, render, validate,
)
from emseg.ops import (
    NoExchangeError, T1, T2, T3, T3PRIME, dual, dual_ui_dual, merge_condition,
    merge_hats, op_D, op_M, op_S, op_U, row_exchange, split_circles, to_sorted,
    ui, ui_pair, ui_type,
)

from conftest import rand_nested_pair, rand_row, rand_sorted_ms


class TestRowExchange:
    def test_nested_flip_golden(self):
        res = row_exchange(parse("[1,-1;1;+][1,1;0;-]"), 0)
        assert res.applied
        assert render(res.out) == "[1,1;0;-][1,-1;0;-]"

    def test_identical_rows_fixed_point(self):
        ms = parse("[1,1;0;+][1,1;0;+]")
        res = row_exchange(ms, 0)
        assert res.applied
        assert res.out.rows == ms.rows

    def test_increasing_pair_not_applicable(self):
        ms = parse("[0,0;0;+][1,1;0;-]")
        res = row_exchange(ms, 0)
        assert not res.applied
        assert res.out is ms

    def test_non_nesting_wrong_order_raises(self):
        ms = multi_segment([(3, 1, 0, 1), (2, 0, 0, 1)])
        with pytest.raises(NoExchangeError):
            row_exchange(ms, 0)

    def test_bad_position(self):
        with pytest.raises(SegmentError):
            row_exchange(parse("[1,0;0;+]"), 3)

    def test_involution_on_strictly_nested(self, rng):
        checked = 0
        while checked < 300:
            outer, inner = rand_nested_pair(rng)
            if (outer.A, outer.B) == (inner.A, inner.B):
                continue
            ms = MultiSegment((outer, inner), "relaxed")
            once = row_exchange(ms, 0)
            if not once.applied:
                continue
            twice = row_exchange(once.out, 0)
            assert twice.applied and twice.out.rows == ms.rows
            checked += 1

    def test_identical_hats_fixed_point(self):
        ms = parse("[1,-1;1;+][1,-1;1;+]")
        res = row_exchange(ms, 0)
        assert res.applied and res.out.rows == ms.rows

    def test_preserves_arthur_parameter(self, rng):
        for _ in range(300):
            ms = rand_sorted_ms(rng)
            k = rng.randrange(max(len(ms.rows) - 1, 1))
            if k >= len(ms.rows) - 1:
                continue
            try:
                res = row_exchange(ms, k)
            except NoExchangeError:
                continue
            if res.applied:
                assert (sorted((r.a, r.b) for r in res.out.rows)
                        == sorted((r.a, r.b) for r in ms.rows))


class TestUnionIntersection:
    def test_type3prime_merges_circle_rows(self):
        res = ui(parse("[0,0;0;+][1,1;0;-]"), 0)
        assert res.applied and res.type_tag == T3PRIME
        assert render(res.out) == "[1,0;0;+]"

    def test_not_applicable_same_ends(self):
        assert not ui(parse("[0,0;0;+][1,1;0;+]"), 0).applied

    def test_not_applicable_nested(self):
        assert not ui(parse("[2,-1;0;+][1,0;0;-]"), 0).applied

    def test_type1(self):
        ms = multi_segment([(1, 0, 0, -1), (2, 1, 1, 1)])
        assert ui_type(ms, 0) == T1
        res = ui(ms, 0)
        assert res.applied
        assert res.out.rows[0].A == 2 and res.out.rows[0].B == 0
        assert res.out.rows[1].A == 1 and res.out.rows[1].B == 1

    def test_supports_cross_after_merge(self, rng):
        for _ in range(300):
            ms = rand_sorted_ms(rng)
            for k in range(len(ms.rows) - 1):
                res = ui(ms, k)
                if not res.applied or res.type_tag == T3PRIME:
                    continue
                r1, r2 = ms.rows[k], ms.rows[k + 1]
                n1, n2 = res.out.rows[k], res.out.rows[k + 1]
                assert (n1.A, n1.B) == (r2.A, r1.B)
                assert (n2.A, n2.B) == (r1.A, r2.B)


class TestDual:
    def test_golden_pair(self):
        assert render(dual(parse("[0,0;0;+][1,1;0;-]"))) == "[1,-1;1;+][0,0;0;-]"

    def test_single_circle_self_dual(self):
        ms = parse("[0,0;0;+]")
        assert dual(ms).rows == ms.rows

    def test_requires_sorted_order(self):
        with pytest.raises(OrderError):
            dual(multi_segment([(2, 1, 0, 1), (1, 0, 0, 1)]))

    def test_involution(self, rng):
        for _ in range(300):
            ms = rand_sorted_ms(rng, require_star=True)
            assert dual(dual(ms)).rows == ms.rows

    def test_sign_law(self, rng):
        total = 0
        for _ in range(300):
            ms = rand_sorted_ms(rng, require_star=True)
            C = sum(r.circles for r in ms.rows)
            d = dual(ms)
            n = len(ms.rows)
            for i, r in enumerate(ms.rows):
                image = d.rows[n - 1 - i]
                assert image.circles == r.circles
                if r.circles > 0:
                    assert image.eta == (-1) ** (C - r.circles) * r.eta
                    total += 1
        assert total > 100


class TestSort:
    def test_already_sorted(self):
        ms = parse("[0,0;0;+][1,1;0;-]")
        assert to_sorted(ms).rows == ms.rows

    def test_sorts_nested_pair(self):
        ms = multi_segment([(2, -1, 1, 1), (1, 0, 0, 1)])
        out = to_sorted(ms)
        assert [r.B for r in out.rows] == [-1, 0]
        assert sorted((r.a, r.b) for r in out.rows) == sorted(
            (r.a, r.b) for r in ms.rows)


class TestSplit:
    def test_split_is_ui_inverse(self):
        merged = parse("[1,0;0;+]")
        split = split_circles(merged, 0, 0)
        assert render(split) == "[0,0;0;+][1,1;0;-]"
        back = ui(split, 0)
        assert back.applied and back.out.rows == merged.rows

    def test_split_sign_alternation(self):
        split = split_circles(parse("[3,0;0;+]"), 0, 1)
        assert render(split) == "[1,0;0;+][3,2;0;+]"

    def test_rejects_triangles(self):
        with pytest.raises(SegmentError):
            split_circles(parse("[2,0;1;+]"), 0, 0)

    def test_rejects_out_of_range(self):
        with pytest.raises(SegmentError):
            split_circles(parse("[1,0;0;+]"), 0, 1)


class TestMergeHats:
    def test_golden(self):
        ms = parse("[2,-2;2;+][1,-1;1;-]")
        res = merge_hats(ms, 0)
        assert res.applied
        assert render(res.out) == "[2,-1;1;+]"

    def test_condition_requires_abutment(self):
        assert not merge_condition(Row(3, -3, 3, 1), Row(1, -1, 1, -1))

    def test_not_applicable_same_signs(self):
        ms = parse("[2,-2;2;+][1,-1;1;+]")
        assert not merge_hats(ms, 0).applied

    def test_requires_hats(self):
        with pytest.raises(SegmentError):
            merge_hats(parse("[1,0;0;+][2,2;0;-]"), 0)


class TestComposites:
    def test_unfold_then_merge_golden(self):
        ms = parse("[1,-1;1;-][0,0;0;+]")
        res = op_D(ms, 0, 1)
        assert res.applied
        assert render(res.out) == "[1,0;0;-]"

    def test_separate_splits_last_circles(self):
        ms = parse("[2,0;0;+]")
        res = op_S(ms, 0, 1)
        assert res.applied
        assert render(res.out) == "[1,0;0;+][2,2;0;+]"

    def test_unhook_from_hat(self):
        ms = parse("[2,-1;1;-][0,0;0;-]")
        res = op_U(ms, 0, 1)
        assert res.applied
        psis = sorted((r.a, r.b) for r in res.out.rows)
        assert psis == [(1, 1), (1, 3), (5, 1)]

    def test_dual_ui_dual_round(self):
        ms = parse("[1,-1;1;+][0,0;0;-]")
        res = dual_ui_dual(ms, 0)
        assert res.applied and res.type_tag == T3PRIME
        assert render(res.out) == "[1,0;0;+]"

    def test_pairwise_ui_distant_rows(self):
        ms = parse("[0,0;0;+][1,1;0;-][1,1;0;-]")
        res = ui_pair(ms, 0, 2)
        assert res.applied
        assert render(res.out) == "[1,0;0;+][1,1;0;-]"


def test_braid_relation_sample(rng):
    checked = 0
    while checked < 200:
        inner = rand_row(rng)
        A2 = inner.A + rng.randint(0, 2)
        B2 = inner.B - rng.randint(0, 2)
        A1 = A2 + rng.randint(0, 2)
        B1 = B2 - rng.randint(0, 2)
        if A1 + B1 < 0 or A2 + B2 < 0:
            continue
        mid = make_row(A2, B2, rng.randint(0, (A2 - B2 + 1) // 2),
                       rng.choice([1, -1]))
        outer = make_row(A1, B1, rng.randint(0, (A1 - B1 + 1) // 2),
                         rng.choice([1, -1]))
        ms = MultiSegment((outer, mid, inner), "relaxed")
        lhs = rhs = ms
        ok = True
        for k in (0, 1, 0):
            r = row_exchange(lhs, k)
            ok = ok and r.applied
            lhs = r.out
        for k in (1, 0, 1):
            r = row_exchange(rhs, k)
            ok = ok and r.applied
            rhs = r.out
        if not ok:
            continue
        assert lhs.rows == rhs.rows
        checked += 1
