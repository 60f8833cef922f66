import random

import pytest

from pihall.permgrp import (
    PermGroup,
    closure,
    commutator,
    compose,
    conjugate_perm,
    format_cycles,
    identity,
    inverse,
    moved_points,
    normalizer_scan,
    parse_cycles,
    perm_from_cycles,
    perm_order,
)


def cyc(text, degree):
    return parse_cycles(text, degree)


class TestPermBasics:
    def test_compose_is_left_to_right(self):
        # (0 1) then (1 2) sends 0 -> 1 -> 2.
        p = compose(cyc("(0 1)", 3), cyc("(1 2)", 3))
        assert p[0] == 2

    def test_inverse(self):
        p = cyc("(0 1 2 3 4)", 5)
        assert compose(p, inverse(p)) == identity(5)

    def test_perm_order(self):
        assert perm_order(identity(4)) == 1
        assert perm_order(cyc("(0 1 2)(3 4)", 5)) == 6

    def test_conjugate_relabels_cycles(self):
        p = cyc("(0 1 2)", 4)
        g = cyc("(0 3)", 4)
        assert conjugate_perm(p, g) == cyc("(3 1 2)", 4)

    def test_commutator_identity_for_commuting(self):
        p, q = cyc("(0 1)", 4), cyc("(2 3)", 4)
        assert commutator(p, q) == identity(4)

    def test_moved_points(self):
        assert moved_points(cyc("(1 3)", 5)) == [1, 3]

    def test_format_parse_round_trip(self):
        for text in ("()", "(0 1)", "(0 1 2)(3 4)", "(0 4)(1 3)"):
            assert format_cycles(parse_cycles(text, 5)) == text


class TestPermGroupOrders:
    @pytest.mark.parametrize(
        "gens,degree,order",
        [
            ([("(0 1 2 3 4)"), ("(0 1)")], 5, 120),  # S5
            ([("(0 1 2)"), ("(0 1 2 3 4)")], 5, 60),  # A5
            ([("(0 1 2 3)"), ("(0 2)")], 4, 8),  # D4
            ([("(0 1)(2 3)"), ("(0 2)(1 3)")], 4, 4),  # V4
            ([("(0 1 2 3 4 5 6)")], 7, 7),
        ],
    )
    def test_known_orders(self, gens, degree, order):
        g = PermGroup([cyc(t, degree) for t in gens], degree)
        assert g.order == order

    def test_closure_equals_group(self):
        g = closure([cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)])
        assert g.order == 60
        assert g.degree == 5

    def test_trivial_group(self):
        g = PermGroup([], degree=3)
        assert g.order == 1
        assert g.elements() == [identity(3)]

    def test_elements_match_order(self):
        g = PermGroup([cyc("(0 1 2 3)", 4), cyc("(0 2)", 4)], 4)
        elems = g.elements()
        assert len(elems) == g.order == 8
        assert len(set(elems)) == 8

    def test_element_order_counts_a5(self):
        g = closure([cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)])
        counts = g.element_order_counts()
        assert counts == {1: 1, 2: 15, 3: 20, 5: 24}


class TestSubgroupsAndSeries:
    def a5(self):
        return closure([cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)])

    def s4(self):
        return closure([cyc("(0 1 2 3)", 4), cyc("(0 1)", 4)])

    def test_is_subgroup_of(self):
        a4 = closure([cyc("(0 1 2)", 5), cyc("(0 1)(2 3)", 5)])
        assert a4.order == 12
        assert a4.is_subgroup_of(self.a5())
        assert not self.a5().is_subgroup_of(a4)

    def test_conjugated_preserves_order(self):
        a4 = closure([cyc("(0 1 2)", 5), cyc("(0 1)(2 3)", 5)])
        h = a4.conjugated(cyc("(0 4)", 5))
        assert h.order == 12
        assert h.is_subgroup_of(self.a5())

    def test_derived_series_s4(self):
        series = self.s4().derived_series()
        assert [g.order for g in series] == [24, 12, 4, 1]
        assert self.s4().is_solvable

    def test_a5_is_perfect(self):
        a5 = self.a5()
        assert a5.derived_subgroup().order == 60
        assert not a5.is_solvable

    def test_normal_closure(self):
        s4 = self.s4()
        v4 = s4.normal_closure([cyc("(0 1)(2 3)", 4)])
        assert v4.order == 4

    def test_normalizer_scan(self):
        s4 = self.s4()
        c4 = closure([cyc("(0 1 2 3)", 4)])
        n = normalizer_scan(s4, c4)
        assert n.order == 8

    def test_random_element_lies_in_group(self):
        g = self.a5()
        rng = random.Random(7)
        elems = set(g.elements())
        for _ in range(50):
            assert g.random_element(rng) in elems

    def test_base_determines_membership(self):
        g = self.s4()
        assert len(g.base()) >= 1


class TestDegreeInference:
    def test_degree_from_generators(self):
        g = closure([cyc("(0 5)", 6)])
        assert g.degree == 6

    def test_mismatched_degrees_rejected(self):
        with pytest.raises(ValueError):
            PermGroup([cyc("(0 1)", 3), cyc("(0 1)", 4)])
