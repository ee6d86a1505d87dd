"""PD parsing, smoothing states, state graphs, and diagram constructions."""

import itertools
import random

import pytest

from statechrome.diagram import (
    add_kink,
    all_negative_state,
    all_positive_state,
    assign_signs,
    braid_closure,
    connected_sum,
    mirror,
    n_grading,
    n_grading_head,
    parse_pd,
    pretzel,
    resolve,
    sign_flip,
    state_graph,
    to_pd_text,
    unknot,
)
from statechrome.multigraph import girth

LEFT_TREFOIL_PD = "X[6,3,1,4] X[4,1,5,2] X[2,5,3,6]"
FIG8_PD = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"


def all_a_girth(d):
    d = assign_signs(d)
    return girth(state_graph(d, all_positive_state(d)))


class TestParsing:
    def test_round_trip(self):
        d = parse_pd(FIG8_PD)
        assert parse_pd(to_pd_text(d)) == d
        assert d.n == 4
        assert d.n_arcs == 8

    def test_unknot_token(self):
        assert parse_pd("U") == unknot()
        assert to_pd_text(unknot()) == "U"
        assert unknot().n == 0

    def test_separators(self):
        assert parse_pd("X[1,3,2,4], X[3,1,4,2]").n == 2
        assert parse_pd("X[ 1, 3 ,2,4] X[3,1,4,2]").n == 2

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_pd("")
        with pytest.raises(ValueError):
            parse_pd("X[1,2,3]")
        with pytest.raises(ValueError):
            parse_pd("Y[1,2,3,4]")

    def test_arc_validation(self):
        with pytest.raises(ValueError):
            parse_pd("X[1,2,3,5]")  # label out of range
        with pytest.raises(ValueError):
            parse_pd("X[1,1,1,2]")  # arc 1 appears three times
        # a split union of two kinked unknots is still a valid PD code
        assert parse_pd("X[1,1,2,2] X[3,4,3,4]").components == 3


class TestOrientationAndSigns:
    def test_trefoil_chiralities(self):
        lt = assign_signs(parse_pd(LEFT_TREFOIL_PD))
        assert (lt.c_plus, lt.c_minus) == (0, 3)
        rt = assign_signs(mirror(lt))
        assert (rt.c_plus, rt.c_minus) == (3, 0)

    def test_figure_eight_balanced(self):
        d = assign_signs(parse_pd(FIG8_PD))
        assert (d.c_plus, d.c_minus) == (2, 2)

    def test_signs_required(self):
        d = parse_pd(FIG8_PD)
        assert not d.signs_assigned
        with pytest.raises(ValueError):
            d.c_plus

    def test_mirror_negates_signs(self):
        for pd in (LEFT_TREFOIL_PD, FIG8_PD):
            d = assign_signs(parse_pd(pd))
            m = mirror(d)
            assert sorted(x.sign for x in m.crossings) == sorted(-x.sign for x in d.crossings)

    def test_mirror_involution(self):
        for pd in (LEFT_TREFOIL_PD, FIG8_PD):
            d = assign_signs(parse_pd(pd))
            assert mirror(mirror(d)) == d

    def test_sign_flip_keeps_smoothings(self):
        d = assign_signs(parse_pd(LEFT_TREFOIL_PD))
        f = sign_flip(d)
        assert (f.c_plus, f.c_minus) == (3, 0)
        assert all_positive_state(f).circles == all_positive_state(d).circles


class TestStates:
    def test_trefoil_states(self):
        d = assign_signs(parse_pd(LEFT_TREFOIL_PD))
        assert all_positive_state(d).size == 3
        assert all_negative_state(d).size == 2

    def test_circle_count_flips_by_one(self):
        rng = random.Random(12)
        for pd in (LEFT_TREFOIL_PD, FIG8_PD):
            d = assign_signs(parse_pd(pd))
            for choice in itertools.product("AB", repeat=d.n):
                base = resolve(d, choice).size
                for i in range(d.n):
                    flipped = list(choice)
                    flipped[i] = "B" if choice[i] == "A" else "A"
                    assert abs(resolve(d, flipped).size - base) == 1

    def test_state_graph_shape(self):
        d = assign_signs(parse_pd(FIG8_PD))
        for choice in itertools.product("AB", repeat=d.n):
            s = resolve(d, choice)
            g = state_graph(d, s)
            assert g.e == d.n
            assert g.v == s.size

    def test_alternating_checkerboard_counts(self):
        # for an alternating diagram the two extreme states are the
        # checkerboard graphs: |s_A| + |s_B| = n + 2
        for d in (
            parse_pd(LEFT_TREFOIL_PD),
            parse_pd(FIG8_PD),
            pretzel(-3, -3, -3),
            pretzel(-2, -3, -7),
        ):
            d = assign_signs(d)
            assert all_positive_state(d).size + all_negative_state(d).size == d.n + 2

    def test_gradings(self):
        lt = assign_signs(parse_pd(LEFT_TREFOIL_PD))
        assert n_grading(lt) == -9
        assert n_grading_head(lt) == -1
        rt = assign_signs(mirror(lt))
        assert n_grading(rt) == 1
        assert n_grading_head(rt) == 9
        assert n_grading(assign_signs(parse_pd(FIG8_PD))) == -5


class TestConstructions:
    def test_braid_calibration(self):
        lt = braid_closure([-1, -1, -1])
        d = assign_signs(lt)
        assert (d.c_plus, d.c_minus) == (0, 3)
        assert all_a_girth(lt) == 3

    def test_braid_torus_family(self):
        for k in range(3, 7):
            d = braid_closure([-1] * k)
            assert all_a_girth(d) == k
            assert assign_signs(d).c_minus == k

    def test_braid_multi_component(self):
        hopf = braid_closure([-1, -1])
        assert hopf.components == 2
        with pytest.raises(ValueError):
            connected_sum(hopf, braid_closure([-1, -1, -1]))

    def test_braid_word_validation(self):
        with pytest.raises(ValueError):
            braid_closure([])
        with pytest.raises(ValueError):
            braid_closure([0])

    def test_alternating_three_braid(self):
        # alternating generators keep the all-A girth low on one side
        assert all_a_girth(braid_closure([-1, -2, -1, -2])) == 1
        assert all_a_girth(braid_closure([-1, -1, -1, -2, -2, -2])) == 3

    def test_pretzel_girths(self):
        assert all_a_girth(pretzel(-3, -3, -3)) == 6
        assert all_a_girth(pretzel(-2, -3, -7)) == 5
        assert all_a_girth(pretzel(-2, -2, -2)) == 4

    def test_pretzel_validation(self):
        with pytest.raises(ValueError):
            pretzel(-3, 0, -3)
        with pytest.raises(ValueError):
            pretzel()

    def test_pretzel_crossing_count(self):
        d = assign_signs(pretzel(-3, -3, -5))
        assert d.n == 11
        assert d.c_plus == 11

    def test_connected_sum_girth(self):
        p333 = pretzel(-3, -3, -3)
        lt = braid_closure([-1, -1, -1])
        assert all_a_girth(connected_sum(p333, lt)) == 3
        assert all_a_girth(connected_sum(p333, p333)) == 6

    def test_connected_sum_with_unknot(self):
        lt = braid_closure([-1, -1, -1])
        s = connected_sum(lt, unknot())
        assert s.n == lt.n
        assert all_a_girth(s) == 3
        assert connected_sum(unknot(), unknot()) == unknot()

    def test_connected_sum_graph_is_wedge(self):
        p333 = pretzel(-3, -3, -3)
        lt = braid_closure([-1, -1, -1])
        s = assign_signs(connected_sum(p333, lt))
        g = state_graph(s, all_positive_state(s))
        assert g.v == 8 + 3 - 1
        assert g.e == 9 + 3

    def test_add_kink(self):
        p333 = pretzel(-3, -3, -3)
        assert all_a_girth(add_kink(p333)) == 6
        assert all_a_girth(add_kink(p333, positive=False)) == 1
        k = add_kink(unknot())
        assert k.n == 1
        assert all_a_girth(add_kink(unknot(), positive=False)) == 1

    def test_add_kink_arc_validation(self):
        with pytest.raises(ValueError):
            add_kink(pretzel(-3, -3, -3), arc=99)
