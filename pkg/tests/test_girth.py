"""Girth bounds, graph-data inference, and thin-table reconstruction."""

import functools
import importlib.resources
import json

import pytest

from statechrome.diagram import (
    add_kink,
    all_positive_state,
    assign_signs,
    braid_closure,
    connected_sum,
    mirror,
    parse_pd,
    pretzel,
    sign_flip,
    state_graph,
    unknot,
)
from statechrome.extremal import jones_state_sum, normalize_jones
from statechrome.girth import (
    girth_report,
    infer_from_jones,
    infer_graph_constraints,
    mj_bound,
    mk_bound,
    signature_bound,
    thin_khovanov_from_jones,
)
from statechrome.homology_core import (
    BigradedTable,
    euler_characteristic,
    khovanov_homology,
)
from statechrome.multigraph import census, girth as graph_girth
from statechrome.polynomials import LaurentPolynomial

LEFT_TREFOIL = braid_closure([-1, -1, -1])
RIGHT_TREFOIL = mirror(LEFT_TREFOIL)
FIG8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
P333 = pretzel(-3, -3, -3)
P335_FLIPPED = sign_flip(pretzel(-3, -3, -5))
TORUS_2_5 = braid_closure([-1] * 5)
GRANNY = braid_closure([-1, -1, -1, -2, -2, -2])


def jones(d):
    return normalize_jones(jones_state_sum(d))


def all_a_girth(d):
    d = assign_signs(d)
    return graph_girth(state_graph(d, all_positive_state(d)))


@functools.lru_cache(maxsize=None)
def stored_12n821():
    raw = json.loads(
        importlib.resources.files("statechrome.data").joinpath("jones_12n821.json").read_text()
    )
    return LaurentPolynomial({t["exp"]: t["coeff"] for t in raw["jones"]}), raw["sigma"]


@functools.lru_cache(maxsize=None)
def kh_11a362():
    return khovanov_homology(P335_FLIPPED)


class TestMjBound:
    def test_stored_twelve_crossing_knot(self):
        j, _ = stored_12n821()
        assert mj_bound(j) == 6

    def test_girth_six_pretzels(self):
        assert mj_bound(jones(P335_FLIPPED)) == 6
        assert mj_bound(jones(P333)) == 6

    def test_small_knots(self):
        assert mj_bound(jones(LEFT_TREFOIL)) == 3
        assert mj_bound(jones(TORUS_2_5)) == 5
        assert mj_bound(jones(GRANNY)) == 3

    def test_degenerate_second_coefficient(self):
        # a vanishing beta_1 never alternates, so no prefix is matched
        assert mj_bound(jones(RIGHT_TREFOIL)) == 2
        assert mj_bound(LaurentPolynomial({0: 1, 4: 1})) == 2

    def test_non_alternating_tail(self):
        assert mj_bound(LaurentPolynomial({0: 1, 2: 2, 4: 3})) == 2

    def test_figure_eight_all_ones_run(self):
        assert mj_bound(jones(FIG8)) == 6

    def test_rejects_constants(self):
        with pytest.raises(ValueError):
            mj_bound(LaurentPolynomial())
        with pytest.raises(ValueError):
            mj_bound(LaurentPolynomial({0: 1}))


class TestMkBound:
    def test_full_homology_of_girth_six_pretzel(self):
        assert mk_bound(kh_11a362()) == 6

    def test_stored_twelve_crossing_knot(self):
        j, sigma = stored_12n821()
        assert mk_bound(thin_khovanov_from_jones(j, sigma)) == 6

    def test_small_knots(self):
        assert mk_bound(khovanov_homology(LEFT_TREFOIL)) == 3
        assert mk_bound(khovanov_homology(RIGHT_TREFOIL)) == 5
        assert mk_bound(khovanov_homology(TORUS_2_5)) == 5
        assert mk_bound(khovanov_homology(FIG8)) == 4

    def test_unknot(self):
        assert mk_bound(khovanov_homology(unknot())) == 2

    def test_empty_table(self):
        with pytest.raises(ValueError):
            mk_bound(BigradedTable())


class TestSignatureBound:
    def test_values(self):
        assert signature_bound(9, 0, -2) == 6
        assert signature_bound(11, 0, -2) == 7
        assert signature_bound(3, 3, 2) == 3
        assert signature_bound(5, 5, 4) == 5
        assert signature_bound(4, 2, 0) == 2

    def test_never_below_the_all_a_girth(self):
        for d, sigma in (
            (P333, -2),
            (pretzel(-3, -3, -5), -2),
            (LEFT_TREFOIL, 2),
            (TORUS_2_5, 4),
            (GRANNY, 4),
        ):
            d = assign_signs(d)
            assert signature_bound(d.n, d.c_minus, sigma) >= all_a_girth(d)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            signature_bound(0, 0, 0)
        with pytest.raises(ValueError):
            signature_bound(3, 0, 4)


class TestInferConstraints:
    def test_girth_six_pretzel(self):
        assert infer_graph_constraints(kh_11a362(), 6) == (1, 2, 1)
        assert infer_from_jones(jones(P335_FLIPPED), 6) == (2, 1)

    def test_matches_graph_census(self):
        for d in (
            P333,
            pretzel(-2, -3, -3),
            braid_closure([-1] * 4),
            TORUS_2_5,
            braid_closure([-1] * 6),
            GRANNY,
        ):
            d = assign_signs(d)
            stats = census(state_graph(d, all_positive_state(d)))
            ell = stats.girth
            want = (stats.bipartite, stats.p1, stats.n_k[ell])
            assert infer_graph_constraints(khovanov_homology(d), ell) == want
            assert infer_from_jones(jones(d), ell) == want[1:]

    def test_girth_gate(self):
        with pytest.raises(ValueError):
            infer_graph_constraints(khovanov_homology(LEFT_TREFOIL), 2)
        with pytest.raises(ValueError):
            infer_from_jones(jones(LEFT_TREFOIL), 2)

    def test_table_too_short(self):
        with pytest.raises(ValueError):
            infer_graph_constraints(khovanov_homology(RIGHT_TREFOIL), 6)

    def test_corner_must_be_free_of_rank_one(self):
        t = BigradedTable()
        t.set(0, 0, 2)
        t.set(5, 10, 1)
        with pytest.raises(ValueError):
            infer_graph_constraints(t, 3)


class TestThinReconstruction:
    def test_round_trips(self):
        for d, sigma in (
            (LEFT_TREFOIL, 2),
            (RIGHT_TREFOIL, -2),
            (FIG8, 0),
            (TORUS_2_5, 4),
        ):
            assert thin_khovanov_from_jones(jones(d), sigma) == khovanov_homology(d)

    def test_stored_twelve_crossing_knot(self):
        j, sigma = stored_12n821()
        t = thin_khovanov_from_jones(j, sigma)
        assert min(t.entries) == (-6, -11)
        assert len(t.entries) == 21
        assert euler_characteristic(t) == j * LaurentPolynomial({1: 1, -1: 1})

    def test_wrong_signature_changes_the_bound(self):
        # the mirror placement is also feasible but overshoots by one
        j, _ = stored_12n821()
        assert mk_bound(thin_khovanov_from_jones(j, 2)) == 7

    def test_infeasible_signatures(self):
        j, _ = stored_12n821()
        with pytest.raises(ValueError):
            thin_khovanov_from_jones(j, 0)
        with pytest.raises(ValueError):
            thin_khovanov_from_jones(j, 1)

    def test_flipped_grading_rejected(self):
        # the formal sign flip moves the exceptional pair away from degree
        # zero, which is not a thin knot placement
        with pytest.raises(ValueError):
            thin_khovanov_from_jones(jones(P335_FLIPPED), 9)

    def test_eleven_crossing_round_trip(self):
        d = pretzel(-3, -3, -5)
        assert thin_khovanov_from_jones(jones(d), -2) == khovanov_homology(d)

    def test_leftover_pair_rejected(self):
        with pytest.raises(ValueError):
            thin_khovanov_from_jones(LaurentPolynomial({0: 1, 2: -1}), 0)


class TestGirthReport:
    def test_girth_six_pretzel_full(self):
        r = girth_report([P333], jones=jones(P333), kh=khovanov_homology(P333), sigma=-2)
        assert r.to_json() == {
            "lower": 6,
            "inconsistent": False,
            "exact": 6,
            "upper_mj": 6,
            "upper_mk": 6,
            "upper_sig": 6,
            "constraints": {"bipartite": 1, "p1": 2, "n_ell": 3},
        }

    def test_jones_only_constraints(self):
        r = girth_report([P333], jones=jones(P333))
        assert r.exact == 6
        assert r.constraints == {"p1": 2, "n_ell": 3}

    def test_girth_two_squeeze(self):
        r = girth_report([RIGHT_TREFOIL], jones=jones(RIGHT_TREFOIL))
        assert (r.lower, r.exact, r.upper_mj) == (2, 2, 2)
        assert not r.inconsistent

    def test_no_squeeze_leaves_exact_open(self):
        r = girth_report([FIG8], kh=khovanov_homology(FIG8))
        assert r.to_json() == {"lower": 2, "inconsistent": False, "upper_mk": 4}

    def test_disagreeing_diagrams(self):
        assert girth_report([P333, GRANNY]).inconsistent
        assert girth_report([P333, pretzel(-2, -3, -7)]).inconsistent

    def test_bound_below_lower_bound(self):
        r = girth_report([P333], jones=jones(RIGHT_TREFOIL))
        assert r.inconsistent
        assert r.exact is None
        assert r.upper_mj == 2

    def test_kinked_diagram_does_not_vote(self):
        r = girth_report([P333, add_kink(add_kink(P333, positive=False))])
        assert (r.lower, r.exact, r.inconsistent) == (6, 6, False)

    def test_full_consistency_on_a_real_knot(self):
        r = girth_report([GRANNY], jones=jones(GRANNY), kh=khovanov_homology(GRANNY), sigma=4)
        assert r.to_json() == {
            "lower": 3,
            "inconsistent": False,
            "exact": 3,
            "upper_mj": 3,
            "upper_mk": 4,
            "upper_sig": 4,
            "constraints": {"bipartite": 0, "p1": 2, "n_ell": 2},
        }

    def test_needs_a_diagram(self):
        with pytest.raises(ValueError):
            girth_report([])


class TestBoundLaws:
    def test_girth_never_exceeds_either_bound(self):
        for d in (LEFT_TREFOIL, RIGHT_TREFOIL, FIG8, P333, TORUS_2_5, GRANNY,
                  pretzel(-2, -3, -3)):
            gr = all_a_girth(d)
            assert gr <= mj_bound(jones(d))
            assert gr <= mk_bound(khovanov_homology(d))

    def test_jones_bound_at_most_homology_bound(self):
        for d in (LEFT_TREFOIL, RIGHT_TREFOIL, P333, TORUS_2_5, GRANNY,
                  pretzel(-2, -3, -3)):
            assert mj_bound(jones(d)) <= mk_bound(khovanov_homology(d))

    def test_figure_eight_bounds_are_incomparable(self):
        """The two upper bounds need not be ordered: an all-ones coefficient
        run matches the width-one binomial pattern across the whole span even
        though the rank run above the corner stops matching after two steps."""
        assert mj_bound(jones(FIG8)) == 6
        assert mk_bound(khovanov_homology(FIG8)) == 4

    def test_connected_sum_takes_the_smaller_girth(self):
        for d1, d2, want in (
            (P333, LEFT_TREFOIL, 3),
            (P333, P333, 6),
            (FIG8, P333, 2),
        ):
            assert all_a_girth(connected_sum(d1, d2)) == want
            assert all_a_girth(connected_sum(d2, d1)) == want

    def test_pretzel_girth_law(self):
        for params in ((-3, -3, -3), (-3, -3, -5), (-2, -3, -7), (-2, -2, -3),
                       (-2, -3), (-5, -5, -5, -5)):
            sizes = sorted(-a for a in params)
            assert all_a_girth(pretzel(*params)) == sizes[0] + sizes[1]

    def test_girth_at_most_homological_span_plus_one(self):
        for d in (LEFT_TREFOIL, P333, TORUS_2_5, GRANNY):
            t = khovanov_homology(d)
            ps = [p for p, _ in t.entries]
            assert all_a_girth(d) <= max(ps) - min(ps) + 1
