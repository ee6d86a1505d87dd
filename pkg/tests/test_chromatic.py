"""Chromatic polynomial routes and the closed-form coefficient formulas."""

import random

import pytest

from statechrome.chromatic import (
    QShiftedCoefficients,
    a_coeff_closed,
    brute_force_chromatic,
    chromatic_polynomial,
    farrell_coeffs,
    meredith_coeffs,
    shift_to_q,
)
from statechrome.multigraph import Multigraph, census
from statechrome.polynomials import IntPolynomial

THETA_335 = Multigraph(
    10,
    [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 8), (8, 9), (9, 1)],
)


def cycle_graph(k):
    return Multigraph(k, [(i, (i + 1) % k) for i in range(k)])


def random_simple_connected(rng, v_max=7, extra_max=4):
    v = rng.randint(2, v_max)
    tree = {tuple(sorted((i, rng.randrange(i)))) for i in range(1, v)}
    pool = [(a, b) for a in range(v) for b in range(a + 1, v) if (a, b) not in tree]
    extra = rng.sample(pool, min(len(pool), rng.randint(0, extra_max)))
    return Multigraph(v, sorted(tree | set(extra)))


class TestChromaticPolynomial:
    def test_known_polynomials(self):
        # P(K1) = x, P(path) = x(x-1)^(k-1), P(C_k) = (x-1)^k + (-1)^k (x-1)
        x = IntPolynomial.variable()
        assert chromatic_polynomial(Multigraph(1)) == x
        assert chromatic_polynomial(Multigraph(3, [(0, 1), (1, 2)])) == x * (x - 1) ** 2
        for k in range(3, 8):
            want = (x - 1) ** k + (-1) ** k * (x - 1)
            assert chromatic_polynomial(cycle_graph(k)) == want

    def test_loop_kills_colorings(self):
        assert chromatic_polynomial(Multigraph(2, [(0, 1), (1, 1)])).is_zero()

    def test_parallel_edges_collapse(self):
        single = chromatic_polynomial(Multigraph(2, [(0, 1)]))
        double = chromatic_polynomial(Multigraph(2, [(0, 1), (0, 1)]))
        assert single == double

    def test_disconnected_product(self):
        g = Multigraph(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
        tri = chromatic_polynomial(cycle_graph(3))
        edge = chromatic_polynomial(Multigraph(2, [(0, 1)]))
        assert chromatic_polynomial(g) == tri * edge

    def test_matches_bruteforce_on_random_graphs(self):
        rng = random.Random(606)
        for _ in range(60):
            g = random_simple_connected(rng)
            assert chromatic_polynomial(g) == brute_force_chromatic(g), g

    def test_cache_round_trip(self, tmp_path):
        cache = str(tmp_path)
        first = chromatic_polynomial(THETA_335, cache_dir=cache)
        second = chromatic_polynomial(THETA_335, cache_dir=cache)
        assert first == second == chromatic_polynomial(THETA_335)
        relabeled = Multigraph(
            10, [(9 - a, 9 - b) for a, b in THETA_335.edges]
        )
        assert chromatic_polynomial(relabeled, cache_dir=cache) == first

    def test_bruteforce_guard(self):
        with pytest.raises(ValueError):
            brute_force_chromatic(Multigraph(13))


class TestShiftToQ:
    def test_triangle(self):
        # P(C3) = x^3 - 3x^2 + 2x, so P(q+1) = q^3 - q
        shifted = shift_to_q(chromatic_polynomial(cycle_graph(3)))
        assert shifted.a == (1, 0, -1, 0)
        assert shifted.v == 3
        assert shifted.codegree(2) == -1
        assert shifted.codegree(9) == 0

    def test_zero_polynomial(self):
        assert shift_to_q(IntPolynomial()).a == ()

    def test_evaluation_identity(self):
        rng = random.Random(41)
        for _ in range(20):
            g = random_simple_connected(rng)
            p = chromatic_polynomial(g)
            shifted = shift_to_q(p)
            for q in range(-2, 3):
                value = sum(c * q ** (shifted.v - i) for i, c in enumerate(shifted.a))
                assert value == p(q + 1)


class TestCoefficientFormulas:
    def test_meredith_on_theta(self):
        stats = census(THETA_335)
        p = chromatic_polynomial(THETA_335)
        want = meredith_coeffs(stats.v, stats.e, stats.girth, stats.n_k[stats.girth])
        got = tuple(p.coefficient(stats.v - i) for i in range(stats.girth))
        assert got == want == (1, -11, 55, -165, 330, -461)

    def test_meredith_on_random_girthy_graphs(self):
        rng = random.Random(8080)
        seen = 0
        while seen < 25:
            g = random_simple_connected(rng, v_max=8, extra_max=3)
            stats = census(g)
            if stats.girth <= 2:
                continue
            seen += 1
            p = chromatic_polynomial(g)
            want = meredith_coeffs(stats.v, stats.e, stats.girth, stats.n_k[stats.girth])
            got = tuple(p.coefficient(stats.v - i) for i in range(stats.girth))
            assert got == want, g

    def test_meredith_girth_gate(self):
        with pytest.raises(ValueError):
            meredith_coeffs(4, 5, 2, 1)

    def test_farrell_on_random_graphs(self):
        rng = random.Random(9090)
        for _ in range(40):
            g = random_simple_connected(rng, v_max=8)
            if g.v < 4:
                continue
            stats = census(g)
            p = chromatic_polynomial(g)
            got = tuple(p.coefficient(g.v - i) for i in range(4))
            assert got == farrell_coeffs(stats.v, stats.e, stats.t1, stats.t2, stats.t3), g

    def test_shifted_coefficient_closed_form(self):
        rng = random.Random(321)
        seen = 0
        while seen < 25:
            g = random_simple_connected(rng, v_max=8, extra_max=3)
            stats = census(g)
            if stats.girth <= 2:
                continue
            seen += 1
            shifted = shift_to_q(chromatic_polynomial(g))
            p1 = stats.p1
            for i in range(1, stats.girth):
                n_next = stats.n_k.get(i + 1, 0)
                assert shifted.codegree(i) == a_coeff_closed(p1, i, n_next), (g, i)

    def test_closed_form_on_single_cycles(self):
        # p1 = 1: everything vanishes until the cycle itself appears
        for k in range(3, 8):
            shifted = shift_to_q(chromatic_polynomial(cycle_graph(k)))
            for i in range(1, k - 1):
                assert a_coeff_closed(1, i, 0) == shifted.codegree(i) == 0
            assert a_coeff_closed(1, k - 1, 1) == shifted.codegree(k - 1) == (-1) ** k
