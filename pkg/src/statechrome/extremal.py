"""Extremal Khovanov predictions and Jones coefficients from all-A graph data.

Everything here is driven by the all-A state graph G+ of a diagram: the
state-sum (unnormalized) Jones polynomial, the predicted corner of the
Khovanov table for girth > 2 (free ranks on two diagonals plus the Z2
torsion riding one knight move behind), the low-grading groups that survive
down to girth 2, closed forms for homological degrees 3/4/5, and the signed
head/tail coefficient runs of the normalized Jones polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chromatic import chromatic_polynomial, shift_to_q
from .chromhom import diagonal_ranks, rank_grading_45
from .diagram import (
    LinkDiagram,
    all_positive_state,
    assign_signs,
    n_grading,
    state_graph,
)
from .homology_core import BigradedTable
from .multigraph import GraphStats, census, girth, simplified_census
from .polynomials import LaurentPolynomial, binom

__all__ = [
    "jones_state_sum",
    "normalize_jones",
    "KhPrediction",
    "kh_extremal_prediction",
    "kh_low_gradings",
    "kh_grading_3",
    "kh_grading_45",
    "jones_tail",
    "jones_head",
    "dasbach_lin",
]

_Q_PLUS_QINV = LaurentPolynomial({1: 1, -1: 1})

# The state sum walks all 2^n smoothings; past this it is hopeless anyway.
_STATE_SUM_BUDGET = 20


def jones_state_sum(d: LinkDiagram) -> LaurentPolynomial:
    """Unnormalized Jones polynomial via the Kauffman state sum.

    Sums (-q)^{n_-(s)} (q+q^-1)^{|s|} over all 2^n smoothings and applies
    the writhe prefactor (-1)^{c_-} q^{c_+ - 2c_-}.  Exponential in the
    crossing number, hence the 20-crossing cap.
    """
    if not d.signs_assigned:
        d = assign_signs(d)
    n = d.n
    if n > _STATE_SUM_BUDGET:
        raise ValueError(f"{n} crossings exceed the state-sum budget of {_STATE_SUM_BUDGET}")
    shift = d.c_plus - 2 * d.c_minus
    c_minus = d.c_minus
    if n == 0:
        return LaurentPolynomial({1 + shift: 1, -1 + shift: 1})

    joins = [(x.a, x.b, x.c, x.d) for x in d.crossings]
    n_arcs = d.n_arcs
    # tally states by (number of B-smoothings, number of circles)
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        parent = list(range(n_arcs + 1))

        def root(u: int) -> int:
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for k, (a, b, c, cd) in enumerate(joins):
            if mask >> k & 1:
                pairs = ((a, cd), (b, c))
            else:
                pairs = ((a, b), (c, cd))
            for u, w in pairs:
                ru, rw = root(u), root(w)
                if ru != rw:
                    parent[ru] = rw
        size = sum(1 for u in range(1, n_arcs + 1) if parent[u] == u)
        nm = mask.bit_count()
        key = (nm, size)
        counts[key] = counts.get(key, 0) + 1

    acc: dict[int, int] = {}
    for (nm, size), mult in counts.items():
        sign = -1 if (nm + c_minus) % 2 else 1
        for k in range(size + 1):
            e = nm + size - 2 * k + shift
            acc[e] = acc.get(e, 0) + sign * mult * binom(size, k)
    return LaurentPolynomial(acc)


def normalize_jones(p: LaurentPolynomial) -> LaurentPolynomial:
    """Exact division by q + q^-1; a failure means p is not a link polynomial."""
    return p.exact_div(_Q_PLUS_QINV)


@dataclass(frozen=True)
class KhPrediction:
    """Predicted extremal corner of a Khovanov table.

    ``table`` carries predicted free ranks and Z2-torsion at homological
    degrees p = i - c_minus for 0 <= i < girth_used, on the two supported
    quantum diagonals.  ``torsion_only`` holds the single bidegree at
    i = girth_used where only the torsion rank is asserted; the free rank
    there is not determined by graph data alone.
    """

    table: BigradedTable
    torsion_only: dict[tuple[int, int], int]
    girth_used: int
    stats: GraphStats

    def to_json(self) -> dict:
        return {
            "table": self.table.to_json(),
            "torsion_only": [
                {"p": p, "q": q, "tor2": t}
                for (p, q), t in sorted(self.torsion_only.items())
            ],
            "girth_used": self.girth_used,
            "stats": self.stats.to_json(),
        }


def kh_extremal_prediction(d: LinkDiagram) -> KhPrediction:
    """Predict extremal Khovanov groups of d from the chromatic data of G+.

    Requires girth(G+) > 2.  The chromatic polynomial of G+ determines the
    free ranks at (i - c_minus, N + 2i) for 0 <= i < girth and on the
    knight-move partner diagonal two quantum degrees up; the Z2-torsion at
    each first-diagonal spot equals the second-diagonal rank there, and one
    torsion-only bidegree survives at i = girth.
    """
    if not d.signs_assigned:
        d = assign_signs(d)
    g = state_graph(d, all_positive_state(d))
    if len(g.components()) != 1:
        raise ValueError("all-A graph is disconnected; split diagrams are not supported")
    stats = census(g)
    ell = stats.girth
    if ell <= 2:
        raise ValueError(f"all-A graph has girth {ell}; prediction needs girth > 2")
    ranks = diagonal_ranks(shift_to_q(chromatic_polynomial(g)), g.v, stats.bipartite)
    c_minus = d.c_minus
    base = n_grading(d)
    out = BigradedTable()
    for i in range(ell):
        p = i - c_minus
        out.set(p, base + 2 * i, ranks.r[i], ranks.tau[i])
        out.set(p, base + 2 * i + 2, ranks.s[i], 0)
    torsion_only = {(ell - c_minus, base + 2 * ell): ranks.r[ell - 1]}
    return KhPrediction(out, torsion_only, ell, stats)


def kh_low_gradings(d: LinkDiagram) -> BigradedTable:
    """The first Khovanov groups at the all-A corner, girth-2 case included.

    Covers (-c_minus, N), (-c_minus, N+2), (1-c_minus, N+2), and for girth
    at least 3 also (2-c_minus, N+4).  p1 and t1 are read off the
    simplification of G+, which is where the girth-2 case differs from the
    plain census.
    """
    if not d.signs_assigned:
        d = assign_signs(d)
    g = state_graph(d, all_positive_state(d))
    ell = girth(g)
    if ell < 2:
        raise ValueError(f"all-A graph has girth {ell}; need girth >= 2")
    stats = simplified_census(g)
    delta = stats.bipartite
    p1 = stats.p1
    c_minus = d.c_minus
    base = n_grading(d)
    out = BigradedTable()
    out.set(-c_minus, base, 1, 0)
    out.set(-c_minus, base + 2, delta, 0)
    if delta:
        out.set(1 - c_minus, base + 2, p1, 0)
    else:
        out.set(1 - c_minus, base + 2, p1 - 1, 1)
    if ell >= 3:
        if delta:
            out.set(2 - c_minus, base + 4, binom(p1, 2), p1)
        else:
            out.set(2 - c_minus, base + 4, binom(p1, 2) - stats.t1 + 1, p1 - 1)
    return out


def kh_grading_3(d: LinkDiagram) -> int:
    """Free rank at (3 - c_minus, N + 6) for girth >= 4.

    Equals p1 + binom(p1+1, 3) - t2 - (1 - bipartite), with t2 the induced
    4-cycle count of G+.
    """
    if not d.signs_assigned:
        d = assign_signs(d)
    stats = census(state_graph(d, all_positive_state(d)))
    if stats.girth < 4:
        raise ValueError(f"all-A graph has girth {stats.girth}; need girth >= 4")
    return stats.p1 + binom(stats.p1 + 1, 3) - stats.t2 - (1 - stats.bipartite)


def kh_grading_45(d: LinkDiagram) -> tuple[int, int | None]:
    """Free ranks at (4 - c_minus, N + 8) and (5 - c_minus, N + 10).

    The first value needs girth >= 5, the second girth >= 6 (None when the
    girth is exactly 5).  Both come from exact chromatic coefficients, so
    no girth-driven closed form is re-derived here.
    """
    if not d.signs_assigned:
        d = assign_signs(d)
    g = state_graph(d, all_positive_state(d))
    ell = girth(g)
    if ell < 5:
        raise ValueError(f"all-A graph has girth {ell}; need girth >= 5")
    rank4, rank5 = rank_grading_45(g)
    return (rank4, rank5 if ell >= 6 else None)


def jones_tail(p1: int, ell: int, n_ell: int, c_minus: int) -> tuple[int, ...]:
    """First ell signed tail coefficients of J for a thin link.

    beta_i = (-1)^(i - c_minus) binom(p1 - 1 + i, i) for i < ell - 1; the
    last coefficient drops n_ell, the number of shortest cycles of G+.
    Inputs describe a diagram whose all-A graph has girth ell > 2.
    """
    if ell <= 2:
        raise ValueError("tail formula needs girth greater than 2")
    out = []
    for i in range(ell):
        mag = binom(p1 - 1 + i, i)
        if i == ell - 1:
            mag -= n_ell
        out.append(-mag if (i - c_minus) % 2 else mag)
    return tuple(out)


def jones_head(p1: int, ell: int, n_ell: int, c_plus: int) -> tuple[int, ...]:
    """First ell signed head coefficients of J, read from the top exponent down.

    Same formula as jones_tail with all-B graph data and c_plus carrying
    the sign: the head of J(D) is the tail of J(mirror D) up to that sign.
    """
    if ell <= 2:
        raise ValueError("head formula needs girth greater than 2")
    return jones_tail(p1, ell, n_ell, c_plus)


def dasbach_lin(stats: GraphStats) -> tuple[int, int, int]:
    """First three Jones coefficients, up to one overall sign.

    Takes the census of the simplified all-A graph of a reduced alternating
    diagram and returns (1, -p1, binom(p1+1, 2) + mu - t1).
    """
    p1 = stats.p1
    return (1, -p1, binom(p1 + 1, 2) + stats.mu - stats.t1)
