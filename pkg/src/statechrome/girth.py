"""Girth bounds for links from Jones and Khovanov data.

The all-A girth of any single diagram is a lower bound for the girth of the
link, and it is already exact once it reaches 3.  Upper bounds come from
three places: the binomial run in the Jones tail (M_J), the rank run along
the main diagonal of the Khovanov table (M_K), and the signature bound
2c / (c_- - sigma + 1).  This module also inverts the corner formulas to
recover all-A graph invariants from homological data, reconstructs the full
Khovanov table of a thin knot from (J, sigma), and bundles everything into a
per-link report with a consistency verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chromhom import rank_girth_formula
from .diagram import LinkDiagram, all_positive_state, assign_signs, state_graph
from .homology_core import BigradedTable
from .multigraph import girth as graph_girth
from .polynomials import LaurentPolynomial, binom

__all__ = [
    "mj_bound",
    "mk_bound",
    "signature_bound",
    "infer_graph_constraints",
    "infer_from_jones",
    "thin_khovanov_from_jones",
    "GirthReport",
    "girth_report",
]


def mj_bound(j: LaurentPolynomial) -> int:
    """Upper bound M_J on link girth from the normalized Jones tail.

    With b = |beta_1|, M_J is 2 more than the length of the longest prefix
    on which the coefficients alternate in sign and |beta_k| equals
    binom(b-1+k, k).  Thinness of the link is the caller's assertion.
    """
    if j.is_zero():
        raise ValueError("zero polynomial has no coefficient run")
    lo = j.min_exp
    span = j.max_exp - lo
    if span == 0:
        raise ValueError("constant polynomial has no coefficient run")
    beta = [j.coefficient(lo + 2 * k) for k in range(span // 2 + 1)]
    matched = 0
    if abs(beta[0]) == 1:
        b = abs(beta[1])
        for k in range(1, len(beta)):
            if abs(beta[k]) != binom(b - 1 + k, k):
                break
            if beta[k] * beta[k - 1] >= 0:
                break
            matched = k
    return matched + 2


def mk_bound(t: BigradedTable) -> int:
    """Upper bound M_K on link girth from a full Khovanov table.

    Walks the main diagonal up from the minimal (P, Q) corner and takes the
    (b, delta) pair whose predicted rank run matches the longest prefix;
    M_K is 2 more than that length.  The search covers every b that could
    fit the observed ranks, since the underlying bound holds "for some b".
    """
    if not t.entries:
        raise ValueError("empty table")
    corner_p = min(p for p, _ in t.entries)
    corner_q = min(q for _, q in t.entries)
    i_top = 0
    for (p, q) in t.entries:
        i = p - corner_p
        if i >= 1 and q == corner_q + 2 * i:
            i_top = max(i_top, i)
    diag = [t.rank(corner_p + i, corner_q + 2 * i) for i in range(1, i_top + 1)]
    best = 0
    for b in range(1, max(diag, default=0) + 3):
        for delta in (0, 1):
            matched = 0
            for i, actual in enumerate(diag, start=1):
                if actual != rank_girth_formula(b, i, 0, delta):
                    break
                matched = i
            best = max(best, matched)
    return best + 2


def signature_bound(c: int, c_minus: int, sigma: int) -> int:
    """floor(2c / (c_minus - sigma + 1)), an all-A girth bound from the signature.

    Applies to a reduced diagram with c > 0 crossings, c_minus of them
    negative, of a knot with signature sigma.
    """
    if c <= 0:
        raise ValueError("need a positive crossing count")
    den = c_minus - sigma + 1
    if den <= 0:
        raise ValueError("nonpositive denominator: the bound does not apply")
    return (2 * c) // den


def infer_graph_constraints(t: BigradedTable, ell: int) -> tuple[int, int, int]:
    """(bipartite, p1, n_ell) of the all-A graph, read off the Khovanov corner.

    For a diagram whose all-A graph has girth ell > 2: bipartiteness is the
    rank two quantum degrees above the corner, p1 comes from the next
    homological degree, and the shortest-cycle count from the rank at
    homological step ell - 1.
    """
    if ell <= 2:
        raise ValueError("inference needs girth greater than 2")
    if not t.entries:
        raise ValueError("empty table")
    corner_p = min(p for p, _ in t.entries)
    corner_q = min(q for _, q in t.entries)
    if t.rank(corner_p, corner_q) != 1:
        raise ValueError("corner group is not Z; table is missing gradings")
    if corner_p + ell - 1 > max(p for p, _ in t.entries):
        raise ValueError(f"table does not reach homological step {ell - 1}")
    delta = t.rank(corner_p, corner_q + 2)
    p1 = t.rank(corner_p + 1, corner_q + 2) - delta + 1
    acc = sum(binom(p1 - 2 + k, k) for k in range(ell - 1, -1, -2))
    sign = 1 if ell % 2 == 0 else -1
    n_ell = acc + sign * delta - t.rank(corner_p + ell - 1, corner_q + 2 * (ell - 1))
    return (delta, p1, n_ell)


def infer_from_jones(j: LaurentPolynomial, ell: int) -> tuple[int, int]:
    """(p1, n_ell) of the all-A graph from the tail of a thin link's Jones polynomial."""
    if ell <= 2:
        raise ValueError("inference needs girth greater than 2")
    if j.is_zero():
        raise ValueError("zero polynomial")
    lo = j.min_exp
    p1 = abs(j.coefficient(lo + 2))
    n_ell = binom(p1 - 1 + ell - 1, ell - 1) - abs(j.coefficient(lo + 2 * (ell - 1)))
    return (p1, n_ell)


def thin_khovanov_from_jones(j: LaurentPolynomial, sigma: int) -> BigradedTable:
    """Full Khovanov table of a thin knot from its Jones polynomial and signature.

    A thin table is supported on the diagonals q - 2p = -sigma -+ 1 and
    decomposes into knight-move pairs plus one exceptional pair in
    homological degree zero, so the signed coefficient run of J fixes every
    free rank and every Z2-torsion group.  Raises ValueError when no thin
    table exists for this (J, sigma) pair.
    """
    if j.is_zero():
        raise ValueError("zero polynomial")
    rho: dict[int, int] = {}
    for e, c in j.terms():
        if (e + sigma) % 2:
            raise ValueError("exponent parity is incompatible with the signature")
        i = (e + sigma) // 2
        value = c if i % 2 == 0 else -c
        if value < 0:
            raise ValueError(f"coefficient sign at q^{e} rules out a thin table")
        rho[i] = value
    lo = min(min(rho), 0)
    hi = max(max(rho), 0)
    pairs: dict[int, int] = {}
    prev = 0
    for i in range(lo, hi + 1):
        k = rho.get(i, 0) - prev - (1 if i == 0 else 0)
        if k < 0:
            raise ValueError(f"knight-move pairing fails at homological degree {i}")
        pairs[i] = k
        prev = k
    if prev != 0:
        raise ValueError("knight-move pairing does not close at the top")
    out = BigradedTable()
    for i in range(lo, hi + 1):
        exceptional = 1 if i == 0 else 0
        out.set(i, 2 * i - sigma - 1, pairs[i] + exceptional, pairs.get(i - 1, 0))
        out.set(i, 2 * i - sigma + 1, pairs.get(i - 1, 0) + exceptional, 0)
    return out


@dataclass(frozen=True)
class GirthReport:
    """Everything known about the girth of one link, with a consistency verdict."""

    lower: int
    exact: int | None
    upper_mj: int | None
    upper_mk: int | None
    upper_sig: int | None
    constraints: dict | None
    inconsistent: bool

    def to_json(self) -> dict:
        out: dict = {"lower": self.lower, "inconsistent": self.inconsistent}
        for key in ("exact", "upper_mj", "upper_mk", "upper_sig", "constraints"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def girth_report(
    diagrams: Iterable[LinkDiagram],
    jones: LaurentPolynomial | None = None,
    kh: BigradedTable | None = None,
    sigma: int | None = None,
) -> GirthReport:
    """Combine diagram girths with Jones/Khovanov/signature bounds for one link.

    lower is the best all-A girth over the supplied diagrams and is exact
    once it reaches 3.  All diagrams with all-A girth >= 3 must agree on
    it; a violation marks the report inconsistent (the diagrams cannot
    describe one link), as does any upper bound below the lower bound.
    """
    ells = []
    sig_bounds = []
    for d in diagrams:
        if not d.signs_assigned:
            d = assign_signs(d)
        ell = graph_girth(state_graph(d, all_positive_state(d)))
        ells.append(ell)
        if sigma is not None and ell >= 3:
            try:
                sig_bounds.append(signature_bound(d.n, d.c_minus, sigma))
            except ValueError:
                pass
    if not ells:
        raise ValueError("at least one diagram is required")
    lower = max(ells)
    inconsistent = len({e for e in ells if e >= 3}) > 1

    upper_mj = upper_mk = None
    if jones is not None:
        try:
            upper_mj = mj_bound(jones)
        except ValueError:
            pass
    if kh is not None:
        try:
            upper_mk = mk_bound(kh)
        except ValueError:
            pass
    upper_sig = min(sig_bounds) if sig_bounds else None
    uppers = [u for u in (upper_mj, upper_mk, upper_sig) if u is not None]
    if any(lower > u for u in uppers):
        inconsistent = True

    exact = None
    if not inconsistent and (lower >= 3 or lower in uppers):
        exact = lower

    constraints = None
    if exact is not None and exact >= 3:
        if kh is not None:
            delta, p1, n_ell = infer_graph_constraints(kh, exact)
            constraints = {"bipartite": delta, "p1": p1, "n_ell": n_ell}
        elif jones is not None:
            p1, n_ell = infer_from_jones(jones, exact)
            constraints = {"p1": p1, "n_ell": n_ell}
    return GirthReport(lower, exact, upper_mj, upper_mk, upper_sig, constraints, inconsistent)
