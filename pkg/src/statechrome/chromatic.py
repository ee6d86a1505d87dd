"""Chromatic polynomials, exactly, plus the closed-form coefficient formulas.

Two independent routes to the chromatic polynomial:

* ``chromatic_polynomial`` -- deletion-contraction with pendant peeling,
  canonical-form memoization, and an optional persistent cache directory.
* ``brute_force_chromatic`` -- exhaustive oracle: enumerate partitions of the
  vertex set into independent classes, evaluate coloring counts at
  lambda = 0..v, and Lagrange-interpolate with exact rationals.

The closed forms (``meredith_coeffs``, ``farrell_coeffs``,
``a_coeff_closed``) give the leading coefficients straight from cycle and
clique statistics; the test suite pins them against both routes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

from .multigraph import Multigraph, canonical_code, cyclomatic, simplify
from .polynomials import IntPolynomial, binom

__all__ = [
    "QShiftedCoefficients",
    "chromatic_polynomial",
    "brute_force_chromatic",
    "shift_to_q",
    "meredith_coeffs",
    "farrell_coeffs",
    "a_coeff_closed",
]


@dataclass(frozen=True)
class QShiftedCoefficients:
    """Coefficients of P_G(q+1), highest power first: a[i] is a_{v-i}."""

    a: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.a) - 1

    def codegree(self, i: int) -> int:
        """The coefficient a_{v-i}; zero outside the stored range."""
        if 0 <= i < len(self.a):
            return self.a[i]
        return 0

    def to_json(self) -> list[str]:
        return [str(c) for c in self.a]


# -- deletion-contraction route ------------------------------------------------


def _cache_path(cache_dir: str, code: str) -> str:
    digest = hashlib.sha256(code.encode("ascii")).hexdigest()
    return os.path.join(cache_dir, digest + ".json")


def _cache_read(cache_dir: str, code: str) -> IntPolynomial | None:
    path = _cache_path(cache_dir, code)
    try:
        with open(path, "r", encoding="ascii") as fh:
            payload = json.load(fh)
    except (OSError, ValueError):
        return None
    if payload.get("code") != code:
        return None
    return IntPolynomial.from_json(payload["coeffs"])


def _cache_write(cache_dir: str, code: str, poly: IntPolynomial) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    payload = {"code": code, "coeffs": poly.to_json()}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            json.dump(payload, fh)
        os.replace(tmp, _cache_path(cache_dir, code))
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def _shortest_cycle_edge(g: Multigraph) -> tuple[int, int] | None:
    """An edge lying on a shortest cycle of a simple graph, or None (forest)."""
    from collections import deque

    adj = g.adjacency()
    best_len = None
    best_edge = None
    for a, b in set(g.edges):
        dist = {a: 0}
        queue = deque([a])
        skipped = False
        while queue and b not in dist:
            u = queue.popleft()
            for w in adj[u]:
                if u == a and w == b and not skipped:
                    skipped = True
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if b in dist and (best_len is None or dist[b] + 1 < best_len):
            best_len = dist[b] + 1
            best_edge = (a, b)
    return best_edge


def _complete_graph_poly(v: int) -> IntPolynomial:
    poly = IntPolynomial.one()
    for k in range(v):
        poly = poly * IntPolynomial((-k, 1))
    return poly


def _core_poly(g: Multigraph, memo: dict[str, IntPolynomial],
               cache_dir: str | None) -> IntPolynomial:
    """Chromatic polynomial of a connected simple graph with min degree >= 2."""
    code = canonical_code(g)
    hit = memo.get(code)
    if hit is not None:
        return hit
    if cache_dir is not None:
        cached = _cache_read(cache_dir, code)
        if cached is not None:
            memo[code] = cached
            return cached

    nonedges = binom(g.v, 2) - g.e
    if nonedges == 0:
        poly = _complete_graph_poly(g.v)
    elif nonedges <= cyclomatic(g):
        # dense: add-and-contract toward the complete graph
        adj = g.adjacency()
        pair = next(
            (u, w)
            for u in range(g.v)
            for w in range(u + 1, g.v)
            if w not in adj[u]
        )
        added = Multigraph(g.v, list(g.edges) + [pair])
        contracted, _ = simplify(added.contract_edge(*pair))
        poly = _peel(added, memo, cache_dir) + _peel(contracted, memo, cache_dir)
    else:
        edge = _shortest_cycle_edge(g)
        assert edge is not None  # min degree >= 2 guarantees a cycle
        deleted = g.delete_edge(*edge)
        contracted, _ = simplify(g.contract_edge(*edge))
        poly = _peel(deleted, memo, cache_dir) - _peel(contracted, memo, cache_dir)

    memo[code] = poly
    if cache_dir is not None:
        _cache_write(cache_dir, code, poly)
    return poly


def _peel(g: Multigraph, memo: dict[str, IntPolynomial],
          cache_dir: str | None) -> IntPolynomial:
    """Strip isolated and pendant vertices in closed form, then split cores."""
    lam = IntPolynomial.variable()
    lam_minus_1 = IntPolynomial((-1, 1))
    factor = IntPolynomial.one()

    keep = list(range(g.v))
    edges = list(g.edges)
    while True:
        deg: dict[int, int] = {u: 0 for u in keep}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        drop_iso = [u for u in keep if deg[u] == 0]
        if drop_iso:
            factor = factor * lam ** len(drop_iso)
            gone = set(drop_iso)
            keep = [u for u in keep if u not in gone]
            continue
        # peel one pendant at a time: two adjacent pendants form a bare
        # edge, whose second endpoint must be handled as isolated
        pendant = next((u for u in keep if deg[u] == 1), None)
        if pendant is None:
            break
        factor = factor * lam_minus_1
        keep = [u for u in keep if u != pendant]
        edges = [e for e in edges if e[0] != pendant and e[1] != pendant]

    if not keep:
        return factor

    index = {u: i for i, u in enumerate(keep)}
    core = Multigraph(len(keep), [(index[a], index[b]) for a, b in edges])
    poly = factor
    for comp in core.components():
        poly = poly * _core_poly(core.induced_subgraph(comp), memo, cache_dir)
    return poly


def chromatic_polynomial(g: Multigraph, cache_dir: str | None = None) -> IntPolynomial:
    """Exact chromatic polynomial; the zero polynomial when g has a loop.

    Deletion-contraction with simplification at every step.  Subproblem
    results are memoized under a canonical isomorphism code, optionally
    persisted to ``cache_dir`` as content-addressed JSON files.
    """
    if g.loop_count():
        return IntPolynomial.zero()
    simple, _ = simplify(g)
    memo: dict[str, IntPolynomial] = {}
    return _peel(simple, memo, cache_dir)


# -- exhaustive oracle route ----------------------------------------------------


def brute_force_chromatic(g: Multigraph) -> IntPolynomial:
    """Oracle chromatic polynomial by exhaustive assignment, v <= 12.

    Counts proper colorings at lambda = 0..v by enumerating every partition of
    the vertices into independent classes, then Lagrange-interpolates the
    counts with exact rationals.  A non-integer interpolated coefficient
    raises ValueError (it would signal a counting bug).
    """
    if g.v > 12:
        raise ValueError("brute-force oracle is limited to v <= 12")

    # S[k] = number of partitions of V into exactly k independent classes
    partitions_by_size: dict[int, int] = {}
    if g.loop_count() == 0:
        adj = {u: set(nb) for u, nb in g.adjacency().items()}
        classes: list[set[int]] = []

        def place(u: int) -> None:
            if u == g.v:
                k = len(classes)
                partitions_by_size[k] = partitions_by_size.get(k, 0) + 1
                return
            for cls in classes:
                if not (adj[u] & cls):
                    cls.add(u)
                    place(u + 1)
                    cls.remove(u)
            classes.append({u})
            place(u + 1)
            classes.pop()

        place(0)

    def count(lam: int) -> int:
        total = 0
        for k, s in partitions_by_size.items():
            falling = 1
            for j in range(k):
                falling *= lam - j
            total += s * falling
        return total

    points = [(lam, count(lam)) for lam in range(g.v + 1)]
    coeffs = _lagrange_integer(points)
    return IntPolynomial(coeffs)


def _lagrange_integer(points: list[tuple[int, int]]) -> list[int]:
    """Interpolate exact points; ValueError if any coefficient is non-integer."""
    n = len(points)
    acc = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        # numerator polynomial prod_{m != j} (x - x_m), coefficients low-first
        num = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            nxt = [Fraction(0)] * (len(num) + 1)
            for i, c in enumerate(num):
                nxt[i] += c * (-xm)
                nxt[i + 1] += c
            num = nxt
            denom *= xj - xm
        scale = Fraction(yj) / denom
        for i, c in enumerate(num):
            acc[i] += c * scale
    out = []
    for c in acc:
        if c.denominator != 1:
            raise ValueError("interpolation produced a non-integer coefficient")
        out.append(int(c))
    return out


# -- variable shift and closed forms --------------------------------------------


def shift_to_q(p: IntPolynomial) -> QShiftedCoefficients:
    """Coefficients of p(q+1), highest power first."""
    shifted = p.shift_argument(1)
    d = shifted.degree
    if d < 0:
        return QShiftedCoefficients(())
    return QShiftedCoefficients(tuple(shifted.coefficient(d - i) for i in range(d + 1)))


def meredith_coeffs(v: int, e: int, ell: int, n_ell: int) -> tuple[int, ...]:
    """First ell chromatic coefficients of a girth-ell graph, highest first.

    c_{v-i} = (-1)^i binom(E, i) for 0 <= i < ell-1, and the (ell-1)-st picks
    up the shortest-cycle correction -(-1)^ell (binom(E, ell-1) - n_ell).
    """
    if ell <= 2:
        raise ValueError("coefficient formula requires girth > 2")
    out = [(-1) ** i * binom(e, i) for i in range(ell - 1)]
    out.append((-1) ** (ell - 1) * (binom(e, ell - 1) - n_ell))
    return tuple(out)


def farrell_coeffs(v: int, e: int, t1: int, t2: int, t3: int) -> tuple[int, int, int, int]:
    """First four chromatic coefficients of a simple graph, highest first."""
    return (
        1,
        -e,
        binom(e, 2) - t1,
        -binom(e, 3) + (e - 2) * t1 + t2 - 2 * t3,
    )


def a_coeff_closed(p1: int, i: int, n_next: int) -> int:
    """Closed form for the shifted coefficient a_{v-i} on a girth > 2 graph.

    a_{v-i} = (-1)^i (binom(p1 - 2 + i, i) - n_{i+1}), with the falling-
    factorial binomial so that p1 = 1 and p1 = 0 degenerate correctly.
    Valid for 0 < i <= girth - 1 (where n_{i+1} counts (i+1)-cycles).
    """
    return (-1) ** i * (binom(p1 - 2 + i, i) - n_next)
