"""Multigraphs and the graph invariants the rank formulas consume.

A ``Multigraph`` is an immutable graph on vertices 0..v-1 whose edge list is
a multiset of unordered pairs; loops and parallel edges are allowed.  All-A
state graphs of link diagrams land here, as do the random graphs used to
stress the chromatic-polynomial code.

The ``census`` operation bundles every invariant used downstream: girth,
cyclomatic number, bipartiteness, cycle counts by length, triangle / induced
4-cycle / K4 counts on the simplification, and the collapsed-multiedge
count mu.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable, Sequence

from .polynomials import binom

__all__ = [
    "Multigraph",
    "GraphStats",
    "girth",
    "cyclomatic",
    "is_bipartite",
    "count_cycles",
    "census",
    "simplify",
    "simplified_census",
    "wedge",
    "canonical_code",
]


class Multigraph:
    """Immutable multigraph on vertices 0..v-1 with loops and parallel edges."""

    __slots__ = ("_v", "_edges")

    def __init__(self, v: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if v < 0:
            raise ValueError("vertex count must be >= 0")
        normalized = []
        for a, b in edges:
            a, b = int(a), int(b)
            if not (0 <= a < v and 0 <= b < v):
                raise ValueError(f"edge ({a},{b}) has endpoint outside 0..{v - 1}")
            normalized.append((a, b) if a <= b else (b, a))
        normalized.sort()
        self._v = v
        self._edges = tuple(normalized)

    # -- basic structure --------------------------------------------------

    @property
    def v(self) -> int:
        return self._v

    @property
    def e(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._v == other._v and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._v, self._edges))

    def __repr__(self) -> str:
        return f"Multigraph({self._v}, {list(self._edges)!r})"

    def loop_count(self) -> int:
        return sum(1 for a, b in self._edges if a == b)

    def multiplicity(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        return sum(1 for e in self._edges if e == key)

    def adjacency(self) -> dict[int, dict[int, int]]:
        """Neighbor multiplicity maps, loops excluded."""
        adj: dict[int, dict[int, int]] = {u: {} for u in range(self._v)}
        for a, b in self._edges:
            if a == b:
                continue
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1
        return adj

    def degree(self, u: int) -> int:
        """Edge-end count at u; a loop contributes 2."""
        d = 0
        for a, b in self._edges:
            if a == u:
                d += 1
            if b == u:
                d += 1
        return d

    # -- connectivity ------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, sorted by minimum."""
        adj = self.adjacency()
        seen = [False] * self._v
        comps = []
        for s in range(self._v):
            if seen[s]:
                continue
            queue = deque([s])
            seen[s] = True
            comp = [s]
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return self._v <= 1 or len(self.components()) == 1

    def induced_subgraph(self, vertices: Sequence[int]) -> "Multigraph":
        """Induced subgraph, relabeled 0..k-1 in the given vertex order."""
        index = {u: i for i, u in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertices")
        edges = [
            (index[a], index[b])
            for a, b in self._edges
            if a in index and b in index
        ]
        return Multigraph(len(vertices), edges)

    # -- edit operations (return new graphs) --------------------------------

    def delete_edge(self, a: int, b: int) -> "Multigraph":
        """Remove one copy of edge {a, b}."""
        key = (a, b) if a <= b else (b, a)
        edges = list(self._edges)
        try:
            edges.remove(key)
        except ValueError:
            raise ValueError(f"no edge {key} to delete") from None
        return Multigraph(self._v, edges)

    def contract_edge(self, a: int, b: int) -> "Multigraph":
        """Contract one copy of edge {a, b}: identify endpoints, drop that copy.

        Remaining parallel copies become loops.  Vertices are relabeled
        0..v-2 preserving order, with b merged into a.
        """
        if a == b:
            raise ValueError("cannot contract a loop")
        key = (a, b) if a <= b else (b, a)
        if key not in self._edges:
            raise ValueError(f"no edge {key} to contract")
        lo, hi = key
        remap = {}
        next_id = 0
        for u in range(self._v):
            if u == hi:
                continue
            remap[u] = next_id
            next_id += 1
        remap[hi] = remap[lo]
        edges = list(self._edges)
        edges.remove(key)
        new_edges = [(remap[x], remap[y]) for x, y in edges]
        return Multigraph(self._v - 1, new_edges)

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        """Edge-list text: `v m` header then one `a b` line per edge."""
        lines = [f"{self._v} {self.e}"]
        lines.extend(f"{a} {b}" for a, b in self._edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        rows = [ln.strip() for ln in text.splitlines()]
        rows = [ln for ln in rows if ln and not ln.startswith("#")]
        if not rows:
            raise ValueError("empty edge-list text")
        header = rows[0].split()
        if len(header) != 2:
            raise ValueError("header must be `v m`")
        v, m = int(header[0]), int(header[1])
        if len(rows) - 1 != m:
            raise ValueError(f"header announces {m} edges, found {len(rows) - 1}")
        edges = []
        for ln in rows[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls(v, edges)


@dataclass(frozen=True)
class GraphStats:
    """The graph invariants consumed by the coefficient and rank formulas."""

    v: int
    e: int
    girth: int
    p1: int
    bipartite: int
    n_k: dict[int, int]
    t1: int
    t2: int
    t3: int
    mu: int

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "e": self.e,
            "girth": self.girth,
            "p1": self.p1,
            "bipartite": self.bipartite,
            "n_k": {str(k): c for k, c in sorted(self.n_k.items())},
            "t1": self.t1,
            "t2": self.t2,
            "t3": self.t3,
            "mu": self.mu,
        }


def girth(g: Multigraph) -> int:
    """Length of the shortest cycle; 0 for forests, 1 with loops, 2 with multi-edges."""
    if g.loop_count():
        return 1
    adj = g.adjacency()
    if any(m >= 2 for nb in adj.values() for m in nb.values()):
        return 2
    # simple graph: for each edge, shortest path between endpoints avoiding it
    best = 0
    for a, b in set(g.edges):
        dist = {a: 0}
        queue = deque([a])
        skipped = False
        while queue:
            u = queue.popleft()
            if u == b:
                break
            for w in adj[u]:
                if u == a and w == b and not skipped:
                    skipped = True  # avoid the edge itself, once
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if b in dist:
            cyc = dist[b] + 1
            if best == 0 or cyc < best:
                best = cyc
    return best


def cyclomatic(g: Multigraph) -> int:
    """E - v + (#components); the number of independent cycles, p1."""
    return g.e - g.v + len(g.components())


def is_bipartite(g: Multigraph) -> int:
    """1 if 2-colorable (loops make a graph non-bipartite), else 0."""
    if g.loop_count():
        return 0
    adj = g.adjacency()
    color: dict[int, int] = {}
    for s in range(g.v):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return 0
    return 1


def count_cycles(g: Multigraph, k: int) -> int:
    """Number of cycle subgraphs with exactly k distinct vertices.

    k = 1 counts loops; k = 2 counts unordered pairs of parallel edges;
    k >= 3 counts simple vertex cycles, weighted by the product of edge
    multiplicities along the cycle (each parallel choice is its own subgraph).
    """
    if k < 1:
        raise ValueError("cycle length must be >= 1")
    if k == 1:
        return g.loop_count()
    adj = g.adjacency()
    if k == 2:
        seen: set[tuple[int, int]] = set()
        total = 0
        for u, nb in adj.items():
            for w, m in nb.items():
                if (w, u) in seen:
                    continue
                seen.add((u, w))
                total += binom(m, 2)
        return total
    if k > g.v:
        return 0

    total = 0
    # canonical representative: smallest vertex first, and the second
    # vertex smaller than the last to kill the reversed traversal
    def extend(start: int, path: list[int], used: set[int], weight: int) -> int:
        count = 0
        u = path[-1]
        if len(path) == k:
            m = adj[u].get(start, 0)
            if m and path[1] < path[-1]:
                count += weight * m
            return count
        for w, m in adj[u].items():
            if w <= start or w in used:
                continue
            used.add(w)
            path.append(w)
            count += extend(start, path, used, weight * m)
            path.pop()
            used.remove(w)
        return count

    for s in range(g.v):
        total += extend(s, [s], {s}, 1)
    return total


def simplify(g: Multigraph) -> tuple[Multigraph, int]:
    """Delete loops, collapse parallel classes; mu = #classes that had >= 2 copies."""
    classes: dict[tuple[int, int], int] = {}
    for a, b in g.edges:
        if a == b:
            continue
        classes[(a, b)] = classes.get((a, b), 0) + 1
    mu = sum(1 for m in classes.values() if m >= 2)
    return Multigraph(g.v, classes.keys()), mu


def _triangle_and_k4_counts(simple: Multigraph) -> tuple[int, int, int]:
    """(t1, t2, t3) on a simple graph: triangles, induced 4-cycles, K4s."""
    adj = simple.adjacency()
    nb = {u: set(ws) for u, ws in adj.items()}
    verts = range(simple.v)
    t1 = 0
    for u in verts:
        for w in nb[u]:
            if w <= u:
                continue
            t1 += len([x for x in nb[u] & nb[w] if x > w])
    t2 = 0
    t3 = 0
    for quad in combinations(verts, 4):
        present = [
            (a, b) for a, b in combinations(quad, 2) if b in nb[a]
        ]
        if len(present) == 6:
            t3 += 1
        elif len(present) == 4:
            # exactly four edges: induced C4 iff every vertex has degree 2
            deg = {u: 0 for u in quad}
            for a, b in present:
                deg[a] += 1
                deg[b] += 1
            if all(d == 2 for d in deg.values()):
                t2 += 1
    return t1, t2, t3


def census(g: Multigraph, max_cycle_len: int | None = None) -> GraphStats:
    """All invariants in one pass; t-counts are computed on the simplification."""
    ell = girth(g)
    simple, mu = simplify(g)
    t1, t2, t3 = _triangle_and_k4_counts(simple)
    if max_cycle_len is None:
        max_cycle_len = min(g.v, max(ell, 12))
    n_k = {}
    for k in range(1, max_cycle_len + 1):
        c = count_cycles(g, k)
        if c:
            n_k[k] = c
    return GraphStats(
        v=g.v,
        e=g.e,
        girth=ell,
        p1=cyclomatic(g),
        bipartite=is_bipartite(g),
        n_k=n_k,
        t1=t1,
        t2=t2,
        t3=t3,
        mu=mu,
    )


def simplified_census(g: Multigraph) -> GraphStats:
    """Census of the simplification of g, keeping mu from g itself.

    This is the reading needed wherever a statement is about G' rather
    than G: p1, girth, cycle counts all refer to the loopless simple
    graph, while mu still records how many parallel classes collapsed.
    """
    simple, mu = simplify(g)
    return replace(census(simple), mu=mu)


def wedge(g1: Multigraph, g2: Multigraph) -> Multigraph:
    """One-point union identifying vertex 0 of each graph."""
    if g1.v == 0 or g2.v == 0:
        raise ValueError("wedge requires nonempty graphs")

    def remap(u: int) -> int:
        return 0 if u == 0 else g1.v + u - 1

    edges = list(g1.edges) + [(remap(a), remap(b)) for a, b in g2.edges]
    return Multigraph(g1.v + g2.v - 1, edges)


# -- canonical form -----------------------------------------------------------


def _refine(v: int, adj: dict[int, dict[int, int]], loops: dict[int, int],
            color: list[int]) -> list[int]:
    """Iterated neighborhood refinement of a vertex coloring."""
    while True:
        signatures = []
        for u in range(v):
            nb_profile = sorted(
                (color[w], m) for w, m in adj[u].items()
            )
            signatures.append((color[u], loops.get(u, 0), tuple(nb_profile)))
        order = sorted(set(signatures))
        lookup = {sig: i for i, sig in enumerate(order)}
        new_color = [lookup[sig] for sig in signatures]
        if new_color == color:
            return color
        color = new_color


def _encode(g: Multigraph, perm: dict[int, int]) -> tuple:
    rows = []
    for a, b in g.edges:
        x, y = perm[a], perm[b]
        rows.append((x, y) if x <= y else (y, x))
    rows.sort()
    return (g.v, tuple(rows))


def canonical_code(g: Multigraph) -> str:
    """Isomorphism-invariant string code (individualization-refinement).

    Two multigraphs get the same code iff they are isomorphic as labeled-free
    multigraphs (loops and multiplicities included).  Used as a memoization
    and cache key.
    """
    v = g.v
    if v == 0:
        return "0:"
    adj = g.adjacency()
    loops: dict[int, int] = {}
    for a, b in g.edges:
        if a == b:
            loops[a] = loops.get(a, 0) + 1

    best: list[tuple | None] = [None]

    def descend(color: list[int]) -> None:
        color = _refine(v, adj, loops, color)
        cells: dict[int, list[int]] = {}
        for u, c in enumerate(color):
            cells.setdefault(c, []).append(u)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            ranked = sorted(range(v), key=lambda u: color[u])
            perm = {u: i for i, u in enumerate(ranked)}
            enc = _encode(g, perm)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        fresh = max(color) + 1
        for u in target:
            child = list(color)
            child[u] = fresh
            descend(child)

    descend([0] * v)
    enc = best[0]
    assert enc is not None
    body = ",".join(f"{a}-{b}" for a, b in enc[1])
    return f"{enc[0]}:{body}"
