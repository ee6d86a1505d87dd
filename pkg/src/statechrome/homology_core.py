"""Brute-force homology of smoothing cubes via exact Smith normal form.

Two cube complexes share the machinery here: the Khovanov cube of a link
diagram over Z[x]/(x^2) with deg(1) = 1, deg(x) = -1, and the spanning
subgraph cube of a multigraph over the same ring with deg(1) = 1,
deg(x) = 0.  Chain groups are assembled one bidegree at a time so every
Smith normal form runs on a small block, and the differential is checked
to square to zero on every complex we build.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .diagram import A, B, LinkDiagram, assign_signs, resolve
from .multigraph import Multigraph
from .polynomials import LaurentPolynomial


class SparseIntMatrix:
    """Integer matrix stored as {(row, col): value}; zero values are dropped."""

    __slots__ = ("rows", "cols", "nonzeros")

    def __init__(
        self,
        rows: int,
        cols: int,
        nonzeros: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = (),
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.nonzeros: dict[tuple[int, int], int] = {}
        items = nonzeros.items() if isinstance(nonzeros, Mapping) else nonzeros
        for (r, c), val in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"index ({r},{c}) outside {rows}x{cols}")
            v = int(val)
            if v:
                self.nonzeros[(r, c)] = v

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "SparseIntMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.nonzeros.items():
            out[r][c] = v
        return out

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={len(self.nonzeros)})"


def _dense_smith(mat: list[list[int]]) -> list[int]:
    """Textbook Smith normal form on a small dense block; returns d1 | d2 | ..."""
    mat = [row[:] for row in mat]
    out: list[int] = []
    while mat and mat[0]:
        entries = [(abs(v), i, j) for i, row in enumerate(mat) for j, v in enumerate(row) if v]
        if not entries:
            break
        _, pi, pj = min(entries)
        mat[0], mat[pi] = mat[pi], mat[0]
        for row in mat:
            row[0], row[pj] = row[pj], row[0]
        pivot = mat[0][0]
        dirty = False
        for i in range(1, len(mat)):
            q = mat[i][0] // pivot
            if q:
                top = mat[0]
                mat[i] = [a - q * b for a, b in zip(mat[i], top)]
            if mat[i][0]:
                dirty = True
        for j in range(1, len(mat[0])):
            q = mat[0][j] // pivot
            if q:
                for row in mat:
                    row[j] -= q * row[0]
            if mat[0][j]:
                dirty = True
        if dirty:
            continue
        p = abs(pivot)
        offender = -1
        for i in range(1, len(mat)):
            if any(v % p for v in mat[i]):
                offender = i
                break
        if offender >= 0:
            mat[0] = [a + b for a, b in zip(mat[0], mat[offender])]
            continue
        out.append(p)
        mat = [row[1:] for row in mat[1:]]
    return out


def smith_invariants(m: SparseIntMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of m; rank = number of invariants.

    Unit pivots are eliminated sparsely first (integer row/column operations
    only, so the remaining block's invariants complete the list exactly);
    whatever survives without a +-1 entry goes through the dense routine.
    """
    row: dict[int, dict[int, int]] = {}
    col: dict[int, dict[int, int]] = {}
    for (r, c), v in m.nonzeros.items():
        row.setdefault(r, {})[c] = v
        col.setdefault(c, {})[r] = v

    # min-heap of unit pivot candidates keyed by Markowitz fill cost
    # (row_nnz-1)*(col_nnz-1), with lazy revalidation on pop.  Cost-0 pivots
    # (singleton rows/columns) cascade first and eliminate most of a cube
    # differential without creating any fill at all.
    heap = [
        ((len(row[r]) - 1) * (len(col[c]) - 1), r, c)
        for (r, c), v in m.nonzeros.items()
        if v in (1, -1)
    ]
    heapq.heapify(heap)
    ones = 0
    while heap:
        cost, r0, c0 = heapq.heappop(heap)
        entries = row.get(r0)
        if entries is None:
            continue
        v0 = entries.get(c0)
        if v0 not in (1, -1):
            continue
        current = (len(entries) - 1) * (len(col[c0]) - 1)
        if current > cost and heap and heap[0][0] < current:
            heapq.heappush(heap, (current, r0, c0))
            continue
        pivot_row = row.pop(r0)
        for c in pivot_row:
            del col[c][r0]
        victims = [(r, a) for r, a in col[c0].items()]
        for r, a in victims:
            f = a * v0  # a / v0 with v0 = +-1
            target = row[r]
            for c, b in pivot_row.items():
                if c == c0:
                    continue
                new = target.get(c, 0) - f * b
                if new:
                    target[c] = new
                    col[c][r] = new
                    if new in (1, -1):
                        heapq.heappush(
                            heap, ((len(target) - 1) * (len(col[c]) - 1), r, c)
                        )
                elif c in target:
                    del target[c]
                    del col[c][r]
            del target[c0]
            if not target:
                del row[r]
        del col[c0]
        for c in pivot_row:
            if c != c0 and not col[c]:
                del col[c]
        ones += 1

    invariants = [1] * ones
    if row:
        rows_left = sorted(row)
        cols_left = sorted({c for cs in row.values() for c in cs})
        cpos = {c: j for j, c in enumerate(cols_left)}
        dense = [[0] * len(cols_left) for _ in rows_left]
        for i, r in enumerate(rows_left):
            for c, v in row[r].items():
                dense[i][cpos[c]] = v
        invariants.extend(_dense_smith(dense))
    return tuple(invariants)


@dataclass
class BigradedTable:
    """Bigraded abelian groups: (i, j) -> (free rank, Z2-torsion rank).

    Absent keys mean the zero group.  Torsion summands whose order is not 2
    are collected in ``anomalies`` (order lists per bidegree) instead of
    being folded into tor2.
    """

    entries: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    anomalies: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), (0, 0))[0]

    def tor2(self, i: int, j: int) -> int:
        return self.entries.get((i, j), (0, 0))[1]

    def set(self, i: int, j: int, rank: int, tor2: int = 0) -> None:
        if rank < 0 or tor2 < 0:
            raise ValueError(f"negative rank at ({i},{j})")
        if rank or tor2:
            self.entries[(i, j)] = (rank, tor2)
        else:
            self.entries.pop((i, j), None)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigradedTable):
            return NotImplemented
        return self.entries == other.entries

    def to_json(self) -> list[dict]:
        return [
            {"i": i, "j": j, "rank": r, "tor2": t}
            for (i, j), (r, t) in sorted(self.entries.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "BigradedTable":
        table = cls()
        for rec in data:
            table.set(int(rec["i"]), int(rec["j"]), int(rec["rank"]), int(rec.get("tor2", 0)))
        return table

    def render(self) -> str:
        """Plain-text grid, columns by i ascending, rows by j descending.

        A cell like ``3, 2_2`` means Z^3 + (Z_2)^2, matching the table
        notation used for the homology examples.
        """
        if not self.entries:
            return "(zero)"
        is_ = sorted({i for i, _ in self.entries})
        js = sorted({j for _, j in self.entries}, reverse=True)

        def cell(i: int, j: int) -> str:
            r, t = self.entries.get((i, j), (0, 0))
            if not r and not t:
                return "."
            if not t:
                return str(r)
            if not r:
                return f"{t}_2"
            return f"{r}, {t}_2"

        grid = [["j\\i"] + [str(i) for i in is_]]
        for j in js:
            grid.append([str(j)] + [cell(i, j) for i in is_])
        widths = [max(len(row[k]) for row in grid) for k in range(len(grid[0]))]
        lines = ["  ".join(cellv.rjust(w) for cellv, w in zip(row, widths)) for row in grid]
        return "\n".join(lines)


def euler_characteristic(t: BigradedTable) -> LaurentPolynomial:
    """Graded Euler characteristic sum((-1)^i rank q^j (free ranks only)."""
    coeffs: dict[int, int] = {}
    for (i, j), (r, _) in t.entries.items():
        if r:
            coeffs[j] = coeffs.get(j, 0) + (r if i % 2 == 0 else -r)
    return LaurentPolynomial(coeffs)


# -- shared cube plumbing ----------------------------------------------------------


class _Block:
    """One (degree, q) chunk of a cochain complex with its outgoing matrix."""

    __slots__ = ("dim", "matrix")

    def __init__(self) -> None:
        self.dim = 0
        self.matrix: dict[tuple[int, int], int] = {}


def _check_square_zero(lower: dict[int, _Block], upper: dict[int, _Block], where: str) -> None:
    """Assert composite (upper matrix) after (lower matrix) vanishes per q."""
    for q, blk in lower.items():
        nxt = upper.get(q)
        if nxt is None or not blk.matrix or not nxt.matrix:
            continue
        by_source: dict[int, list[tuple[int, int]]] = {}
        for (t, s), v in nxt.matrix.items():
            by_source.setdefault(s, []).append((t, v))
        acc: dict[tuple[int, int], int] = {}
        for (t, s), v in blk.matrix.items():
            for (u, w) in by_source.get(t, ()):
                key = (u, s)
                acc[key] = acc.get(key, 0) + v * w
        if any(acc.values()):
            raise AssertionError(f"differential does not square to zero ({where}, q={q})")


class _ComplexAccumulator:
    """Consumes complex layers in degree order with a two-layer window.

    ``push`` expects the layer's outgoing matrix to be complete.  It checks
    d^2 = 0 against the previous layer, converts incoming invariant factors
    into torsion, and frees the older matrices so only two layers of the
    cube are ever held at once.
    """

    def __init__(self, label: str) -> None:
        self.label = label
        self.table = BigradedTable()
        self._prev_blocks: dict[int, _Block] | None = None
        self._snf_in: dict[int, tuple[int, ...]] = {}

    def push(self, blocks: dict[int, _Block], degree: int) -> None:
        snf_cur: dict[int, tuple[int, ...]] = {}
        for q, blk in blocks.items():
            if blk.matrix:
                rows = max(t for t, _ in blk.matrix) + 1
                snf_cur[q] = smith_invariants(SparseIntMatrix(rows, blk.dim, blk.matrix))
            else:
                snf_cur[q] = ()
        if self._prev_blocks is not None:
            _check_square_zero(self._prev_blocks, blocks, self.label)
            for blk in self._prev_blocks.values():
                blk.matrix = {}
        for q, blk in blocks.items():
            rank_out = len(snf_cur[q])
            incoming = self._snf_in.get(q, ())
            free = blk.dim - rank_out - len(incoming)
            if free < 0:
                raise AssertionError(f"negative free rank at ({degree},{q})")
            torsion = [d for d in incoming if d > 1]
            tor2 = sum(1 for d in torsion if d == 2)
            odd = tuple(d for d in torsion if d != 2)
            self.table.set(degree, q, free, tor2)
            if odd:
                self.table.anomalies[(degree, q)] = odd
        self._prev_blocks = blocks
        self._snf_in = snf_cur


# -- Khovanov homology -------------------------------------------------------------


def khovanov_homology(d: LinkDiagram, max_crossings: int = 12) -> BigradedTable:
    """Integral Khovanov homology of a diagram from the cube of resolutions.

    Homological grading is (#B-smoothings) - c_minus and quantum grading is
    internal degree + (#B-smoothings) + c_plus - 2*c_minus, so the graded
    Euler characteristic is the unnormalized Jones polynomial.
    """
    if d.n > max_crossings:
        raise ValueError(f"diagram has {d.n} crossings, budget is {max_crossings}")
    if not d.signs_assigned:
        d = assign_signs(d)
    c_plus, c_minus = d.c_plus, d.c_minus
    n = d.n

    if n == 0:
        table = BigradedTable()
        for j in (1, -1):
            table.set(0, j, 1)
        return table

    order = list(range(n))
    crossings = d.crossings

    def state_info(mask: int):
        choice = tuple(B if (mask >> j) & 1 else A for j in order)
        state = resolve(d, choice)
        return state.circles, state.circle_index()

    prev_layer: dict[int, tuple] = {}
    prev_index: dict[tuple[int, int], tuple[int, int]] = {}
    prev_blocks: dict[int, _Block] | None = None
    acc = _ComplexAccumulator("khovanov")

    def gen_q(r: int, k: int, genmask: int) -> int:
        ones = k - bin(genmask).count("1")
        internal = ones - (k - ones)
        return internal + r + c_plus - 2 * c_minus

    for r in range(n + 1):
        masks = [sum(1 << j for j in picks) for picks in combinations(order, r)]
        layer: dict[int, tuple] = {}
        blocks: dict[int, _Block] = {}
        index: dict[tuple[int, int], tuple[int, int]] = {}
        for mask in masks:
            circles, arcindex = state_info(mask)
            k = len(circles)
            layer[mask] = (circles, arcindex)
            for genmask in range(1 << k):
                q = gen_q(r, k, genmask)
                blk = blocks.setdefault(q, _Block())
                index[(mask, genmask)] = (q, blk.dim)
                blk.dim += 1
        if prev_blocks is not None:
            _fill_khovanov_matrices(
                crossings, prev_layer, prev_index, layer, index, prev_blocks
            )
            acc.push(prev_blocks, (r - 1) - c_minus)
        prev_layer, prev_index, prev_blocks = layer, index, blocks
    acc.push(prev_blocks, n - c_minus)
    return acc.table


def _fill_khovanov_matrices(
    crossings,
    src_layer: dict[int, tuple],
    src_index: dict[tuple[int, int], tuple[int, int]],
    dst_layer: dict[int, tuple],
    dst_index: dict[tuple[int, int], tuple[int, int]],
    blocks: dict[int, _Block],
) -> None:
    for mask, (circles, arcindex) in src_layer.items():
        k = len(circles)
        for j, x in enumerate(crossings):
            if (mask >> j) & 1:
                continue
            tmask = mask | (1 << j)
            tcircles, tarcindex = dst_layer[tmask]
            sign = -1 if bin(mask & ((1 << j) - 1)).count("1") % 2 else 1
            ia, ic = arcindex[x.a], arcindex[x.c]
            remap = [0] * k
            for u in range(k):
                if u != ia and u != ic:
                    remap[u] = tarcindex[circles[u][0]]
            if ia != ic:
                jm = tarcindex[x.a]
                for genmask in range(1 << k):
                    la = (genmask >> ia) & 1
                    lc = (genmask >> ic) & 1
                    if la and lc:
                        continue  # m(x, x) = 0
                    tgen = 0
                    for u in range(k):
                        if u != ia and u != ic and (genmask >> u) & 1:
                            tgen |= 1 << remap[u]
                    if la or lc:
                        tgen |= 1 << jm
                    _add_entry(blocks, src_index[(mask, genmask)], dst_index[(tmask, tgen)], sign)
            else:
                ja, jb = tarcindex[x.a], tarcindex[x.b]
                for genmask in range(1 << k):
                    base = 0
                    for u in range(k):
                        if u != ia and (genmask >> u) & 1:
                            base |= 1 << remap[u]
                    src = src_index[(mask, genmask)]
                    if (genmask >> ia) & 1:
                        _add_entry(blocks, src, dst_index[(tmask, base | (1 << ja) | (1 << jb))], sign)
                    else:
                        _add_entry(blocks, src, dst_index[(tmask, base | (1 << jb))], sign)
                        _add_entry(blocks, src, dst_index[(tmask, base | (1 << ja))], sign)


def _add_entry(
    blocks: dict[int, _Block],
    src: tuple[int, int],
    dst: tuple[int, int],
    coeff: int,
) -> None:
    q, spos = src
    qt, tpos = dst
    if q != qt:
        raise AssertionError("differential does not preserve quantum grading")
    matrix = blocks[q].matrix
    key = (tpos, spos)
    new = matrix.get(key, 0) + coeff
    if new:
        matrix[key] = new
    else:
        matrix.pop(key, None)


# -- chromatic homology over A2 ----------------------------------------------------


def chromatic_homology_bruteforce(
    g: Multigraph, max_vertices: int = 12, max_edges: int = 14
) -> BigradedTable:
    """Homology of the spanning-subgraph cube of g over Z[x]/(x^2).

    Gradings: i = #edges in the subgraph, j = total degree with deg(1) = 1
    and deg(x) = 0.  Merging two components multiplies labels with x acting
    as the unit; an edge closing a cycle inside one component is the
    identity map.
    """
    if g.v > max_vertices or g.e > max_edges:
        raise ValueError(f"graph {g.v}v/{g.e}e exceeds budget {max_vertices}v/{max_edges}e")
    edges = g.edges
    n = len(edges)
    nv = g.v

    def comps(mask: int) -> list[int]:
        parent = list(range(nv))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for j in range(n):
            if (mask >> j) & 1:
                ra, rb = find(edges[j][0]), find(edges[j][1])
                if ra != rb:
                    parent[ra] = rb
        roots = sorted({find(u) for u in range(nv)})
        pos = {root: idx for idx, root in enumerate(roots)}
        return [pos[find(u)] for u in range(nv)]

    prev_layer: dict[int, list[int]] = {}
    prev_index: dict[tuple[int, int], tuple[int, int]] = {}
    prev_blocks: dict[int, _Block] | None = None
    acc = _ComplexAccumulator("chromatic")

    for r in range(n + 1):
        masks = [sum(1 << j for j in picks) for picks in combinations(range(n), r)]
        layer: dict[int, list[int]] = {}
        blocks: dict[int, _Block] = {}
        index: dict[tuple[int, int], tuple[int, int]] = {}
        for mask in masks:
            comp_of = comps(mask)
            k = max(comp_of) + 1 if nv else 0
            layer[mask] = comp_of
            for genmask in range(1 << k):
                j_deg = k - bin(genmask).count("1")  # 1-labels carry degree 1
                blk = blocks.setdefault(j_deg, _Block())
                index[(mask, genmask)] = (j_deg, blk.dim)
                blk.dim += 1
        if prev_blocks is not None:
            _fill_chromatic_matrices(edges, prev_layer, prev_index, layer, index, prev_blocks)
            acc.push(prev_blocks, r - 1)
        prev_layer, prev_index, prev_blocks = layer, index, blocks
    acc.push(prev_blocks, n)
    return acc.table


def _fill_chromatic_matrices(
    edges,
    src_layer: dict[int, list[int]],
    src_index: dict[tuple[int, int], tuple[int, int]],
    dst_layer: dict[int, list[int]],
    dst_index: dict[tuple[int, int], tuple[int, int]],
    blocks: dict[int, _Block],
) -> None:
    for mask, comp_of in src_layer.items():
        k = max(comp_of) + 1 if comp_of else 0
        for j, (a, b) in enumerate(edges):
            if (mask >> j) & 1:
                continue
            tmask = mask | (1 << j)
            tcomp = dst_layer[tmask]
            sign = -1 if bin(mask & ((1 << j) - 1)).count("1") % 2 else 1
            ca, cb = comp_of[a], comp_of[b]
            reps = [comp_of.index(u) for u in range(k)]  # a vertex in each source comp
            if ca == cb:
                # cycle-closing edge: components unchanged, identity map
                remap = [tcomp[reps[u]] for u in range(k)]
                for genmask in range(1 << k):
                    tgen = 0
                    for u in range(k):
                        if (genmask >> u) & 1:
                            tgen |= 1 << remap[u]
                    _add_entry(blocks, src_index[(mask, genmask)], dst_index[(tmask, tgen)], sign)
            else:
                jm = tcomp[a]
                remap = [0] * k
                for u in range(k):
                    if u != ca and u != cb:
                        remap[u] = tcomp[reps[u]]
                for genmask in range(1 << k):
                    la = (genmask >> ca) & 1
                    lb = (genmask >> cb) & 1
                    # x is the unit: m(x,x)=x, m(x,1)=m(1,x)=1, m(1,1)=0
                    if not la and not lb:
                        continue
                    tgen = 0
                    for u in range(k):
                        if u != ca and u != cb and (genmask >> u) & 1:
                            tgen |= 1 << remap[u]
                    if la and lb:
                        tgen |= 1 << jm
                    _add_entry(blocks, src_index[(mask, genmask)], dst_index[(tmask, tgen)], sign)
