"""Exact integral homology of simplicial complexes.

Boundary matrices are sparse with entries in {-1, 0, 1}.  Integral ranks and
elementary divisors come from a pruning pass that eliminates unit pivots
(a unimodular operation leaving the Schur complement) followed by a dense
Smith normal form of whatever is left.  Python integers are used throughout,
so coefficient growth cannot overflow.

Ranks over a prime field are computed by a separate column-reduction routine
that shares no code with the integral path.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexes import MissingDimension, SimplicialComplex


class HomologyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse boundary matrices

@dataclass
class SparseMatrix:
    """Column-major sparse integer matrix: ``cols[j]`` maps row -> value."""

    nrows: int
    ncols: int
    cols: list[dict[int, int]]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> SparseMatrix:
        m = len(rows)
        n = len(rows[0]) if m else 0
        cols = [{i: rows[i][j] for i in range(m) if rows[i][j]} for j in range(n)]
        return cls(m, n, cols)


def boundary_matrix(cx: SimplicialComplex, d: int) -> SparseMatrix:
    """Augmented boundary ``C_d -> C_{d-1}``; the face with vertices
    ``v_0 < ... < v_d`` maps to ``sum_j (-1)^j (face - v_j)``."""
    if d < 0:
        raise HomologyError("boundary maps start at dimension 0")
    cols_faces = cx.faces(d)
    row_faces = cx.faces(d - 1)
    index = {f: i for i, f in enumerate(row_faces)}
    cols = []
    for f in cols_faces:
        col = {}
        sign = 1
        m = f
        while m:
            low = m & -m
            col[index[f ^ low]] = sign
            sign = -sign
            m ^= low
        cols.append(col)
    return SparseMatrix(len(row_faces), len(cols_faces), cols)


def multiply(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    if A.ncols != B.nrows:
        raise HomologyError("shape mismatch")
    cols = []
    for bcol in B.cols:
        acc: dict[int, int] = {}
        for k, bv in bcol.items():
            for i, av in A.cols[k].items():
                acc[i] = acc.get(i, 0) + av * bv
        cols.append({i: v for i, v in acc.items() if v})
    return SparseMatrix(A.nrows, B.ncols, cols)


# ---------------------------------------------------------------------------
# dense Smith normal form

@dataclass
class SNFResult:
    diagonal: list[int]
    U: list[list[int]] | None = field(default=None, repr=False)
    V: list[list[int]] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    """Smith normal form of an integer matrix.

    Pivot rule: smallest nonzero absolute value in the active submatrix, ties
    broken by lowest row and then lowest column.  With ``transforms`` the
    unimodular ``U`` and ``V`` satisfy ``U A V = diag``.
    """
    M = [list(map(int, r)) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        rs, rd = M[src], M[dst]
        for c in range(n):
            if rs[c]:
                rd[c] -= q * rs[c]
        if U is not None:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] -= q * us[c]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        for r in M:
            if r[src]:
                r[dst] -= q * r[src]
        if V is not None:
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(t, i, M[i][t] // p)
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(t, j, M[t][j] // p)
                    if M[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                        best = (abs(M[i][t]), i, t)
                for j in range(t, n):
                    if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                        best = (abs(M[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, -1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(M[t][t])
        t += 1
    return SNFResult(diag, U, V)


# ---------------------------------------------------------------------------
# sparse unit-pivot pruning

@dataclass
class EliminationResult:
    rank: int
    divisors: list[int]  # nonzero elementary divisors > 1, sorted (divisibility chain)
    unit_pivots: int
    remainder_shape: tuple[int, int]


def elementary_divisors(mat: SparseMatrix) -> EliminationResult:
    """Rank and non-unit elementary divisors of a sparse integer matrix.

    Units are pivoted greedily by smallest column count, then shortest row
    (Markowitz order); each such step splits off a 1 from the Smith form.
    The remaining Schur complement, if nonzero, goes through
    ``smith_normal_form``.
    """
    rows: list[dict[int, int]] = [dict() for _ in range(mat.nrows)]
    cols: list[set[int]] = []
    for j, col in enumerate(mat.cols):
        s = set()
        for i, v in col.items():
            if v:
                rows[i][j] = v
                s.add(i)
        cols.append(s)

    heap = [(len(s), j) for j, s in enumerate(cols) if s]
    heapq.heapify(heap)
    alive_col = [bool(s) for s in cols]
    pivots = 0
    push = heapq.heappush
    pop = heapq.heappop

    while heap:
        cnt, c = pop(heap)
        if not alive_col[c]:
            continue
        col = cols[c]
        if cnt != len(col):
            if col:
                push(heap, (len(col), c))
            else:
                alive_col[c] = False
            continue
        # unit entry with the shortest row
        p = -1
        plen = 0
        for r in col:
            v = rows[r][c]
            if v == 1 or v == -1:
                ln = len(rows[r])
                if p < 0 or ln < plen or (ln == plen and r < p):
                    p, plen = r, ln
        if p < 0:
            continue  # revisited if the column changes
        prow = rows[p]
        pv = prow[c]
        for r in list(col):
            if r == p:
                continue
            row = rows[r]
            f = row[c] * pv  # pv is +-1, so f = row[c] / pv
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    if j not in row:
                        cols[j].add(r)
                    row[j] = nv
                else:
                    del row[j]
                    cols[j].discard(r)
                if j != c:
                    push(heap, (len(cols[j]), j))
        for j in prow:
            cols[j].discard(p)
            if j != c and cols[j]:
                push(heap, (len(cols[j]), j))
        rows[p] = {}
        alive_col[c] = False
        cols[c] = set()
        pivots += 1

    live_rows = sorted(i for i, r in enumerate(rows) if r)
    live_cols = sorted({j for i in live_rows for j in rows[i]})
    divisors: list[int] = []
    rank = pivots
    if live_rows:
        cpos = {j: k for k, j in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for a, i in enumerate(live_rows):
            for j, v in rows[i].items():
                dense[a][cpos[j]] = v
        snf = smith_normal_form(dense)
        rank += snf.rank
        divisors = snf.torsion
    return EliminationResult(rank, divisors, pivots, (len(live_rows), len(live_cols)))


# ---------------------------------------------------------------------------
# ranks over a prime field (independent path)

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def rank_mod_p(mat: SparseMatrix, p: int) -> int:
    """Rank over GF(p) by left-to-right column reduction on lowest-row pivots."""
    if not is_prime(p):
        raise HomologyError(f"{p} is not prime")
    if p == 2:
        return _rank_gf2(mat)
    pivot_of: dict[int, dict[int, int]] = {}  # lowest row -> reduced column
    rank = 0
    for col in mat.cols:
        c = {i: v % p for i, v in col.items() if v % p}
        while c:
            low = max(c)
            other = pivot_of.get(low)
            if other is None:
                inv = pow(c[low], p - 2, p)
                pivot_of[low] = {i: v * inv % p for i, v in c.items()}
                rank += 1
                break
            f = c[low]
            for i, v in other.items():
                nv = (c.get(i, 0) - f * v) % p
                if nv:
                    c[i] = nv
                else:
                    c.pop(i, None)
    return rank


def _rank_gf2(mat: SparseMatrix) -> int:
    pivot_of: dict[int, int] = {}
    rank = 0
    for col in mat.cols:
        c = 0
        for i, v in col.items():
            if v & 1:
                c |= 1 << i
        while c:
            low = c.bit_length() - 1
            other = pivot_of.get(low)
            if other is None:
                pivot_of[low] = c
                rank += 1
                break
            c ^= other
    return rank


def transpose(mat: SparseMatrix) -> SparseMatrix:
    cols: list[dict[int, int]] = [dict() for _ in range(mat.nrows)]
    for j, col in enumerate(mat.cols):
        for i, v in col.items():
            cols[i][j] = v
    return SparseMatrix(mat.ncols, mat.nrows, cols)


# ---------------------------------------------------------------------------
# homology groups

@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        for a, b in zip(t, t[1:]):
            if b % a:
                raise HomologyError(f"torsion {t} is not a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        counts: dict[int, int] = {}
        for q in self.torsion:
            counts[q] = counts.get(q, 0) + 1
        for q, c in sorted(counts.items()):
            parts.append(f"Z_{q}" if c == 1 else f"(Z_{q})^{c}")
        return " + ".join(parts) if parts else "0"

    def to_json(self, dim: int) -> dict:
        return {"dim": dim, "betti": self.betti, "torsion": list(self.torsion)}


class _BoundaryCache:
    """Per-complex memo of elimination results keyed by dimension."""

    def __init__(self, cx: SimplicialComplex):
        self.cx = cx
        self.results: dict[int, EliminationResult] = {}

    def get(self, d: int) -> EliminationResult:
        if d not in self.results:
            if not self.cx.faces(d):
                self.results[d] = EliminationResult(0, [], 0, (0, 0))
            else:
                self.results[d] = elementary_divisors(boundary_matrix(self.cx, d))
        return self.results[d]


def _group(cx: SimplicialComplex, d: int, cache: _BoundaryCache) -> HomologyGroup:
    nd = len(cx.faces(d))
    below = cache.get(d).rank if d >= 0 else 0
    above = cache.get(d + 1)
    return HomologyGroup(nd - below - above.rank, tuple(above.divisors))


def homology_window(cx: SimplicialComplex, d: int) -> HomologyGroup:
    """Reduced homology in dimension ``d`` from faces of dimensions d-1, d, d+1."""
    for e in (d - 1, d, d + 1):
        if e >= -1 and not cx.has_dim(e):
            raise MissingDimension(f"window around dimension {d} is not enumerated")
    return _group(cx, d, _BoundaryCache(cx))


def reduced_homology(cx: SimplicialComplex, dims: Iterable[int] | None = None) -> dict[int, HomologyGroup]:
    """Reduced integral homology, augmented at the empty face.

    Without ``dims`` every dimension from 0 to the top is reported; dimension
    -1 appears only for the complex ``{empty}``.
    """
    cache = _BoundaryCache(cx)
    if dims is None:
        cx.enumerate()
        top = cx.dimension
        if top < 0:
            return {-1: HomologyGroup(1)}
        dims = range(0, top + 1)
    return {d: _group(cx, d, cache) for d in sorted(dims)}


def betti_mod_p(cx: SimplicialComplex, d: int, p: int) -> int:
    if not is_prime(p):
        raise HomologyError(f"{p} is not prime")
    nd = len(cx.faces(d))
    below = rank_mod_p(boundary_matrix(cx, d), p) if d >= 0 and nd else 0
    above = rank_mod_p(boundary_matrix(cx, d + 1), p) if cx.faces(d + 1) else 0
    return nd - below - above


def homology_to_json(groups: dict[int, HomologyGroup]) -> str:
    return json.dumps([g.to_json(d) for d, g in sorted(groups.items())])


def euler_from_homology(groups: dict[int, HomologyGroup]) -> int:
    return sum((-1) ** d * g.betti for d, g in groups.items())


def universal_coefficient_betti(groups: dict[int, HomologyGroup], d: int, p: int) -> int:
    """Mod-p Betti number predicted from integral groups in dimensions d and d-1."""
    g = groups[d]
    prev = groups.get(d - 1, HomologyGroup(0))
    return g.betti + sum(1 for q in g.torsion if q % p == 0) + sum(1 for q in prev.torsion if q % p == 0)
