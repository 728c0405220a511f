"""Finite posets and lattices.

A :class:`FinitePoset` keeps its elements in a linear extension together with
a dense boolean matrix ``leq[i, j]`` meaning ``elements[i] <= elements[j]``.
Covers, Moebius values and order complexes are derived from that matrix.

The lattices of block-closed graphs live here as :class:`SigmaLattice`,
whose elements are edge masks over the colex pair universe of ``[n]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product as _iproduct
from math import comb
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx
import numpy as np

from . import graphs as gr
from .complexes import SimplicialComplex

MAX_ISO_SIZE = 5000
MAX_DENSE_SIZE = 20000


class PosetError(ValueError):
    """Invalid poset request or a violated structural invariant."""


def _mask_leq(masks: np.ndarray) -> np.ndarray:
    m = masks.astype(np.uint64)
    out = np.empty((len(m), len(m)), dtype=bool)
    step = max(1, 4_000_000 // max(1, len(m)))
    for s in range(0, len(m), step):
        out[s:s + step] = (m[s:s + step, None] & ~m[None, :]) == 0
    return out


class FinitePoset:
    """Finite poset given by elements and a reflexive ``<=`` matrix."""

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, name: str = ""):
        n = len(elements)
        if n > MAX_DENSE_SIZE:
            raise PosetError(f"{n} elements exceed the dense-order limit {MAX_DENSE_SIZE}")
        leq = np.asarray(leq, dtype=bool)
        if leq.shape != (n, n):
            raise PosetError("order matrix shape does not match the element count")
        # linear extension: sort by size of the principal down-set
        order = np.argsort(leq.sum(axis=0), kind="stable")
        self.elements = tuple(elements[i] for i in order)
        self.leq = leq[np.ix_(order, order)]
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != n:
            raise PosetError("duplicate elements")
        self.name = name

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], le: Callable[[object, object], bool], name: str = "") -> FinitePoset:
        els = list(elements)
        mat = np.array([[le(a, b) for b in els] for a in els], dtype=bool).reshape(len(els), len(els))
        return cls(els, mat, name)

    @classmethod
    def from_masks(cls, elements: Sequence[Hashable], masks: Sequence[int], name: str = "") -> FinitePoset:
        """Order by inclusion of integer bit masks (at most 64 bits)."""
        return cls(list(elements), _mask_leq(np.array(masks, dtype=np.uint64)), name)

    def check_axioms(self) -> bool:
        L = self.leq
        if not L.diagonal().all() or (L & L.T & ~np.eye(len(self), dtype=bool)).any():
            return False
        Li = L.astype(np.int64)
        return bool(((Li @ Li > 0) <= L).all())

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset({self.name or '?'}, {len(self)} elements)"

    def _i(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise PosetError(f"{x!r} is not an element") from None

    def le(self, x, y) -> bool:
        return bool(self.leq[self._i(x), self._i(y)])

    @cached_property
    def bottom(self):
        mins = np.flatnonzero(self.leq.all(axis=1))
        return self.elements[mins[0]] if len(mins) else None

    @cached_property
    def top(self):
        maxs = np.flatnonzero(self.leq.all(axis=0))
        return self.elements[maxs[0]] if len(maxs) else None

    @cached_property
    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """Index pairs ``(i, j)`` with ``elements[j]`` covering ``elements[i]``."""
        L = self.leq
        out = []
        for j in range(len(self)):
            below = np.flatnonzero(L[:j, j])
            if len(below) == 0:
                continue
            sub = L[np.ix_(below, below)]
            for i in below[sub.sum(axis=1) == 1]:
                out.append((int(i), j))
        return tuple(sorted(out))

    def covers(self) -> list[tuple[object, object]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.cover_pairs]

    def hasse_digraph(self) -> nx.DiGraph:
        D = nx.DiGraph()
        D.add_nodes_from(range(len(self)))
        D.add_edges_from(self.cover_pairs)
        return D

    def subposet(self, idx: Iterable[int], name: str = "") -> FinitePoset:
        idx = sorted(idx)
        return FinitePoset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)], name)

    def proper_part(self) -> FinitePoset:
        drop = {self.index[e] for e in (self.bottom, self.top) if e is not None}
        return self.subposet([i for i in range(len(self)) if i not in drop], f"proper part of {self.name}")

    def to_json(self) -> dict:
        return {
            "elements": [repr(e) for e in self.elements],
            "covers": [list(p) for p in self.cover_pairs],
        }


# ---------------------------------------------------------------------------
# Moebius function

def moebius_from(P: FinitePoset, x) -> np.ndarray:
    """Vector of ``mu(x, z)`` over all indices ``z`` (zero when ``z`` is not above ``x``)."""
    i = P._i(x)
    L = P.leq
    mu = np.zeros(len(P), dtype=object)
    mu[i] = 1
    above = np.flatnonzero(L[i])
    for j in above:
        if j == i:
            continue
        between = np.flatnonzero(L[i, :j] & L[:j, j])
        mu[j] = -sum(mu[between])
    return mu


def moebius(P: FinitePoset, x=None, y=None) -> int:
    """``mu_P(x, y)``; defaults to ``(0hat, 1hat)``."""
    x = P.bottom if x is None else x
    y = P.top if y is None else y
    if x is None or y is None:
        raise PosetError("poset has no bottom or top element")
    if not P.le(x, y):
        raise PosetError(f"{x!r} is not below {y!r}")
    i, j = P._i(x), P._i(y)
    sub = np.flatnonzero(P.leq[i] & P.leq[:, j])
    return int(moebius_vector(P.subposet(sub))[-1])


def moebius_vector(P: FinitePoset) -> np.ndarray:
    """``mu(0hat, z)`` for every index ``z`` of a poset with a bottom element."""
    if P.bottom is None or P.index[P.bottom] != 0:
        raise PosetError("poset needs a bottom element")
    LT = np.ascontiguousarray(P.leq.T).astype(np.int64)
    mu = np.zeros(len(P), dtype=np.int64)
    mu[0] = 1
    for j in range(1, len(P)):
        mu[j] = -int(LT[j, :j] @ mu[:j])
    return mu


# ---------------------------------------------------------------------------
# complexes and lattices built from posets

def order_complex(P: FinitePoset) -> SimplicialComplex:
    """Chains of ``P`` as faces; vertex ``i`` is ``P.elements[i]``."""
    L = P.leq

    def extend(state, v):
        if state is None or L[state, v]:
            return v
        return None

    return SimplicialComplex(len(P), extend, None, labels=P.elements, name=f"order complex of {P.name}")


TOP = "1hat"


def face_lattice(cx: SimplicialComplex) -> FinitePoset:
    """Faces ordered by inclusion, plus a greatest element ``'1hat'``."""
    faces = cx.enumerate().all_faces()
    full = (1 << cx.size) - 1
    if full in set(faces):
        full = 1 << cx.size | full
    return FinitePoset.from_masks(list(faces) + [TOP], list(faces) + [full], f"face lattice of {cx.name}")


def chain(m: int) -> FinitePoset:
    """Chain with ``m`` elements ``0 < 1 < ... < m-1``."""
    return FinitePoset(list(range(m)), np.triu(np.ones((m, m), dtype=bool)), f"chain {m}")


def antichain(m: int) -> FinitePoset:
    return FinitePoset(list(range(m)), np.eye(m, dtype=bool), f"antichain {m}")


def boolean_lattice(n: int) -> FinitePoset:
    if n < 0:
        raise PosetError("n must be nonnegative")
    subsets = [frozenset(v + 1 for v in range(n) if m >> v & 1) for m in range(1 << n)]
    return FinitePoset.from_masks(subsets, list(range(1 << n)), f"B_{n}")


def _pair_mask(n: int, partition: Iterable[frozenset[int]]) -> int:
    idx = gr._subset_index(n, 2)
    m = 0
    for b in partition:
        for e in combinations(sorted(b), 2):
            m |= 1 << idx[e]
    return m


def _canon(partition) -> tuple[frozenset[int], ...]:
    return tuple(sorted((frozenset(b) for b in partition), key=min))


def k_equal_lattice(n: int, k: int) -> FinitePoset:
    """Partitions of ``[n]`` whose blocks have size 1 or at least ``k``, by refinement."""
    if n < 1 or k < 2:
        raise PosetError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    if comb(n, 2) > 64:
        raise PosetError("partition lattices are limited to n <= 11")
    parts = [_canon(p) for p in gr.set_partitions(list(range(1, n + 1)))
             if all(len(b) == 1 or len(b) >= k for b in p)]
    name = f"Pi_{n}" if k == 2 else f"Pi_{n},{k}"
    return FinitePoset.from_masks(parts, [_pair_mask(n, p) for p in parts], name)


def partition_lattice(n: int) -> FinitePoset:
    return k_equal_lattice(n, 2)


# ---------------------------------------------------------------------------
# intervals, products, isomorphism

def interval(P: FinitePoset, x, y) -> FinitePoset:
    i, j = P._i(x), P._i(y)
    if not P.leq[i, j]:
        raise PosetError(f"{x!r} is not below {y!r}")
    return P.subposet(np.flatnonzero(P.leq[i] & P.leq[:, j]), f"[{x!r}, {y!r}]")


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    els = list(_iproduct(P.elements, Q.elements))
    L = np.kron(P.leq.astype(np.uint8), Q.leq.astype(np.uint8)).astype(bool)
    return FinitePoset(els, L, f"{P.name} x {Q.name}")


def product_of(posets: Sequence[FinitePoset]) -> FinitePoset:
    out = chain(1)
    for P in posets:
        out = product(out, P)
    return out


def is_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    """Order isomorphism via isomorphism of Hasse diagrams."""
    if max(len(P), len(Q)) > MAX_ISO_SIZE:
        raise PosetError(f"isomorphism test limited to {MAX_ISO_SIZE} elements")
    if len(P) != len(Q) or len(P.cover_pairs) != len(Q.cover_pairs):
        return False
    sig = lambda R: sorted(zip(R.leq.sum(axis=0).tolist(), R.leq.sum(axis=1).tolist()))
    if sig(P) != sig(Q):
        return False
    return nx.is_isomorphic(P.hasse_digraph(), Q.hasse_digraph())


# ---------------------------------------------------------------------------
# block-closed graph lattices

def _is_sigma_graph(n: int, k: int, mask: int) -> bool:
    bd = gr.block_decomposition(gr.Graph(n, mask))
    for b in bd.nontrivial_blocks():
        if len(b) < k:
            return False
        if gr.vertex_set_clique(n, sum(1 << (v - 1) for v in b)) & ~mask:
            return False
    return True


def sigma_brute_force(n: int, k: int) -> set[int]:
    """Oracle: filter all graphs on ``[n]``."""
    if comb(n, 2) > 16:
        raise PosetError("brute-force enumeration is limited to n <= 6")
    return {m for m in range(1 << comb(n, 2)) if _is_sigma_graph(n, k, m)}


def sigma_meet(n: int, k: int, a: int, b: int) -> int:
    """Edge intersection, then deletion of the edges of blocks with fewer than k vertices."""
    m = a & b
    for bm in gr.block_vertex_masks(n, gr.adjacency(n, m)):
        if bm.bit_count() < k:
            m &= ~gr.vertex_set_clique(n, bm)
    return m


def sigma_join(n: int, a: int, b: int) -> int:
    return gr.block_closure_mask(n, a | b)


class SigmaLattice(FinitePoset):
    """Graphs on ``[n]`` whose blocks are isolated vertices or cliques on at least ``k`` vertices."""

    def __init__(self, n: int, k: int, masks: Sequence[int], upper_candidates: dict[int, set[int]]):
        self.n, self.k = n, k
        masks = sorted(masks, key=lambda m: (m.bit_count(), m))
        super().__init__(masks, _mask_leq(np.array(masks, dtype=np.uint64)), f"Sigma_{n},{k}")
        self._upper = upper_candidates

    def graph(self, mask: int) -> gr.Graph:
        return gr.Graph(self.n, mask)

    @cached_property
    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        # in an atomistic lattice every upper cover of g is a join of g with an atom
        out = []
        for g in self.elements:
            cands = self._upper[g]
            for h in cands:
                if not any(c != h and c & ~h == 0 for c in cands):
                    out.append((self.index[g], self.index[h]))
        return tuple(sorted(out))

    def meet(self, a: int, b: int) -> int:
        return sigma_meet(self.n, self.k, a, b)

    def join(self, a: int, b: int) -> int:
        return sigma_join(self.n, a, b)


def sigma_lattice(n: int, k: int) -> SigmaLattice:
    if not 2 <= k <= n:
        raise PosetError(f"need 2 <= k <= n, got k={k}, n={n}")
    if comb(n, 2) > 64:
        raise PosetError("edge masks are limited to 64 bits (n <= 11)")
    atoms = [gr.vertex_set_clique(n, sum(1 << v for v in c)) for c in combinations(range(n), k)]
    upper: dict[int, set[int]] = {}
    frontier = [0]
    seen = {0}
    while frontier:
        nxt = []
        for g in frontier:
            cands = set()
            for a in atoms:
                if a & ~g:
                    h = gr.block_closure_mask(n, g | a)
                    cands.add(h)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            upper[g] = cands
        frontier = nxt
    if len(seen) > MAX_DENSE_SIZE:
        raise PosetError(f"Sigma_{n},{k} has {len(seen)} elements, above the dense-order limit")
    return SigmaLattice(n, k, sorted(seen), upper)


def _vmask(vs: Iterable[int]) -> int:
    return sum(1 << (v - 1) for v in vs)


def _cover_type_flags(n: int, k: int, low: int, high: int) -> tuple[bool, bool, bool]:
    H = gr.Graph(n, low)
    D = gr.Graph(n, high & ~low)
    dadj = D.adjacency()
    dverts = [v + 1 for v in range(n) if dadj[v]]
    comps = gr.connected_components(H)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    blocks = set(gr.block_decomposition(H).nontrivial_blocks())
    ne = len(D)

    t1 = (len(dverts) == k and ne == comb(k, 2)
          and len({comp_of[v] for v in dverts}) == k)

    t2 = False
    bip = _bipartition(D, dverts)
    if bip is not None:
        A, B = bip
        if ne == len(A) * len(B):
            t2 = any(
                A | {v} in blocks and B | {v} in blocks
                for v in range(1, n + 1) if v not in A and v not in B
            )

    t3 = False
    if k > 2 and dverts and _connected_on(D, dverts):
        big = [v for v in dverts if len(D.neighbors(v)) > 1]
        if len(big) == 1:
            centre = big[0]
            leaves = frozenset(v for v in dverts if v != centre)
            t3 = leaves in blocks and comp_of[centre] != comp_of[min(leaves)]
    return t1, t2, t3


def _bipartition(D: gr.Graph, verts: list[int]) -> tuple[frozenset[int], frozenset[int]] | None:
    colour: dict[int, int] = {}
    for s in verts:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in D.neighbors(u):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return None
    A = frozenset(v for v in verts if colour[v] == 0)
    B = frozenset(v for v in verts if colour[v] == 1)
    return (A, B) if A and B else None


def _connected_on(D: gr.Graph, verts: list[int]) -> bool:
    adj = D.adjacency()
    alive = _vmask(verts)
    return gr._connected(adj, alive)


def classify_covers(S: SigmaLattice) -> dict[tuple[int, int], str]:
    """Map each cover ``(lower mask, upper mask)`` to ``'i'``, ``'ii'`` or ``'iii'``."""
    out = {}
    for i, j in S.cover_pairs:
        lo, hi = S.elements[i], S.elements[j]
        flags = _cover_type_flags(S.n, S.k, lo, hi)
        if sum(flags) != 1:
            raise PosetError(f"cover {gr.Graph(S.n, lo)} < {gr.Graph(S.n, hi)} has type flags {flags}")
        out[(lo, hi)] = ("i", "ii", "iii")[flags.index(True)]
    return out


def cover_type(n: int, k: int, low: int, high: int) -> str | None:
    flags = _cover_type_flags(n, k, low, high)
    return ("i", "ii", "iii")[flags.index(True)] if sum(flags) == 1 else None


def components_and_blocks(n: int, mask: int) -> tuple[int, int]:
    """``(c(G), b(G))``: number of components and of blocks with at least two vertices."""
    G = gr.Graph(n, mask)
    return len(gr.connected_components(G)), len(gr.block_decomposition(G).nontrivial_blocks())


def sigma_rank(n: int, k: int, mask: int) -> int:
    c, b = components_and_blocks(n, mask)
    if k == 2:
        return 2 * n - 2 * c - b
    if k == 3:
        return n - c - b
    raise PosetError("closed-form rank functions exist for k = 2, 3 only")


@dataclass(frozen=True)
class RankReport:
    rank_checked: bool
    rank_ok: bool | None
    length: int
    chain_lengths: frozenset[int]

    def as_dict(self) -> dict:
        return {
            "rank_checked": self.rank_checked,
            "rank_ok": self.rank_ok,
            "length": self.length,
            "chain_lengths": sorted(self.chain_lengths),
        }


def maximal_chain_lengths(P: FinitePoset) -> frozenset[int]:
    """Lengths of all maximal chains from bottom to top."""
    reach: list[set[int]] = [set() for _ in range(len(P))]
    reach[0] = {0}
    preds: dict[int, list[int]] = {}
    for i, j in P.cover_pairs:
        preds.setdefault(j, []).append(i)
    for j in range(1, len(P)):
        for i in preds.get(j, ()):
            reach[j].update(l + 1 for l in reach[i])
    return frozenset(reach[-1])


def rank_and_chain_spectrum(S: SigmaLattice) -> RankReport:
    lengths = maximal_chain_lengths(S)
    if S.k in (2, 3):
        ok = sigma_rank(S.n, S.k, 0) == 0 and all(
            sigma_rank(S.n, S.k, S.elements[j]) == sigma_rank(S.n, S.k, S.elements[i]) + 1
            for i, j in S.cover_pairs
        )
        return RankReport(True, ok, max(lengths), lengths)
    return RankReport(False, None, max(lengths), lengths)


def predicted_chain_lengths(n: int, k: int) -> frozenset[int]:
    """Maximal chain lengths stated for ``k > 3``."""
    if k <= 3:
        raise PosetError("the chain-length formula is for k > 3")
    if n < 2 * k - 1:
        return frozenset({n - k + 1})
    return frozenset((n - 2) - t * (k - 3) for t in range(1, (n - 1) // (k - 1) + 1))


def truncated_boolean(n: int, k: int) -> FinitePoset:
    """``{A subset of [n] : |A| >= k}`` together with the empty set."""
    masks = [m for m in range(1 << n) if m == 0 or m.bit_count() >= k]
    return FinitePoset.from_masks(masks, masks, f"B_{n} truncated below {k}")


def coatom_violations(S: SigmaLattice) -> list[int]:
    """Coatoms not of the two allowed shapes."""
    n, k = S.n, S.k
    top = S.index[S.top]
    bad = []
    for i, j in S.cover_pairs:
        if j != top:
            continue
        G = gr.Graph(n, S.elements[i])
        blocks = gr.block_decomposition(G).nontrivial_blocks()
        sizes = sorted(len(b) for b in blocks)
        if gr.is_connected(G) and len(sizes) == 2:
            l, m = sizes
            if k <= l <= m <= n - k + 1 and l + m == n + 1:
                continue
        if k > 2 and sizes == [n - 1] and len(gr.connected_components(G)) == 2:
            continue
        bad.append(S.elements[i])
    return bad


def lower_interval_violations(S: SigmaLattice, cache: dict | None = None) -> list[int]:
    """Elements ``G`` with ``[0, G]`` not isomorphic to the product over its blocks."""
    cache = {} if cache is None else cache
    bad = []
    for g in S.elements:
        sizes = sorted(len(b) for b in gr.block_decomposition(gr.Graph(S.n, g)).nontrivial_blocks())
        factors = []
        for m in sizes:
            if m not in cache:
                cache[m] = sigma_lattice(m, S.k)
            factors.append(cache[m])
        if not is_isomorphic(interval(S, 0, g), product_of(factors)):
            bad.append(g)
    return bad


def upper_interval_violations(S: SigmaLattice) -> list[int]:
    """Connected ``G`` with ``[G, 1]`` not isomorphic to the product of ``Pi_{t_i}``."""
    bad = []
    part = {}
    for g in S.elements:
        G = gr.Graph(S.n, g)
        if not gr.is_connected(G):
            continue
        bd = gr.block_decomposition(G)
        ts = sorted(len(bd.blocks_containing(v)) for v in bd.cutpoints)
        factors = []
        for t in ts:
            if t not in part:
                part[t] = partition_lattice(t)
            factors.append(part[t])
        if not is_isomorphic(interval(S, g, S.top), product_of(factors)):
            bad.append(g)
    return bad


def sigma_fiber_violations(S: SigmaLattice) -> list[tuple[frozenset[int], ...]]:
    """Partitions ``x != 1hat`` of ``Pi_{n,k}`` whose disconnected preimage below ``x`` lacks a unique maximum."""
    n = S.n
    comp = {}
    for g in S.elements:
        G = gr.Graph(n, g)
        if not gr.is_connected(G) or n == 1:
            comp[g] = _canon(gr.connected_components(G))
    bad = []
    for x in gr.set_partitions(list(range(1, n + 1))):
        x = _canon(x)
        if len(x) == 1 or not all(len(b) == 1 or len(b) >= S.k for b in x):
            continue
        fiber = [g for g, p in comp.items() if all(any(b <= c for c in x) for b in p)]
        maxima = [g for g in fiber if not any(h != g and g & ~h == 0 for h in fiber)]
        if len(maxima) != 1:
            bad.append(x)
    return bad


def alpha_brute_force(n: int, k: int, S: SigmaLattice | None = None) -> int:
    """Sum of ``mu(0, G)`` over connected ``G`` in Sigma_{n,k} in which ``n`` is not a cutpoint."""
    if n < k:
        return 0
    S = sigma_lattice(n, k) if S is None else S
    mu = moebius_vector(S)
    total = 0
    for idx, g in enumerate(S.elements):
        G = gr.Graph(n, g)
        if gr.is_connected(G) and n not in gr.cutpoints(G):
            total += int(mu[idx])
    return total


def sigma_moebius(n: int, k: int) -> int:
    """mu(0hat, 1hat) of Sigma_{n,k}."""
    S = sigma_lattice(n, k)
    return int(moebius_vector(S)[-1])

