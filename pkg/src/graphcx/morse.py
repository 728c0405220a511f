"""Matchings on face posets: digraphs, acyclicity, collapses, and the
explicit acyclic perfect matching on the complexes ``Delta(k-1, k)``.

Faces are bit masks as in :mod:`graphcx.complexes`.  The empty face is a
node of every matching digraph.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import networkx as nx

from . import graphs as gr
from .complexes import SimplicialComplex, _bits, _or_extend


class MorseError(ValueError):
    """Invalid matching or violated hypothesis."""


class CollapseError(MorseError):
    """A collapse sequence could not be completed."""


def _dim(face: int) -> int:
    return face.bit_count() - 1


def _require_complete(cx: SimplicialComplex) -> None:
    if not cx.complete:
        raise MorseError("matching digraphs need every face enumerated; call enumerate() first")


# ---------------------------------------------------------------------------
# digraphs

@dataclass(frozen=True)
class MatchingDigraph:
    """Hasse diagram of the face poset, each edge (coface, face) with an orientation flag.

    ``up[e]`` is True when edge ``e`` points from face to coface.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    up: tuple[bool, ...]
    index: dict[int, int] = field(repr=False, compare=False)

    def arcs(self) -> list[tuple[int, int]]:
        return [(f, c) if u else (c, f) for (c, f), u in zip(self.edges, self.up)]

    def apply(self, matching: MorseMatching) -> MatchingDigraph:
        """Reverse the edges of ``matching``."""
        idx = self.index
        flip = set()
        for face, coface in matching.pairs:
            if face not in idx or coface not in idx:
                raise MorseError("matching uses faces outside the complex")
            flip.add((idx[coface], idx[face]))
        up = tuple(e in flip for e in self.edges)
        if sum(up) != len(flip):
            raise MorseError("matching contains a non-Hasse pair")
        return MatchingDigraph(self.nodes, self.edges, up, self.index)

    def to_networkx(self) -> nx.DiGraph:
        D = nx.DiGraph()
        D.add_nodes_from(range(len(self.nodes)))
        D.add_edges_from(self.arcs())
        return D


def build_matching_digraph(cx: SimplicialComplex) -> MatchingDigraph:
    _require_complete(cx)
    nodes = tuple(sorted(cx.all_faces(), key=lambda f: (f.bit_count(), f)))
    index = {f: i for i, f in enumerate(nodes)}
    edges = []
    for i, f in enumerate(nodes):
        for v in _bits(f):
            edges.append((i, index[f ^ 1 << v]))
    return MatchingDigraph(nodes, tuple(edges), (False,) * len(edges), index)


# ---------------------------------------------------------------------------
# matchings

@dataclass(frozen=True)
class MorseMatching:
    """Set of Hasse pairs ``(face, coface)``; ``steps`` optionally tags each pair."""

    pairs: frozenset[tuple[int, int]]
    steps: dict[tuple[int, int], int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> MorseMatching:
        return cls(frozenset((int(a), int(b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def partner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def lines(self) -> list[str]:
        """Export as ``face ↔ coface`` lines of sorted vertex indices."""
        rows = sorted(self.pairs, key=lambda p: (p[0].bit_count(), p[0], p[1]))
        return [f"{_bits(a)} ↔ {_bits(b)}" for a, b in rows]


@dataclass(frozen=True)
class MatchingReport:
    matching: bool
    perfect: bool
    acyclic: bool

    @property
    def ok(self) -> bool:
        return self.matching and self.perfect and self.acyclic

    def as_dict(self) -> dict[str, bool]:
        return {"matching": self.matching, "perfect": self.perfect, "acyclic": self.acyclic}


def _check_hasse(cx: SimplicialComplex, M: MorseMatching) -> None:
    for face, coface in M.pairs:
        diff = coface ^ face
        if face & ~coface or diff.bit_count() != 1:
            raise MorseError(f"pair {_bits(face)} / {_bits(coface)} is not a Hasse edge")
        if coface not in cx:
            raise MorseError(f"{_bits(coface)} is not a face")


def _is_matching(M: MorseMatching) -> bool:
    seen = set()
    for a, b in M.pairs:
        if a in seen or b in seen:
            return False
        seen.add(a)
        seen.add(b)
    return True


def _has_cycle(succ: dict[int, list[int]]) -> bool:
    """Iterative Tarjan; True when some strongly connected component has >= 2 nodes."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                size = 0
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    size += 1
                    if w == v:
                        break
                if size > 1:
                    return True
    return False


def layered_cycle_search(cx: SimplicialComplex, M: MorseMatching) -> int | None:
    """Lowest dimension ``d`` whose layer ``d, d+1`` of ``D_M`` has a directed cycle."""
    matched_up = {a: b for a, b in M.pairs}
    top = cx.dimension
    for d in range(-1, top):
        # only faces matched into the layer can lie on a cycle there
        lows = [f for f in cx.faces(d) if f in matched_up]
        if not lows:
            continue
        highs = {matched_up[f] for f in lows}
        succ: dict[int, list[int]] = {}
        for f in lows:
            succ.setdefault(f, []).append(matched_up[f])
        for c in highs:
            succ[c] = [c ^ 1 << v for v in _bits(c) if matched_up.get(c ^ 1 << v) != c]
        if _has_cycle(succ):
            return d
    return None


def full_digraph_acyclic(cx: SimplicialComplex, M: MorseMatching) -> bool:
    """Oracle: cycle search on the whole reoriented Hasse diagram."""
    D = build_matching_digraph(cx).apply(M)
    return nx.is_directed_acyclic_graph(D.to_networkx())


def is_acyclic_perfect_matching(cx: SimplicialComplex, M: MorseMatching) -> MatchingReport:
    _require_complete(cx)
    _check_hasse(cx, M)
    matching = _is_matching(M)
    perfect = matching and 2 * len(M.pairs) == sum(len(cx.faces(d)) for d in range(-1, cx.dimension + 1))
    acyclic = layered_cycle_search(cx, M) is None
    return MatchingReport(matching, perfect, acyclic)


# ---------------------------------------------------------------------------
# collapses

@dataclass(frozen=True)
class CollapseTrace:
    """Elementary collapses ``(free face, containing face)`` in execution order."""

    steps: tuple[tuple[int, int], ...]
    point: int

    def __len__(self) -> int:
        return len(self.steps)


def collapse_by_matching(cx: SimplicialComplex, M: MorseMatching) -> CollapseTrace:
    """Remove sources of ``D_M`` pairwise until nothing is left.

    The final step removes the empty face together with the surviving vertex.
    """
    rep = is_acyclic_perfect_matching(cx, M)
    if not rep.matching:
        raise CollapseError("not a matching: some face occurs in two pairs")
    if not rep.perfect:
        unmatched = sum(len(cx.faces(d)) for d in range(-1, cx.dimension + 1)) - 2 * len(M.pairs)
        raise CollapseError(f"matching is not perfect: {unmatched} faces unmatched")
    partner = M.partner()
    faces = cx.all_faces()
    indeg = dict.fromkeys(faces, 0)

    def out_arcs(x: int) -> list[int]:
        p = partner[x]
        out = [x ^ 1 << v for v in _bits(x) if x ^ 1 << v != p]
        if p & ~x:
            out.append(p)
        return out

    for x in faces:
        for y in out_arcs(x):
            indeg[y] += 1
    order = {f: (f.bit_count(), f) for f in faces}
    heap = [order[f] for f in faces if indeg[f] == 0]
    heapq.heapify(heap)
    removed = set()
    steps = []
    while heap:
        _, x = heapq.heappop(heap)
        if x in removed:
            continue
        y = partner[x]
        if not y & ~x or indeg[y] != 1:
            raise CollapseError(f"source {_bits(x)} is not a free face of {_bits(y)}")
        removed.add(x)
        removed.add(y)
        steps.append((x, y))
        for z in out_arcs(x) + out_arcs(y):
            if z in removed:
                continue
            indeg[z] -= 1
            if indeg[z] == 0:
                heapq.heappush(heap, order[z])
    if len(removed) != len(faces):
        raise CollapseError(
            f"directed cycle: no source among the remaining {len(faces) - len(removed)} faces"
        )
    return CollapseTrace(tuple(steps), steps[-1][1])


# ---------------------------------------------------------------------------
# the map phi and the complexes Delta(k), Delta(k-1, k)

Partition = tuple[frozenset[int], ...]


def phi_map(G: gr.Graph) -> tuple[frozenset[int], Partition]:
    """``(N_G(1), components of G - 1)`` for a graph that is not 2-connected."""
    if G.n >= 3 and gr.two_connected_mask(G.n, G.mask):
        raise MorseError("phi is defined on graphs that are not 2-connected")
    return G.neighbors(1), G.delete_vertex_components(1)


def refines(p: Partition, q: Partition) -> bool:
    return all(any(b <= c for c in q) for b in p)


def phi_leq(a: tuple[frozenset[int], Partition], b: tuple[frozenset[int], Partition]) -> bool:
    return a[0] <= b[0] and refines(a[1], b[1])


def phi_fiber_top(n: int, S: Iterable[int], pi: Partition) -> gr.Graph:
    """Edges ``1t`` for ``t`` in ``S`` plus a clique on every block of ``pi``."""
    m = 0
    for block in pi:
        m |= gr.vertex_set_clique(n, sum(1 << (v - 1) for v in block))
    G = gr.Graph(n, m)
    for t in S:
        G = G.add(1, t)
    return G


def _edge_index(n: int, a: int, b: int) -> int:
    return gr.subset_index(n, (a, b))


def _delta_complex(n: int, forbidden_from: int, extra: int, name: str) -> SimplicialComplex:
    ends = gr.edge_endpoints(n)
    contrib = [0 if (a == 0 and b >= forbidden_from) else 1 << e for e, (a, b) in enumerate(ends)]

    def extend(state, v):
        if not contrib[v]:
            return None
        s = state | contrib[v]
        return None if gr.two_connected_mask(n, s | extra) else s

    return SimplicialComplex(comb(n, 2), extend, 0, labels=gr.subset_universe(n, 2), name=name)


def build_delta_k(n: int, k: int) -> SimplicialComplex:
    """Graphs in Delta_n^2 with ``N_G(1)`` inside ``{2..k}``."""
    if not 2 <= k <= n - 1:
        raise MorseError(f"need 2 <= k <= n-1, got k={k}, n={n}")
    return _delta_complex(n, k, 0, f"Delta({k}) n={n}")


def build_delta_k1k(n: int, k: int) -> SimplicialComplex:
    """Graphs ``G`` in Delta(k-1) with ``G + 1k`` in Delta(k)."""
    if not 3 <= k <= n - 1:
        raise MorseError(f"need 3 <= k <= n-1, got k={k}, n={n}")
    return _delta_complex(n, k - 1, 1 << _edge_index(n, 1, k), f"Delta({k - 1},{k}) n={n}")


def apm_class(n: int, k: int, mask: int) -> str:
    """``'I'``, ``'J'`` or ``'F'`` for a face of Delta(k-1, k)."""
    G = gr.Graph(n, mask)
    if not G.neighbors(1):
        return "I"
    H = gr.Graph(n, mask | 1 << _edge_index(n, 1, k))
    return "F" if gr.separating_vertices(H) == {1} else "J"


def s_set(n: int, k: int, mask: int) -> frozenset[int]:
    """Neighbours ``x`` of 1 in ``H = G + 1k`` joined to ``n`` by a path avoiding 1 and ``N_H(1) - x``."""
    H = gr.Graph(n, mask | 1 << _edge_index(n, 1, k))
    adj = H.adjacency()
    full = (1 << n) - 1
    nbr = adj[0]
    out = []
    for x in range(1, n):
        if not nbr >> x & 1:
            continue
        alive = full & ~1 & ~(nbr & ~(1 << x))
        if gr._reach(adj, alive, 1 << x) >> (n - 1) & 1:
            out.append(x + 1)
    return frozenset(out)


def apm_partner(n: int, k: int, mask: int) -> tuple[int, int]:
    """Partner face and the step (1, 2 or 3) of the construction producing it."""
    cls = apm_class(n, k, mask)
    if cls == "I":
        return mask ^ 1 << _edge_index(n, 2, 3), 1
    if cls == "J":
        x = min(gr.Graph(n, mask).neighbors(1))
        return mask ^ 1 << _edge_index(n, x, k), 2
    S = sorted(s_set(n, k, mask))
    if len(S) < 2:
        raise MorseError(f"|S(G)| < 2 for {gr.Graph(n, mask)}")
    return mask ^ 1 << _edge_index(n, S[0], S[1]), 3


def apm_matching(n: int, k: int, cx: SimplicialComplex | None = None) -> MorseMatching:
    """The three-step matching on Delta(k-1, k); raises if it is not an involution."""
    if not 3 <= k <= n - 1:
        raise MorseError(f"need 3 <= k <= n-1, got k={k}, n={n}")
    if cx is None:
        cx = build_delta_k1k(n, k).enumerate()
    pairs = {}
    for f in cx.all_faces():
        p, step = apm_partner(n, k, f)
        back, step2 = apm_partner(n, k, p) if p in cx else (None, None)
        if back != f or step2 != step:
            raise MorseError(f"step {step} partner of {gr.Graph(n, f)} is not matched back")
        key = (f, p) if f < p else (p, f)
        pairs[key] = step
    return MorseMatching(frozenset(pairs), pairs)


def phi_fiber_violations(n: int) -> list[tuple[frozenset[int], Partition, int]]:
    """Pairs ``(S, pi)`` whose lower phi-fiber lacks a unique maximal graph.

    Runs over the proper part of ``B_{n-1} x Pi_{n-1}`` restricted to
    ``pi != top`` or ``|S| <= 1``; the third entry is the number of maxima.
    """
    from itertools import combinations as _comb

    cx = SimplicialComplex(comb(n, 2), _or_extend([1 << e for e in range(comb(n, 2))],
                                                   lambda g: not gr.two_connected_mask(n, g)), 0)
    graphs = [f for f in cx.enumerate().all_faces() if f]
    images = {g: phi_map(gr.Graph(n, g)) for g in graphs}
    rest = list(range(2, n + 1))
    top_pi = (frozenset(rest),)
    bottom_pi = tuple(frozenset([v]) for v in rest)
    bad = []
    for r in range(len(rest) + 1):
        for S in map(frozenset, _comb(rest, r)):
            for pi in gr.set_partitions(rest):
                pi = tuple(sorted(pi, key=min))
                if (not S and pi == bottom_pi) or (len(S) == len(rest) and pi == top_pi):
                    continue
                if pi == top_pi and len(S) > 1:
                    continue
                fiber = [g for g in graphs if phi_leq(images[g], (S, pi))]
                maxima = [g for g in fiber if not any(h != g and g & ~h == 0 for h in fiber)]
                if len(maxima) != 1 or maxima[0] != phi_fiber_top(n, S, pi).mask:
                    bad.append((S, pi, len(maxima)))
    return bad
