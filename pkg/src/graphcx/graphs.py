"""Graphs and k-uniform hypergraphs on the vertex set ``{1, ..., n}``.

Edges (and hyperedges) are indexed by their position in the colexicographic
order of ``k``-subsets of ``[n]``; an edge set is stored as an integer bit
mask over that universe.  Vertex ``v`` of ``[n]`` occupies bit ``v - 1`` in
vertex masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph parameters or input."""


# ---------------------------------------------------------------------------
# colex universes

@lru_cache(maxsize=None)
def subset_universe(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All ``k``-subsets of ``{1..n}`` in colex order."""
    return tuple(sorted(combinations(range(1, n + 1), k), key=lambda s: s[::-1]))


@lru_cache(maxsize=None)
def _subset_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subset_universe(n, k))}


def colex_rank(subset: Iterable[int]) -> int:
    """Colex index of a set of positive integers (independent of ``n``)."""
    return sum(comb(v - 1, i + 1) for i, v in enumerate(sorted(subset)))


def subset_index(n: int, subset: Iterable[int]) -> int:
    s = tuple(sorted(subset))
    try:
        return _subset_index(n, len(s))[s]
    except KeyError:
        raise GraphError(f"{s} is not a subset of [{n}]") from None


@lru_cache(maxsize=None)
def clique_masks(n: int, k: int) -> tuple[int, ...]:
    """For every k-subset (colex order) the edge mask of its clique in K_n."""
    pairs = _subset_index(n, 2)
    out = []
    for s in subset_universe(n, k):
        m = 0
        for e in combinations(s, 2):
            m |= 1 << pairs[e]
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def edge_endpoints(n: int) -> tuple[tuple[int, int], ...]:
    """0-based endpoints of each edge index of K_n."""
    return tuple((a - 1, b - 1) for a, b in subset_universe(n, 2))


def adjacency(n: int, mask: int) -> list[int]:
    """Neighbour masks (bit ``v-1`` for vertex ``v``) of the graph with edge mask ``mask``."""
    adj = [0] * n
    ends = edge_endpoints(n)
    while mask:
        low = mask & -mask
        a, b = ends[low.bit_length() - 1]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        mask ^= low
    return adj


def complete_mask(n: int, k: int = 2) -> int:
    return (1 << comb(n, k)) - 1


def vertex_set_clique(n: int, vertices: int) -> int:
    """Edge mask of the clique on a 0-based vertex mask."""
    idx = _subset_index(n, 2)
    vs = [v + 1 for v in range(n) if vertices >> v & 1]
    m = 0
    for e in combinations(vs, 2):
        m |= 1 << idx[e]
    return m


# ---------------------------------------------------------------------------
# connectivity kernels on adjacency lists

def _reach(adj: Sequence[int], alive: int, start: int) -> int:
    seen = frontier = start
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & alive & ~seen
        seen |= frontier
    return seen


def _connected(adj: Sequence[int], alive: int) -> bool:
    if not alive:
        return True
    return _reach(adj, alive, alive & -alive) == alive


def _components(adj: Sequence[int], alive: int) -> list[int]:
    comps = []
    rest = alive
    while rest:
        c = _reach(adj, alive, rest & -rest)
        comps.append(c)
        rest &= ~c
    return comps


def _i_connected(adj: Sequence[int], n: int, i: int) -> bool:
    full = (1 << n) - 1
    for j in range(i):
        for removed in combinations(range(n), j):
            alive = full
            for v in removed:
                alive &= ~(1 << v)
            if not _connected(adj, alive):
                return False
    return True


_TWO_CONN: dict[tuple[int, int], bool] = {}


def two_connected_mask(n: int, mask: int) -> bool:
    """Memoised 2-connectivity of the graph with edge mask ``mask`` (n >= 3)."""
    key = (n, mask)
    hit = _TWO_CONN.get(key)
    if hit is None:
        hit = _i_connected(adjacency(n, mask), n, 2)
        _TWO_CONN[key] = hit
    return hit


def i_connected_mask(n: int, mask: int, i: int) -> bool:
    if i == 2:
        return two_connected_mask(n, mask)
    return _i_connected(adjacency(n, mask), n, i)


def _check_i(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise GraphError(f"connectivity parameter i={i} outside [1, {n - 1}]")


def _mask_to_vertices(vmask: int) -> frozenset[int]:
    out = []
    v = 1
    while vmask:
        if vmask & 1:
            out.append(v)
        vmask >>= 1
        v += 1
    return frozenset(out)


def _canonical_partition(blocks: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(blocks, key=min))


# ---------------------------------------------------------------------------
# graph types

@dataclass(frozen=True)
class Graph:
    """Simple graph on ``[n]``; ``mask`` is the edge set over the colex pair universe."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graphs need at least one vertex")
        if self.mask < 0 or self.mask >> comb(self.n, 2):
            raise GraphError("edge index outside the C(n,2) universe")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        m = 0
        for e in edges:
            a, b = sorted(e)
            if a == b:
                raise GraphError("loops are not allowed")
            m |= 1 << subset_index(n, (a, b))
        return cls(n, m)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> Graph:
        m = 0
        for i in indices:
            m |= 1 << i
        return cls(n, m)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, complete_mask(n))

    def edge_indices(self) -> list[int]:
        return [i for i in range(self.mask.bit_length()) if self.mask >> i & 1]

    def edges(self) -> list[tuple[int, int]]:
        uni = subset_universe(self.n, 2)
        return [uni[i] for i in self.edge_indices()]

    def __len__(self) -> int:
        return self.mask.bit_count()

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.mask >> subset_index(self.n, (a, b)) & 1)

    def add(self, a: int, b: int) -> Graph:
        return Graph(self.n, self.mask | 1 << subset_index(self.n, (a, b)))

    def remove(self, a: int, b: int) -> Graph:
        return Graph(self.n, self.mask & ~(1 << subset_index(self.n, (a, b))))

    def adjacency(self) -> list[int]:
        return adjacency(self.n, self.mask)

    def neighbors(self, v: int) -> frozenset[int]:
        return _mask_to_vertices(self.adjacency()[v - 1])

    def delete_vertex_components(self, v: int) -> tuple[frozenset[int], ...]:
        """Partition of ``[n] - {v}`` into components of ``G - v``."""
        alive = ((1 << self.n) - 1) & ~(1 << (v - 1))
        return _canonical_partition(_mask_to_vertices(c) for c in _components(self.adjacency(), alive))

    def to_json(self) -> dict:
        return {"n": self.n, "k": 2, "edges": self.edge_indices()}

    def __repr__(self) -> str:
        body = " ".join(f"{a}{b}" if self.n < 10 else f"{a}-{b}" for a, b in self.edges())
        return f"Graph({self.n}: {body or 'empty'})"


@dataclass(frozen=True)
class HyperGraph:
    """k-uniform hypergraph on ``[n]``; ``mask`` ranges over the colex k-subset universe."""

    n: int
    k: int
    mask: int = 0

    def __post_init__(self):
        if not 2 <= self.k <= self.n:
            raise GraphError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.mask < 0 or self.mask >> comb(self.n, self.k):
            raise GraphError("hyperedge index outside the C(n,k) universe")

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]]) -> HyperGraph:
        m = 0
        for e in edges:
            s = tuple(sorted(e))
            if len(set(s)) != k:
                raise GraphError(f"hyperedge {s} does not have {k} distinct vertices")
            m |= 1 << subset_index(n, s)
        return cls(n, k, m)

    def edge_indices(self) -> list[int]:
        return [i for i in range(self.mask.bit_length()) if self.mask >> i & 1]

    def edges(self) -> list[tuple[int, ...]]:
        uni = subset_universe(self.n, self.k)
        return [uni[i] for i in self.edge_indices()]

    def __len__(self) -> int:
        return self.mask.bit_count()

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": self.edge_indices()}


def underlying_mask(n: int, k: int, mask: int) -> int:
    if k == 2:
        return mask
    cl = clique_masks(n, k)
    g = 0
    while mask:
        low = mask & -mask
        g |= cl[low.bit_length() - 1]
        mask ^= low
    return g


def underlying_graph(K: HyperGraph) -> Graph:
    """Union of the k-cliques spanned by the hyperedges of ``K``."""
    return Graph(K.n, underlying_mask(K.n, K.k, K.mask))


def from_json(data: dict) -> Graph | HyperGraph:
    n, k = data["n"], data.get("k", 2)
    m = 0
    for i in data["edges"]:
        m |= 1 << int(i)
    return Graph(n, m) if k == 2 else HyperGraph(n, k, m)


def _as_graph(G: Graph | HyperGraph) -> Graph:
    return underlying_graph(G) if isinstance(G, HyperGraph) else G


# ---------------------------------------------------------------------------
# connectivity

def connected_components(G: Graph | HyperGraph) -> tuple[frozenset[int], ...]:
    G = _as_graph(G)
    comps = _components(G.adjacency(), (1 << G.n) - 1)
    return _canonical_partition(_mask_to_vertices(c) for c in comps)


def is_connected(G: Graph | HyperGraph) -> bool:
    G = _as_graph(G)
    return _connected(G.adjacency(), (1 << G.n) - 1)


def is_i_connected(G: Graph | HyperGraph, i: int) -> bool:
    """True iff deleting any fewer than ``i`` vertices leaves a connected graph."""
    G = _as_graph(G)
    _check_i(G.n, i)
    return i_connected_mask(G.n, G.mask, i)


def menger_i_connected(G: Graph | HyperGraph, i: int) -> bool:
    """Disjoint-path form of i-connectivity, via vertex-capacity max flow."""
    import networkx as nx
    from networkx.algorithms.connectivity import local_node_connectivity

    G = _as_graph(G)
    _check_i(G.n, i)
    H = nx.Graph()
    H.add_nodes_from(range(1, G.n + 1))
    H.add_edges_from(G.edges())
    for u, v in combinations(range(1, G.n + 1), 2):
        if not H.has_edge(u, v) and local_node_connectivity(H, u, v) < i:
            return False
    return True


# ---------------------------------------------------------------------------
# blocks

@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks of a graph ordered by minimum vertex, with cutpoints.

    ``block_forest`` is the block-cutpoint incidence forest: its nodes are
    ``('B', i)`` for block ``i`` and ``('c', v)`` for cutpoint ``v``.
    ``block_graph`` lists pairs of blocks sharing a vertex.
    """

    n: int
    blocks: tuple[frozenset[int], ...]
    cutpoints: frozenset[int]
    block_forest: tuple[tuple[tuple[str, int], tuple[str, int]], ...] = field(repr=False)
    block_graph: tuple[tuple[int, int], ...] = field(repr=False)

    def nontrivial_blocks(self) -> tuple[frozenset[int], ...]:
        return tuple(b for b in self.blocks if len(b) >= 2)

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_vertex_masks(n: int, adj: Sequence[int]) -> list[int]:
    """Vertex masks of the blocks (size >= 2) of a graph, via Tarjan lowpoints."""
    index = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, adj[root])]
        while stack:
            v, parent, todo = stack[-1]
            if todo:
                w_bit = todo & -todo
                stack[-1] = (v, parent, todo ^ w_bit)
                w = w_bit.bit_length() - 1
                if index[w] == -1:
                    edge_stack.append((v, w))
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, adj[w]))
                elif w != parent and index[w] < index[v]:
                    edge_stack.append((v, w))
                    if index[w] < low[v]:
                        low[v] = index[w]
                continue
            stack.pop()
            if parent >= 0:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] >= index[parent]:
                    vm = 0
                    while True:
                        a, b = edge_stack.pop()
                        vm |= 1 << a | 1 << b
                        if (a, b) == (parent, v):
                            break
                    blocks.append(vm)
    return blocks


def block_decomposition(G: Graph | HyperGraph) -> BlockDecomposition:
    G = _as_graph(G)
    n = G.n
    adj = G.adjacency()
    bmasks = block_vertex_masks(n, adj)
    covered = 0
    for b in bmasks:
        covered |= b
    for v in range(n):
        if not covered >> v & 1:
            bmasks.append(1 << v)
    blocks = sorted((_mask_to_vertices(b) for b in bmasks), key=lambda b: (min(b), sorted(b)))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cut = frozenset(v for v, c in count.items() if c >= 2)
    forest = tuple(
        (("B", i), ("c", v)) for i, b in enumerate(blocks) for v in sorted(b) if v in cut
    )
    bgraph = tuple(
        (i, j) for i, j in combinations(range(len(blocks)), 2) if len(blocks[i] & blocks[j]) == 1
    )
    return BlockDecomposition(n, tuple(blocks), cut, forest, bgraph)


def cutpoints(G: Graph | HyperGraph) -> frozenset[int]:
    return block_decomposition(G).cutpoints


def block_closure_mask(n: int, mask: int) -> int:
    """Edge mask of the graph completing every block of ``mask`` to a clique."""
    out = 0
    for b in block_vertex_masks(n, adjacency(n, mask)):
        out |= vertex_set_clique(n, b)
    return out


def block_closure(K: Graph | HyperGraph) -> Graph | HyperGraph:
    """Complete k-graph on every block of the underlying graph."""
    if isinstance(K, Graph):
        return Graph(K.n, block_closure_mask(K.n, K.mask))
    n, k = K.n, K.k
    g = underlying_mask(n, k, K.mask)
    idx = _subset_index(n, k)
    out = 0
    for b in block_vertex_masks(n, adjacency(n, g)):
        vs = [v + 1 for v in range(n) if b >> v & 1]
        for s in combinations(vs, k):
            out |= 1 << idx[s]
    return HyperGraph(n, k, out)


def separating_vertices(G: Graph | HyperGraph) -> frozenset[int]:
    """Vertices ``v`` with ``G - v`` disconnected.

    Differs from :func:`cutpoints` on disconnected graphs, where nearly every
    vertex separates.
    """
    G = _as_graph(G)
    adj = G.adjacency()
    full = (1 << G.n) - 1
    return frozenset(v + 1 for v in range(G.n) if not _connected(adj, full & ~(1 << v)))


def set_partitions(items: Sequence) -> Iterable[tuple[frozenset, ...]]:
    """All set partitions of ``items``, blocks ordered by first occurrence."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield (frozenset([first]),) + p
        for i in range(len(p)):
            yield p[:i] + (p[i] | {first},) + p[i + 1:]
