"""Simplicial complexes over a labelled vertex universe ``0..m-1``.

A face is an integer bit mask over the universe.  A complex is described by
a membership rule (an incremental ``extend`` function) or by a facet list,
and its faces are enumerated dimension by dimension on demand.  Every face
``F`` is generated exactly once, from its prefix ``F`` minus its largest
vertex, which is itself a face by downward closure.

Faces within a dimension are kept sorted by mask value, i.e. in colex order
of their vertex sets; boundary matrices and homology generators use that
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from . import graphs as gr


class ComplexError(ValueError):
    """Invalid complex parameters or unsupported request."""


class MissingDimension(ComplexError):
    """Faces of a requested dimension were never enumerated."""


class TooLarge(ComplexError):
    """Enumeration would exceed the configured face budget."""


# extend(state, v) -> new state, or None when face + v is not a face
Extend = Callable[[object, int], object]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class SimplicialComplex:
    """Downward-closed family of subsets of ``range(size)``; always contains the empty face."""

    def __init__(
        self,
        size: int,
        extend: Extend | None = None,
        start: object = None,
        *,
        facets: Iterable[int] | None = None,
        labels: Sequence | None = None,
        name: str = "",
    ):
        self.size = size
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.facets = None if facets is None else sorted(set(facets))
        if extend is None:
            if self.facets is None:
                raise ComplexError("a complex needs a membership rule or a facet list")
            extend, start = self._facet_extend(), 0
        self._extend = extend
        self._start = start
        # enumerated levels: dim -> (sorted faces, states aligned with faces)
        self._faces: dict[int, list[int]] = {-1: [0]}
        self._states: dict[int, list[object]] = {-1: [start]}
        self._top: int | None = None  # known top dimension once exhausted

    # -- membership ---------------------------------------------------------

    def _facet_extend(self) -> Extend:
        facets = self.facets

        def extend(state, v):
            m = state | 1 << v
            for f in facets:
                if m & ~f == 0:
                    return m
            return None

        return extend

    def state_of(self, face: int):
        state = self._start
        for v in _bits(face):
            state = self._extend(state, v)
            if state is None:
                return None
        return state

    def __contains__(self, face: int) -> bool:
        if face < 0 or face >> self.size:
            return False
        return self.state_of(face) is not None

    def contains_vertices(self, vertices: Iterable[int]) -> bool:
        m = 0
        for v in vertices:
            m |= 1 << v
        return m in self

    # -- enumeration --------------------------------------------------------

    def _grow(self, d: int, limit: int | None = None) -> bool:
        """Enumerate dimension ``d`` from dimension ``d-1``; False once empty."""
        if d in self._faces:
            return bool(self._faces[d])
        if self._top is not None and d > self._top:
            return False
        if d - 1 not in self._states:
            if not self._grow(d - 1):
                return False
        prev = self._faces[d - 1]
        prev_states = self._states[d - 1]
        ext = self._extend
        size = self.size
        faces, states = [], []
        for f, st in zip(prev, prev_states):
            for v in range(f.bit_length(), size):
                s2 = ext(st, v)
                if s2 is not None:
                    faces.append(f | 1 << v)
                    states.append(s2)
            if limit is not None and len(faces) > limit:
                raise TooLarge(f"{self.name or 'complex'} has more than {limit} faces in dimension {d}")
        if faces:
            order = sorted(range(len(faces)), key=faces.__getitem__)
            faces = [faces[i] for i in order]
            states = [states[i] for i in order]
        self._faces[d] = faces
        self._states[d] = states
        if not faces:
            self._top = d - 1
        return bool(faces)

    def enumerate(self, max_dim: int | None = None, max_faces: int | None = None) -> SimplicialComplex:
        """Enumerate all faces (of dimension at most ``max_dim``).

        Raises :class:`TooLarge` once more than ``max_faces`` faces are held.
        """
        d = 0
        while max_dim is None or d <= max_dim:
            limit = None if max_faces is None else max_faces - self.num_faces()
            if not self._grow(d, limit):
                break
            d += 1
        return self

    def window(self, d: int, max_faces: int | None = None) -> SimplicialComplex:
        """Enumerate dimensions ``d-1, d, d+1`` and drop everything below them.

        ``max_faces`` bounds the faces held in dimensions ``d-1..d+1``.
        """
        for e in range(0, d + 2):
            if e >= d - 1 and max_faces is not None:
                held = sum(len(self._faces.get(x, ())) for x in range(d - 1, e))
                limit = max_faces - held
            else:
                limit = None
            grown = self._grow(e, limit)
            # levels below e-1 are no longer needed for growth
            for x in list(self._states):
                if 0 <= x < min(e - 1, d - 1):
                    self._states.pop(x)
                    self._faces.pop(x)
            if not grown:
                break
        return self

    def release_states(self) -> None:
        """Free per-face membership states once no further growth is needed."""
        top = max(self._states)
        for e in list(self._states):
            if e != top:
                self._states.pop(e)

    @property
    def complete(self) -> bool:
        return self._top is not None and all(e in self._faces for e in range(-1, self._top + 1))

    @property
    def dimension(self) -> int:
        if self._top is None:
            self.enumerate()
        return self._top

    def has_dim(self, d: int) -> bool:
        return d in self._faces or (self._top is not None and d > self._top)

    def faces(self, d: int) -> list[int]:
        if d in self._faces:
            return self._faces[d]
        if self._top is not None and d > self._top:
            return []
        raise MissingDimension(f"dimension {d} of {self.name or 'complex'} is not enumerated")

    def all_faces(self) -> list[int]:
        if not self.complete:
            raise ComplexError("full face enumeration required")
        return [f for d in range(-1, self._top + 1) for f in self._faces[d]]

    def face_set(self) -> set[int]:
        return set(self.all_faces())

    def num_faces(self) -> int:
        return sum(len(v) for v in self._faces.values())

    def maximal_faces(self) -> list[int]:
        """Facets by brute force over the enumerated faces."""
        out = []
        for f in self.all_faces():
            if all(f >> v & 1 or (f | 1 << v) not in self for v in range(self.size)):
                out.append(f)
        return sorted(out)

    def decode(self, face: int) -> tuple:
        vs = _bits(face)
        if self.labels is None:
            return tuple(vs)
        return tuple(self.labels[v] for v in vs)

    def __repr__(self) -> str:
        known = {d: len(f) for d, f in sorted(self._faces.items())}
        return f"SimplicialComplex({self.name or '?'}, universe={self.size}, faces={known})"


# ---------------------------------------------------------------------------
# f-vectors

@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]  # counts[0] = f_{-1} = 1, counts[d + 1] = f_d

    def __getitem__(self, d: int) -> int:
        return self.counts[d + 1] if -1 <= d < len(self.counts) - 1 else 0

    @property
    def reduced_euler(self) -> int:
        return sum(-c if i % 2 == 0 else c for i, c in enumerate(self.counts))

    def as_dict(self) -> dict[int, int]:
        return {i - 1: c for i, c in enumerate(self.counts)}


def f_vector(cx: SimplicialComplex) -> FVector:
    if not cx.complete:
        cx.enumerate()
    if not cx.complete:
        raise ComplexError("f-vector needs full face enumeration")
    return FVector(tuple(len(cx.faces(d)) for d in range(-1, cx.dimension + 1)))


def reduced_euler(cx: SimplicialComplex) -> int:
    return f_vector(cx).reduced_euler


# ---------------------------------------------------------------------------
# graph complexes

def _or_extend(contrib: Sequence[int], accept: Callable[[int], bool]) -> Extend:
    def extend(state, v):
        s = state | contrib[v]
        return s if accept(s) else None

    return extend


def not_i_connected_complex(n: int, k: int, i: int, dim_bound: int | None = None) -> SimplicialComplex:
    """Complex of k-graphs on ``[n]`` that are not i-connected.

    Vertices are the k-subsets of ``[n]`` in colex order.  The state carried
    for a face is the edge mask of its underlying graph.
    """
    if not 2 <= k <= n:
        raise ComplexError(f"need 2 <= k <= n, got k={k}, n={n}")
    if not 1 <= i <= n - 1:
        raise ComplexError(f"need 1 <= i <= n-1, got i={i}, n={n}")
    contrib = gr.clique_masks(n, k)
    if i == 2:
        cache = gr._TWO_CONN

        def accept(g):
            hit = cache.get((n, g))
            if hit is None:
                hit = gr.two_connected_mask(n, g)
            return not hit
    else:
        seen: dict[int, bool] = {}

        def accept(g):
            hit = seen.get(g)
            if hit is None:
                hit = seen[g] = not gr.i_connected_mask(n, g, i)
            return hit

    name = f"Delta_{n}^{i}" if k == 2 else f"Delta_{n},{k}^{i}"
    cx = SimplicialComplex(comb(n, k), _or_extend(contrib, accept), 0,
                           labels=gr.subset_universe(n, k), name=name)
    if dim_bound is not None:
        cx.enumerate(dim_bound)
    return cx


def maximal_separable_facets(n: int, i: int) -> list[int]:
    """Edge masks of the maximal not-i-connected graphs: K_n minus all B-C edges."""
    if not 2 <= i <= n - 1:
        raise ComplexError(f"need 2 <= i <= n-1, got i={i}, n={n}")
    full = gr.complete_mask(n)
    out = []
    for A in combinations(range(n), i - 1):
        rest = [v for v in range(n) if v not in A]
        first, others = rest[0], rest[1:]
        # unordered {B, C}: B always holds the smallest remaining vertex
        for r in range(len(others)):
            for extra in combinations(others, r):
                B = 1 << first
                for v in extra:
                    B |= 1 << v
                C = 0
                for v in rest:
                    if not B >> v & 1:
                        C |= 1 << v
                cut = 0
                for idx, (a, b) in enumerate(gr.edge_endpoints(n)):
                    if (B >> a & 1 and C >> b & 1) or (B >> b & 1 and C >> a & 1):
                        cut |= 1 << idx
                out.append(full & ~cut)
    return out


def matching_complex(n: int) -> SimplicialComplex:
    """Partial matchings of K_n over the colex edge universe."""
    if n < 1:
        raise ComplexError("n >= 1 required")
    vm = [1 << a | 1 << b for a, b in gr.edge_endpoints(n)]

    def extend(state, v):
        return None if state & vm[v] else state | vm[v]

    return SimplicialComplex(len(vm), extend, 0, labels=gr.subset_universe(n, 2), name=f"M_{n}")


def chessboard_complex(m: int, n: int) -> SimplicialComplex:
    """Non-attacking rook placements on an m x n board; cell (r, c) has index r*n + c."""
    if m < 1 or n < 1:
        raise ComplexError("board dimensions must be positive")
    vm = [1 << r | 1 << (m + c) for r in range(m) for c in range(n)]
    labels = [(r + 1, c + 1) for r in range(m) for c in range(n)]

    def extend(state, v):
        return None if state & vm[v] else state | vm[v]

    return SimplicialComplex(m * n, extend, 0, labels=labels, name=f"M_{m},{n}")


def _paths_cycles_ok(n: int, forbid_c4: bool):
    ends = gr.edge_endpoints(n)

    def extend(state, v):
        deg, comp = state
        a, b = ends[v]
        if deg[a] >= 2 or deg[b] >= 2:
            return None
        ca, cb = comp[a], comp[b]
        deg = list(deg)
        deg[a] += 1
        deg[b] += 1
        if ca == cb:
            # closes a path into a cycle
            length = sum(1 for c in comp if c == ca)
            if forbid_c4 and length == 4:
                return None
            return tuple(deg), comp
        comp = tuple(ca if c == cb else c for c in comp)
        return tuple(deg), comp

    return extend, ((0,) * n, tuple(range(n)))


def paths_cycles_complex(n: int, forbid_c4: bool) -> SimplicialComplex:
    """Graphs whose components are paths or cycles (no 4-cycles when ``forbid_c4``)."""
    if n < 1:
        raise ComplexError("n >= 1 required")
    extend, start = _paths_cycles_ok(n, forbid_c4)
    tag = "noC4" if forbid_c4 else "deg2"
    return SimplicialComplex(comb(n, 2), extend, start, labels=gr.subset_universe(n, 2),
                             name=f"PathsCycles_{n}_{tag}")


def full_simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, lambda s, v: s, 0, name=f"simplex_{m}")


def simplex_boundary(m: int) -> SimplicialComplex:
    full = (1 << m) - 1

    def extend(state, v):
        s = state | 1 << v
        return None if s == full else s

    return SimplicialComplex(m, extend, 0, name=f"boundary_{m}")


def from_faces(size: int, faces: Iterable[Iterable[int]], name: str = "") -> SimplicialComplex:
    """Complex generated by the given faces (closed downward)."""
    masks = []
    for f in faces:
        m = 0
        for v in f:
            m |= 1 << v
        masks.append(m)
    maximal = [f for f in set(masks) if not any(f != g and f & ~g == 0 for g in masks)]
    return SimplicialComplex(size, facets=maximal, name=name)


# ---------------------------------------------------------------------------
# Alexander duality

def alexander_dual(cx: SimplicialComplex, size: int | None = None) -> SimplicialComplex:
    """``{B : V - B not a face}`` over ``V = range(size)``."""
    size = cx.size if size is None else size
    if size < cx.size:
        raise ComplexError("universe smaller than the complex's universe")
    full = (1 << size) - 1
    if full in cx:
        raise ComplexError("the whole universe is a face; the dual is empty")

    def extend(state, v):
        s = state | 1 << v
        return None if (full ^ s) in cx else s

    return SimplicialComplex(size, extend, 0, labels=cx.labels if size == cx.size else None,
                             name=f"dual({cx.name})")


# ---------------------------------------------------------------------------
# facet files and JSON

def write_facet_file(path, size: int, facets: Iterable[int]) -> None:
    with open(path, "w") as fh:
        fh.write(f"universe {size}\n")
        for f in sorted(facets, key=lambda m: (_bits(m))):
            fh.write(" ".join(str(v) for v in _bits(f)) + "\n")


def read_facet_file(path, name: str = "") -> SimplicialComplex:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "universe":
        raise ComplexError("facet file must start with 'universe m'")
    size = int(head[1])
    facets = []
    for ln in lines[1:]:
        m = 0
        for tok in ln.split():
            v = int(tok)
            if not 0 <= v < size:
                raise ComplexError(f"vertex {v} outside universe {size}")
            m |= 1 << v
        facets.append(m)
    return SimplicialComplex(size, facets=facets, name=name or str(path))


def complex_to_json(cx: SimplicialComplex, include_faces: bool = False) -> str:
    fv = f_vector(cx)
    data = {"name": cx.name, "universe": cx.size, "f_vector": list(fv.counts),
            "reduced_euler": fv.reduced_euler}
    if include_faces:
        data["faces"] = {str(d): [_bits(f) for f in cx.faces(d)] for d in range(-1, cx.dimension + 1)}
    return json.dumps(data, sort_keys=True)
