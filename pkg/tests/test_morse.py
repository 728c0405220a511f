import random
from itertools import combinations

import pytest

from graphcx import complexes as cxm
from graphcx import graphs as gr
from graphcx import homology as ho
from graphcx import morse as mo
from graphcx.morse import MorseMatching


def simplex_ab():
    return cxm.full_simplex(2).enumerate()


def triangle():
    return cxm.simplex_boundary(3).enumerate()


def test_digraph_examples():
    pt = cxm.full_simplex(1).enumerate()
    D = mo.build_matching_digraph(pt)
    assert len(D.nodes) == 2 and D.arcs() == [(1, 0)]
    D = mo.build_matching_digraph(simplex_ab())
    assert (len(D.nodes), len(D.edges)) == (4, 4)
    D = mo.build_matching_digraph(triangle())
    assert (len(D.nodes), len(D.edges)) == (7, 9)


def test_digraph_needs_full_enumeration():
    with pytest.raises(mo.MorseError):
        mo.build_matching_digraph(cxm.full_simplex(2))


def test_report_examples():
    cx = simplex_ab()
    M = MorseMatching.of([(0, 1), (2, 3)])
    assert mo.is_acyclic_perfect_matching(cx, M).as_dict() == {"matching": True, "perfect": True, "acyclic": True}
    rep = mo.is_acyclic_perfect_matching(cx, MorseMatching.of([(0, 1)]))
    assert rep.matching and not rep.perfect
    assert len(mo.collapse_by_matching(cx, M)) == 2


def test_cyclic_matching_on_triangle_boundary():
    # vertex 0 -> edge 01 -> vertex 1 -> edge 12 -> vertex 2 -> edge 02 -> vertex 0
    cx = triangle()
    M = MorseMatching.of([(1, 3), (2, 6), (4, 5)])
    rep = mo.is_acyclic_perfect_matching(cx, M)
    assert rep.matching and not rep.acyclic
    assert not mo.full_digraph_acyclic(cx, M)
    with pytest.raises(mo.CollapseError):
        mo.collapse_by_matching(cx, M)


def test_non_hasse_pair_rejected():
    with pytest.raises(mo.MorseError):
        mo.is_acyclic_perfect_matching(triangle(), MorseMatching.of([(0, 3)]))


def random_matching(cx, rng):
    faces = cx.all_faces()
    rng.shuffle(faces)
    used = set()
    pairs = []
    for f in faces:
        if f in used:
            continue
        ups = [f | 1 << v for v in range(cx.size) if not f >> v & 1 and (f | 1 << v) in cx
               and (f | 1 << v) not in used]
        if ups and rng.random() < 0.9:
            c = rng.choice(ups)
            used |= {f, c}
            pairs.append((f, c))
    return MorseMatching.of(pairs)


def test_layered_search_equals_full_search_and_collapse_contract():
    rng = random.Random(2)
    complexes = [simplex_ab(), triangle(), cxm.full_simplex(3).enumerate(),
                 cxm.simplex_boundary(4).enumerate(), cxm.matching_complex(4).enumerate(),
                 cxm.from_faces(5, [[0, 1, 2], [2, 3], [3, 4], [1, 4]]).enumerate()]
    seen = {True: 0, False: 0}
    for cx in complexes:
        for _ in range(150):
            M = random_matching(cx, rng)
            rep = mo.is_acyclic_perfect_matching(cx, M)
            assert rep.acyclic == mo.full_digraph_acyclic(cx, M)
            try:
                trace = mo.collapse_by_matching(cx, M)
                collapsed = True
                assert len(trace) == len(M)
            except mo.CollapseError:
                collapsed = False
            assert collapsed == rep.ok
            seen[collapsed] += 1
    assert seen[True] and seen[False]


def test_phi_examples():
    G = gr.Graph.from_edges(4, [(2, 3)])
    assert mo.phi_map(G) == (frozenset(), (frozenset({2, 3}), frozenset({4})))
    G = gr.Graph.from_edges(4, [(1, 2)])
    assert mo.phi_map(G) == (frozenset({2}), (frozenset({2}), frozenset({3}), frozenset({4})))
    with pytest.raises(mo.MorseError):
        mo.phi_map(gr.Graph.complete(4))


def test_phi_monotone_n4():
    n = 4
    graphs = [gr.Graph(n, m) for m in range(1 << 6) if not gr.two_connected_mask(n, m)]
    for G, H in combinations(graphs, 2):
        for a, b in ((G, H), (H, G)):
            if a.mask & ~b.mask == 0:
                assert mo.phi_leq(mo.phi_map(a), mo.phi_map(b))


@pytest.mark.parametrize("n", [4, 5])
def test_phi_fibers_have_tops(n):
    assert mo.phi_fiber_violations(n) == []


def test_delta_complexes_contractible():
    for n in (4, 5):
        for k in range(2, n):
            h = ho.reduced_homology(mo.build_delta_k(n, k))
            assert all(g.is_zero for g in h.values()), (n, k)
        for k in range(3, n):
            h = ho.reduced_homology(mo.build_delta_k1k(n, k))
            assert all(g.is_zero for g in h.values()), (n, k)


def test_classes_partition_delta_k1k():
    n, k = 5, 3
    cx = mo.build_delta_k1k(n, k).enumerate()
    counts = {"I": 0, "J": 0, "F": 0}
    for f in cx.all_faces():
        counts[mo.apm_class(n, k, f)] += 1
    assert sum(counts.values()) == cx.num_faces()
    assert counts["I"] and counts["J"]


@pytest.mark.parametrize("n,k", [(n, k) for n in (4, 5, 6) for k in range(3, n)])
def test_apm_is_acyclic_perfect(n, k):
    cx = mo.build_delta_k1k(n, k).enumerate()
    M = mo.apm_matching(n, k, cx)
    rep = mo.is_acyclic_perfect_matching(cx, M)
    assert rep.ok
    assert mo.full_digraph_acyclic(cx, M)
    trace = mo.collapse_by_matching(cx, M)
    assert len(trace) == len(M)
    assert trace.steps[-1][0] == 0 and trace.point.bit_count() == 1
    # pairs stay inside the class of the step that produced them
    for (a, b), step in M.steps.items():
        cls = {1: "I", 2: "J", 3: "F"}[step]
        assert mo.apm_class(n, k, a) == mo.apm_class(n, k, b) == cls
        if step == 3:
            assert len(mo.s_set(n, k, a)) >= 2


def test_step_counts_5_4():
    M = mo.apm_matching(5, 4)
    counts = {s: sum(1 for v in M.steps.values() if v == s) for s in (1, 2, 3)}
    assert counts == {1: 32, 2: 64, 3: 3}


def test_f_class_empty_for_k3():
    # N_H(1) = {2, 3} here, so H - 1 cannot be disconnected with 1 as the only separator
    cx = mo.build_delta_k1k(5, 3).enumerate()
    assert not any(mo.apm_class(5, 3, f) == "F" for f in cx.all_faces())


def test_matching_lines_export():
    lines = mo.apm_matching(4, 3).lines()
    assert lines[0].startswith("[] ↔ [")
    assert all("↔" in ln for ln in lines)
