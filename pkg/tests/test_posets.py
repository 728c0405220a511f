from math import comb, factorial

import numpy as np
import pytest

from graphcx import complexes as cxm
from graphcx import graphs as gr
from graphcx import homology as ho
from graphcx import posets as po
from graphcx import series as se


def gmask(n, edges):
    return gr.Graph.from_edges(n, edges).mask


def clique(n, vs):
    return gr.vertex_set_clique(n, sum(1 << (v - 1) for v in vs))


def test_moebius_examples():
    assert po.moebius(po.chain(3)) == 0
    assert po.moebius(po.boolean_lattice(3)) == -1
    assert po.moebius(po.partition_lattice(4)) == -6
    assert len(po.partition_lattice(3)) == 5
    assert po.moebius(po.k_equal_lattice(4, 3)) == 3


def test_moebius_interval_and_defining_recursion():
    P = po.partition_lattice(4)
    for x in P.elements:
        mu = po.moebius_from(P, x)
        i = P.index[x]
        for j in range(len(P)):
            if P.leq[i, j]:
                # sum over [x, y] of mu(x, z) vanishes for y > x
                s = sum(int(mu[z]) for z in range(len(P)) if P.leq[i, z] and P.leq[z, j])
                assert s == (1 if i == j else 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_partition_and_two_equal_lattice_coincide(n):
    assert po.moebius(po.k_equal_lattice(n, 2)) == po.moebius(po.partition_lattice(n)) == (-1) ** (n - 1) * factorial(n - 1)


def test_order_complex_examples():
    two = po.order_complex(po.antichain(2)).enumerate()
    assert cxm.f_vector(two).counts == (1, 2)
    for d in range(4):
        oc = po.order_complex(po.chain(d + 1)).enumerate()
        assert cxm.f_vector(oc).counts == tuple(comb(d + 1, j) for j in range(d + 2))
    hexagon = po.order_complex(po.boolean_lattice(3).proper_part()).enumerate()
    assert cxm.f_vector(hexagon).counts == (1, 6, 6)
    assert cxm.reduced_euler(hexagon) == -1 == po.moebius(po.boolean_lattice(3))
    assert ho.reduced_homology(two)[0] == ho.HomologyGroup(1)


def test_face_lattice():
    L = po.face_lattice(cxm.not_i_connected_complex(3, 2, 2))
    assert len(L) == 8 and L.top == po.TOP and L.bottom == 0
    assert L.check_axioms()


def test_products_and_isomorphism_examples():
    assert po.is_isomorphic(po.product(po.chain(2), po.chain(2)), po.boolean_lattice(2))
    S42 = po.sigma_lattice(4, 2)
    two_edges = gmask(4, [(1, 2), (3, 4)])
    S22 = po.sigma_lattice(2, 2)
    assert po.is_isomorphic(po.interval(S42, 0, two_edges), po.product(S22, S22))
    S32 = po.sigma_lattice(3, 2)
    path = gmask(3, [(1, 2), (2, 3)])
    assert po.is_isomorphic(po.interval(S32, path, S32.top), po.chain(2))
    assert not po.is_isomorphic(po.chain(4), po.boolean_lattice(2))


def test_sigma_3_2():
    S = po.sigma_lattice(3, 2)
    assert len(S) == 8
    assert po.moebius(S) == -1
    assert S.check_axioms()


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (4, 3), (5, 3), (6, 3), (6, 4)])
def test_sigma_against_brute_force(n, k):
    assert set(po.sigma_lattice(n, k).elements) == po.sigma_brute_force(n, k)


@pytest.mark.parametrize("n,size,mu", [(4, 55, -2), (5, 562, -6)])
def test_sigma_sizes(n, size, mu):
    S = po.sigma_lattice(n, 2)
    assert (len(S), po.moebius(S)) == (size, mu)


def test_sigma_meet_join_are_lattice_operations():
    S = po.sigma_lattice(4, 2)
    els = S.elements
    for a in els[::3]:
        for b in els[::5]:
            j, m = S.join(a, b), S.meet(a, b)
            assert j in S.index and m in S.index
            upper = [c for c in els if S.le(a, c) and S.le(b, c)]
            lower = [c for c in els if S.le(c, a) and S.le(c, b)]
            assert all(S.le(j, c) for c in upper) and j in upper
            assert all(S.le(c, m) for c in lower) and m in lower


def chi_by_homology(n, k):
    return ho.euler_from_homology(ho.reduced_homology(cxm.not_i_connected_complex(n, k, 2)))


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3), (6, 3), (6, 4)])
def test_sigma_moebius_is_euler_characteristic(n, k):
    assert po.sigma_moebius(n, k) == chi_by_homology(n, k)


@pytest.mark.slow
@pytest.mark.parametrize("n,k", [(6, 2), (7, 4)])
def test_sigma_moebius_is_euler_characteristic_large(n, k):
    assert po.sigma_moebius(n, k) == chi_by_homology(n, k)


def test_sigma_moebius_closed_forms():
    for n in range(3, 6):
        assert po.sigma_moebius(n, 2) == -factorial(n - 2)
    M3 = se.mobius_series(3, 8)
    for n in range(3, 7):
        assert po.sigma_moebius(n, 3) == M3[n]


def test_cover_type_examples():
    assert po.cover_type(4, 2, 0, gmask(4, [(1, 2)])) == "i"
    assert po.cover_type(5, 3, 0, clique(5, [1, 2, 3])) == "i"
    bowtie = clique(5, [1, 2, 3]) | clique(5, [3, 4, 5])
    assert po.cover_type(5, 3, bowtie, clique(5, range(1, 6))) == "ii"
    assert po.cover_type(4, 3, clique(4, [1, 2, 3]), clique(4, range(1, 5))) == "iii"


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (6, 3), (6, 4), (6, 5)])
def test_every_cover_has_exactly_one_type(n, k):
    S = po.sigma_lattice(n, k)
    types = po.classify_covers(S)
    assert len(types) == len(S.cover_pairs)


def test_cover_counts_5_3():
    counts = {}
    for t in po.classify_covers(po.sigma_lattice(5, 3)).values():
        counts[t] = counts.get(t, 0) + 1
    assert counts == {"i": 40, "ii": 15, "iii": 25}


@pytest.mark.slow
def test_every_cover_has_exactly_one_type_6_2():
    S = po.sigma_lattice(6, 2)
    assert len(po.classify_covers(S)) == len(S.cover_pairs)


@pytest.mark.parametrize("n,k,length", [(4, 2, 5), (5, 2, 7), (5, 3, 3), (6, 3, 4)])
def test_rank_functions(n, k, length):
    rep = po.rank_and_chain_spectrum(po.sigma_lattice(n, k))
    assert rep.rank_checked and rep.rank_ok
    assert rep.length == length and rep.chain_lengths == {length}


@pytest.mark.parametrize("n,k", [(7, 4), (8, 4)])
def test_chain_spectrum_k4(n, k):
    S = po.sigma_lattice(n, k)
    got = po.maximal_chain_lengths(S)
    assert got == po.predicted_chain_lengths(n, k)
    assert got == {(n - 2) - t * (k - 3) for t in (1, 2)}


@pytest.mark.parametrize("n,k", [(5, 4), (6, 4), (6, 5), (7, 5)])
def test_small_n_is_truncated_boolean(n, k):
    assert po.is_isomorphic(po.sigma_lattice(n, k), po.truncated_boolean(n, k))


@pytest.mark.parametrize("n,k", [(5, 4), (6, 4), (6, 5), (7, 5)])
def test_small_n_homology_is_one_wedge(n, k):
    h = ho.reduced_homology(cxm.not_i_connected_complex(n, k, 2))
    d = n - k - 1
    assert h[d] == ho.HomologyGroup(comb(n - 1, k - 1))
    assert all(g.is_zero for e, g in h.items() if e != d)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3), (6, 4)])
def test_coatoms(n, k):
    assert po.coatom_violations(po.sigma_lattice(n, k)) == []


@pytest.mark.parametrize("n", [3, 4])
def test_interval_structure(n):
    S = po.sigma_lattice(n, 2)
    assert po.lower_interval_violations(S) == []
    assert po.upper_interval_violations(S) == []


@pytest.mark.slow
def test_interval_structure_5_2():
    S = po.sigma_lattice(5, 2)
    assert po.lower_interval_violations(S) == []
    assert po.upper_interval_violations(S) == []


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3)])
def test_sigma_fibers(n, k):
    assert po.sigma_fiber_violations(po.sigma_lattice(n, k)) == []


def test_alpha_brute_force_examples():
    assert po.alpha_brute_force(2, 2) == -1
    assert po.alpha_brute_force(3, 2) == 1
    assert po.alpha_brute_force(3, 3) == -1


def test_axioms_and_errors():
    assert po.partition_lattice(4).check_axioms()
    bad = po.FinitePoset([0, 1], np.array([[True, True], [True, True]]))
    assert not bad.check_axioms()
    with pytest.raises(po.PosetError):
        po.interval(po.chain(3), 2, 0)
    with pytest.raises(po.PosetError):
        po.sigma_lattice(3, 4)
