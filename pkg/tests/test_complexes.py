import random
from math import comb

import pytest

from graphcx import complexes as cxm
from graphcx import graphs as gr


def face_set(cx):
    return set(cx.enumerate().all_faces())


def test_delta_3_2_is_boundary_of_triangle():
    cx = cxm.not_i_connected_complex(3, 2, 2).enumerate()
    assert face_set(cx) == {m for m in range(8) if m != 7}
    fv = cxm.f_vector(cx)
    assert fv.counts[:3] == (1, 3, 3)
    assert fv.reduced_euler == -1


def test_single_hyperedge_is_two_connected():
    cx = cxm.not_i_connected_complex(3, 3, 2).enumerate()
    assert face_set(cx) == {0}
    assert cxm.reduced_euler(cx) == -1


def test_reduced_euler_examples():
    assert cxm.reduced_euler(cxm.not_i_connected_complex(4, 2, 2)) == -2
    assert cxm.reduced_euler(cxm.from_faces(3, [])) == -1
    assert isinstance(cxm.reduced_euler(cxm.matching_complex(5)), int)


@pytest.mark.parametrize("n,i,count", [(3, 2, 3), (4, 2, 12), (4, 3, 6)])
def test_maximal_separable_facet_counts(n, i, count):
    facets = cxm.maximal_separable_facets(n, i)
    assert len(facets) == len(set(facets)) == count


def test_delta_3_2_facets_are_stars():
    for f in cxm.maximal_separable_facets(3, 2):
        G = gr.Graph(3, f)
        assert len(G) == 2 and any(len(G.neighbors(v)) == 2 for v in (1, 2, 3))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_facets_generate_the_complex(n):
    for i in range(2, n):
        if n == 6 and i == 2:
            continue  # covered by the maximal-face check below
        facets = cxm.maximal_separable_facets(n, i)
        cx = cxm.not_i_connected_complex(n, 2, i)
        faces = face_set(cx)
        assert faces == set(cxm.SimplicialComplex(comb(n, 2), facets=facets).enumerate().all_faces())


def test_facets_are_maximal_faces_n6_i2():
    cx = cxm.not_i_connected_complex(6, 2, 2).enumerate()
    assert sorted(cx.maximal_faces()) == sorted(cxm.maximal_separable_facets(6, 2))


def test_matching_and_chessboard_examples():
    m3 = cxm.matching_complex(3).enumerate()
    assert cxm.f_vector(m3).counts == (1, 3)
    m4 = cxm.matching_complex(4).enumerate()
    assert cxm.f_vector(m4).counts == (1, 6, 3)
    assert all(gr.Graph(4, f).n == 4 and len(gr.Graph(4, f)) == 2 for f in m4.faces(1))
    c22 = cxm.chessboard_complex(2, 2).enumerate()
    assert cxm.f_vector(c22).counts == (1, 4, 2)
    assert cxm.reduced_euler(c22) == 1


@pytest.mark.parametrize("forbid", [True, False])
def test_paths_cycles_small(forbid):
    cx = cxm.paths_cycles_complex(3, forbid).enumerate()
    assert face_set(cx) == set(range(8))
    assert cxm.reduced_euler(cx) == 0
    assert cxm.reduced_euler(cxm.paths_cycles_complex(4, forbid)) == (6 if forbid else 3)


def test_alexander_dual_examples():
    pts = cxm.from_faces(3, [[0], [1], [2]])
    assert face_set(cxm.alexander_dual(pts)) == face_set(pts)
    assert face_set(cxm.alexander_dual(cxm.matching_complex(4))) == face_set(cxm.not_i_connected_complex(4, 2, 2))
    empty = cxm.from_faces(4, [])
    assert face_set(cxm.alexander_dual(empty)) == face_set(cxm.simplex_boundary(4))


def test_alexander_dual_is_involution():
    rng = random.Random(7)
    cases = [cxm.matching_complex(4), cxm.not_i_connected_complex(4, 2, 2), cxm.chessboard_complex(2, 3)]
    for _ in range(20):
        m = rng.randint(3, 6)
        faces = [[v for v in range(m) if rng.random() < 0.4] for _ in range(rng.randint(1, 4))]
        cx = cxm.from_faces(m, faces)
        if (1 << m) - 1 not in cx:
            cases.append(cx)
    for cx in cases:
        assert face_set(cxm.alexander_dual(cxm.alexander_dual(cx).enumerate())) == face_set(cx)


@pytest.mark.parametrize("n", [4, 5])
def test_matching_complex_is_dual_of_delta_n_minus_2(n):
    dual = cxm.alexander_dual(cxm.not_i_connected_complex(n, 2, n - 2))
    assert face_set(dual) == face_set(cxm.matching_complex(n))


@pytest.mark.parametrize("n", [5, 6])
def test_paths_cycles_is_dual_of_delta_n_minus_3(n):
    dual = cxm.alexander_dual(cxm.not_i_connected_complex(n, 2, n - 3))
    assert face_set(dual) == face_set(cxm.paths_cycles_complex(n, True))


@pytest.mark.parametrize("build", [
    lambda: cxm.not_i_connected_complex(5, 2, 2),
    lambda: cxm.not_i_connected_complex(5, 3, 2),
    lambda: cxm.matching_complex(6),
    lambda: cxm.chessboard_complex(3, 4),
    lambda: cxm.paths_cycles_complex(5, False),
])
def test_downward_closed_sample(build):
    cx = build().enumerate()
    faces = cx.all_faces()
    rng = random.Random(1)
    for f in rng.sample(faces, min(200, len(faces))):
        sub = f & rng.getrandbits(cx.size)
        assert sub in cx
        for v in cxm._bits(f):
            assert f & ~(1 << v) in cx


def test_window_keeps_only_three_levels():
    cx = cxm.not_i_connected_complex(6, 3, 2)
    cx.window(2)
    assert cx.has_dim(1) and cx.has_dim(2) and cx.has_dim(3)
    with pytest.raises(cxm.MissingDimension):
        cx.faces(0)


def test_guards_raise():
    with pytest.raises(cxm.TooLarge):
        cxm.not_i_connected_complex(6, 2, 2).enumerate(max_faces=1000)
    with pytest.raises(cxm.TooLarge):
        cxm.not_i_connected_complex(6, 3, 2).window(2, max_faces=100)
    with pytest.raises(cxm.ComplexError):
        cxm.not_i_connected_complex(4, 2, 4)
    with pytest.raises(cxm.ComplexError):
        cxm.alexander_dual(cxm.full_simplex(3))


def test_facet_file_round_trip(tmp_path):
    cx = cxm.matching_complex(5).enumerate()
    path = tmp_path / "m5.facets"
    cxm.write_facet_file(path, cx.size, cx.maximal_faces())
    back = cxm.read_facet_file(path)
    assert face_set(back) == face_set(cx)
    assert '"reduced_euler": -6' in cxm.complex_to_json(back)
