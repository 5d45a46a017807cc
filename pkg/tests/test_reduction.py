import itertools
import math

import pytest

from evds.domination import exact_evds, is_evds
from evds.errors import EmbeddingError, OracleRefusalError
from evds.reduction import (
    GridEmbedding,
    Segment,
    brute_force_vertex_cover,
    corpus_names,
    evds_to_vc,
    format_embedding,
    is_vertex_cover,
    load_corpus_embedding,
    parse_embedding,
    reduce_to_udg,
    validate_embedding,
    vc_to_evds,
)

CORPUS = corpus_names()


def two_vertex(x=4, y=0, segs=None):
    segs = segs or [Segment(0, 0, 0, x, y, 0)]
    return GridEmbedding({0: (0, 0), 1: (x, y)}, [(0, 1)], segs)


def p3_straight():
    return load_corpus_embedding("p3")


def tree_components(emb) -> int:
    """Number of connected components of the source graph that are trees."""
    left, trees = set(emb.vertices()), 0
    while left:
        comp, stack = set(), [left.pop()]
        while stack:
            x = stack.pop()
            comp.add(x)
            for a, b in emb.edges:
                for y, z in ((a, b), (b, a)):
                    if y == x and z not in comp:
                        stack.append(z)
        left -= comp
        inside = sum(1 for a, _ in emb.edges if a in comp)
        trees += inside == len(comp) - 1
    return trees


def test_corpus_is_present_and_valid():
    assert len(CORPUS) >= 5
    for name in CORPUS:
        emb = load_corpus_embedding(name)
        assert validate_embedding(emb) == [], name
        assert len(emb.positions) <= 8
        degree = {v: 0 for v in emb.positions}
        for u, v in emb.edges:
            degree[u] += 1
            degree[v] += 1
        assert max(degree.values()) <= 3


def test_validation_messages():
    # a single edge is fine geometrically but below the two-edge minimum
    assert any("at least 2" in m for m in validate_embedding(two_vertex()))
    off = GridEmbedding({0: (0, 0), 1: (2, 0), 2: (8, 0)}, [(0, 1), (1, 2)],
                        [Segment(0, 0, 0, 2, 0, 0), Segment(1, 2, 0, 8, 0, 0)])
    assert any("not on 4-grid" in m for m in validate_embedding(off))
    long = GridEmbedding({0: (0, 0), 1: (8, 0), 2: (8, 4)}, [(0, 1), (1, 2)],
                         [Segment(0, 0, 0, 8, 0, 0), Segment(1, 8, 0, 8, 4, 0)])
    assert any("segment length ≠ 4" in m for m in validate_embedding(long))
    assert validate_embedding(p3_straight()) == []


def test_crossing_paths_rejected():
    emb = GridEmbedding(
        {0: (0, 4), 1: (8, 4), 2: (4, 0), 3: (4, 8)},
        [(0, 1), (2, 3)],
        [Segment(0, 0, 4, 4, 4, 0), Segment(0, 4, 4, 8, 4, 1), Segment(1, 4, 0, 4, 4, 0), Segment(1, 4, 4, 4, 8, 1)],
    )
    assert validate_embedding(emb)
    with pytest.raises(EmbeddingError) as info:
        reduce_to_udg(emb)
    assert info.value.violations


def test_p3_instance():
    inst = reduce_to_udg(p3_straight())
    assert inst.udg.n == 9 and inst.udg.m == 8
    assert (inst.count("node"), inst.count("joint"), inst.count("added")) == (3, 0, 6)


def test_two_collinear_segments_on_one_edge():
    emb = GridEmbedding(
        {0: (0, 0), 1: (8, 0), 2: (8, 4)},
        [(0, 1), (1, 2)],
        [Segment(0, 0, 0, 4, 0, 0), Segment(0, 4, 0, 8, 0, 1), Segment(1, 8, 0, 8, 4, 0)],
    )
    inst = reduce_to_udg(emb)
    first = inst.paths[0]
    roles = [inst.roles[v] for v in first[1:-1]]
    assert roles.count("joint") == 1 and roles.count("added") == 6


def test_vc_to_evds_on_p3():
    inst = reduce_to_udg(p3_straight())
    sol = vc_to_evds(inst, {1})
    node_edges = set(inst.udg.vertex_adjacency[inst.node_map[1]])
    assert len(node_edges) == 2 and len(sol.edges - node_edges) == 2
    assert len(sol) == 4 <= 3 * 1 + inst.l
    assert is_evds(inst.udg, sol)
    with pytest.raises(ValueError):
        vc_to_evds(inst, {0})


@pytest.mark.parametrize("name", CORPUS)
def test_counting_and_spacing(name):
    emb = load_corpus_embedding(name)
    inst = reduce_to_udg(emb)
    joints, added = inst.count("joint"), inst.count("added")
    assert added == 3 * emb.l
    assert joints <= emb.l - len(emb.edges)
    assert inst.udg.n == 3 * emb.l + joints + len(emb.positions)
    assert inst.udg.m == sum(len(p) - 1 for p in inst.paths) == 4 * emb.l
    pts = inst.udg.points
    for path in inst.paths:
        for a, b in zip(path, path[1:]):
            assert math.dist((pts[a].x, pts[a].y), (pts[b].x, pts[b].y)) == 1.0
        for a, b in itertools.combinations(path, 2):
            if abs(path.index(a) - path.index(b)) > 1:
                assert not inst.udg.has_edge(a, b)


@pytest.mark.parametrize("name", CORPUS)
def test_forward_direction_on_every_cover(name):
    emb = load_corpus_embedding(name)
    inst = reduce_to_udg(emb)
    verts = emb.vertices()
    for k in range(len(verts) + 1):
        for cover in itertools.combinations(verts, k):
            if not is_vertex_cover(emb.edges, cover):
                continue
            sol = vc_to_evds(inst, cover)
            assert len(sol) <= 3 * k + emb.l
            assert is_evds(inst.udg, sol)
            back = evds_to_vc(inst, sol)
            assert is_vertex_cover(emb.edges, back) and len(back) <= k


@pytest.mark.parametrize("name", CORPUS)
def test_all_edges_gives_a_cover(name):
    inst = reduce_to_udg(load_corpus_embedding(name))
    back = evds_to_vc(inst, range(inst.udg.m))
    assert is_vertex_cover(inst.source.edges, back)


def test_evds_to_vc_rejects_non_dominating():
    inst = reduce_to_udg(p3_straight())
    with pytest.raises(ValueError):
        evds_to_vc(inst, [0])


def test_p3_oracle_round_trip():
    inst = reduce_to_udg(p3_straight())
    opt = exact_evds(inst.udg)
    assert len(opt) == 3
    assert evds_to_vc(inst, opt) == brute_force_vertex_cover([0, 1, 2], [(0, 1), (1, 2)]) == {1}


@pytest.mark.parametrize(
    "verts, edges, size",
    [([0, 1], [(0, 1)], 1), ([0, 1, 2], [(0, 1), (1, 2), (0, 2)], 2), ([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)], 2)],
)
def test_vertex_cover_oracle(verts, edges, size):
    cover = brute_force_vertex_cover(verts, edges)
    assert len(cover) == size and is_vertex_cover(edges, cover)


def test_vertex_cover_oracle_refuses_large():
    with pytest.raises(OracleRefusalError):
        brute_force_vertex_cover(range(21), [])


@pytest.mark.parametrize("name", CORPUS)
def test_optimum_tracks_segments_not_cover(name):
    # the gadget optimum is l plus one per acyclic component, independent of the cover number
    emb = load_corpus_embedding(name)
    inst = reduce_to_udg(emb)
    trees = tree_components(emb)
    assert len(exact_evds(inst.udg)) == emb.l + trees


def test_embedding_text_round_trip():
    for name in CORPUS:
        emb = load_corpus_embedding(name)
        again = parse_embedding(format_embedding(emb))
        assert again == emb


@pytest.mark.parametrize("text", ["", "1 1 1\n0 0 0\n", "2 1 1\n0 0 0\n1 4 0\n0 1\n0 0 0 4 0\n"])
def test_malformed_embedding(text):
    with pytest.raises(ValueError):
        parse_embedding(text)
