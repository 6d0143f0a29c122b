import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hypergraphs
from hyperweight.hypercore import Hypergraph
from hyperweight.weighting import (
    format_weighting,
    induced_vertex_weights,
    is_proper,
    max_weight,
    monochromatic_edges,
    parse_init,
    parse_weighting,
    verify,
)

H = Hypergraph.from_edges
PATH = H(3, [(0, 1), (1, 2)])
TRIANGLE = H(3, [(0, 1), (1, 2), (0, 2)])


def test_induced_vertex_weights():
    assert induced_vertex_weights(PATH, [1, 1]) == [1, 2, 1]
    assert induced_vertex_weights(H(3, [(0, 1, 2)]), [4], [1, 0, 0]) == [5, 4, 4]
    assert induced_vertex_weights(H(2, [(0, 1), (0, 1)]), [1, 2]) == [3, 3]
    with pytest.raises(ValueError):
        induced_vertex_weights(PATH, [1])
    with pytest.raises(ValueError):
        induced_vertex_weights(PATH, [1, 1], [0])


def test_is_proper():
    assert is_proper(PATH, [1, 2, 1])
    assert not is_proper(H(3, [(0, 1, 2)]), [1, 1, 1])
    assert is_proper(H(3, [(0, 1, 2)]), [5, 4, 4])
    assert not is_proper(H(2, [(0,)]), [1, 2])


def test_max_weight():
    assert max_weight([1, 1]) == 1
    assert max_weight([2, 5, 3]) == 5
    assert max_weight([4] * 6) == 4
    with pytest.raises(ValueError):
        max_weight([])


def test_verify():
    v = verify(PATH, [1, 1])
    assert v.proper and v.monochromatic == ()
    v = verify(TRIANGLE, [1, 1, 1])
    assert not v and v.monochromatic == (0, 1, 2)
    assert induced_vertex_weights(TRIANGLE, [1, 2, 3]) == [4, 3, 5]
    assert verify(TRIANGLE, [1, 2, 3]).proper
    assert verify(H(4, []), []).proper
    with pytest.raises(ValueError):
        verify(PATH, [0, 1])
    with pytest.raises(ValueError):
        verify(PATH, [1.5, 1])


def test_verify_with_init():
    # the init breaks the tie on the single edge
    assert not verify(H(2, [(0, 1)]), [3]).proper
    assert verify(H(2, [(0, 1)]), [3], [0, 1]).proper


def test_weighting_formats():
    assert format_weighting([3, 1]) == "0 3\n1 1\n"
    assert parse_weighting("# header\n1 1\n0 3\n", 2) == [3, 1]
    assert parse_weighting('{"weights": [3, 1]}') == [3, 1]
    assert parse_init("0 2\n1 0\n", 2) == [2, 0]
    assert parse_init('{"init": [0, 4, 1]}') == [0, 4, 1]


@pytest.mark.parametrize(
    "text,m",
    [
        ("0 1\n0 2\n", None),
        ("0 1\n2 1\n", None),
        ("0 1\n", 2),
        ("0\n", None),
        ('{"weights": "x"}', None),
        ('{"w": [1]}', None),
        ("{nope", None),
    ],
)
def test_weighting_format_rejects(text, m):
    with pytest.raises(ValueError):
        parse_weighting(text, m)


def test_init_rejects_negative():
    with pytest.raises(ValueError):
        parse_init("0 -1\n")


@settings(max_examples=200, deadline=None)
@given(hypergraphs(sizes=(1, 5)), st.data())
def test_conservation(h, data):
    w = data.draw(st.lists(st.integers(1, 9), min_size=h.m, max_size=h.m))
    init = data.draw(st.lists(st.integers(0, 9), min_size=h.n, max_size=h.n))
    val = induced_vertex_weights(h, w, init)
    assert sum(val) == sum(init) + sum(len(e) * x for e, x in zip(h.edges, w))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.data())
def test_monotone_shift_on_regular(q, c, data):
    # cycles are 2-regular, complete graphs (q-1)-regular
    for h, d in ((H(q + 1, [(i, (i + 1) % (q + 1)) for i in range(q + 1)]), 2),
                 (H(q, [(i, j) for i in range(q) for j in range(i + 1, q)]), q - 1)):
        w = data.draw(st.lists(st.integers(1, 5), min_size=h.m, max_size=h.m))
        before = induced_vertex_weights(h, w)
        after = induced_vertex_weights(h, [x + c for x in w])
        assert after == [x + d * c for x in before]
        assert is_proper(h, before) == is_proper(h, after)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(sizes=(1, 4)), st.data())
def test_verify_matches_naive_recheck(h, data):
    w = data.draw(st.lists(st.integers(1, 3), min_size=h.m, max_size=h.m))
    val = induced_vertex_weights(h, w)
    naive = [i for i, e in enumerate(h.edges) if len({val[v] for v in e}) == 1]
    got = verify(h, w)
    assert list(got.monochromatic) == naive == monochromatic_edges(h, val)
    assert got.proper == (not naive)
