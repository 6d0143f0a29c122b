"""Lower-bound instances and seeded random corpora."""

from __future__ import annotations

from itertools import combinations

from .errors import PreconditionError, SamplingError
from .hypercore import Hypergraph
from .rng import SplitMix64

EDGE_TRIES = 200
INSTANCE_TRIES = 200

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def complete_graph(q: int) -> Hypergraph:
    if q < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    return Hypergraph(q, tuple(combinations(range(q), 2)))


def cycle_graph(q: int) -> Hypergraph:
    if q < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Hypergraph.from_edges(q, [(i, (i + 1) % q) for i in range(q)])


def fano_plane() -> Hypergraph:
    return Hypergraph(7, FANO_LINES)


def incidence_hypergraph(f: Hypergraph) -> tuple[Hypergraph, list[tuple[int, int]]]:
    """Hypergraph on the vertex-edge incidences ``(v, e)`` of ``f``.

    New vertices are numbered in lexicographic ``(v, e)`` order. Edges come
    in two groups: first one per vertex ``v`` of ``f`` (all incidences at
    ``v``), then one per edge ``e`` of ``f`` (all incidences on ``e``). The
    returned label list maps each new vertex id to its ``(v, e)`` pair.

    Every vertex of ``f`` needs degree >= 2 and every edge size >= 2, so the
    result has no edge of size 1.
    """
    if any(f.degree(v) < 2 for v in range(f.n)):
        raise PreconditionError("every source vertex needs degree >= 2")
    if any(len(e) < 2 for e in f.edges):
        raise PreconditionError("every source edge needs size >= 2")
    labels = [(v, e) for v in range(f.n) for e in f.incident(v)]
    ident = {lab: i for i, lab in enumerate(labels)}
    by_vertex = [tuple(ident[(v, e)] for e in f.incident(v)) for v in range(f.n)]
    by_edge = [tuple(sorted(ident[(v, i)] for v in e)) for i, e in enumerate(f.edges)]
    return Hypergraph(len(labels), tuple(by_vertex + by_edge)), labels


def _random(n, m, r, seed, linear, min_degree=0) -> Hypergraph:
    if n < 2 or r < 2 or m < 0:
        raise ValueError("need n >= 2, r >= 2, m >= 0")
    rng = SplitMix64(seed)
    top = min(r, n)
    for _ in range(INSTANCE_TRIES):
        edges: list[tuple[int, ...]] = []
        used: set[tuple[int, int]] = set()
        for _ in range(m):
            for _ in range(EDGE_TRIES):
                e = tuple(sorted(rng.sample(n, rng.between(2, top))))
                if linear:
                    pairs = set(combinations(e, 2))
                    if pairs & used:
                        continue
                    used |= pairs
                edges.append(e)
                break
            else:
                break
        if len(edges) < m:
            continue
        h = Hypergraph(n, tuple(edges))
        if h.has_twin_edge():
            continue
        if min_degree and any(h.degree(v) < min_degree for v in range(n)):
            continue
        return h
    raise SamplingError(f"no instance for n={n} m={m} r={r} seed={seed} after {INSTANCE_TRIES} tries")


def random_linear_hypergraph(n: int, m: int, r: int, seed: int, *, min_degree: int = 0) -> Hypergraph:
    """Seeded random linear hypergraph without twin edges.

    Each edge draws a size uniformly from ``2..min(r, n)`` and that many
    distinct vertices (partial Fisher-Yates) from a :class:`SplitMix64`
    stream; an edge sharing a vertex pair with an earlier one is redrawn, up
    to ``EDGE_TRIES`` times. A finished instance with a twin edge (or, if
    asked, a vertex of lower degree) is discarded and the stream continues,
    up to ``INSTANCE_TRIES`` instances, after which :class:`SamplingError`
    is raised.
    """
    return _random(n, m, r, seed, True, min_degree)


def random_hypergraph(n: int, m: int, r: int, seed: int, *, min_degree: int = 0) -> Hypergraph:
    """As :func:`random_linear_hypergraph` but any overlap (and duplicates) allowed."""
    return _random(n, m, r, seed, False, min_degree)
