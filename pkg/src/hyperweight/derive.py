"""Vertex orderings and the derived graph that drive the constructive solvers.

An ordering lists the vertices ``v_1 .. v_n`` (``pi[0]`` is ``v_1``). It is
built backwards: a seed block is placed at the end, then vertices with a
derived-graph edge into the already ordered suffix are prepended one at a
time, lowest id first. The derived graph consists of every 2-edge plus, for
every larger edge, the pair of its two earliest vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .errors import PreconditionError, InternalCaseFailure
from .hypercore import Hypergraph


@dataclass(frozen=True)
class GEdge:
    first: int   # the endpoint earlier in the ordering
    second: int
    source: int  # index of the hyperedge this pair comes from


@dataclass(frozen=True)
class Anchor:
    """Seed block placed at the end of the ordering when the 2-edges form a matching.

    ``pairs`` lists the matching 2-edges of the block from the end backwards,
    each as ``(later, earlier)`` vertex ids, so ``pairs[0] == (v_n, v_{n-1})``.
    """

    kind: str  # "minimal" (linear), "e0" (edge sizes 2..3), "unique" (general)
    edge: int
    t: int
    pairs: tuple[tuple[int, int], ...]
    d1: int = 0
    d2: int = 0
    ignored: tuple[int, ...] = ()


@dataclass(frozen=True)
class DerivedOrdering:
    pi: tuple[int, ...]
    e2: tuple[int, ...]
    epi: dict[int, tuple[int, int]]
    g_edges: tuple[GEdge, ...]
    stall: Optional[int] = None
    anchor: Optional[Anchor] = None
    chunks: tuple[int, ...] = ()
    pos: tuple[int, ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def ordered(self) -> tuple[int, ...]:
        """Vertices whose position is determined (the suffix when stalled)."""
        if self.stall is None:
            return self.pi
        return self.pi[len(self.pi) - self.stall:]

    def as_json(self) -> dict:
        return {
            "pi": list(self.pi),
            "e2": list(self.e2),
            "epi": {str(k): list(v) for k, v in sorted(self.epi.items())},
            "g_edges": [[g.first, g.second, g.source] for g in self.g_edges],
            "stall": self.stall,
            "chunks": list(self.chunks),
            "anchor": None
            if self.anchor is None
            else {
                "kind": self.anchor.kind,
                "edge": self.anchor.edge,
                "t": self.anchor.t,
                "pairs": [list(p) for p in self.anchor.pairs],
                "d1": self.anchor.d1,
                "d2": self.anchor.d2,
                "ignored": list(self.anchor.ignored),
            },
        }


def strip_non_2edge_vertices(h: Hypergraph) -> tuple[Hypergraph, list[int], list[int]]:
    """Delete vertices lying in no 2-edge until every vertex lies in one.

    A vertex is only deleted if the result is still free of twin edges; among
    the admissible vertices the lowest current id goes first. No edge is ever
    dropped (each edge keeps its index), so a weighting of the result is a
    weighting of ``h``.

    Returns ``(reduced, keep, trace)``: ``keep[i]`` is the original id of
    reduced vertex ``i`` and ``trace`` lists the deleted original ids in order.
    """
    if h.has_twin_edge():
        raise PreconditionError("hypergraph has a twin edge")
    keep = list(range(h.n))
    trace: list[int] = []
    cur = h
    while True:
        in2 = [False] * cur.n
        for e in cur.edges:
            if len(e) == 2:
                in2[e[0]] = in2[e[1]] = True
        cands = [v for v in range(cur.n) if not in2[v]]
        if not cands:
            break
        for v in cands:
            nxt, emap = cur.delete_vertex(v)
            if not nxt.has_twin_edge():
                break
        else:
            raise InternalCaseFailure(
                f"no vertex outside the 2-edges can be deleted without creating a twin edge "
                f"(candidates {[keep[c] for c in cands]})"
            )
        assert all(i is not None for i in emap)
        trace.append(keep.pop(v))
        cur = nxt
    return cur, keep, trace


class _Builder:
    """Backward extension state over a fixed hypergraph."""

    def __init__(self, h: Hypergraph):
        self.h = h
        self.unordered = [len(e) for e in h.edges]
        self.in_order = [False] * h.n
        self.build: list[int] = []  # v_n first
        self.cand: set[int] = set()

    def place(self, v: int) -> None:
        if self.in_order[v]:
            raise InternalCaseFailure(f"vertex {v} placed twice")
        self.in_order[v] = True
        self.cand.discard(v)
        self.build.append(v)
        for i in self.h.incident(v):
            e = self.h.edges[i]
            self.unordered[i] -= 1
            if len(e) == 2:
                u = e[0] if e[1] == v else e[1]
                if not self.in_order[u]:
                    self.cand.add(u)
            elif self.unordered[i] == 1:
                for u in e:
                    if not self.in_order[u]:
                        self.cand.add(u)
                        break

    def extend(self) -> None:
        while self.cand:
            self.place(min(self.cand))

    @property
    def complete(self) -> bool:
        return len(self.build) == self.h.n


def _partners(h: Hypergraph) -> dict[int, set[int]]:
    nb: dict[int, set[int]] = {v: set() for v in range(h.n)}
    for e in h.edges:
        if len(e) == 2:
            nb[e[0]].add(e[1])
            nb[e[1]].add(e[0])
    return nb


def _assemble(h: Hypergraph, b: _Builder, anchor, chunks=()) -> DerivedOrdering:
    suffix = list(reversed(b.build))
    prefix = [v for v in range(h.n) if not b.in_order[v]]
    pi = tuple(prefix + suffix)
    pos = [0] * h.n
    for i, v in enumerate(pi):
        pos[v] = i
    stall = None if b.complete else len(suffix)
    e2 = tuple(i for i, e in enumerate(h.edges) if len(e) == 2)
    epi: dict[int, tuple[int, int]] = {}
    gl: list[GEdge] = []
    for i, e in enumerate(h.edges):
        if not all(b.in_order[v] for v in e):
            continue
        if len(e) == 2:
            a, c = sorted(e, key=lambda v: pos[v])
            gl.append(GEdge(a, c, i))
        elif len(e) >= 3:
            a, c = sorted(e, key=lambda v: pos[v])[:2]
            epi[i] = (a, c)
            gl.append(GEdge(a, c, i))
    return DerivedOrdering(pi, e2, epi, tuple(gl), stall, anchor, tuple(chunks), tuple(pos))


def _check_ready(h: Hypergraph) -> dict[int, set[int]]:
    nb = _partners(h)
    if h.m == 0 or not any(len(e) == 2 for e in h.edges):
        raise PreconditionError("derived ordering needs at least one 2-edge")
    if any(not nb[v] for v in range(h.n)):
        raise PreconditionError("every vertex must lie in a 2-edge (strip first)")
    if any(len(e) < 2 for e in h.edges):
        raise PreconditionError("edges of size < 2 present")
    return nb


def _seed_vertex(nb: dict[int, set[int]]) -> Optional[int]:
    for v in sorted(nb):
        if len(nb[v]) >= 2:
            return v
    return None


def _minimal_anchor(h: Hypergraph, nb) -> Anchor:
    big = [i for i, e in enumerate(h.edges) if len(e) >= 3]
    if not big:
        raise PreconditionError("2-edges form a perfect matching and no larger edge exists")
    t = min(len(h.edges[i]) for i in big)
    hi = min(i for i in big if len(h.edges[i]) == t)
    pairs = []
    for v in h.edges[hi]:
        (p,) = nb[v]
        if p in h.edges[hi]:
            raise PreconditionError("anchor edge contains a whole 2-edge (input not linear)")
        pairs.append((v, p))
    return Anchor("minimal", hi, t, tuple(pairs))


def _e0_anchor(h: Hypergraph, nb) -> Optional[Anchor]:
    partner = {v: next(iter(s)) for v, s in nb.items()}
    e0 = [
        i
        for i, e in enumerate(h.edges)
        if len(e) == 3 and all(partner[a] not in e for a in e)
    ]
    if not e0:
        return None
    e0sets = [set(h.edges[i]) for i in e0]
    best = None
    for i in e0:
        for a, b, c in permutations(h.edges[i]):
            d1 = sum(1 for s in e0sets if b in s and partner[c] in s)
            d2 = sum(1 for s in e0sets if b in s and c in s)
            if d2 < d1:
                continue
            if best is None or d1 + d2 > best[0]:
                best = (d1 + d2, i, a, b, c, d1, d2)
    if best is None:
        raise InternalCaseFailure("no anchor 3-edge with d2 >= d1")
    _, i, a, b, c, d1, d2 = best
    pairs = ((c, partner[c]), (b, partner[b]), (a, partner[a]))
    tail = {b, c, partner[c]}
    ignored = tuple(j for j, e in enumerate(h.edges) if set(e) == tail)
    return Anchor("e0", i, 3, pairs, d1, d2, ignored)


def _unique_anchor(h: Hypergraph, nb) -> Anchor:
    partner = {v: next(iter(s)) for v, s in nb.items()}
    best = None
    for i, e in enumerate(h.edges):
        es = set(e)
        hit = []
        for v in e:
            pair = tuple(sorted((v, partner[v])))
            if pair not in hit:
                hit.append(pair)
        unique = [p for p in hit if len(es.intersection(p)) == 1]
        if not unique:
            continue
        if best is None or len(hit) < best[0]:
            best = (len(hit), i, hit, unique[-1])
    if best is None:
        raise PreconditionError("no edge meets a 2-edge in exactly one vertex")
    t, i, hit, low = best
    es = set(h.edges[i])
    order = [p for p in hit if p != low] + [low]
    pairs = []
    for x, y in order:
        later, earlier = (x, y) if x in es else (y, x)
        pairs.append((later, earlier))
    return Anchor("unique", i, t, tuple(pairs))


def build_ordering(h: Hypergraph, rule: str = "minimal") -> DerivedOrdering:
    """Ordering for the linear (``rule="minimal"``) or rank-3 (``rule="e0"``) solver.

    ``h`` must already satisfy: every vertex in a 2-edge, no twin edge.
    If some vertex has two distinct 2-edge neighbours the lowest such vertex
    is placed last. Otherwise the 2-edges form a perfect matching and an
    anchor block is placed last: for ``"minimal"`` a smallest edge of size
    at least 3 interleaved with the 2-edges it meets, for ``"e0"`` the 3-edge
    without an internal 2-edge chosen to maximise ``d1 + d2`` with
    ``d2 >= d1``. If the backward extension stops early, ``stall`` gives the
    length of the determined suffix.
    """
    nb = _check_ready(h)
    b = _Builder(h)
    anchor = None
    seed = _seed_vertex(nb)
    if seed is not None:
        b.place(seed)
    else:
        if rule == "minimal":
            anchor = _minimal_anchor(h, nb)
        elif rule == "e0":
            anchor = _e0_anchor(h, nb)
            if anchor is None:
                raise PreconditionError("no 3-edge free of internal 2-edges")
        elif rule == "unique":
            anchor = _unique_anchor(h, nb)
        else:
            raise ValueError(f"unknown rule {rule!r}")
        for later, earlier in anchor.pairs:
            b.place(later)
            b.place(earlier)
    b.extend()
    return _assemble(h, b, anchor, (len(b.build),))


def solve_general_ordering(h: Hypergraph, variant: int = 0) -> DerivedOrdering:
    """Ordering for the general solver.

    If two 2-edges meet, this is :func:`build_ordering` (possibly stalled).
    Otherwise the anchor is an edge meeting some 2-edge in exactly one vertex
    and meeting as few 2-edges as possible; after each stall the lowest
    unordered vertex and its 2-edge partner start a new block, so the result
    is always complete. ``chunks`` lists the cumulative suffix length after
    each block.

    A nonzero ``variant`` changes how later blocks start: bit 0 puts the
    partner last instead of the vertex itself, and ``variant >> 1`` skips
    that many of the lowest unordered vertices (cyclically).
    """
    nb = _check_ready(h)
    if _seed_vertex(nb) is not None:
        return build_ordering(h, "minimal")
    anchor = _unique_anchor(h, nb)
    b = _Builder(h)
    for later, earlier in anchor.pairs:
        b.place(later)
        b.place(earlier)
    b.extend()
    chunks = [len(b.build)]
    while not b.complete:
        left = [v for v in range(h.n) if not b.in_order[v]]
        u = left[(variant >> 1) % len(left)]
        (p,) = nb[u]
        if variant & 1:
            u, p = p, u
        b.place(u)
        b.place(p)
        b.extend()
        chunks.append(len(b.build))
    return _assemble(h, b, anchor, chunks)


def ordering_from_pi(h: Hypergraph, pi, anchor: Optional[Anchor] = None) -> DerivedOrdering:
    """Derived graph for an explicitly given complete ordering of ``h``."""
    if sorted(pi) != list(range(h.n)):
        raise ValueError("pi is not a permutation of the vertices")
    b = _Builder(h)
    b.build = list(reversed(pi))
    b.in_order = [True] * h.n
    return _assemble(h, b, anchor, (h.n,))


def has_seed_vertex(h: Hypergraph) -> bool:
    """Some vertex has two distinct 2-edge neighbours."""
    return _seed_vertex(_partners(h)) is not None


def has_e0_edge(h: Hypergraph) -> bool:
    """Some 3-edge contains no 2-edge."""
    pairs = {e for e in h.edges if len(e) == 2}
    return any(
        len(e) == 3 and not any(p in pairs for p in ((e[0], e[1]), (e[0], e[2]), (e[1], e[2])))
        for e in h.edges
    )
