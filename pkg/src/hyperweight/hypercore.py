"""Hypergraph data model, structural predicates and reduction operators.

Vertices are the integers ``0..n-1``. Edges are strictly increasing tuples of
vertex ids and are identified by their position in the edge list, so the same
vertex set may appear several times (multi-edges).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


EdgeMap = list[Optional[int]]


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...]
    _incidence: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple(tuple(e) for e in self.edges)
        for i, e in enumerate(edges):
            for a, b in zip(e, e[1:]):
                if a >= b:
                    raise ValueError(f"edge {i} is not strictly increasing: {e}")
            if e and (e[0] < 0 or e[-1] >= self.n):
                raise ValueError(f"edge {i} has a vertex outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(edges):
            for v in e:
                inc[v].append(i)
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build from arbitrary iterables; each edge is sorted, repeats rejected."""
        out = []
        for e in edges:
            s = sorted(e)
            if len(set(s)) != len(s):
                raise ValueError(f"edge {s} repeats a vertex")
            out.append(tuple(s))
        return cls(n, tuple(out))

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    def incident(self, v: int) -> tuple[int, ...]:
        """Indices of the edges containing ``v``, ascending."""
        self._check_vertex(v)
        return self._incidence[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._incidence[v])

    def max_edge_size(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, k: int) -> bool:
        return all(len(e) == k for e in self.edges)

    def is_linear(self) -> bool:
        # a shared pair of vertices is seen twice in the pair table
        seen: set[tuple[int, int]] = set()
        for e in self.edges:
            for pair in combinations(e, 2):
                if pair in seen:
                    return False
                seen.add(pair)
        return True

    def twin_classes(self) -> list[tuple[int, ...]]:
        """Partition of the vertices by identical incidence.

        Two vertices are twins when exactly the same edge list entries contain
        them; copies of a duplicated edge count separately. Classes are listed
        by their smallest member.
        """
        groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for v in range(self.n):
            groups[self._incidence[v]].append(v)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])

    def has_twin_edge(self) -> bool:
        """True if some edge can never be properly coloured.

        That is an edge with at most one vertex, or an edge whose vertices are
        pairwise twins.
        """
        for e in self.edges:
            if len(e) <= 1:
                return True
            sig = self._incidence[e[0]]
            if all(self._incidence[v] == sig for v in e[1:]):
                return True
        return False

    def delete_vertex(self, v: int) -> tuple["Hypergraph", EdgeMap]:
        """``H - v``: remove ``v`` from every edge, dropping edges left empty.

        Returns the new hypergraph on ``n - 1`` order-preservingly relabelled
        vertices and the map from old edge index to new index (``None`` for a
        dropped edge).
        """
        self._check_vertex(v)
        edges: list[tuple[int, ...]] = []
        emap: EdgeMap = []
        for e in self.edges:
            img = tuple(u if u < v else u - 1 for u in e if u != v)
            if img:
                emap.append(len(edges))
                edges.append(img)
            else:
                emap.append(None)
        return Hypergraph(self.n - 1, tuple(edges)), emap

    def delete_vertices(self, xs: Iterable[int]) -> tuple["Hypergraph", EdgeMap, list[int]]:
        """Delete a set of vertices at once.

        Returns the hypergraph, the edge map and the list ``old`` with
        ``old[new_id]`` the original id of each surviving vertex.
        """
        drop = set(xs)
        for v in drop:
            self._check_vertex(v)
        keep = [u for u in range(self.n) if u not in drop]
        relabel = {u: i for i, u in enumerate(keep)}
        edges: list[tuple[int, ...]] = []
        emap: EdgeMap = []
        for e in self.edges:
            img = tuple(relabel[u] for u in e if u not in drop)
            if img:
                emap.append(len(edges))
                edges.append(img)
            else:
                emap.append(None)
        return Hypergraph(len(keep), tuple(edges)), emap, keep

    def induced(self, xs: Sequence[int]) -> tuple["Hypergraph", EdgeMap]:
        """``H[X]``: keep exactly the edges contained in ``X``.

        ``X`` must be a set of valid vertex ids; the new ids follow the order
        of the old ones.
        """
        keep = sorted(set(xs))
        if len(keep) != len(xs):
            raise ValueError("vertex set contains repeats")
        for v in keep:
            self._check_vertex(v)
        relabel = {u: i for i, u in enumerate(keep)}
        edges: list[tuple[int, ...]] = []
        emap: EdgeMap = []
        for e in self.edges:
            if all(u in relabel for u in e):
                emap.append(len(edges))
                edges.append(tuple(relabel[u] for u in e))
            else:
                emap.append(None)
        return Hypergraph(len(keep), tuple(edges)), emap

    def components(self) -> list[tuple[int, ...]]:
        """Connected components under shared-edge reachability, by smallest member."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            for u in e[1:]:
                a, b = find(e[0]), find(u)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = defaultdict(list)
        for v in range(self.n):
            groups[find(v)].append(v)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])

    def proper_two_coloring(self) -> Optional[list[int]]:
        """A 0/1 colouring with no monochromatic edge, or ``None`` if none exists.

        Backtracking with forward checking; intended for small instances.
        """
        if any(len(e) <= 1 for e in self.edges):
            return None
        color = [-1] * self.n
        order = sorted(range(self.n), key=lambda v: -len(self._incidence[v]))

        def ok(v: int) -> bool:
            for i in self._incidence[v]:
                e = self.edges[i]
                if all(color[u] == color[v] for u in e):
                    return False
            return True

        def rec(k: int) -> bool:
            if k == len(order):
                return True
            v = order[k]
            for c in (0, 1):
                color[v] = c
                if ok(v) and rec(k + 1):
                    return True
            color[v] = -1
            return False

        return color if rec(0) else None


def chromatic_number(h: Hypergraph, cap: int = 8) -> int:
    """Smallest k admitting a colouring with no monochromatic edge (weak sense).

    Raises ValueError if some edge has size <= 1 or no colouring with ``cap``
    colours exists.
    """
    if any(len(e) <= 1 for e in h.edges):
        raise ValueError("edges of size <= 1 cannot be properly coloured")
    if not h.edges:
        return 1
    order = sorted(range(h.n), key=lambda v: -h.degree(v))
    for k in range(1, cap + 1):
        color = [-1] * h.n

        def rec(i: int, used: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            # symmetry breaking: a fresh colour is only tried once
            for c in range(min(k, used + 1)):
                color[v] = c
                if all(
                    not all(color[u] == c for u in h.edges[j]) for j in h.incident(v)
                ) and rec(i + 1, max(used, c + 1)):
                    return True
            color[v] = -1
            return False

        if rec(0, 0):
            return k
    raise ValueError(f"chromatic number exceeds {cap}")


def _content_lines(text: str):
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield no, s


def parse_hypergraph(text: str) -> Hypergraph:
    """Read the text format: a header ``n m`` followed by ``m`` edge lines.

    Blank lines and lines starting with ``#`` are ignored. Every edge line is
    a strictly increasing list of vertex ids separated by spaces.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ValueError("missing header line 'n m'")
    no, head = lines[0]
    parts = head.split()
    try:
        n, m = (int(x) for x in parts)
    except ValueError:
        raise ValueError(f"line {no}: header must be 'n m', got {head!r}") from None
    if n < 0 or m < 0:
        raise ValueError(f"line {no}: n and m must be non-negative")
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for no, s in body:
        try:
            edges.append(tuple(int(x) for x in s.split()))
        except ValueError:
            raise ValueError(f"line {no}: vertex ids must be integers") from None
    return Hypergraph(n, tuple(edges))


def format_hypergraph(h: Hypergraph, comment: Optional[str] = None) -> str:
    out = [f"# {line}" for line in comment.splitlines()] if comment else []
    out.append(f"{h.n} {h.m}")
    out.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(out) + "\n"
