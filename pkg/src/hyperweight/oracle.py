"""Exact search for proper weightings from ``{1..k}``.

Plain depth-first search over edge weights. Edges are assigned in a fixed
most-constrained-first order, and a branch is cut as soon as an edge whose
vertices are all complete (every incident edge assigned) is monochromatic.
"""

from __future__ import annotations

import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BudgetExhausted
from .hypercore import Hypergraph, chromatic_number


@dataclass
class OracleResult:
    status: str  # "found" | "infeasible" | "budget"
    k_min: Optional[int]
    witness: Optional[tuple[int, ...]]
    nodes: int
    cap: int
    certified_below: int = 0  # every k <= this was exhausted without a witness

    def as_json(self) -> dict:
        return {
            "status": self.status,
            "k_min": self.k_min,
            "witness": None if self.witness is None else list(self.witness),
            "nodes": self.nodes,
            "cap": self.cap,
            "certified_below": self.certified_below,
        }


def search_order(h: Hypergraph) -> list[int]:
    """Greedy order: next is the edge whose vertices have the most assigned incidences."""
    m = h.m
    settled = [0] * h.n
    left = set(range(m))
    order = []
    while left:
        best = max(left, key=lambda i: (sum(settled[v] for v in h.edges[i]), -i))
        left.remove(best)
        order.append(best)
        for v in h.edges[best]:
            settled[v] += 1
    return order


@dataclass
class _Search:
    h: Hypergraph
    k: int
    init: Sequence[int]
    node_limit: Optional[int] = None
    deadline: Optional[float] = None
    nodes: int = 0
    order: list[int] = field(default_factory=list)

    def __post_init__(self):
        h = self.h
        if not self.order:
            self.order = search_order(h)
        at = {e: i for i, e in enumerate(self.order)}
        done = [-1] * h.n
        for v in range(h.n):
            done[v] = max((at[e] for e in h.incident(v)), default=-1)
        self.check_at: list[list[int]] = [[] for _ in range(h.m)]
        for i, e in enumerate(h.edges):
            ready = max((done[v] for v in e), default=-1)
            if ready >= 0:
                self.check_at[ready].append(i)

    def run(self, prefix: Sequence[int] = ()) -> Optional[list[int]]:
        h, k = self.h, self.k
        # edges of size <= 1 can never be proper
        if any(len(e) <= 1 for e in h.edges):
            return None
        val = list(self.init)
        w = [0] * h.m
        order, check_at = self.order, self.check_at
        m = len(order)

        def assign(e, x):
            d = x - w[e]
            w[e] = x
            for v in h.edges[e]:
                val[v] += d

        def ok(pos):
            for i in check_at[pos]:
                es = h.edges[i]
                f = val[es[0]]
                if all(val[v] == f for v in es[1:]):
                    return False
            return True

        start = len(prefix)
        for p, x in enumerate(prefix):
            assign(order[p], x)
            if not ok(p):
                return None
        if start == m:
            return list(w)
        stack = [0] * m  # current value at each depth
        depth = start
        stack[depth] = 0
        while depth >= start:
            x = stack[depth] + 1
            e = order[depth]
            if x > k:
                assign(e, 0)
                stack[depth] = 0
                depth -= 1
                continue
            stack[depth] = x
            assign(e, x)
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                raise BudgetExhausted(f"node limit {self.node_limit} reached")
            if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
                raise BudgetExhausted("time limit reached")
            if not ok(depth):
                continue
            if depth == m - 1:
                return list(w)
            depth += 1
            stack[depth] = 0
        return None


def _worker(args):
    h, k, init, prefix, node_limit, deadline = args
    s = _Search(h, k, init, node_limit, deadline)
    try:
        return s.run(prefix), s.nodes, False
    except BudgetExhausted:
        return None, s.nodes, True


def exists_weighting(
    h: Hypergraph,
    k: int,
    init: Optional[Sequence[int]] = None,
    *,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
    stats: Optional[dict] = None,
) -> Optional[list[int]]:
    """A proper weighting from ``{1..k}`` or ``None`` if none exists.

    Raises :class:`BudgetExhausted` if a limit is hit before the search is
    decided. With ``jobs > 1`` the values of the first edge are split across
    worker processes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    init = [0] * h.n if init is None else list(init)
    if len(init) != h.n:
        raise ValueError("init length mismatch")
    if h.m == 0:
        return []
    deadline = None if time_limit is None else time.monotonic() + time_limit
    if jobs <= 1 or h.m < 2:
        s = _Search(h, k, init, node_limit, deadline)
        try:
            return s.run()
        finally:
            if stats is not None:
                stats["nodes"] = stats.get("nodes", 0) + s.nodes
    tasks = [(h, k, init, (x,), node_limit, deadline) for x in range(1, k + 1)]
    hit_limit = False
    found = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res, nodes, exhausted in pool.map(_worker, tasks):
            if stats is not None:
                stats["nodes"] = stats.get("nodes", 0) + nodes
            hit_limit |= exhausted
            if res is not None and found is None:
                found = res
    if found is not None:
        return found
    if hit_limit:
        raise BudgetExhausted("a worker hit its limit")
    return None


def min_max_weight(
    h: Hypergraph,
    cap: int,
    init: Optional[Sequence[int]] = None,
    *,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
) -> OracleResult:
    """Smallest ``k <= cap`` admitting a proper weighting from ``{1..k}``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    stats: dict = {}
    deadline = None if time_limit is None else time.monotonic() + time_limit
    for k in range(1, cap + 1):
        left_nodes = None if node_limit is None else node_limit - stats.get("nodes", 0)
        left_time = None if deadline is None else deadline - time.monotonic()
        try:
            w = exists_weighting(
                h, k, init, node_limit=left_nodes, time_limit=left_time, jobs=jobs, stats=stats
            )
        except BudgetExhausted:
            return OracleResult("budget", None, None, stats.get("nodes", 0), cap, k - 1)
        if w is not None:
            return OracleResult("found", k, tuple(w), stats.get("nodes", 0), cap, k - 1)
    return OracleResult("infeasible", None, None, stats.get("nodes", 0), cap, cap)


def check_lower_bound_claim(f: Hypergraph, **limits) -> bool:
    """The incidence hypergraph of ``f`` needs weights up to at least chi(f).

    Searches for a weighting from ``{1..chi(f) - 1}``; True when none exists.
    Inputs with chi(f) <= 2 trigger a warning, since the claim is then only
    the trivial fact that all-ones fails.
    """
    from .constructions import incidence_hypergraph

    chi = chromatic_number(f)
    if chi <= 2:
        warnings.warn(f"chromatic number {chi}: lower-bound claim is degenerate, review manually")
    inc, _ = incidence_hypergraph(f)
    if chi <= 1:
        return True
    res = min_max_weight(inc, chi - 1, **limits)
    if res.status == "budget":
        raise BudgetExhausted("lower-bound check undecided")
    return res.status == "infeasible"
