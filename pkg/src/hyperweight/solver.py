"""Constructive vertex-colouring edge weightings.

Three solvers share one engine. Vertices are visited in a derived ordering;
every edge starts at a provisional weight and is adjusted at most twice, once
from each endpoint of its derived-graph pair. Each visited vertex is given a
window ``{low, low + 2*step}`` of admissible induced weights, chosen disjoint
from the windows of its earlier derived-graph neighbours.

* :func:`solve_linear` -- linear hypergraphs, weights ``1..max(5, r+1)``.
* :func:`solve_r3` -- edges of size 2 or 3, weights ``1..5``.
* :func:`solve_general` -- any edge sizes up to ``r``, weights ``1..5r-5``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from . import oracle
from .derive import (
    Anchor,
    DerivedOrdering,
    build_ordering,
    has_e0_edge,
    has_seed_vertex,
    ordering_from_pi,
    solve_general_ordering,
    strip_non_2edge_vertices,
)
from .errors import BudgetExhausted, InternalCaseFailure, NotColorableError, PreconditionError
from .hypercore import Hypergraph
from .weighting import induced_vertex_weights, verify

log = logging.getLogger(__name__)

BASE_CASE_VERTICES = 6
BASE_CASE_NODE_LIMIT = 100_000
# exhaustive fallback over the d1/d2 switching edges is capped at 2**this
_SWITCH_SEARCH_LIMIT = 12
GENERAL_VARIANTS = 8
FALLBACK_NODE_LIMIT = 5_000_000


@dataclass(frozen=True)
class ParityWindow:
    low: int
    step: int = 1

    @property
    def high(self) -> int:
        return self.low + 2 * self.step

    def __contains__(self, x: int) -> bool:
        return x - self.low in (0, 2 * self.step)


def window_low(x: int, step: int = 1) -> int:
    """Lower end of the unique window containing ``x``.

    With ``q = x // step``, windows are ``{q0, q0 + 2}`` in units of ``step``
    (offset by ``x % step``) with ``q0 % 4`` in ``{0, 1}``.
    """
    rho, q = x % step, x // step
    q0 = q if q % 4 in (0, 1) else q - 2
    return q0 * step + rho


@dataclass
class SolveReport:
    weights: tuple[int, ...]
    budget: int
    mode: str
    trace: list[dict] = field(default_factory=list)
    verified: bool = False

    @property
    def max_weight(self) -> int:
        return max(self.weights, default=0)

    def as_json(self) -> dict:
        return {
            "mode": self.mode,
            "budget": self.budget,
            "max_weight": self.max_weight,
            "verified": self.verified,
            "weights": list(self.weights),
            "trace": self.trace,
        }


class _State:
    """Mutable edge weights with incrementally maintained vertex sums."""

    def __init__(self, h: Hypergraph, init: Sequence[int], weights: Sequence[int]):
        self.h = h
        self.w = list(weights)
        self.val = induced_vertex_weights(h, self.w, init)

    def set(self, e: int, x: int) -> None:
        d = x - self.w[e]
        if d:
            self.w[e] = x
            for v in self.h.edges[e]:
                self.val[v] += d

    def proper(self, e: int) -> bool:
        vs = self.h.edges[e]
        first = self.val[vs[0]]
        return any(self.val[v] != first for v in vs[1:])


class _Sweep:
    """The vertex-by-vertex window assignment over a derived ordering."""

    def __init__(self, st: _State, od: DerivedOrdering, step: int, hi: int, audit: bool = False):
        self.st = st
        self.od = od
        self.c = step
        self.hi = hi
        self.audit = audit
        self.pos = od.pos
        self.back: dict[int, dict[int, list[int]]] = {v: {} for v in range(st.h.n)}
        self.fwd: dict[int, dict[int, list[int]]] = {v: {} for v in range(st.h.n)}
        for g in od.g_edges:
            self.back[g.second].setdefault(g.first, []).append(g.source)
            self.fwd[g.first].setdefault(g.second, []).append(g.source)
        self.provisional = list(st.w)
        self.touched: set[int] = set()
        self.windows: dict[int, ParityWindow] = {}

    def _is_low(self, u: int) -> bool:
        return self.windows[u].low == self.st.val[u]

    def _toggle(self, u: int, edges: list[int], sign: int) -> None:
        d = 2 * self.c * sign
        for e in edges:
            if 1 <= self.st.w[e] + d <= self.hi:
                self.st.set(e, self.st.w[e] + d)
                self.touched.add(e)
                return
        raise InternalCaseFailure(f"no edge toward {u} can move by {d}")

    def _groups(self, v: int):
        groups = []
        for u in sorted(self.back[v], key=lambda x: self.pos[x]):
            if u not in self.windows:
                raise InternalCaseFailure(f"earlier neighbour {u} of {v} has no window")
            groups.append((u, self.back[v][u], 1 if self._is_low(u) else -1))
        return groups

    def _audit_before(self, v: int) -> None:
        for u, edges in self.back[v].items():
            for e in edges:
                d = self.st.w[e] - self.provisional[e]
                if d == -self.c:
                    assert self._is_low(u), (u, v, e)
                elif d == self.c:
                    assert not self._is_low(u), (u, v, e)
                else:
                    assert d == 0, (u, v, e, d)
        for edges in self.fwd[v].values():
            for e in edges:
                assert e not in self.touched, (v, e)

    def step(self, v: int) -> None:
        """Settle ``v`` using its backward toggles and its first forward edge."""
        c, st = self.c, self.st
        if self.audit:
            self._audit_before(v)
        groups = self._groups(v)
        if not self.fwd[v]:
            raise InternalCaseFailure(f"vertex {v} has no later neighbour")
        j = min(self.fwd[v], key=lambda x: self.pos[x])
        tweak = min(self.fwd[v][j])
        if tweak in self.touched:
            raise InternalCaseFailure(f"forward edge {tweak} of {v} already adjusted")
        neg = [g for g in groups if g[2] < 0]
        plus = [g for g in groups if g[2] > 0]
        p, q = len(neg), len(plus)
        blocked = {self.windows[u].low for u, _, _ in groups}
        a0 = st.val[v]
        choice = None
        for mm in range(-(2 * p + 1), 2 * q + 2):
            x = a0 + mm * c
            low = window_low(x, c)
            if low in blocked:
                continue
            if mm % 2 == 0:
                opts = [(0, mm // 2)]
            else:
                opts = [(-1, (mm + 1) // 2), (1, (mm - 1) // 2)]
            allowed = (-1, 0) if low == x else (0, 1)
            for f, s in opts:
                if f in allowed and -p <= s <= q:
                    choice = (x, low, f, s)
                    break
            if choice:
                break
        if choice is None:
            raise InternalCaseFailure(f"no admissible weight for vertex {v}")
        x, low, f, s = choice
        chosen = plus[:s] if s > 0 else neg[: -s]
        for u, edges, sign in chosen:
            self._toggle(u, edges, sign)
        if f:
            st.set(tweak, st.w[tweak] + f * c)
            self.touched.add(tweak)
        if st.val[v] != x:
            raise InternalCaseFailure(f"vertex {v} landed on {st.val[v]}, wanted {x}")
        self.windows[v] = ParityWindow(low, c)

    def finish(self, v: int) -> bool:
        """Make ``v`` differ from every earlier neighbour; needs two of them.

        Tries, in order: every toggle at its lower option, then raising one
        neighbour, then raising two. Returns False if ``v`` has fewer than two
        distinct earlier neighbours.
        """
        c, st = self.c, self.st
        groups = self._groups(v)
        if len(groups) < 2:
            return False
        lower = [-2 * c if sign < 0 else 0 for _, _, sign in groups]
        a = st.val[v] + sum(lower)
        k = len(groups)
        cands = [()] + [(i,) for i in range(k)] + list(combinations(range(k), 2))
        for raised in cands:
            shift = [lower[i] + (2 * c if i in raised else 0) for i in range(k)]
            xv = a + 2 * c * len(raised)
            if all(st.val[u] + shift[i] != xv for i, (u, _, _) in enumerate(groups)):
                for i, (u, edges, sign) in enumerate(groups):
                    if shift[i]:
                        self._toggle(u, edges, sign)
                assert st.val[v] == xv
                return True
        raise InternalCaseFailure(f"final vertex {v}: no switching choice separates it")


def _brute(h: Hypergraph, init: Sequence[int], budget: int, node_limit=None) -> list[int]:
    res = oracle.exists_weighting(h, budget, init, node_limit=node_limit)
    if res is None:
        raise InternalCaseFailure(f"base case on {h.n} vertices has no weighting within {budget}")
    return list(res)


def _edge_of_pair(h: Hypergraph, a: int, b: int) -> int:
    pair = (min(a, b), max(a, b))
    for i in h.incident(a):
        if h.edges[i] == pair:
            return i
    raise InternalCaseFailure(f"no 2-edge {pair}")


def _sub_ordering(h: Hypergraph, od: DerivedOrdering, sub: Hypergraph, emap, keep) -> DerivedOrdering:
    new = {v: i for i, v in enumerate(keep)}
    pi = [new[v] for v in od.ordered]
    an = od.anchor
    if an is not None:
        an = Anchor(
            an.kind,
            emap[an.edge],
            an.t,
            tuple((new[a], new[b]) for a, b in an.pairs),
            an.d1,
            an.d2,
            tuple(emap[i] for i in an.ignored if emap[i] is not None),
        )
    return ordering_from_pi(sub, pi, an)


class _Solver:
    def __init__(self, mode: str, budget: int, audit: bool = False):
        self.mode = mode
        self.budget = budget
        self.audit = audit
        self.trace: list[dict] = []

    def note(self, tag: str, depth: int, **kw) -> None:
        self.trace.append({"step": tag, "depth": depth, **kw})

    def solve(self, h: Hypergraph, init: Sequence[int], depth: int = 0) -> list[int]:
        if h.m == 0:
            return []
        if h.has_twin_edge():
            raise InternalCaseFailure(f"twin edge appeared at recursion depth {depth}")
        if h.n <= BASE_CASE_VERTICES:
            limit = None if h.n <= 3 else BASE_CASE_NODE_LIMIT
            try:
                w = _brute(h, init, self.budget, limit)
            except BudgetExhausted:
                pass  # too many edges to search cheaply; build it instead
            else:
                self.note("base", depth, n=h.n, m=h.m)
                return w
        hs, keep, deleted = strip_non_2edge_vertices(h)
        if deleted:
            self.note("reduction", depth, deleted=deleted)
        init_s = [init[k] for k in keep]
        if self.mode == "general":
            od = solve_general_ordering(hs)
            if od.stall is None and od.anchor is not None:
                return self._general_variants(hs, init_s, od, depth)
        else:
            od = self._ordering(hs, init_s, depth)
            if isinstance(od, list):
                return od
        if od.stall is None:
            return self.weight(hs, init_s, od, depth)
        return self._split(hs, init_s, od, depth)

    def _general_variants(self, h: Hypergraph, init, od: DerivedOrdering, depth: int) -> list[int]:
        """Retry with other block starts when the residue preprocessing gets stuck."""
        err = None
        for variant in range(GENERAL_VARIANTS):
            if variant:
                od = solve_general_ordering(h, variant)
            try:
                w = _weight_general(h, init, od, self, depth)
            except InternalCaseFailure as exc:
                err = exc
                continue
            if variant:
                self.note("variant", depth, variant=variant)
            return w
        raise err

    def _ordering(self, h: Hypergraph, init, depth):
        if self.mode == "r3":
            if not has_e0_edge(h) and not has_seed_vertex(h):
                self.note("anchor", depth, kind="greedy")
                return _greedy_e1(h, init)
            return build_ordering(h, "e0")
        return build_ordering(h, "minimal")

    def _split(self, h: Hypergraph, init, od: DerivedOrdering, depth: int) -> list[int]:
        suffix = sorted(od.ordered)
        self.note("recursion", depth, suffix=len(suffix), rest=h.n - len(suffix))
        hp, emap, keep_p = h.delete_vertices(suffix)
        wp = self.solve(hp, [init[k] for k in keep_p], depth + 1)
        weights: list[Optional[int]] = [None] * h.m
        for i, j in enumerate(emap):
            if j is not None:
                weights[i] = wp[j]
        hpp, emap2 = h.induced(suffix)
        init_pp = []
        for v in suffix:
            extra = sum(weights[i] for i in h.incident(v) if emap2[i] is None)
            init_pp.append(init[v] + extra)
        sub = _sub_ordering(h, od, hpp, emap2, suffix)
        wpp = self.weight(hpp, init_pp, sub, depth + 1)
        for i, j in enumerate(emap2):
            if j is not None:
                weights[i] = wpp[j]
        assert all(x is not None for x in weights)
        return weights

    def weight(self, h: Hypergraph, init, od: DerivedOrdering, depth: int) -> list[int]:
        an = od.anchor
        if an is None:
            self.note("sweep", depth, n=h.n, last=od.pi[-1])
            st = _State(h, init, [3] * h.m)
            sw = _Sweep(st, od, 1, 5, self.audit)
            for v in od.pi[:-1]:
                sw.step(v)
            if not sw.finish(od.pi[-1]):
                raise InternalCaseFailure("last vertex has fewer than two neighbours")
            return st.w
        if an.kind == "minimal":
            return self._linear_anchor(h, init, od, depth)
        if an.kind == "e0":
            return self._e0_anchor(h, init, od, depth)
        if an.kind == "unique":
            return _weight_general(h, init, od, self, depth)
        raise ValueError(an.kind)

    def _linear_anchor(self, h, init, od: DerivedOrdering, depth) -> list[int]:
        an = od.anchor
        t, pairs, n = an.t, an.pairs, h.n
        s_idx = n - 2 * t + 3  # 0-based position of the first component's last vertex
        st = _State(h, init, [3] * h.m)
        sw = _Sweep(st, od, 1, 5, self.audit)
        for v in od.pi[:s_idx]:
            sw.step(v)
        v_s = od.pi[s_idx]
        if not sw.finish(v_s):
            raise InternalCaseFailure("anchor component end has fewer than two neighbours")
        v_s2, v_s1 = pairs[t - 1][0], pairs[t - 2][1]
        two = [_edge_of_pair(h, a, b) for a, b in pairs]
        trailing = two[: t - 2]
        affected = set(h.edges[an.edge]).union(*(h.edges[e] for e in trailing))
        checks = sorted({i for v in affected for i in h.incident(v)})
        # latest trailing edge each checked edge depends on
        dep = {}
        rank = {e: k for k, e in enumerate(trailing)}
        for i in checks:
            dep[i] = max(
                (rank[e] for v in h.edges[i] for e in h.incident(v) if e in rank), default=-1
            )
        for hv in range(1, self.budget + 1):
            st.set(an.edge, hv)
            if not all(st.proper(e) for e in two):
                continue
            if t == 3 and st.val[v_s2] == st.val[v_s1]:
                continue
            if not all(st.proper(i) for i in checks if dep[i] < 0):
                continue
            vals = _backtrack(st, trailing, checks, dep, self.budget)
            if vals is not None:
                self.note("anchor", depth, kind="minimal", t=t, h=an.edge, h_weight=hv,
                          trailing=vals)
                return st.w
        raise InternalCaseFailure(f"anchor fixup failed (t={t}, h={an.edge})")

    def _e0_anchor(self, h, init, od: DerivedOrdering, depth) -> list[int]:
        an = od.anchor
        (vn, vn1), (vn2, vn3), (vn4, vn5) = an.pairs
        tail = [vn5, vn4, vn3, vn2, vn1, vn]
        st = _State(h, init, [3] * h.m)
        sw = _Sweep(st, od, 1, 5, self.audit)
        last2 = _edge_of_pair(h, vn1, vn)
        checks = sorted({i for v in tail for i in h.incident(v)})
        e = an.edge

        def all_ok():
            return all(st.proper(i) for i in checks)

        if an.d1 == 0 and an.d2 == 1:
            for v in od.pi[: h.n - 5]:
                sw.step(v)
            two = [_edge_of_pair(h, vn5, vn4), _edge_of_pair(h, vn3, vn2), last2]
            for ev in range(1, 6):
                st.set(e, ev)
                if not all(st.proper(i) for i in two):
                    continue
                for fv in range(1, 6):
                    st.set(last2, fv)
                    if all_ok():
                        self.note("anchor", depth, kind="e0", branch="d1=0,d2=1",
                                  e_weight=ev, tail_weight=fv)
                        return st.w
            raise InternalCaseFailure("d1=0, d2=1 fixup failed")

        for v in od.pi[: h.n - 3]:
            sw.step(v)
        held = set(an.ignored)
        pairs2 = {h.edges[i] for i in od.e2}
        dedges = []
        for x, edges in sorted(sw.back[vn2].items(), key=lambda kv: od.pos[kv[0]]):
            for i in edges:
                es = h.edges[i]
                if i in held or len(es) != 3 or not (vn1 in es or vn in es):
                    continue
                if any(p in pairs2 for p in combinations(es, 2)):
                    continue  # contains a 2-edge, proper once that 2-edge is
                sign = 1 if sw._is_low(x) else -1
                dedges.append((i, x, sign))
        base = {i: st.w[i] for i, _, _ in dedges}
        lower = {i: min(base[i], base[i] + 2 * sign) for i, _, sign in dedges}
        higher = {i: max(base[i], base[i] + 2 * sign) for i, _, sign in dedges}
        k = next(idx for idx, (i, _, _) in enumerate(dedges) if i == e)
        d2_other = [idx for idx, (i, _, _) in enumerate(dedges) if idx != k and vn in h.edges[i]]
        d1_other = [idx for idx, (i, _, _) in enumerate(dedges) if idx != k and vn1 in h.edges[i]]
        candidates = [(), (k,)]
        if d2_other or d1_other:
            j = (d2_other or d1_other)[0]
            candidates += [(j,), (k, j)]

        def apply(raised):
            # each earlier neighbour may be toggled through only one of its edges
            moved = [x for idx, (_, x, sign) in enumerate(dedges) if (idx in raised) == (sign > 0)]
            if len(moved) != len(set(moved)):
                return False
            for idx, (i, _, _) in enumerate(dedges):
                st.set(i, higher[i] if idx in raised else lower[i])
            return True

        def try_tail():
            for fv in range(1, 6):
                st.set(last2, fv)
                if st.val[vn2] not in (st.val[vn1], st.val[vn]) and all_ok():
                    return fv
            return None

        for raised in candidates:
            if not apply(raised):
                continue
            if st.val[vn2] == st.val[vn3] or st.val[vn] == st.val[vn1]:
                continue
            fv = try_tail()
            if fv is not None:
                self.note("anchor", depth, kind="e0", branch="switch", d1=an.d1, d2=an.d2,
                          raised=[dedges[i][0] for i in raised], tail_weight=fv)
                return st.w
        if len(dedges) <= _SWITCH_SEARCH_LIMIT:
            for r in range(len(dedges) + 1):
                for raised in combinations(range(len(dedges)), r):
                    if not apply(raised):
                        continue
                    fv = try_tail()
                    if fv is not None:
                        self.note("anchor", depth, kind="e0", branch="switch-extended",
                                  d1=an.d1, d2=an.d2, raised=[dedges[i][0] for i in raised],
                                  tail_weight=fv)
                        return st.w
        free = sorted({i for v in (vn2, vn1, vn) for i in h.incident(v)})
        vals = _local_repair(h, st, free, 5)
        if vals is not None:
            self.note("anchor", depth, kind="e0", branch="local-search", d1=an.d1, d2=an.d2,
                      edges=free, weights=vals)
            return st.w
        raise InternalCaseFailure(f"d1={an.d1}, d2={an.d2} switching failed")


def _backtrack(st: _State, edges: list[int], checks, dep, budget: int) -> Optional[list[int]]:
    """Assign ``edges`` in order from ``1..budget`` until every checked edge is proper."""
    by_rank: dict[int, list[int]] = {}
    for i in checks:
        by_rank.setdefault(dep[i], []).append(i)
    vals: list[int] = []

    def rec(k: int) -> bool:
        if k == len(edges):
            return True
        for x in range(1, budget + 1):
            st.set(edges[k], x)
            if all(st.proper(i) for i in by_rank.get(k, ())) and rec(k + 1):
                vals.append(x)
                return True
        return False

    if rec(0):
        return vals[::-1]
    return None


def _local_repair(h: Hypergraph, st: _State, free: list[int], budget: int) -> Optional[list[int]]:
    """Reassign ``free`` so that every edge is proper, leaving the rest alone."""
    at = {e: k for k, e in enumerate(free)}
    dep = {}
    for i, es in enumerate(h.edges):
        ranks = [at[j] for v in es for j in h.incident(v) if j in at]
        dep[i] = max(ranks, default=-1)
    if not all(st.proper(i) for i, d in dep.items() if d < 0):
        return None
    return _backtrack(st, free, list(dep), dep, budget)


def _greedy_e1(h: Hypergraph, init) -> list[int]:
    """All 3-edges contain a 2-edge and the 2-edges form a perfect matching.

    Each 2-edge is fixed through a 3-edge meeting it in one vertex; such a
    3-edge moves no other 2-edge out of balance, so the choices are independent.
    """
    st = _State(h, init, [3] * h.m)
    done = set()
    for f, ef in enumerate(h.edges):
        if len(ef) != 2 or ef in done:
            continue
        done.add(ef)
        if st.proper(f):
            continue
        movers = [i for v in ef for i in h.incident(v) if len(set(h.edges[i]) & set(ef)) == 1]
        for i in sorted(movers):
            for x in range(1, 6):
                st.set(i, x)
                if st.proper(f):
                    break
            if st.proper(f):
                break
        else:
            raise InternalCaseFailure(f"2-edge {ef} cannot be separated")
    return st.w


_CSP_NODE_LIMIT = 200_000


def _movers(h: Hypergraph, f: tuple[int, int]) -> list[int]:
    fs = set(f)
    return sorted({i for v in f for i in h.incident(v) if len(fs & set(h.edges[i])) == 1})


def _separate_mod(h: Hypergraph, st: _State, estar, c: int, prov: int) -> list[int]:
    """Additions in ``0..c-1`` making every pair in ``estar`` differ modulo ``c``.

    First the one-pair-at-a-time greedy: each pair takes the first of its
    edges (those meeting it in one vertex) with an addition that keeps all
    pairs fixed so far apart. If that gets stuck, a backtracking search over
    all such edges jointly.
    """
    add = [0] * h.m
    fixed: list[tuple[int, int]] = []
    for f in estar:
        placed = False
        for e in _movers(h, f):
            es = set(h.edges[e])
            cons = [g for g in fixed + [f] if len(es & set(g)) == 1]
            for p in range(c):
                st.set(e, prov + p)
                if all((st.val[a] - st.val[b]) % c for a, b in cons):
                    add[e] = p
                    placed = True
                    break
            else:
                st.set(e, prov + add[e])
            if placed:
                break
        if not placed:
            break
        fixed.append(f)
    else:
        return add
    for i, p in enumerate(add):
        if p:
            st.set(i, prov)
    return _separate_search(h, st, estar, c, prov)


def _separate_search(h: Hypergraph, st: _State, estar, c: int, prov: int) -> list[int]:
    movers = {f: _movers(h, f) for f in estar}
    var = sorted({e for ms in movers.values() for e in ms})
    at = {e: k for k, e in enumerate(var)}
    due: dict[int, list[tuple[int, int]]] = {}
    for f, ms in movers.items():
        if not ms:
            if (st.val[f[0]] - st.val[f[1]]) % c == 0:
                raise InternalCaseFailure(f"E* pair {f} cannot be separated modulo {c}")
            continue
        due.setdefault(max(at[e] for e in ms), []).append(f)
    nodes = 0

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(var):
            return True
        for p in range(c):
            nodes += 1
            if nodes > _CSP_NODE_LIMIT:
                return False
            st.set(var[k], prov + p)
            if all((st.val[a] - st.val[b]) % c for a, b in due.get(k, ())) and rec(k + 1):
                return True
        st.set(var[k], prov)
        return False

    if not rec(0):
        raise InternalCaseFailure(f"E* pairs {list(estar)} cannot be separated modulo {c}")
    return [st.w[i] - prov if i in at else 0 for i in range(h.m)]


def _weight_general(h: Hypergraph, init, od: DerivedOrdering, solver: "_Solver", depth) -> list[int]:
    r = h.max_edge_size()
    c = r - 1
    prov = 2 * c + 1
    st = _State(h, init, [prov] * h.m)
    sw = _Sweep(st, od, c, 5 * c, solver.audit)
    nbrs: dict[int, set[int]] = {v: set() for v in range(h.n)}
    for g in od.g_edges:
        nbrs[g.first].add(g.second)
        nbrs[g.second].add(g.first)
    ends = [v for v in od.pi if not sw.fwd[v]]
    estar = []
    for v in ends:
        if len(nbrs[v]) == 1:
            (u,) = nbrs[v]
            estar.append((u, v))
    add = _separate_mod(h, st, estar, c, prov)
    solver.note("preprocess", depth, unit=c, estar=[list(f) for f in estar],
                additions={i: p for i, p in enumerate(add) if p})
    sw.provisional = list(st.w)
    star_ends = {v for _, v in estar}
    for v in od.pi:
        if sw.fwd[v]:
            sw.step(v)
        elif v in star_ends:
            continue
        elif not sw.finish(v):
            raise InternalCaseFailure(f"end vertex {v} with one neighbour outside E*")
    an = od.anchor
    if not st.proper(an.edge):
        vn, vn1 = an.pairs[0]
        tail = _edge_of_pair(h, vn, vn1)
        for x in range(1, 5 * c + 1):
            st.set(tail, x)
            if verify(h, st.w, init).proper:
                solver.note("anchor", depth, kind="unique", tail_weight=x)
                break
        else:
            raise InternalCaseFailure("anchor edge could not be repaired")
    solver.note("sweep", depth, n=h.n, unit=c, anchor=an.edge, t=an.t)
    return st.w


def _prepare(h: Hypergraph, init) -> list[int]:
    if init is None:
        init = [0] * h.n
    init = list(init)
    if len(init) != h.n:
        raise ValueError(f"init has length {len(init)}, expected {h.n}")
    if any(x < 0 for x in init):
        raise ValueError("initial vertex weights must be non-negative")
    if h.has_twin_edge():
        # twins always receive equal edge sums, so only init can separate them
        for e in h.edges:
            sig = h.incident(e[0]) if e else None
            if len(e) <= 1 or (all(h.incident(v) == sig for v in e) and len({init[v] for v in e}) == 1):
                raise NotColorableError("hypergraph has an edge consisting of twins")
        raise PreconditionError("an edge consists of twins; only the initial weights separate it")
    return init


def _finish(h, init, weights, budget, mode, solver: _Solver) -> SolveReport:
    weights = tuple(weights)
    verdict = verify(h, weights, init) if h.m else None
    if verdict is not None and not verdict.proper:
        raise InternalCaseFailure(f"{mode}: monochromatic edges {list(verdict.monochromatic)}")
    if weights and (max(weights) > budget or min(weights) < 1):
        raise InternalCaseFailure(f"{mode}: weights outside 1..{budget}")
    return SolveReport(weights, budget, mode, solver.trace, True)


def _run(h: Hypergraph, init, mode: str, budget: int, audit: bool) -> SolveReport:
    init = _prepare(h, init)
    solver = _Solver(mode, budget, audit)
    try:
        weights = solver.solve(h, init)
    except PreconditionError as exc:
        raise InternalCaseFailure(f"{mode}: {exc}") from exc
    return _finish(h, init, weights, budget, mode, solver)


def solve_linear(h: Hypergraph, init=None, *, audit: bool = False) -> SolveReport:
    """Weighting from ``1..max(5, r+1)`` for a linear hypergraph with edge sizes in ``2..r``."""
    if not h.is_linear():
        raise PreconditionError("solve_linear needs a linear hypergraph")
    r = h.max_edge_size()
    return _run(h, init, "linear", max(5, r + 1), audit)


def solve_r3(h: Hypergraph, init=None, *, audit: bool = False) -> SolveReport:
    """Weighting from ``1..5`` when every edge has 2 or 3 vertices."""
    if h.max_edge_size() > 3:
        raise PreconditionError("solve_r3 needs edges of size at most 3")
    return _run(h, init, "r3", 5, audit)


def solve_general(h: Hypergraph, init=None, *, audit: bool = False) -> SolveReport:
    """Weighting from ``1..5r-5`` for edge sizes in ``2..r`` (``r >= 2``)."""
    r = max(h.max_edge_size(), 2)
    return _run(h, init, "general", max(5 * r - 5, 5), audit)


def guaranteed_budget(h: Hypergraph, mode: str) -> int:
    r = max(h.max_edge_size(), 2)
    return {"linear": max(5, r + 1), "r3": 5, "general": 5 * r - 5}[mode]


def pick_mode(h: Hypergraph) -> str:
    """Tightest applicable guarantee: linear, then sizes <= 3, then general."""
    if h.is_linear():
        return "linear"
    if h.max_edge_size() <= 3:
        return "r3"
    return "general"


_SOLVERS = {"linear": solve_linear, "r3": solve_r3, "general": solve_general}


def solve(h: Hypergraph, init=None, mode: str = "auto", fallback: bool = False) -> SolveReport:
    """Dispatch to a solver; with ``fallback`` a failed case retries by exact search."""
    if mode == "auto":
        mode = pick_mode(h)
    fn = _SOLVERS[mode]
    try:
        return fn(h, init)
    except InternalCaseFailure as exc:
        if not fallback:
            raise
        log.warning("%s solver failed (%s); falling back to exact search", mode, exc)
        init = _prepare(h, init)
        budget = guaranteed_budget(h, mode)
        weights = [1] * h.m
        for comp in h.components():
            sub, emap = h.induced(comp)
            if sub.m == 0:
                continue
            try:
                found = oracle.exists_weighting(
                    sub, budget, [init[v] for v in comp], node_limit=FALLBACK_NODE_LIMIT
                )
            except BudgetExhausted:
                found = None
            if found is None:
                raise
            for i, j in enumerate(emap):
                if j is not None:
                    weights[i] = found[j]
        solver = _Solver(mode, budget)
        solver.note("fallback-search", 0, reason=str(exc))
        return _finish(h, init, weights, budget, mode, solver)
