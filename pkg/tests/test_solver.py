from collections import Counter
from itertools import product

import pytest

from conftest import flat_kmin, matching_heavy
from hyperweight import solver
from hyperweight.constructions import (
    complete_graph,
    cycle_graph,
    fano_plane,
    incidence_hypergraph,
    random_hypergraph,
    random_linear_hypergraph,
)
from hyperweight.derive import build_ordering, strip_non_2edge_vertices
from hyperweight.errors import InternalCaseFailure, NotColorableError, PreconditionError
from hyperweight.hypercore import Hypergraph
from hyperweight.oracle import min_max_weight
from hyperweight.rng import SplitMix64
from hyperweight.solver import (
    ParityWindow,
    pick_mode,
    solve,
    solve_general,
    solve_linear,
    solve_r3,
    guaranteed_budget,
    window_low,
)
from hyperweight.weighting import induced_vertex_weights, verify

H = Hypergraph.from_edges


def sweep_only(h, step=1):
    """Run the plain window sweep on a seed-case ordering, bypassing the base case."""
    od = build_ordering(h)
    assert od.anchor is None and od.stall is None
    st = solver._State(h, [0] * h.n, [2 * step + 1] * h.m)
    sw = solver._Sweep(st, od, step, 5 * step, audit=True)
    for v in od.pi[:-1]:
        sw.step(v)
        assert st.val[v] in sw.windows[v]
    assert sw.finish(od.pi[-1])
    return st, sw, od


def test_window_low():
    assert [window_low(x) for x in range(8)] == [0, 1, 0, 1, 4, 5, 4, 5]
    assert window_low(7, 3) == 1  # q=2 -> q0=0, offset 1
    w = ParityWindow(4, 1)
    assert w.high == 6 and 4 in w and 6 in w and 5 not in w


@pytest.mark.parametrize(
    "h,cap",
    [
        (H(3, [(0, 1), (1, 2)]), 1),
        (H(3, [(0, 1), (1, 2), (0, 2)]), 3),
        (H(4, [(0, 1), (0, 2), (0, 3)]), 1),
    ],
    ids=["path", "triangle", "star"],
)
def test_sweep_examples(h, cap):
    st, sw, od = sweep_only(h)
    assert verify(h, st.w).proper
    assert max(st.w) <= 5 and min(st.w) >= 1
    assert flat_kmin(h, 5) == cap


def test_window_discipline_on_graphs():
    checked = 0
    for seed in range(150):
        g = _stripped(random_linear_hypergraph(12, 16, 2, seed))
        od = build_ordering(g)
        if od.anchor is not None or od.stall is not None:
            continue
        st = solver._State(g, [0] * g.n, [3] * g.m)
        sw = solver._Sweep(st, od, 1, 5)
        for k, v in enumerate(od.pi):
            # when v is reached, a 2 toward it sits at the low end, a 4 at the high end
            for u, edges in sw.back[v].items():
                for e in edges:
                    if st.w[e] == 2:
                        assert st.val[u] == sw.windows[u].low
                    elif st.w[e] == 4:
                        assert st.val[u] == sw.windows[u].high
                    checked += 1
            if k < g.n - 1:
                sw.step(v)
                assert st.val[v] in sw.windows[v]
            else:
                assert sw.finish(v)
        for v in od.pi[:-1]:
            assert st.val[v] in sw.windows[v]
        assert verify(g, st.w).proper
    assert checked > 500


def _stripped(h):
    return strip_non_2edge_vertices(h)[0]


def test_solve_linear_graphs_stay_within_five():
    for q in (3, 4, 5, 6, 7):
        rep = solve_linear(complete_graph(q))
        assert rep.verified and rep.max_weight <= 5
    rep = solve_linear(cycle_graph(9))
    assert rep.max_weight <= 5


def test_solve_linear_fano_incidence():
    inc, _ = incidence_hypergraph(fano_plane())
    rep = solve_linear(inc)
    assert rep.verified and rep.budget == 5 and rep.max_weight <= 5
    assert verify(inc, rep.weights).proper


def test_isolated_edge_not_colorable():
    with pytest.raises(NotColorableError):
        solve_linear(H(2, [(0, 1)]))
    with pytest.raises(NotColorableError):
        solve_r3(H(3, [(0, 1), (0, 1, 2)]))


def test_solve_linear_needs_linear():
    with pytest.raises(PreconditionError):
        solve_linear(H(4, [(0, 1, 2), (1, 2, 3)]))
    with pytest.raises(PreconditionError):
        solve_r3(H(4, [(0, 1, 2, 3)]))


def test_r3_tight_cycle():
    h = H(4, [(0, 1, 2), (1, 2, 3), (0, 2, 3), (0, 1, 3)])
    rep = solve_r3(h)
    assert rep.verified and rep.max_weight <= 5
    assert flat_kmin(h, 5) == 2
    assert min_max_weight(h, 5).k_min == 2


def test_r3_triangle():
    rep = solve_r3(H(3, [(0, 1), (1, 2), (0, 2)]))
    assert rep.verified and rep.max_weight <= 5


def test_general_non_linear_r4():
    # two 4-edges sharing three vertices, with pendant 2-edges
    h = H(8, [(0, 1, 2, 3), (1, 2, 3, 4), (0, 5), (1, 6), (2, 7)])
    rep = solve_general(h)
    assert rep.verified and rep.budget == 15 and rep.max_weight <= 15
    res = min_max_weight(h, 15)
    assert res.status == "found" and res.k_min <= rep.max_weight
    assert flat_kmin(h, 3) == res.k_min


def test_general_on_linear_inputs_and_budgets():
    for r in range(2, 9):
        assert 5 * r - 5 >= max(5, r + 1)
    for seed in range(40):
        h = random_linear_hypergraph(16, 14, 5, seed)
        a, b = solve_linear(h), solve_general(h)
        assert a.verified and b.verified
        assert b.max_weight <= guaranteed_budget(h, "general")


def test_general_intersecting_2_edges_within_five():
    h = H(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8),
              (0, 4, 8, 2), (1, 3, 5, 7)])
    rep = solve_general(h)
    assert rep.verified and rep.max_weight <= 5


def test_pick_mode_and_budget():
    assert pick_mode(fano_plane()) == "linear"
    assert pick_mode(H(4, [(0, 1, 2), (1, 2, 3)])) == "r3"
    assert pick_mode(H(5, [(0, 1, 2, 3), (1, 2, 3, 4)])) == "general"
    assert guaranteed_budget(H(9, [tuple(range(9))]), "linear") == 10
    assert guaranteed_budget(H(9, [tuple(range(9))]), "general") == 40


def test_init_weights_are_honoured():
    rng = SplitMix64(11)
    for seed in range(60):
        h = random_hypergraph(14, 16, 3, seed)
        init = [rng.below(7) for _ in range(h.n)]
        for fn in (solve_r3, solve_general):
            rep = fn(h, init)
            assert verify(h, rep.weights, init).proper
    with pytest.raises(ValueError):
        solve_r3(H(3, [(0, 1), (1, 2)]), [0, -1, 0])


def test_deterministic_reports():
    h = random_hypergraph(20, 24, 4, 5)
    assert solve_general(h) == solve_general(h)
    h = next(g for g in (matching_heavy(s, 3, False) for s in range(17, 99)) if not g.has_twin_edge())
    assert solve_r3(h) == solve_r3(h)


def test_empty_and_tiny_inputs():
    assert solve_linear(H(3, [])).weights == ()
    rep = solve_r3(H(3, [(0, 1), (1, 2)]))
    assert rep.weights == (1, 1)


def test_anchor_neutrality():
    # changing h's own weight shifts all of h equally, so h stays proper
    for seed in range(200):
        h = matching_heavy(seed, 5, True)
        if h.has_twin_edge():
            continue
        od = build_ordering(_stripped(h))
        if od.anchor is None:
            continue
        rep = solve_linear(h)
        w = list(rep.weights)
        hi = od.anchor.edge
        for x in range(1, rep.budget + 1):
            w[hi] = x
            assert hi not in verify(h, w).monochromatic


def test_post_verification_gate(monkeypatch):
    def broken(self, h, init, depth=0):
        return [1] * h.m

    monkeypatch.setattr(solver._Solver, "solve", broken)
    with pytest.raises(InternalCaseFailure):
        solve_general(H(3, [(0, 1), (1, 2), (0, 2)]))


def test_fallback_search(monkeypatch):
    h = random_hypergraph(12, 14, 4, 3)

    def fail(*args, **kwargs):
        raise InternalCaseFailure("forced")

    monkeypatch.setattr(solver._Solver, "solve", fail)
    with pytest.raises(InternalCaseFailure):
        solve(h, mode="general")
    rep = solve(h, mode="general", fallback=True)
    assert rep.verified and rep.trace[0]["step"] == "fallback-search"
    assert rep.max_weight <= rep.budget


BRANCHES = {
    "linear": {("anchor", "minimal"), ("recursion", None), ("sweep", None), ("base", None)},
    "r3": {("anchor", "e0"), ("recursion", None), ("sweep", None)},
    "general": {("preprocess", None), ("sweep", None), ("base", None)},
}


@pytest.mark.parametrize("mode,r,linear", [("linear", 6, True), ("r3", 3, False), ("general", 6, False)])
def test_matching_corpus_with_audit(mode, r, linear):
    fn = {"linear": solve_linear, "r3": solve_r3, "general": solve_general}[mode]
    seen = Counter()
    for seed in range(1500):
        h = matching_heavy(seed, r, linear)
        if h.has_twin_edge():
            continue
        rep = fn(h, audit=True)
        assert rep.verified and rep.max_weight <= rep.budget and min(rep.weights) >= 1
        for tr in rep.trace:
            seen[(tr["step"], tr.get("kind"))] += 1
    assert BRANCHES[mode] <= set(seen)


def test_r3_greedy_when_every_3_edge_holds_a_2_edge():
    h = H(8, [(0, 1), (2, 3), (4, 5), (6, 7), (0, 1, 2), (2, 3, 4), (4, 5, 6), (0, 6, 7)])
    rep = solve_r3(h)
    assert rep.verified and rep.max_weight <= 5
    assert ("anchor", "greedy") in {(t["step"], t.get("kind")) for t in rep.trace}


def test_e0_subbranches():
    seen = Counter()
    for seed in range(3000):
        h = matching_heavy(seed, 3, False)
        if h.has_twin_edge():
            continue
        for tr in solve_r3(h).trace:
            if tr.get("kind") == "e0":
                seen[tr["branch"]] += 1
    assert {"switch", "d1=0,d2=1", "switch-extended", "local-search"} <= set(seen)


def test_known_hard_instances():
    # cases where the textbook steps alone get stuck and the repair paths run
    r3_case = H(12, [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (5, 7, 8), (3, 7, 11),
                     (0, 2, 8), (0, 9, 10), (1, 8, 10), (2, 4, 11), (1, 3, 7), (4, 10, 11)])
    rep = solve_r3(r3_case)
    assert rep.verified and rep.max_weight <= 5
    general_case = H(16, [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15),
                          (2, 3, 8, 10), (2, 5, 7, 15), (1, 4, 7, 13)])
    rep = solve_general(general_case)
    assert rep.verified and rep.max_weight <= 15
    assert any(tr["step"] == "variant" for tr in rep.trace)
    dup = H(14, [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (3, 9, 13),
                 (1, 5, 9), (3, 7, 13), (3, 6, 11), (3, 7, 12), (3, 7, 12)])
    assert solve_r3(dup).verified


def test_small_exhaustive_agreement():
    # every twin-free graph on 4 labelled vertices: solver within budget, oracle below it
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    for mask in product((0, 1), repeat=len(pairs)):
        h = H(4, [p for p, bit in zip(pairs, mask) if bit])
        if h.has_twin_edge() or h.m == 0:
            continue
        rep = solve_linear(h)
        assert rep.max_weight <= 5
        assert min_max_weight(h, 5).k_min <= rep.max_weight
        assert induced_vertex_weights(h, rep.weights)
