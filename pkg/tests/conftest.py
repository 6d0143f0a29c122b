from itertools import combinations, product

from hypothesis import assume
from hypothesis import strategies as st

from hyperweight.hypercore import Hypergraph
from hyperweight.rng import SplitMix64


def sums(h, w, init=None):
    val = list(init) if init else [0] * h.n
    for e, x in zip(h.edges, w):
        for v in e:
            val[v] += x
    return val


def flat_proper(h, w, init=None):
    val = sums(h, w, init)
    return all(len(e) > 1 and len({val[v] for v in e}) > 1 for e in h.edges)


def flat_exists(h, k, init=None):
    """Plain enumeration of all k^m weightings, no pruning."""
    return any(flat_proper(h, w, init) for w in product(range(1, k + 1), repeat=h.m))


def flat_kmin(h, cap):
    for k in range(1, cap + 1):
        if flat_exists(h, k):
            return k
    return None


def matching_heavy(seed, r, linear):
    """A perfect matching of 2-edges plus a few larger edges.

    These inputs have no vertex in two 2-edges, so every solver has to go
    through its anchor case rather than the plain sweep.
    """
    rng = SplitMix64(seed)
    p = rng.between(3, 12)
    n = 2 * p
    edges = [(2 * i, 2 * i + 1) for i in range(p)]
    used = set(edges)
    for _ in range(rng.between(1, p + 2)):
        for _ in range(100):
            e = tuple(sorted(rng.sample(n, rng.between(3, min(r, n)))))
            pairs = set(combinations(e, 2))
            if linear and pairs & used:
                continue
            used |= pairs
            edges.append(e)
            break
    return Hypergraph(n, tuple(edges))


@st.composite
def hypergraphs(draw, max_n=9, max_m=10, sizes=(1, 4)):
    n = draw(st.integers(2, max_n))
    lo, hi = sizes
    edge = st.lists(st.integers(0, n - 1), min_size=lo, max_size=min(hi, n), unique=True)
    edges = draw(st.lists(edge, min_size=0, max_size=max_m))
    return Hypergraph.from_edges(n, edges)


@st.composite
def twin_free(draw, max_n=9, max_m=10, sizes=(2, 4)):
    h = draw(hypergraphs(max_n, max_m, sizes))
    assume(h.m > 0 and not h.has_twin_edge())
    return h


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
