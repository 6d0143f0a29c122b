"""Edge weightings, induced vertex weights and the properness check."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .hypercore import Hypergraph


@dataclass(frozen=True)
class Verdict:
    proper: bool
    monochromatic: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.proper


def _init_or_zero(h: Hypergraph, init: Optional[Sequence[int]]) -> Sequence[int]:
    if init is None:
        return [0] * h.n
    if len(init) != h.n:
        raise ValueError(f"init has length {len(init)}, expected {h.n}")
    return init


def induced_vertex_weights(
    h: Hypergraph, weights: Sequence[int], init: Optional[Sequence[int]] = None
) -> list[int]:
    """Per-vertex sum of ``init[v]`` and the weights of all edges containing ``v``.

    Python integers are unbounded, so no overflow can occur.
    """
    if len(weights) != h.m:
        raise ValueError(f"weighting has length {len(weights)}, expected {h.m}")
    out = list(_init_or_zero(h, init))
    for e, w in zip(h.edges, weights):
        for v in e:
            out[v] += w
    return out


def monochromatic_edges(h: Hypergraph, coloring: Sequence[int]) -> list[int]:
    if len(coloring) != h.n:
        raise ValueError(f"colouring has length {len(coloring)}, expected {h.n}")
    bad = []
    for i, e in enumerate(h.edges):
        if len(e) <= 1 or all(coloring[v] == coloring[e[0]] for v in e):
            bad.append(i)
    return bad


def is_proper(h: Hypergraph, coloring: Sequence[int]) -> bool:
    """No edge is monochromatic; edges of size <= 1 always are."""
    return not monochromatic_edges(h, coloring)


def max_weight(weights: Sequence[int]) -> int:
    if not weights:
        raise ValueError("empty weighting")
    return max(weights)


def check_weighting(h: Hypergraph, weights: Sequence[int]) -> None:
    if len(weights) != h.m:
        raise ValueError(f"weighting has length {len(weights)}, expected {h.m}")
    for i, w in enumerate(weights):
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"weight of edge {i} must be a positive integer, got {w!r}")


def verify(
    h: Hypergraph, weights: Sequence[int], init: Optional[Sequence[int]] = None
) -> Verdict:
    """Check a weighting and list every monochromatic edge."""
    check_weighting(h, weights)
    bad = monochromatic_edges(h, induced_vertex_weights(h, weights, init))
    return Verdict(not bad, tuple(bad))


def _parse_table(text: str, key: str, size: Optional[int], what: str) -> list[int]:
    s = text.strip()
    if s.startswith("{"):
        data = json.loads(s)
        vals = data.get(key) if isinstance(data, dict) else None
        if not isinstance(vals, list) or not all(isinstance(x, int) for x in vals):
            raise ValueError(f'JSON {what} needs an integer list under "{key}"')
    else:
        seen: dict[int, int] = {}
        for no, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                i, x = (int(p) for p in parts)
            except ValueError:
                raise ValueError(f"line {no}: expected 'index value', got {line!r}") from None
            if i in seen:
                raise ValueError(f"line {no}: index {i} given twice")
            seen[i] = x
        if sorted(seen) != list(range(len(seen))):
            raise ValueError(f"{what} indices must be exactly 0..{len(seen) - 1}")
        vals = [seen[i] for i in range(len(seen))]
    if size is not None and len(vals) != size:
        raise ValueError(f"{what} has {len(vals)} entries, expected {size}")
    return vals


def parse_weighting(text: str, m: Optional[int] = None) -> list[int]:
    """Read ``edge_index weight`` lines or ``{"weights": [...]}``."""
    return _parse_table(text, "weights", m, "weighting")


def format_weighting(weights: Sequence[int]) -> str:
    return "".join(f"{i} {w}\n" for i, w in enumerate(weights))


def parse_init(text: str, n: Optional[int] = None) -> list[int]:
    """Initial vertex weights: ``vertex value`` lines or ``{"init": [...]}``."""
    vals = _parse_table(text, "init", n, "init")
    if any(x < 0 for x in vals):
        raise ValueError("initial vertex weights must be non-negative")
    return vals
