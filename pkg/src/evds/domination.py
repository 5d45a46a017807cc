"""Edge-vertex domination: verification, the matching heuristic, and the exact oracle.

An edge ``e = (u, v)`` ev-dominates a vertex ``w`` when ``w`` is an endpoint
of ``e`` or of some edge sharing an endpoint with ``e``; equivalently ``w``
lies in the closed vertex neighbourhood of ``u`` or of ``v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import InfeasibleError
from .geometry import UnitDiskGraph

__all__ = [
    "SOLVERS",
    "EvdsSolution",
    "ev_dominates",
    "dominated_vertices",
    "undominated",
    "is_evds",
    "maximal_matching_evds",
    "brute_force_opt_evds",
    "exact_evds",
    "require_no_isolated",
    "solution_to_json",
    "solution_from_json",
]

SOLVERS = ("exact", "matching", "ptas", "hex5", "translated")


@dataclass(frozen=True)
class EvdsSolution:
    edges: frozenset
    solver: str
    target_scope: frozenset | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(int(e) for e in self.edges))
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver tag {self.solver!r}")

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    @property
    def size(self) -> int:
        return len(self.edges)


def _edge_ids(s) -> list[int]:
    return sorted(s.edges) if isinstance(s, EvdsSolution) else sorted(set(int(e) for e in s))


def ev_dominates(g: UnitDiskGraph, e: int, v: int) -> bool:
    g.check_edge(e)
    g.check_vertex(v)
    a, b = g.edges[e]
    if v == a or v == b:
        return True
    # v is an endpoint of an edge adjacent to e
    for f in g.vertex_adjacency[v]:
        if a in g.edges[f] or b in g.edges[f]:
            return True
    return False


def dominated_vertices(g: UnitDiskGraph, s, within: Iterable[int] | None = None) -> set[int]:
    """Vertices ev-dominated by the edge set ``s``.

    With ``within`` given, adjacency is taken in the subgraph formed by those
    edges only (``s`` should be a subset of it).
    """
    ids = _edge_ids(s)
    for e in ids:
        g.check_edge(e)
    out: set[int] = set()
    if within is None:
        for e in ids:
            for x in g.edges[e]:
                out.add(x)
                out.update(g.neighbors(x))
        return out
    allowed = within if isinstance(within, (set, frozenset)) else set(within)
    for e in ids:
        for x in g.edges[e]:
            out.add(x)
            for f in g.vertex_adjacency[x]:
                if f in allowed:
                    out.add(g.other_endpoint(f, x))
    return out


def undominated(g: UnitDiskGraph, s, targets: Iterable[int] | None = None, within=None) -> list[int]:
    hit = dominated_vertices(g, s, within)
    pool = range(g.n) if targets is None else sorted(set(targets))
    return [v for v in pool if v not in hit]


def is_evds(g: UnitDiskGraph, s, targets: Iterable[int] | None = None, within=None) -> bool:
    """True iff every target vertex (default: all of ``g``) is ev-dominated by ``s``."""
    return not undominated(g, s, targets, within)


def require_no_isolated(g: UnitDiskGraph, targets: Iterable[int] | None = None) -> None:
    pool = range(g.n) if targets is None else targets
    lonely = [v for v in pool if not g.vertex_adjacency[v]]
    if lonely:
        raise InfeasibleError(f"isolated vertices admit no EVDS: {lonely[:10]}")


def _restriction(g: UnitDiskGraph, restriction) -> list[int]:
    edges = sorted(set(int(e) for e in restriction))
    if not edges:
        raise ValueError("restriction must be non-empty")
    for e in edges:
        g.check_edge(e)
    return edges


def maximal_matching_evds(g: UnitDiskGraph, restriction: Iterable[int]) -> EvdsSolution:
    """Greedy maximal matching of the edge-induced subgraph, scanning edge ids upward.

    Any maximal matching ev-dominates every endpoint of the restriction: an
    undominated endpoint would leave its edge free to join the matching.
    """
    edges = _restriction(g, restriction)
    used: set[int] = set()
    chosen = []
    for e in edges:
        u, v = g.edges[e]
        if u not in used and v not in used:
            used.add(u)
            used.add(v)
            chosen.append(e)
    return EvdsSolution(frozenset(chosen), "matching", frozenset(edges))


def matching_size(g: UnitDiskGraph, restriction: Iterable[int]) -> int:
    return len(maximal_matching_evds(g, restriction).edges)


def _pack(rows: list[list[int]], width: int) -> np.ndarray:
    words = max(1, (width + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    for i, bits in enumerate(rows):
        for b in bits:
            out[i, b >> 6] |= np.uint64(1) << np.uint64(b & 63)
    return out


def brute_force_opt_evds(
    g: UnitDiskGraph,
    restriction: Iterable[int],
    pool: Iterable[int] | None = None,
) -> EvdsSolution:
    """Minimum EVDS of the edge-induced subgraph of ``restriction``.

    Targets are the endpoints of the restriction's edges. Candidates default
    to the restriction itself; ``pool`` swaps in another candidate set (for
    instance the restriction plus its adjacent edges), in which case
    adjacency is evaluated over the union of both sets.

    Subsets are tried by increasing size and, within a size, in
    lexicographic order of edge ids, so the answer is the lexicographically
    least optimum. Sizes stop at the greedy matching size, which is always
    feasible when candidates include the restriction.
    """
    edges = _restriction(g, restriction)
    candidates = edges if pool is None else sorted(set(int(e) for e in pool))
    for e in candidates:
        g.check_edge(e)
    within = set(edges) | set(candidates)

    targets = sorted({x for e in edges for x in g.edges[e]})
    local = {v: i for i, v in enumerate(targets)}
    rows = []
    for e in candidates:
        hit = dominated_vertices(g, [e], within)
        rows.append([local[v] for v in hit if v in local])
    masks = _pack(rows, len(targets))
    full = _pack([list(range(len(targets)))], len(targets))[0]

    if pool is None:
        limit = matching_size(g, edges)
    else:
        limit = len(candidates)
    for k in range(1, limit + 1):
        found = _kernels.first_cover(masks, full, k)
        if found is not None:
            chosen = frozenset(candidates[i] for i in found)
            return EvdsSolution(chosen, "exact", frozenset(edges))
    raise InfeasibleError("candidate pool cannot ev-dominate the restriction")


def exact_evds(g: UnitDiskGraph) -> EvdsSolution:
    """Minimum EVDS of the whole graph."""
    require_no_isolated(g)
    if g.m == 0:
        return EvdsSolution(frozenset(), "exact")
    sol = brute_force_opt_evds(g, range(g.m))
    return EvdsSolution(sol.edges, "exact")


# ---------------------------------------------------------------------------
# solution file


def solution_to_json(g: UnitDiskGraph, s: EvdsSolution, verified: bool | None = None) -> str:
    if verified is None:
        verified = is_evds(g, s)
    payload = {
        "solver": s.solver,
        "edges": [list(g.edges[e]) for e in sorted(s.edges)],
        "size": len(s.edges),
        "verified": bool(verified),
    }
    return json.dumps(payload) + "\n"


def solution_from_json(g: UnitDiskGraph, text: str) -> EvdsSolution:
    """Parse a solution file against ``g``; raises ``ValueError`` if malformed."""
    try:
        data = json.loads(text)
        pairs = data["edges"]
        solver = data.get("solver", "translated")
        ids = [g.edge_id(int(u), int(v)) for u, v in pairs]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed solution file: {exc}") from None
    if solver not in SOLVERS:
        raise ValueError(f"malformed solution file: unknown solver {solver!r}")
    return EvdsSolution(frozenset(ids), solver)
