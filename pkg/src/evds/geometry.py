"""Unit disk graphs over planar point sets, plus edge-neighbourhood metrics.

Coordinates are measured in disk diameters: two points are adjacent iff
their Euclidean distance is at most 1. The comparison is done on squared
distances so that points on an integer lattice (as produced by the
hardness gadget) give exact answers.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ConstructionError

__all__ = [
    "Point2D",
    "UnitDiskGraph",
    "build_udg",
    "edge_neighborhood",
    "r_closed_neighborhood",
    "edge_distance",
    "set_edge_distance",
    "read_points",
    "write_points",
    "format_points",
    "parse_points",
    "graph_to_json",
]


@dataclass(frozen=True)
class Point2D:
    id: int
    x: float
    y: float


class UnitDiskGraph:
    """Immutable unit disk graph.

    Edges are stored once as ``(u, v)`` with ``u < v`` and numbered in
    lexicographic order; ``vertex_adjacency[v]`` lists the ids of the edges
    incident to ``v`` in ascending order.
    """

    threshold = 1.0

    def __init__(self, points: Sequence[Point2D], edges: Sequence[tuple[int, int]]):
        self.points = tuple(points)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        incident: list[list[int]] = [[] for _ in self.points]
        for eid, (u, v) in enumerate(self.edges):
            incident[u].append(eid)
            incident[v].append(eid)
        self.vertex_adjacency = tuple(tuple(lst) for lst in incident)
        self._neighbors = tuple(
            tuple(sorted(self._other(e, v) for e in self.vertex_adjacency[v])) for v in range(len(self.points))
        )
        self._index = {pair: eid for eid, pair in enumerate(self.edges)}

    def _other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def coords(self) -> np.ndarray:
        return np.array([(p.x, p.y) for p in self.points], dtype=np.float64).reshape(-1, 2)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._neighbors[v]

    def degree(self, v: int) -> int:
        return len(self.vertex_adjacency[v])

    def other_endpoint(self, e: int, v: int) -> int:
        return self._other(e, v)

    def edge_id(self, u: int, v: int) -> int:
        """Id of the edge joining ``u`` and ``v``; ``KeyError`` if absent."""
        return self._index[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.vertex_adjacency[v]]

    def bounding_box(self) -> tuple[float, float, float, float]:
        if not self.points:
            return (0.0, 0.0, 0.0, 0.0)
        xy = self.coords
        return (float(xy[:, 0].min()), float(xy[:, 1].min()), float(xy[:, 0].max()), float(xy[:, 1].max()))

    def check_edge(self, e: int) -> None:
        if not (isinstance(e, (int, np.integer)) and 0 <= e < self.m):
            raise ValueError(f"invalid edge id {e!r}")

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise ValueError(f"invalid vertex id {v!r}")

    def __repr__(self) -> str:
        return f"UnitDiskGraph(n={self.n}, m={self.m})"

    @classmethod
    def from_coords(cls, coords) -> "UnitDiskGraph":
        xy = np.asarray(coords, dtype=np.float64).reshape(-1, 2)
        return build_udg([Point2D(i, float(x), float(y)) for i, (x, y) in enumerate(xy)])


def build_udg(points: Iterable[Point2D]) -> UnitDiskGraph:
    pts = list(points)
    ids = [p.id for p in pts]
    if len(set(ids)) != len(ids):
        raise ConstructionError("duplicate point ids")
    if sorted(ids) != list(range(len(ids))):
        raise ConstructionError("point ids must form the range 0..n-1")
    pts.sort(key=lambda p: p.id)
    xs = np.array([p.x for p in pts], dtype=np.float64)
    ys = np.array([p.y for p in pts], dtype=np.float64)
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise ConstructionError("non-finite coordinate")
    pairs = _kernels.udg_pairs(xs, ys)
    return UnitDiskGraph(pts, [tuple(row) for row in pairs.tolist()])


# ---------------------------------------------------------------------------
# edge neighbourhoods


def edge_neighborhood(g: UnitDiskGraph, e: int) -> set[int]:
    """Open edge neighbourhood: edges other than ``e`` sharing an endpoint with it."""
    g.check_edge(e)
    u, v = g.edges[e]
    out = set(g.vertex_adjacency[u]) | set(g.vertex_adjacency[v])
    out.discard(e)
    return out


def edge_layers(g: UnitDiskGraph, restriction: Iterable[int], e: int) -> dict[int, int]:
    """Hop count from ``e`` to every edge reachable inside ``restriction``."""
    allowed = restriction if isinstance(restriction, (set, frozenset)) else set(restriction)
    if e not in allowed:
        raise ValueError(f"edge {e} is not in the restriction")
    hops = {e: 0}
    frontier = deque([e])
    while frontier:
        f = frontier.popleft()
        for x in g.edges[f]:
            for nb in g.vertex_adjacency[x]:
                if nb not in hops and nb in allowed:
                    hops[nb] = hops[f] + 1
                    frontier.append(nb)
    return hops


def r_closed_neighborhood(g: UnitDiskGraph, restriction: Iterable[int], e: int, r: int) -> set[int]:
    """Edges of ``restriction`` within ``r`` adjacency hops of ``e`` (``e`` included)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    allowed = restriction if isinstance(restriction, (set, frozenset)) else set(restriction)
    if e not in allowed:
        raise ValueError(f"edge {e} is not in the restriction")
    seen = {e}
    frontier = [e]
    for _ in range(r):
        nxt = []
        for f in frontier:
            for x in g.edges[f]:
                for nb in g.vertex_adjacency[x]:
                    if nb not in seen and nb in allowed:
                        seen.add(nb)
                        nxt.append(nb)
        if not nxt:
            break
        frontier = nxt
    return seen


def _vertex_bfs(g: UnitDiskGraph, sources: Iterable[int]) -> dict[int, int]:
    dist = {}
    frontier = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            frontier.append(s)
    while frontier:
        u = frontier.popleft()
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                frontier.append(w)
    return dist


def set_edge_distance(g: UnitDiskGraph, first: Iterable[int], second: Iterable[int]) -> float:
    """Fewest graph edges on a path between an endpoint of ``first`` and one of ``second``.

    Returns an ``int`` (0 when the sets share an endpoint) or ``math.inf``
    when no such path exists.
    """
    first, second = list(first), list(second)
    if not first or not second:
        raise ValueError("edge sets must be non-empty")
    for e in first + second:
        g.check_edge(e)
    dist = _vertex_bfs(g, (x for e in first for x in g.edges[e]))
    best = math.inf
    for e in second:
        for x in g.edges[e]:
            best = min(best, dist.get(x, math.inf))
    return best


def edge_distance(g: UnitDiskGraph, e1: int, e2: int) -> float:
    return set_edge_distance(g, [e1], [e2])


# ---------------------------------------------------------------------------
# file formats


def format_points(coords) -> str:
    xy = np.asarray(coords, dtype=np.float64).reshape(-1, 2)
    lines = [str(len(xy))]
    lines.extend(f"{float(x)!r} {float(y)!r}" for x, y in xy)
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> list[Point2D]:
    """Parse the points format: a count line, then one ``x y`` line per point."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 1:
        raise ValueError("points file must start with a single count")
    try:
        n = int(rows[0][0])
        coords = [(float(a), float(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"malformed points file: {exc}") from None
    if n != len(coords):
        raise ValueError(f"points file declares {n} points but lists {len(coords)}")
    return [Point2D(i, x, y) for i, (x, y) in enumerate(coords)]


def read_points(path) -> list[Point2D]:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())


def write_points(path, coords) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(coords))


def graph_to_json(g: UnitDiskGraph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})
