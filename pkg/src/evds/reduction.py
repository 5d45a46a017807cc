"""Vertex-cover to EVDS gadget on unit disk graphs.

A planar source graph of maximum degree 3 comes with an orthogonal
embedding on the 4-grid: vertices at multiples of 4 and every edge drawn
as a chain of axis-parallel length-4 segments. The gadget places

* a *node* point at every source vertex,
* a *joint* point where two segments of the same edge meet,
* three *added* points at arc length 1, 2, 3 along every segment,

and joins points at distance at most 1. Each source edge becomes an
induced path whose consecutive points are exactly 1 apart.

Embeddings are inputs here; computing them is left to a graph drawing
tool. A small curated corpus ships under ``evds/data/embeddings``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .domination import EvdsSolution, is_evds
from .errors import EmbeddingError, OracleRefusalError
from .geometry import Point2D, UnitDiskGraph, build_udg

__all__ = [
    "Segment",
    "GridEmbedding",
    "ReducedInstance",
    "validate_embedding",
    "reduce_to_udg",
    "vc_to_evds",
    "evds_to_vc",
    "is_vertex_cover",
    "brute_force_vertex_cover",
    "parse_embedding",
    "read_embedding",
    "format_embedding",
    "corpus_names",
    "load_corpus_embedding",
    "roles_to_json",
]

GRID = 4
MAX_VC_VERTICES = 20


@dataclass(frozen=True)
class Segment:
    edge: int
    x1: int
    y1: int
    x2: int
    y2: int
    seq: int

    @property
    def ends(self):
        return (self.x1, self.y1), (self.x2, self.y2)


@dataclass(frozen=True)
class GridEmbedding:
    positions: dict  # source vertex id -> (x, y)
    edges: tuple  # source edges (u, v); segment seq 0 starts at u
    segments: tuple

    def __init__(self, positions, edges, segments):
        object.__setattr__(self, "positions", {int(k): (v[0], v[1]) for k, v in dict(positions).items()})
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in edges))
        object.__setattr__(self, "segments", tuple(segments))

    @property
    def l(self) -> int:
        return len(self.segments)

    def vertices(self) -> list[int]:
        return sorted(self.positions)

    def edge_segments(self, i: int) -> list[Segment]:
        return sorted((s for s in self.segments if s.edge == i), key=lambda s: s.seq)


@dataclass(frozen=True)
class ReducedInstance:
    udg: UnitDiskGraph
    roles: tuple  # per udg vertex: "node" | "joint" | "added"
    l: int
    source: GridEmbedding
    node_map: dict  # source vertex -> udg vertex
    paths: tuple  # per source edge, udg vertices from its first to its second endpoint

    def count(self, role: str) -> int:
        return sum(1 for r in self.roles if r == role)

    def path_edges(self, i: int) -> list[int]:
        p = self.paths[i]
        return [self.udg.edge_id(a, b) for a, b in zip(p, p[1:])]


def _on_grid(x) -> bool:
    return float(x).is_integer() and int(x) % GRID == 0


def validate_embedding(e: GridEmbedding) -> list[str]:
    """Every broken invariant of ``e`` as a readable message; empty when valid."""
    out: list[str] = []
    if len(e.edges) < 2:
        out.append(f"source graph has {len(e.edges)} edges, at least 2 required")

    node_at = {}
    for v, (x, y) in sorted(e.positions.items()):
        if not (_on_grid(x) and _on_grid(y)):
            out.append(f"vertex {v} at ({x}, {y}) not on 4-grid")
        elif (int(x), int(y)) in node_at:
            out.append(f"vertices {node_at[(int(x), int(y))]} and {v} share position ({x}, {y})")
        else:
            node_at[(int(x), int(y))] = v

    degree = {v: 0 for v in e.positions}
    seen_pairs = set()
    for i, (u, v) in enumerate(e.edges):
        if u not in e.positions or v not in e.positions:
            out.append(f"edge {i} ({u}, {v}) references an unknown vertex")
            continue
        if u == v:
            out.append(f"edge {i} is a self-loop at {u}")
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            out.append(f"edge {i} ({u}, {v}) is a duplicate")
        seen_pairs.add(pair)
        degree[u] += 1
        degree[v] += 1
    for v, d in sorted(degree.items()):
        if d > 3:
            out.append(f"vertex {v} has degree {d} > 3")
        if d == 0:
            out.append(f"vertex {v} has no incident edge")

    geometry_ok = True
    for s in e.segments:
        if not 0 <= s.edge < len(e.edges):
            out.append(f"segment {s} references unknown edge {s.edge}")
            geometry_ok = False
            continue
        if not all(_on_grid(c) for c in (s.x1, s.y1, s.x2, s.y2)):
            out.append(f"segment of edge {s.edge} seq {s.seq} has an endpoint off the 4-grid")
            geometry_ok = False
        if s.x1 != s.x2 and s.y1 != s.y2:
            out.append(f"segment of edge {s.edge} seq {s.seq} is not axis-parallel")
            geometry_ok = False
        elif abs(s.x2 - s.x1) + abs(s.y2 - s.y1) != GRID:
            out.append(f"segment of edge {s.edge} seq {s.seq}: segment length ≠ 4")
            geometry_ok = False
    if not geometry_ok or any("unknown vertex" in msg for msg in out):
        return out

    used_units: dict = {}
    interior_owner: dict = {}
    for i, (u, v) in enumerate(e.edges):
        segs = e.edge_segments(i)
        if not segs:
            out.append(f"edge {i} has no segments")
            continue
        if [s.seq for s in segs] != list(range(len(segs))):
            out.append(f"edge {i} segment order is not 0..{len(segs) - 1}")
            continue
        try:
            lattice = _walk(segs, e.positions[u])
        except ValueError as exc:
            out.append(f"edge {i}: {exc}")
            continue
        if lattice[-1] != tuple(e.positions[v]):
            out.append(f"edge {i} path ends at {lattice[-1]}, not at vertex {v}")
            continue
        if len(set(lattice)) != len(lattice):
            out.append(f"edge {i} path revisits a grid point")
        for a, b in zip(lattice, lattice[1:]):
            unit = frozenset((a, b))
            if unit in used_units:
                out.append(f"edges {used_units[unit]} and {i} overlap between {a} and {b}")
            used_units[unit] = i
        for pt in lattice[1:-1]:
            if pt in node_at:
                out.append(f"edge {i} passes through vertex {node_at[pt]} at {pt}")
            elif pt in interior_owner and interior_owner[pt] != i:
                out.append(f"edges {interior_owner[pt]} and {i} cross at {pt}")
            interior_owner.setdefault(pt, i)
    return out


def _walk(segs: Sequence[Segment], start) -> list[tuple[int, int]]:
    """Grid points visited by a segment chain starting at ``start``."""
    here = (int(start[0]), int(start[1]))
    pts = [here]
    for s in segs:
        a, b = ((int(s.x1), int(s.y1)), (int(s.x2), int(s.y2)))
        if a == here:
            here = b
        elif b == here:
            here = a
        else:
            raise ValueError(f"segment seq {s.seq} does not continue from {here}")
        pts.append(here)
    return pts


def reduce_to_udg(e: GridEmbedding) -> ReducedInstance:
    violations = validate_embedding(e)
    if violations:
        raise EmbeddingError(violations)

    coords: list[tuple[float, float]] = []
    roles: list[str] = []
    node_map = {}
    for v in e.vertices():
        node_map[v] = len(coords)
        coords.append(tuple(map(float, e.positions[v])))
        roles.append("node")

    paths = []
    for i, (u, v) in enumerate(e.edges):
        lattice = _walk(e.edge_segments(i), e.positions[u])
        path = [node_map[u]]
        for k, (a, b) in enumerate(zip(lattice, lattice[1:])):
            dx, dy = (b[0] - a[0]) // GRID, (b[1] - a[1]) // GRID
            for t in (1, 2, 3):
                path.append(len(coords))
                coords.append((float(a[0] + t * dx), float(a[1] + t * dy)))
                roles.append("added")
            if k < len(lattice) - 2:
                path.append(len(coords))
                coords.append((float(b[0]), float(b[1])))
                roles.append("joint")
        path.append(node_map[v])
        paths.append(tuple(path))

    g = build_udg(Point2D(i, x, y) for i, (x, y) in enumerate(coords))
    intended = {(min(a, b), max(a, b)) for p in paths for a, b in zip(p, p[1:])}
    stray = sorted(set(g.edges) - intended)
    if stray or len(intended) != g.m:
        raise EmbeddingError([f"points {a} and {b} are within unit distance across paths" for a, b in stray])
    return ReducedInstance(g, tuple(roles), e.l, e, node_map, tuple(paths))


# ---------------------------------------------------------------------------
# solution translation


def is_vertex_cover(edges: Iterable[tuple[int, int]], cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in edges)


def vc_to_evds(inst: ReducedInstance, cover: Iterable[int]) -> EvdsSolution:
    """EVDS of size at most ``3|cover| + l`` built from a source vertex cover.

    Every gadget edge at a covered node is taken. On each source-edge path,
    counted from a covered endpoint (the lower id if both are covered), the
    3rd edge and every 4th edge after it are taken, one per segment.
    """
    cover = set(cover)
    unknown = cover - set(inst.source.positions)
    if unknown:
        raise ValueError(f"cover names unknown vertices {sorted(unknown)}")
    if not is_vertex_cover(inst.source.edges, cover):
        raise ValueError("not a vertex cover of the source graph")
    g = inst.udg
    chosen = set()
    for x in cover:
        chosen.update(g.vertex_adjacency[inst.node_map[x]])
    for i, (u, v) in enumerate(inst.source.edges):
        start = u if (u in cover and (v not in cover or u < v)) else v
        path = inst.paths[i] if start == u else inst.paths[i][::-1]
        for j in range(3, len(path), 4):
            chosen.add(g.edge_id(path[j - 1], path[j]))
    return EvdsSolution(frozenset(chosen), "translated")


def evds_to_vc(inst: ReducedInstance, s: EvdsSolution | Iterable[int]) -> frozenset:
    """Source vertex cover read off an EVDS of the gadget.

    The EVDS is first normalised path by path: when neither end of a
    source-edge path is already claimed, one end is claimed and gets all
    its gadget edges, preferring the end that resolves more open paths,
    then the end whose gadget edges ``s`` already uses most, then the lower
    id. Claims made redundant by later ones are dropped. The normalised set
    is the canonical forward construction on the claimed ends, and the
    cover is the set of nodes whose gadget edges are all in it.
    """
    g = inst.udg
    edges = s.edges if isinstance(s, EvdsSolution) else frozenset(s)
    if not is_evds(g, edges):
        raise ValueError("argument is not an edge-vertex dominating set of the gadget graph")

    src_edges = inst.source.edges
    incident: dict[int, list[int]] = {v: [] for v in inst.source.positions}
    for i, (u, v) in enumerate(src_edges):
        incident[u].append(i)
        incident[v].append(i)

    def usage(x):
        inc = g.vertex_adjacency[inst.node_map[x]]
        return sum(1 for f in inc if f in edges) / len(inc)

    claimed: list[int] = []
    resolved = [False] * len(src_edges)
    for i, (u, v) in enumerate(src_edges):
        if resolved[i]:
            continue

        def key(x):
            open_paths = sum(1 for j in incident[x] if not resolved[j])
            return (open_paths, usage(x), -x)

        pick = max((u, v), key=key)
        claimed.append(pick)
        for j in incident[pick]:
            resolved[j] = True

    keep = set(claimed)
    for x in sorted(claimed, key=lambda x: (usage(x), -x)):
        rest = keep - {x}
        if all(a in rest or b in rest for a, b in (src_edges[j] for j in incident[x])):
            keep = rest

    normalised = vc_to_evds(inst, keep).edges
    return frozenset(
        x for x, p in inst.node_map.items() if all(f in normalised for f in g.vertex_adjacency[p])
    )


def brute_force_vertex_cover(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> frozenset:
    """Minimum vertex cover by increasing size; lexicographically least among optima."""
    verts = sorted(set(vertices))
    edges = list(edges)
    if len(verts) > MAX_VC_VERTICES:
        raise OracleRefusalError(f"{len(verts)} vertices exceeds the {MAX_VC_VERTICES}-vertex limit")
    for k in range(len(verts) + 1):
        for combo in itertools.combinations(verts, k):
            if is_vertex_cover(edges, combo):
                return frozenset(combo)
    raise AssertionError("unreachable: the full vertex set is a cover")


# ---------------------------------------------------------------------------
# embedding files


def parse_embedding(text: str) -> GridEmbedding:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n, m, l = (int(t) for t in rows[0])
        if len(rows) != 1 + n + m + l:
            raise ValueError(f"expected {1 + n + m + l} lines, found {len(rows)}")
        positions = {}
        for row in rows[1 : 1 + n]:
            vid, x, y = row
            positions[int(vid)] = (_num(x), _num(y))
        edges = [(int(a), int(b)) for a, b in rows[1 + n : 1 + n + m]]
        segments = []
        for row in rows[1 + n + m :]:
            idx, x1, y1, x2, y2, seq = row
            segments.append(Segment(int(idx), _num(x1), _num(y1), _num(x2), _num(y2), int(seq)))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed embedding file: {exc}") from None
    return GridEmbedding(positions, edges, segments)


def _num(tok: str):
    value = float(tok)
    return int(value) if value.is_integer() else value


def read_embedding(path) -> GridEmbedding:
    with open(path, encoding="utf-8") as fh:
        return parse_embedding(fh.read())


def format_embedding(e: GridEmbedding) -> str:
    lines = [f"{len(e.positions)} {len(e.edges)} {e.l}"]
    lines += [f"{v} {x} {y}" for v, (x, y) in sorted(e.positions.items())]
    lines += [f"{u} {v}" for u, v in e.edges]
    lines += [f"{s.edge} {s.x1} {s.y1} {s.x2} {s.y2} {s.seq}" for s in e.segments]
    return "\n".join(lines) + "\n"


def roles_to_json(inst: ReducedInstance) -> str:
    return json.dumps(
        {
            "roles": list(inst.roles),
            "l": inst.l,
            "node_map": {str(k): v for k, v in sorted(inst.node_map.items())},
            "source_edges": [list(e) for e in inst.source.edges],
            "paths": [list(p) for p in inst.paths],
        },
        indent=1,
    )


def corpus_names() -> list[str]:
    root = resources.files("evds") / "data" / "embeddings"
    return sorted(p.name[: -len(".emb")] for p in root.iterdir() if p.name.endswith(".emb"))


def load_corpus_embedding(name: str) -> GridEmbedding:
    root = resources.files("evds") / "data" / "embeddings"
    return parse_embedding((root / f"{name}.emb").read_text(encoding="utf-8"))
