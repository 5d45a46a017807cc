"""Hexagonal partition and the linear-time 5-approximation.

The plane is tiled by flat-top hexagons of side 1/2, so any two points of
one cell are at most 1 apart and therefore adjacent in the unit disk
graph. Cells are addressed by axial coordinates ``(q, r)``; the centre of
cell ``(q, r)`` sits at ``origin + (0.75 q, (sqrt(3)/2) (r + q/2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .domination import EvdsSolution, require_no_isolated
from .geometry import Point2D, UnitDiskGraph

__all__ = [
    "HEX_SIDE",
    "ANCHOR_OFFSET",
    "HexCellId",
    "HexGrid",
    "Hex5Stats",
    "build_hex_grid",
    "cell_of",
    "cell_center",
    "cells_adjacent",
    "hex_corners",
    "mega_cell_of",
    "hex5_evds",
]

HEX_SIDE = 0.5
# irrational nudge of the tiling anchor; keeps lattice-aligned inputs off cell boundaries
ANCHOR_OFFSET = (math.sqrt(2.0) * 1e-7, math.sqrt(3.0) * 1e-7)


class HexCellId(NamedTuple):
    q: int
    r: int


@dataclass(frozen=True)
class HexGrid:
    origin: tuple[float, float]
    side: float
    cells: np.ndarray = field(repr=False, compare=False)
    orientation: str = "flat-top"

    def cell(self, v: int) -> HexCellId:
        q, r = self.cells[v]
        return HexCellId(int(q), int(r))

    def occupied(self) -> list[HexCellId]:
        return sorted({HexCellId(int(q), int(r)) for q, r in self.cells})

    def members(self) -> dict[HexCellId, list[int]]:
        out: dict[HexCellId, list[int]] = {}
        for v, (q, r) in enumerate(self.cells):
            out.setdefault(HexCellId(int(q), int(r)), []).append(v)
        return dict(sorted(out.items()))


def build_hex_grid(points: Sequence[Point2D] | UnitDiskGraph) -> HexGrid:
    pts = list(points.points) if isinstance(points, UnitDiskGraph) else sorted(points, key=lambda p: p.id)
    if not pts:
        raise ValueError("cannot build a hexagonal grid over an empty point set")
    xs = np.array([p.x for p in pts], dtype=np.float64)
    ys = np.array([p.y for p in pts], dtype=np.float64)
    origin = (float(xs.min()) - ANCHOR_OFFSET[0], float(ys.min()) - ANCHOR_OFFSET[1])
    cells = _kernels.hex_cells(xs, ys, origin[0], origin[1], HEX_SIDE)
    return HexGrid(origin, HEX_SIDE, cells)


def cell_of(grid: HexGrid, p: Point2D) -> HexCellId:
    q, r = _kernels.hex_cells(np.array([p.x]), np.array([p.y]), grid.origin[0], grid.origin[1], grid.side)[0]
    return HexCellId(int(q), int(r))


def cell_center(grid: HexGrid, cell: HexCellId) -> tuple[float, float]:
    q, r = cell
    return (
        grid.origin[0] + 1.5 * grid.side * q,
        grid.origin[1] + math.sqrt(3.0) * grid.side * (r + 0.5 * q),
    )


def hex_corners(grid: HexGrid, cell: HexCellId) -> list[tuple[float, float]]:
    cx, cy = cell_center(grid, cell)
    return [
        (cx + grid.side * math.cos(math.radians(60 * k)), cy + grid.side * math.sin(math.radians(60 * k)))
        for k in range(6)
    ]


_NEIGHBOR_STEPS = frozenset(_kernels.HEX_DIRECTIONS)


def cells_adjacent(a: HexCellId, b: HexCellId) -> bool:
    return (b[0] - a[0], b[1] - a[1]) in _NEIGHBOR_STEPS


def mega_cell_of(cell: HexCellId) -> tuple[int, int]:
    """Group of ten adjacent cells (a 5 x 2 axial parallelogram) used by the renderer overlay."""
    return (cell[0] // 5, cell[1] // 2)


@dataclass
class Hex5Stats:
    """Instrumentation filled in by :func:`hex5_evds`."""

    examined: int = 0
    per_edge: np.ndarray | None = None
    phase1: list[int] = field(default_factory=list)
    phase2: list[int] = field(default_factory=list)
    # edges of g whose endpoints sit in distinct, non-adjacent cells
    nonadjacent_cross_edges: int = 0


def hex5_evds(g: UnitDiskGraph, grid: HexGrid | None = None, stats: Hex5Stats | None = None) -> EvdsSolution:
    """Two-phase marking algorithm over the hexagonal partition.

    Phase 1 scans edges by ascending id and takes every edge whose endpoints
    are both unmarked and lie in two adjacent cells; phase 2 visits the
    cells in ascending ``(q, r)`` order and, for each one that still holds
    an unmarked vertex, takes the lowest edge with an endpoint in it. Every
    taken edge marks all vertices it ev-dominates.
    """
    require_no_isolated(g)
    if grid is None:
        grid = build_hex_grid(g)
    if stats is None:
        stats = Hex5Stats()
    stats.examined = 0
    stats.per_edge = np.zeros(g.m, dtype=np.int64)
    stats.phase1, stats.phase2 = [], []
    stats.nonadjacent_cross_edges = 0

    per_edge = stats.per_edge
    cells = [(int(q), int(r)) for q, r in grid.cells]
    marked = [False] * g.n
    examined = 0

    def take(e):
        nonlocal examined
        for x in g.edges[e]:
            marked[x] = True
            for f in g.vertex_adjacency[x]:
                examined += 1
                per_edge[f] += 1
                marked[g.other_endpoint(f, x)] = True

    for e, (u, v) in enumerate(g.edges):
        examined += 1
        per_edge[e] += 1
        cu, cv = cells[u], cells[v]
        if cu == cv:
            continue
        if not cells_adjacent(cu, cv):
            stats.nonadjacent_cross_edges += 1
            continue
        if not marked[u] and not marked[v]:
            stats.phase1.append(e)
            take(e)

    members: dict[tuple[int, int], list[int]] = {}
    for v, c in enumerate(cells):
        members.setdefault(c, []).append(v)
    for c in sorted(members):
        verts = members[c]
        if all(marked[v] for v in verts):
            continue
        # incidence lists are ascending, so the first entry is each vertex's lowest edge
        e = min(g.vertex_adjacency[v][0] for v in verts)
        examined += len(verts)
        stats.phase2.append(e)
        take(e)

    stats.examined = examined
    return EvdsSolution(frozenset(stats.phase1) | frozenset(stats.phase2), "hex5")
