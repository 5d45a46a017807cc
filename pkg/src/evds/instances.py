"""Seeded random point sets."""

from __future__ import annotations

import numpy as np

from .errors import GenerationError
from .geometry import UnitDiskGraph

MAX_RETRIES = 1000


def generate_points(
    n: int,
    width: float,
    height: float,
    seed: int,
    min_degree_filter: bool = False,
    max_retries: int = MAX_RETRIES,
) -> np.ndarray:
    """``n`` uniform points in ``[0, width] x [0, height]``.

    With ``min_degree_filter`` the whole set is redrawn until its unit disk
    graph has no isolated vertex.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if width < 0 or height < 0:
        raise ValueError("box dimensions must be non-negative")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        xy = np.column_stack([rng.uniform(0.0, width, n), rng.uniform(0.0, height, n)])
        if not min_degree_filter:
            return xy
        if not UnitDiskGraph.from_coords(xy).isolated_vertices():
            return xy
    raise GenerationError(
        f"no isolation-free sample of {n} points in a {width} x {height} box after {max_retries} draws"
    )


def random_small_instance(rng: np.random.Generator, max_edges: int = 14, min_n: int = 4, max_n: int = 15):
    """Random isolation-free unit disk graph with between 1 and ``max_edges`` edges."""
    while True:
        n = int(rng.integers(min_n, max_n + 1))
        side = float(rng.uniform(1.5, 4.0))
        g = UnitDiskGraph.from_coords(rng.uniform(0.0, side, (n, 2)))
        if 0 < g.m <= max_edges and not g.isolated_vertices():
            return g


def random_instance(rng: np.random.Generator, n: int, density: float = 3.0, drop_isolated: bool = True):
    """Roughly ``density`` points per unit area; isolated points optionally removed."""
    side = float(np.sqrt(n / density))
    xy = rng.uniform(0.0, side, (n, 2))
    if drop_isolated:
        g = UnitDiskGraph.from_coords(xy)
        xy = xy[[v for v in range(g.n) if g.degree(v) > 0]]
    return UnitDiskGraph.from_coords(xy)
