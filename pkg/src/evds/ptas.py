"""(1 + eps)-approximation via 4-separated edge collections.

Starting from the lowest remaining edge, the closed edge neighbourhood is
grown one hop at a time until a radius ``r1`` is reached where the greedy
matching of the ``r1 + 4`` neighbourhood is no larger than ``rho`` times
the matching of the ``r1`` neighbourhood. The inner set ``S`` (radius r1)
and the enlargement ``Q`` (radius r1 + 4) are recorded, ``Q`` is removed,
and the process repeats on what is left. Each ``Q`` is then solved
exactly, and the union of the local optima is returned.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .domination import (
    EvdsSolution,
    brute_force_opt_evds,
    matching_size,
    require_no_isolated,
)
from .errors import BoundViolation
from .geometry import UnitDiskGraph, edge_layers, set_edge_distance

__all__ = [
    "PtasParams",
    "Expansion",
    "CollectionEntry",
    "SeparatedCollection",
    "PtasResult",
    "default_r_cap",
    "expand_neighborhood",
    "ptas_evds",
    "verify_separation",
]

SEPARATION = 4


def default_r_cap(epsilon: float) -> int:
    return max(16, math.ceil((8.0 / epsilon) * math.log(1.0 / epsilon)) + 8)


@dataclass(frozen=True)
class PtasParams:
    epsilon: float
    r_cap: int | None = None

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError("epsilon must be a positive finite number")
        if self.r_cap is None:
            object.__setattr__(self, "r_cap", default_r_cap(self.epsilon))
        elif self.r_cap < 1:
            raise ValueError("r_cap must be a positive integer")

    @property
    def rho(self) -> float:
        return 1.0 + self.epsilon


@dataclass(frozen=True)
class Expansion:
    r1: int
    S: frozenset
    Q: frozenset
    s_matching: int
    q_matching: int


@dataclass(frozen=True)
class CollectionEntry:
    seed: int
    r1: int
    S: frozenset
    Q: frozenset


@dataclass
class SeparatedCollection:
    entries: list[CollectionEntry] = field(default_factory=list)
    m: int = SEPARATION

    @property
    def k(self) -> int:
        return len(self.entries)

    def max_r1(self) -> int:
        return max((e.r1 for e in self.entries), default=0)

    def to_json(self) -> str:
        return json.dumps(
            [{"seed": e.seed, "r1": e.r1, "S": sorted(e.S), "Q": sorted(e.Q)} for e in self.entries],
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str, m: int = SEPARATION) -> "SeparatedCollection":
        data = json.loads(text)
        return cls(
            [
                CollectionEntry(int(d["seed"]), int(d["r1"]), frozenset(map(int, d["S"])), frozenset(map(int, d["Q"])))
                for d in data
            ],
            m,
        )


@dataclass
class PtasResult:
    solution: EvdsSolution
    collection: SeparatedCollection
    local: list[EvdsSolution]


def expand_neighborhood(g: UnitDiskGraph, remaining, seed: int, params: PtasParams) -> Expansion:
    remaining = remaining if isinstance(remaining, (set, frozenset)) else set(remaining)
    if seed not in remaining:
        raise ValueError(f"seed edge {seed} is not among the remaining edges")
    hops = edge_layers(g, remaining, seed)
    depth = max(hops.values())
    by_hop: list[list[int]] = [[] for _ in range(depth + 1)]
    for e, h in hops.items():
        by_hop[h].append(e)

    def ball(r):
        return frozenset(itertools.chain.from_iterable(by_hop[: r + 1]))

    sizes: dict[int, int] = {}

    def matched(r):
        r = min(r, depth)
        if r not in sizes:
            sizes[r] = matching_size(g, ball(r))
        return sizes[r]

    for r in range(params.r_cap + 1):
        inner, outer = matched(r), matched(r + 4)
        if outer <= params.rho * inner:
            return Expansion(r, ball(r), ball(r + 4), inner, outer)
    raise BoundViolation(
        f"no admissible radius up to r_cap={params.r_cap} for seed {seed} (rho={params.rho})"
    )


def ptas_evds(g: UnitDiskGraph, params: PtasParams) -> PtasResult:
    require_no_isolated(g)
    remaining = set(range(g.m))
    collection = SeparatedCollection()
    while remaining:
        seed = min(remaining)
        grown = expand_neighborhood(g, remaining, seed, params)
        collection.entries.append(CollectionEntry(seed, grown.r1, grown.S, grown.Q))
        remaining -= grown.Q

    local = [brute_force_opt_evds(g, entry.Q) for entry in collection.entries]
    union = frozenset().union(*(s.edges for s in local)) if local else frozenset()
    return PtasResult(EvdsSolution(union, "ptas"), collection, local)


def verify_separation(g: UnitDiskGraph, c: SeparatedCollection) -> bool:
    for a, b in itertools.combinations(c.entries, 2):
        if set_edge_distance(g, a.S, b.S) < c.m:
            return False
    return True
