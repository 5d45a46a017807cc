"""Solver dispatch and run reports for the command line tools."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import asdict, dataclass, field

from .domination import EvdsSolution, exact_evds, is_evds, maximal_matching_evds, require_no_isolated
from .errors import OracleRefusalError
from .geometry import UnitDiskGraph
from .hexgrid import hex5_evds
from .ptas import PtasParams, PtasResult, ptas_evds

EXACT_EDGE_LIMIT = 16
CSV_COLUMNS = ("instance", "n", "m", "solver", "size", "opt_size", "ratio", "time_ms", "k", "max_r1")
TIMING_FIELDS = frozenset({"time_ms"})


@dataclass
class SolverRun:
    solver: str
    size: int
    verified: bool
    time_ms: float
    epsilon: float | None = None
    opt_size: int | None = None
    ratio: float | None = None
    k: int | None = None
    max_r1: int | None = None
    q_sizes: list[int] | None = None


@dataclass
class RunReport:
    instance: str
    n: int
    m: int
    bbox: tuple[float, float, float, float]
    runs: list[SolverRun] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bbox"] = list(self.bbox)
        d["digest"] = self.digest()
        return d

    def digest(self) -> str:
        """Hash of the report with timing fields removed."""
        d = asdict(self)
        d["bbox"] = list(self.bbox)
        for run in d["runs"]:
            for key in TIMING_FIELDS:
                run.pop(key, None)
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def csv_rows(self) -> list[dict]:
        rows = []
        for r in self.runs:
            name = r.solver if r.epsilon is None else f"{r.solver}@{r.epsilon:g}"
            rows.append(
                {
                    "instance": self.instance,
                    "n": self.n,
                    "m": self.m,
                    "solver": name,
                    "size": r.size,
                    "opt_size": "" if r.opt_size is None else r.opt_size,
                    "ratio": "" if r.ratio is None else f"{r.ratio:.6g}",
                    "time_ms": f"{r.time_ms:.3f}",
                    "k": "" if r.k is None else r.k,
                    "max_r1": "" if r.max_r1 is None else r.max_r1,
                }
            )
        return rows


def solve(g: UnitDiskGraph, solver: str, epsilon: float | None = None, force: bool = False):
    """Run one solver; returns ``(solution, ptas_result_or_None)``."""
    if solver == "exact":
        if g.m > EXACT_EDGE_LIMIT and not force:
            raise OracleRefusalError(
                f"exact solver refuses {g.m} edges (limit {EXACT_EDGE_LIMIT}); pass --force to override"
            )
        return exact_evds(g), None
    if solver == "matching":
        require_no_isolated(g)
        if g.m == 0:
            return EvdsSolution(frozenset(), "matching"), None
        sol = maximal_matching_evds(g, range(g.m))
        return EvdsSolution(sol.edges, "matching"), None
    if solver == "ptas":
        if epsilon is None:
            raise ValueError("the ptas solver needs --epsilon")
        res = ptas_evds(g, PtasParams(epsilon))
        return res.solution, res
    if solver == "hex5":
        return hex5_evds(g), None
    raise ValueError(f"unknown solver {solver!r}")


def timed_run(g: UnitDiskGraph, solver: str, epsilon=None, force=False, opt_size=None):
    t0 = time.perf_counter()
    sol, extra = solve(g, solver, epsilon, force)
    elapsed = (time.perf_counter() - t0) * 1000.0
    verified = is_evds(g, sol)
    if not verified:
        # every solver is supposed to return a dominating set; anything else is a defect
        raise AssertionError(f"{solver} returned a set that does not ev-dominate the graph")
    run = SolverRun(solver, len(sol), verified, elapsed, epsilon if solver == "ptas" else None)
    if opt_size:
        run.opt_size = opt_size
        run.ratio = len(sol) / opt_size
    if isinstance(extra, PtasResult):
        run.k = extra.collection.k
        run.max_r1 = extra.collection.max_r1()
        run.q_sizes = [len(e.Q) for e in extra.collection.entries]
    return sol, run, extra


def oracle_size(g: UnitDiskGraph, force: bool = False) -> int | None:
    if g.m == 0 or (g.m > EXACT_EDGE_LIMIT and not force):
        return None
    return len(exact_evds(g))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
