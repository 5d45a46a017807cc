"""``evds`` command line interface.

Exit codes: 0 success, 1 verification failed, 2 infeasible instance
(isolated vertex), 3 exact oracle refused the instance, 4 malformed input
file, 5 random generation gave up, 6 invalid embedding, 64 bad command
line, 70 a solver returned an unverified set.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .domination import is_evds, solution_from_json, solution_to_json, undominated
from .errors import EmbeddingError, GenerationError, InfeasibleError, OracleRefusalError
from .geometry import build_udg, format_points, graph_to_json, parse_points
from .hexgrid import build_hex_grid
from .instances import generate_points
from .ptas import SeparatedCollection, verify_separation
from .reduction import corpus_names, load_corpus_embedding, parse_embedding, reduce_to_udg, roles_to_json
from .render import render_svg
from .report import CSV_COLUMNS, RunReport, oracle_size, rows_to_csv, timed_run

log = logging.getLogger("evds")

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_INFEASIBLE = 2
EXIT_REFUSED = 3
EXIT_MALFORMED = 4
EXIT_GENERATION = 5
EXIT_EMBEDDING = 6
EXIT_USAGE = 64
EXIT_DEFECT = 70


class MalformedInput(Exception):
    pass


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path):
    try:
        return build_udg(parse_points(_read_text(path)))
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from None


def _load_solution(g, path):
    try:
        return solution_from_json(g, _read_text(path))
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from None


def _emit(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    xy = generate_points(args.n, args.width, args.height, args.seed, args.min_degree_filter)
    _emit(format_points(xy), args.output)
    if args.graph_json:
        g = build_udg(parse_points(format_points(xy)))
        Path(args.graph_json).write_text(graph_to_json(g) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _load_graph(args.points)
    opt = oracle_size(g, force=args.force) if args.solver != "exact" else None
    sol, run, extra = timed_run(g, args.solver, args.epsilon, args.force, opt)
    if args.solver == "exact":
        run.opt_size, run.ratio = run.size, 1.0
    log.info("%s: size %d in %.1f ms", args.solver, run.size, run.time_ms)

    report = RunReport(Path(args.points).name, g.n, g.m, g.bounding_box(), [run])
    _emit(solution_to_json(g, sol, run.verified), args.output)
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
    if args.collection:
        if extra is None:
            log.warning("--collection only applies to the ptas solver")
        else:
            Path(args.collection).write_text(extra.collection.to_json() + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.points)
    status = EXIT_OK
    if args.solution:
        sol = _load_solution(g, args.solution)
        if is_evds(g, sol):
            print(f"ok: {len(sol)} edges ev-dominate all {g.n} vertices")
        else:
            witness = undominated(g, sol)[0]
            print(f"not an EVDS: vertex {witness} is not ev-dominated")
            status = EXIT_UNVERIFIED
    if args.collection:
        try:
            coll = SeparatedCollection.from_json(_read_text(args.collection))
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedInput(f"{args.collection}: {exc}") from None
        if verify_separation(g, coll):
            print(f"ok: {coll.k} sets are pairwise {coll.m}-separated")
        else:
            print(f"separation violated: some pair of sets is closer than {coll.m}")
            status = EXIT_UNVERIFIED
    if not args.solution and not args.collection:
        raise MalformedInput("nothing to verify: give a solution file and/or --collection")
    return status


def cmd_reduce(args) -> int:
    if args.corpus:
        if args.corpus not in corpus_names():
            raise MalformedInput(f"unknown corpus embedding {args.corpus!r}; have {corpus_names()}")
        emb = load_corpus_embedding(args.corpus)
    elif args.embedding:
        try:
            emb = parse_embedding(_read_text(args.embedding))
        except ValueError as exc:
            raise MalformedInput(f"{args.embedding}: {exc}") from None
    else:
        raise MalformedInput("give an embedding file or --corpus NAME")
    inst = reduce_to_udg(emb)
    prefix = args.output
    _emit(format_points(inst.udg.coords), None if prefix is None else f"{prefix}.points")
    if prefix is not None:
        Path(f"{prefix}.roles.json").write_text(roles_to_json(inst) + "\n", encoding="utf-8")
    log.info("reduced: %d points, %d edges, l=%d", inst.udg.n, inst.udg.m, inst.l)
    return EXIT_OK


def cmd_bench(args) -> int:
    epsilons = [float(t) for t in args.epsilons.split(",") if t.strip()]
    files = sorted(p for p in Path(args.corpus).iterdir() if p.suffix in (".points", ".txt"))
    reports = []
    for path in files:
        g = _load_graph(path)
        opt = oracle_size(g, force=args.force)
        report = RunReport(path.name, g.n, g.m, g.bounding_box())
        if opt is not None:
            _, run, _ = timed_run(g, "exact", opt_size=opt, force=True)
            report.runs.append(run)
        for solver in ("matching", "hex5"):
            report.runs.append(timed_run(g, solver, opt_size=opt)[1])
        for eps in epsilons:
            report.runs.append(timed_run(g, "ptas", eps, opt_size=opt)[1])
        reports.append(report)

    rows = [row for r in reports for row in r.csv_rows()]
    _emit(rows_to_csv(rows), args.csv)
    if args.json:
        max_r1 = {}
        for r in reports:
            for run in r.runs:
                if run.solver == "ptas":
                    key = f"{run.epsilon:g}"
                    max_r1[key] = max(max_r1.get(key, 0), run.max_r1)
        payload = {"reports": [r.to_dict() for r in reports], "max_r1": max_r1, "columns": list(CSV_COLUMNS)}
        Path(args.json).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_render(args) -> int:
    g = _load_graph(args.points)
    sol = _load_solution(g, args.solution) if args.solution else None
    grid = build_hex_grid(g) if (args.grid or args.mega_cells) and g.n else None
    _emit(render_svg(g, sol, grid, mega_cells=args.mega_cells, title=Path(args.points).name), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse's default usage-error status (2) would collide with EXIT_INFEASIBLE
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="evds", description="Edge-vertex dominating sets on unit disk graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="sample a random point set")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--width", type=float, default=5.0)
    s.add_argument("--height", type=float, default=5.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--min-degree-filter", action="store_true", help="resample until no vertex is isolated")
    s.add_argument("-o", "--output")
    s.add_argument("--graph-json", help="also write the unit disk graph as JSON")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="compute and verify an EVDS")
    s.add_argument("points")
    s.add_argument("--solver", choices=("exact", "matching", "ptas", "hex5"), required=True)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--force", action="store_true", help="let the exact solver run past its edge limit")
    s.add_argument("-o", "--output", help="solution file (default stdout)")
    s.add_argument("--report", help="write a JSON run report")
    s.add_argument("--collection", help="write the ptas separated collection as JSON")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a solution and/or a separated collection")
    s.add_argument("points")
    s.add_argument("solution", nargs="?")
    s.add_argument("--collection")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reduce", help="build the vertex-cover gadget from a grid embedding")
    s.add_argument("embedding", nargs="?")
    s.add_argument("--corpus", help="use a bundled embedding by name")
    s.add_argument("-o", "--output", help="output prefix for .points and .roles.json")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bench", help="run every solver over a directory of point files")
    s.add_argument("corpus")
    s.add_argument("--epsilons", default="0.5,1,2")
    s.add_argument("--force", action="store_true")
    s.add_argument("--csv", help="CSV output (default stdout)")
    s.add_argument("--json", help="JSON output")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("render", help="draw an instance as SVG")
    s.add_argument("points")
    s.add_argument("--solution")
    s.add_argument("--grid", action="store_true", help="draw the hexagonal partition")
    s.add_argument("--mega-cells", action="store_true", help="shade ten-cell groups (implies --grid)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    level = os.environ.get("EVDS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve" and args.solver == "ptas" and args.epsilon is None:
        parser.error("the ptas solver needs --epsilon")
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OracleRefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except EmbeddingError as exc:
        print(f"invalid embedding: {exc}", file=sys.stderr)
        return EXIT_EMBEDDING
    except AssertionError as exc:
        print(f"defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
