"""Command-line front end: single-instance runs and benchmark suites.

Single runs print a JSON report to stdout; counts are serialized as decimal
strings since they may exceed native integer width. Suites read a CSV
manifest (``name,template,world,format``), fan instances out over a process
pool, and write one CSV row per (instance, mode) plus per-mode aggregate
rows with the fully-enumerated proportion and mean compression rate.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .graphs import Problem, parse_lad, parse_multiplex_edgelist
from .candidates import build_candidate_structure, init_candidates
from .search import ALL_MODES, Mode, solve
from .reporting import compress, export_dot, induce_subgraph


@dataclass
class RunConfig:
    """Everything one single-instance invocation needs."""

    template: Path
    world: Path
    format: str = "lad"
    mode: Mode = Mode.NE
    timeout: float = 600.0
    max_solutions: int | None = None
    solutions: Path | None = None
    dump_classes: bool = False
    dump_candidate_structure: bool = False
    dot: Path | None = None
    pair_cap: int = 200

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        self.mode = Mode(self.mode)


def load_problem(template: Path, world: Path, fmt: str) -> Problem:
    if fmt == "lad":
        t = parse_lad(Path(template).read_text())
        w = parse_lad(Path(world).read_text())
    elif fmt == "multiplex":
        t = parse_multiplex_edgelist(Path(template).read_text())
        w = parse_multiplex_edgelist(Path(world).read_text())
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return Problem(t, w)


def _pair_graph_dot(problem: Problem) -> str:
    structure = build_candidate_structure(problem, init_candidates(problem))
    lines = []
    for i, (u, c) in enumerate(structure.nodes):
        lines.append(f'  n{i} [label="({u},{c})"];')
    for i in range(len(structure.nodes)):
        for j in structure.pair_graph.out[i]:
            lines.append(f"  n{i} -> n{j};")
    if not lines:
        return "digraph G { }"
    return "digraph G {\n" + "\n".join(lines) + "\n}\n"


def run(cfg: RunConfig, out=None) -> int:
    """Execute one search and print the JSON report; exit status is nonzero
    only for input or contract errors, never for unsatisfiable instances."""
    problem = load_problem(cfg.template, cfg.world, cfg.format)
    stream = None
    on_class = None
    if cfg.solutions is not None:
        stream = open(cfg.solutions, "w")
        def on_class(sc):
            stream.write(json.dumps(sc.to_json()) + "\n")
    try:
        report, classes = solve(problem, cfg.mode, timeout=cfg.timeout,
                                max_solutions=cfg.max_solutions,
                                on_class=on_class, collect=True)
    finally:
        if stream is not None:
            stream.close()
    payload = {
        "representatives": report.representatives,
        "total": str(report.total),
        "compression_rate": (None if report.compression_rate is None
                             else float(report.compression_rate)),
        "wall_time_s": report.wall_time_s,
        "status": report.status,
    }
    if cfg.dump_classes:
        payload["classes"] = [sc.to_json() for sc in classes]
    if cfg.dot is not None:
        if cfg.dump_candidate_structure:
            structure = build_candidate_structure(problem, init_candidates(problem))
            if len(structure.nodes) > cfg.pair_cap:
                print(f"candidate structure has {len(structure.nodes)} pair "
                      f"nodes, above the cap of {cfg.pair_cap}; skipping dump",
                      file=sys.stderr)
            else:
                Path(cfg.dot).write_text(_pair_graph_dot(problem))
        elif classes:
            csg = induce_subgraph(problem.world, classes[0], problem.template)
            Path(cfg.dot).write_text(export_dot(compress(csg)))
        else:
            Path(cfg.dot).write_text("digraph G { }")
    print(json.dumps(payload), file=out if out is not None else sys.stdout)
    return 0


def _suite_entry(args) -> dict:
    name, template, world, fmt, mode, timeout = args
    try:
        problem = load_problem(template, world, fmt)
        report, _ = solve(problem, mode, timeout=timeout, collect=False)
        rate = report.compression_rate
        return {"instance": name, "mode": mode.value,
                "representatives": report.representatives,
                "total": str(report.total),
                "wall_time_s": f"{report.wall_time_s:.6f}",
                "status": report.status,
                "compression_rate": "" if rate is None else f"{float(rate):.6g}"}
    except (OSError, ValueError) as exc:
        return {"instance": name, "mode": mode.value, "representatives": "",
                "total": "", "wall_time_s": "", "status": f"error: {exc}",
                "compression_rate": ""}


_FIELDS = ["instance", "mode", "representatives", "total", "wall_time_s",
           "status", "compression_rate", "fully_enumerated_proportion",
           "mean_compression_rate"]


def run_suite(suite_dir: Path, manifest: Path, out_csv: Path,
              modes=ALL_MODES, timeout: float = 600.0,
              jobs: int | None = None) -> int:
    """Run every manifest instance under every mode; write rows + aggregates."""
    suite_dir = Path(suite_dir)
    entries = []
    with open(manifest, newline="") as fh:
        for rec in csv.DictReader(fh):
            entries.append((rec["name"], suite_dir / rec["template"],
                            suite_dir / rec["world"], rec.get("format", "lad")))
    tasks = [(name, t, w, fmt, Mode(mode), timeout)
             for (name, t, w, fmt) in entries for mode in modes]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_suite_entry, tasks))
    else:
        rows = [_suite_entry(t) for t in tasks]
    with open(out_csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_FIELDS, restval="")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        for mode in modes:
            mrows = [r for r in rows if r["mode"] == Mode(mode).value
                     and not r["status"].startswith("error")]
            if not mrows:
                continue
            done = sum(1 for r in mrows if r["status"] == "completed")
            rates = [float(r["compression_rate"]) for r in mrows
                     if r["compression_rate"] != ""]
            writer.writerow({
                "instance": "__aggregate__", "mode": Mode(mode).value,
                "fully_enumerated_proportion": f"{done / len(mrows):.6g}",
                "mean_compression_rate":
                    f"{sum(rates) / len(rates):.6g}" if rates else "",
            })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqmatch",
        description="Exact subgraph-isomorphism enumeration with "
                    "equivalence-compressed solution classes.")
    parser.add_argument("--template", type=Path)
    parser.add_argument("--world", type=Path)
    parser.add_argument("--format", choices=["lad", "multiplex"], default="lad")
    parser.add_argument("--mode", choices=[m.value for m in ALL_MODES],
                        default="ne")
    parser.add_argument("--timeout", type=float, default=600.0)
    parser.add_argument("--max-solutions", type=int, default=None)
    parser.add_argument("--solutions", type=Path,
                        help="stream solution classes to this JSONL file")
    parser.add_argument("--dump-classes", action="store_true",
                        help="include solution classes in the JSON report")
    parser.add_argument("--dump-candidate-structure", action="store_true",
                        help="write the pair-node graph as DOT (see --dot)")
    parser.add_argument("--dot", type=Path,
                        help="DOT output path (candidate structure or the "
                             "first class's compressed subgraph)")
    parser.add_argument("--pair-cap", type=int, default=200)
    parser.add_argument("--suite", type=Path, help="suite instance directory")
    parser.add_argument("--manifest", type=Path, help="suite manifest CSV")
    parser.add_argument("--out", type=Path, help="suite output CSV")
    parser.add_argument("--modes", default=",".join(m.value for m in ALL_MODES),
                        help="comma-separated modes for suite runs")
    parser.add_argument("--jobs", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.suite is not None:
            if args.manifest is None or args.out is None:
                raise ValueError("--suite requires --manifest and --out")
            modes = tuple(Mode(m.strip()) for m in args.modes.split(",") if m.strip())
            return run_suite(args.suite, args.manifest, args.out,
                             modes=modes, timeout=args.timeout, jobs=args.jobs)
        if args.template is None or args.world is None:
            raise ValueError("single runs require --template and --world")
        cfg = RunConfig(template=args.template, world=args.world,
                        format=args.format, mode=Mode(args.mode),
                        timeout=args.timeout, max_solutions=args.max_solutions,
                        solutions=args.solutions,
                        dump_classes=args.dump_classes,
                        dump_candidate_structure=args.dump_candidate_structure,
                        dot=args.dot, pair_cap=args.pair_cap)
        return run(cfg)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
