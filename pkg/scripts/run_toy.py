#!/usr/bin/env python3
"""Run every equivalence mode on the built-in toy fixture and print the
representative-count table, the FE solution classes, and a compressed DOT
rendering of the largest class."""

import argparse

from eqmatch.reporting import compress, export_dot, induce_subgraph
from eqmatch.search import ALL_MODES, Mode, solve
from eqmatch.synth import toy_problem


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dot", help="write the compressed subgraph of the "
                                      "largest FE class to this path")
    args = parser.parse_args()

    problem = toy_problem()
    print(f"{'mode':<6} {'reps':>5} {'total':>6} {'rate':>8}")
    for mode in ALL_MODES:
        report, _ = solve(problem, mode, collect=False)
        rate = float(report.compression_rate)
        print(f"{mode.value:<6} {report.representatives:>5} "
              f"{report.total:>6} {rate:>8.4f}")

    _, classes = solve(problem, Mode.FE)
    print("\nFE solution classes:")
    for sc in classes:
        slots = ", ".join(f"{s.template_vertex}->{set(s.members)}"
                          for s in sc.slots)
        print(f"  [{slots}]  count={sc.count}")

    if args.dot:
        biggest = max(classes, key=lambda sc: sc.count)
        csg = induce_subgraph(problem.world, biggest, problem.template)
        with open(args.dot, "w") as fh:
            fh.write(export_dot(compress(csg)))
        print(f"\nwrote {args.dot}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
