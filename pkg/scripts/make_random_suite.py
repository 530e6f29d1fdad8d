#!/usr/bin/env python3
"""Generate a directory of random benchmark instances plus the CSV manifest
consumed by ``eqmatch --suite``.

Example:

    python scripts/make_random_suite.py out/ --count 50 --seed 7
    eqmatch --suite out/ --manifest out/manifest.csv --out results.csv
"""

import argparse
import csv
import random
from pathlib import Path

from eqmatch.graphs import serialize_multiplex_edgelist
from eqmatch.synth import random_problem


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", type=Path)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--template-size", type=int, nargs=2, default=(3, 6))
    parser.add_argument("--world-size", type=int, nargs=2, default=(6, 12))
    parser.add_argument("--channels", type=int, nargs="+", default=(1, 2, 3))
    args = parser.parse_args()

    rng = random.Random(args.seed)
    args.outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(args.count):
        p = random_problem(rng, template_size=tuple(args.template_size),
                           world_size=tuple(args.world_size),
                           channels=tuple(args.channels),
                           directed=i % 2 == 0)
        name = f"rand{i:04d}"
        tpath, wpath = f"{name}_t.txt", f"{name}_w.txt"
        (args.outdir / tpath).write_text(
            serialize_multiplex_edgelist(p.template))
        (args.outdir / wpath).write_text(
            serialize_multiplex_edgelist(p.world))
        rows.append({"name": name, "template": tpath, "world": wpath,
                     "format": "multiplex"})
    with open(args.outdir / "manifest.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, ["name", "template", "world", "format"])
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {args.count} instances to {args.outdir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
