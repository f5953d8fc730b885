"""Random fan partitions against the standard partition for every divisor k >= 3."""

import argparse
import time
from pathlib import Path

from rotakit.cli import load_input
from rotakit.report import SEARCH_FIELDS, search_row, write_csv
from rotakit.search import search_min_dM
from rotakit.symmetry import detect_symmetry


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("bodies", nargs="*", default=["regular:6", "regular:9", "circle:2520"])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out", type=Path, default=Path("results/minimality.csv"))
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)

    rows = []
    t0 = time.perf_counter()
    for spec in args.bodies:
        label, body, tol = load_input(spec, None, args.seed)
        for k in (d for d in detect_symmetry(body, tol).divisors if d >= 3):
            res = search_min_dM(body, k, args.samples, args.seed, tol)
            rows.append(search_row(label, k, args.samples, args.seed, res))
            print(f"{label:>14} k={k:<5} best={res.best_dM:.10f} formula={res.formula_dM:.10f}")
    write_csv(rows, args.out, SEARCH_FIELDS)
    worst = min(r["gap"] for r in rows)
    print(f"{len(rows)} searches in {time.perf_counter() - t0:.1f} s; smallest gap {worst:.3e}")


if __name__ == "__main__":
    main()
