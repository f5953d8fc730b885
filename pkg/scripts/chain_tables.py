"""Chain tables and figures for the regular polygons used as worked examples."""

import argparse
from pathlib import Path

from rotakit.generators import circle_polygon, regular_polygon
from rotakit.partitions import chain_report, classify_equality_chain, standard_partition
from rotakit.report import CHAIN_FIELDS, chain_rows, render_svg, write_csv

BODIES = {
    "regular_m006": lambda: regular_polygon(6),
    "regular_m009": lambda: regular_polygon(9),
    "regular_m015": lambda: regular_polygon(15),
    "regular_m045": lambda: regular_polygon(45),
    "regular_m049": lambda: regular_polygon(49),
    "regular_m077": lambda: regular_polygon(77),
    "regular_m091": lambda: regular_polygon(91),
    "circle_n2520": lambda: circle_polygon(2520),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results/chains"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    rows = []
    for body_id, make in BODIES.items():
        body = make()
        rep = chain_report(body)
        rows += chain_rows(body_id, rep)
        chain = " ".join(f"P_{e.k}={e.dM:.7f}" for e in rep.entries[:8])
        extra = ""
        if rep.profile.chi >= 3:
            extra = f" predicates agree={classify_equality_chain(rep).all_agree}"
        print(f"{body_id}: {chain}{' ...' if len(rep.entries) > 8 else ''} "
              f"equality={rep.equality_chain} unique_min={rep.unique_minimum}{extra}")
    write_csv(rows, args.out / "chains.csv", CHAIN_FIELDS)

    hexagon = regular_polygon(6)
    parts = [standard_partition(hexagon, k) for k in (2, 3, 6)]
    (args.out / "hexagon_partitions.svg").write_text(
        render_svg(hexagon, parts, ["P_2", "P_3", "P_6"]), encoding="utf-8"
    )
    octagon = regular_polygon(8)
    (args.out / "octagon_p4.svg").write_text(
        render_svg(octagon, [standard_partition(octagon, 4)], ["P_4"]), encoding="utf-8"
    )


if __name__ == "__main__":
    main()
