"""Run the tightness search over several seeds and tabulate the ratios found.

    python scripts/search_seeds.py --seeds 0-7 --levels 1,999,1000 --max-edges 12
"""
import argparse

from mec.graph import serialize_instance
from mec.instances import search_combined_worst
from mec.oracle import default_budget


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", default="0-7")
    ap.add_argument("--levels", default="1,999,1000")
    ap.add_argument("--max-edges", type=int, default=12)
    ap.add_argument("--show-best", action="store_true")
    args = ap.parse_args()
    lo, _, hi = args.seeds.partition("-")
    levels = [int(x) for x in args.levels.split(",")]

    best = None
    for seed in range(int(lo), int(hi or lo) + 1):
        res = search_combined_worst(args.max_edges, levels, default_budget(), seed=seed)
        print(f"seed {seed:>3}  ratio {str(res.ratio):>10} = {float(res.ratio):.6f}  edges {res.graph.m:>2}  evaluated {res.evaluated}")
        if best is None or res.ratio > best.ratio:
            best = res
    if args.show_best:
        print(serialize_instance(best.graph), end="")


if __name__ == "__main__":
    main()
