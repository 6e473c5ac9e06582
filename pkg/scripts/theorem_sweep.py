"""Sweep every labeled tree on up to N vertices and report the worst ratios per size.

    python scripts/theorem_sweep.py --max-n 6 --per-topology 50
"""
import argparse
import random
from fractions import Fraction

from mec.algorithms import algorithm1, kk_greedy
from mec.graph import validate_tree
from mec.instances import labeled_trees, tree_from_parents
from mec.oracle import exact_mec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--levels", default="1,2,3")
    ap.add_argument("--per-topology", type=int, default=50)
    args = ap.parse_args()
    levels = [int(x) for x in args.levels.split(",")]

    print(f"{'n':>3} {'instances':>10} {'alg1/OPT':>10} {'kk/OPT':>10} {'best/OPT':>10}")
    for n in range(2, args.max_n + 1):
        worst = {"alg1": Fraction(1), "kk": Fraction(1), "best": Fraction(1)}
        count = 0
        for idx, parent in enumerate(labeled_trees(n)):
            rng = random.Random(f"sweep:{n}:{idx}")
            for _ in range(args.per_topology):
                g = tree_from_parents(parent, [rng.choice(levels) for _ in parent])
                opt = exact_mec(g).opt
                kk = kk_greedy(g)[0].total
                for r in range(n):
                    a1 = algorithm1(validate_tree(g, r))[0].total
                    worst["alg1"] = max(worst["alg1"], Fraction(a1, opt))
                    worst["best"] = max(worst["best"], Fraction(min(a1, kk), opt))
                worst["kk"] = max(worst["kk"], Fraction(kk, opt))
                count += 1
        print(f"{n:>3} {count:>10} " + " ".join(f"{float(worst[k]):>10.4f}" for k in ("alg1", "kk", "best")))
        assert worst["best"] <= Fraction(3, 2), "combined ratio above 3/2"


if __name__ == "__main__":
    main()
