"""Achieved sup-norm error against the 1/n guarantee on random instances.

Prints one row per n: the worst and mean of error * n over the instances,
and the mean certificate size.
"""

import argparse
import random
from fractions import Fraction

from isoapprox import Construction, random_poset, upset_generators
from isoapprox.cone import node_count
from isoapprox.verify import normalize, random_isotone


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", type=int, default=30)
    ap.add_argument("--size", type=int, default=20)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--provider", choices=["pl", "smoothstep"], default="pl")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    cases = []
    for _ in range(args.instances):
        P = random_poset(args.size, Fraction(rng.randint(5, 40), 100), rng.getrandbits(32))
        f = normalize(random_isotone(P, rng.randint(2, 20), rng.getrandbits(32)))
        cases.append((Construction(P, upset_generators(P), args.provider), f))

    print(f"{'n':>3} {'max err*n':>10} {'mean err*n':>11} {'mean nodes':>11}")
    for n in range(1, args.max_n + 1):
        ratios, sizes = [], []
        for build, f in cases:
            rep = build.approximate_normalized(f, n)
            ratios.append(rep.error * n)
            sizes.append(node_count(rep.F_expr))
        print(f"{n:>3} {float(max(ratios)):>10.4f} {float(sum(ratios) / len(ratios)):>11.4f} "
              f"{sum(sizes) / len(sizes):>11.1f}")


if __name__ == "__main__":
    main()
