"""Full-graph vs survivor-subgraph Bell margins under unknown single loss.

A dense-center state loses one uniformly random pendant with probability p.
The script tabulates the exact violation margins of the full-graph operator
and of the operator built for one hypothesized survivor subgraph, and solves
for the p where the two margins meet.

Run:  python3 scripts/mixture_crossover.py [--n 12] [--points 20]
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from lossbell import FamilySpec, generate, single_loss_mixture_curve


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=12)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--p-max", default="1/4")
    args = parser.parse_args()

    g = generate(FamilySpec("dense-center", args.n))
    root = 0
    pendants = g.leaves()
    hypothesis = frozenset({min(v for v in g.neighborhood(root) if g.degree(v) == 1)})
    grid = [Fraction(args.p_max) * j / args.points for j in range(args.points)]
    curve = single_loss_mixture_curve(g, root, pendants, hypothesis, grid)

    print(f"dense-center n={args.n}, anchor {root}, hypothesis {set(hypothesis)}")
    print(f"bounds: original {curve.full_bound}, survivor {curve.induced_bound}")
    print(f"{'p':>8}  {'full margin':>26}  {'survivor margin':>26}")
    for pt in curve.points:
        print(
            f"{str(pt.p):>8}  {str(pt.full_margin):>26}  {str(pt.induced_margin):>26}"
        )
    if curve.crossover is None:
        print("margins are parallel; they never meet")
    else:
        print(
            f"margins meet at p = {curve.crossover} "
            f"~= {float(curve.crossover):.6f} "
            f"(inside (0,1): {curve.crossover_in_unit_interval})"
        )


if __name__ == "__main__":
    main()
