"""Tolerance tables for the loss-tolerant reference topologies.

For each family and size, prints the exact post-loss expectation per lost
pendant count and the largest pendant loss that keeps a violation, against
both the original-graph and survivor-subgraph bounds.

Run:  python3 scripts/loss_tolerance_tables.py [--sizes 8 10 12]
"""

from __future__ import annotations

import argparse

from lossbell import (
    FamilySpec,
    classical_bound,
    family_prediction,
    generate,
    leaf_groups,
    max_tolerable_loss,
)


def report_family(kind: str, n: int) -> None:
    spec = FamilySpec(kind, n)
    g = generate(spec)
    print(f"\n== {kind} n={n}  (max degree {g.n_max}, "
          f"bound {classical_bound(g)}, {len(g.roots)} roots)")
    if kind == "two-centered-ghz":
        candidates = frozenset(leaf_groups(spec)[0])
        label = "same-hub pendants"
        sizes = range(1, n // 2)
    else:
        candidates = frozenset(g.leaves())
        label = "pendants"
        sizes = range(0, n // 2)
    print(f"{'lost':>5}  {'expectation':>22}  {'vs original':>11}  {'vs survivor':>11}")
    for k in sizes:
        pred = family_prediction(spec, k)
        print(
            f"{k:>5}  {str(pred.value):>22}  {str(pred.violates_full):>11}"
            f"  {str(pred.violates_induced):>11}"
        )
    for bound in ("induced", "full"):
        best = max_tolerable_loss(g, candidates, "best-case", bound)
        worst = max_tolerable_loss(g, candidates, "worst-case", bound)
        print(f"max tolerable {label} ({bound} bound): "
              f"best-case {best.k}, worst-case {worst.k}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12])
    args = parser.parse_args()
    for n in args.sizes:
        report_family("two-centered-ghz", n)
        report_family("dense-center", n)


if __name__ == "__main__":
    main()
