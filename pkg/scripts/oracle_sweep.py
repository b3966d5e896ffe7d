"""Compare the flow-based PSP with brute-force enumeration on many small random graphs."""
import argparse
import random
from fractions import Fraction

from psp_cluster.graph_core import WeightedGraph, orient
from psp_cluster.oracle import brute_psp, incut_function
from psp_cluster.psp import compute_psp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--rational", action="store_true", help="draw weights p/q instead of integers")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    mismatches = 0
    for _ in range(args.count):
        n = rng.randint(2, args.max_n)
        p = rng.choice([0.3, 0.6, 1.0])
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    q = rng.randint(1, 4) if args.rational else 1
                    edges.append((u, v, Fraction(rng.randint(1, 10), q)))
        if not edges:
            continue
        g = WeightedGraph.from_edges(edges, n)
        r = compute_psp(g)
        b = brute_psp(incut_function(orient(g)))
        if (r.critical_values, r.partitions) != (b.critical_values, b.partitions):
            mismatches += 1
            print("mismatch:", edges)
    print(f"{mismatches} mismatches in {args.count} graphs")


if __name__ == "__main__":
    main()
