"""Time compute_psp on random connected graphs and fit a log-log slope.

    python3 scripts/scaling.py --sizes 25 50 100 200 --density 3 --seed 1
"""
import argparse
import math
import random
import statistics
import time

from psp_cluster.config import SolverConfig, SolverStats
from psp_cluster.graph_core import WeightedGraph
from psp_cluster.psp import compute_psp


def random_connected(rng, n, m, wmax):
    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(1, wmax)
    while len(edges) < min(m, n * (n - 1) // 2):
        u, v = rng.sample(range(n), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.randint(1, wmax))
    return WeightedGraph.from_edges([(u, v, w) for (u, v), w in edges.items()], n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100])
    ap.add_argument("--density", type=float, default=3.0, help="edges per vertex")
    ap.add_argument("--wmax", type=int, default=10)
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    config = SolverConfig(workers=args.workers)
    times = []
    print("n\tedges\tseconds\tmaxflows\tcritical_values")
    for n in args.sizes:
        best = math.inf
        for _ in range(args.repeats):
            g = random_connected(rng, n, int(args.density * n), args.wmax)
            stats = SolverStats()
            started = time.perf_counter()
            r = compute_psp(g, config, stats)
            best = min(best, time.perf_counter() - started)
        times.append(best)
        print(f"{n}\t{len(g.edges)}\t{best:.3f}\t{stats.maxflow_calls}\t{len(r.critical_values)}")
    if len(args.sizes) > 1:
        fit = statistics.linear_regression([math.log(n) for n in args.sizes], [math.log(t) for t in times])
        print(f"log-log slope: {fit.slope:.2f}")


if __name__ == "__main__":
    main()
