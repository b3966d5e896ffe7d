"""Walk through the three-vertex example: every iteration, slice and the final hierarchy."""
from psp_cluster.clustering import clusters_at, fundamental_partition, hierarchy
from psp_cluster.graph_core import parse_edge_list
from psp_cluster.psp import compute_psp

TRIANGLE = "1 2 1\n2 3 1\n1 3 5\n"


def show(block):
    return "{" + ",".join(str(v + 1) for v in sorted(block)) + "}"


def main():
    g = parse_edge_list(TRIANGLE)
    trace = []
    r = compute_psp(g, trace=trace)
    for it in trace:
        print(f"sink vertex {it.j + 1}: gamma- = {it.gamma_minus}, gamma+ = {it.gamma_plus}")
        for kind, gamma, side in it.slices:
            print(f"  {kind:5s} gamma = {gamma}  sink side {show(side)}")
        print("  breakpoints:", [(str(g_), show(b)) for g_, b in it.breakpoints])
    print()
    for start, p, clusters in hierarchy(r).rows():
        print(f"from {'-inf' if start is None else start}: partition {p}, clusters {clusters}")
    value, p = fundamental_partition(r)
    print(f"mmi = {value}, fundamental partition {[show(c) for c in p]}")
    for gamma in (1, 3, 5):
        print(f"clusters at {gamma}: {[show(c) for c in clusters_at(r, gamma)]}")


if __name__ == "__main__":
    main()
