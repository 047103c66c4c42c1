"""Regenerate the graph6 fixture files under tests/data.

Uses the networkx graph atlas (every graph on at most 7 vertices, one per
isomorphism class).  Equivalent files can be produced with nauty's geng:

    geng -c 7 > tests/data/connected7.g6     # connected graphs on 7 vertices
    geng 7 > tests/data/all7.g6              # all graphs on 7 vertices

(line order differs; the test-suite does not depend on it).

connected8.g6 is not in the atlas.  Every connected graph on 8 vertices
has a vertex whose removal leaves it connected, so it is produced by
adding one vertex, in every possible way, to each connected 7-vertex
graph and keeping one graph per isomorphism class (``geng -c 8``
gives the same 11117 classes).
"""

import sys
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from pendant_tc.graph_core import Graph, write_graph6  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "tests" / "data"


def _invariant(h: nx.Graph) -> tuple:
    tri = nx.triangles(h)
    return tuple(sorted((d, tri[v], tuple(sorted(h.degree(w) for w in h[v]))) for v, d in h.degree()))


def extend_connected(seeds: list[nx.Graph]) -> list[nx.Graph]:
    """One representative per isomorphism class of connected one-vertex extensions."""
    buckets: dict[tuple, list[nx.Graph]] = {}
    for h in seeds:
        n = h.number_of_nodes()
        for mask in range(1, 1 << n):
            ext = h.copy()
            ext.add_edges_from((n, v) for v in range(n) if mask >> v & 1)
            reps = buckets.setdefault(_invariant(ext), [])
            if not any(nx.is_isomorphic(ext, r) for r in reps):
                reps.append(ext)
    return [g for reps in buckets.values() for g in reps]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    by_n: dict[int, list[str]] = {}
    conn: dict[int, list[str]] = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0:
            continue
        g = Graph.from_edges(n, h.edges())
        line = write_graph6(g)
        by_n.setdefault(n, []).append(line)
        if nx.is_connected(h):
            conn.setdefault(n, []).append(line)
    for n, lines in by_n.items():
        (OUT / f"all{n}.g6").write_text("\n".join(lines) + "\n")
    for n, lines in conn.items():
        (OUT / f"connected{n}.g6").write_text("\n".join(lines) + "\n")
    seeds = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7 and nx.is_connected(h)]
    eight = sorted(write_graph6(Graph.from_edges(8, h.edges())) for h in extend_connected(seeds))
    (OUT / "connected8.g6").write_text("\n".join(eight) + "\n")
    print(f"n=8: {len(eight)} connected")
    for n in sorted(by_n):
        print(f"n={n}: {len(by_n[n])} graphs, {len(conn.get(n, []))} connected")


if __name__ == "__main__":
    main()
