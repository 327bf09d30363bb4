"""Write the connected small-graph catalog (graph6, one per line) from the
networkx graph atlas, which lists every graph on up to 7 vertices once up to
isomorphism."""
import sys

import networkx as nx
from networkx.readwrite.graph6 import to_graph6_bytes


def main(max_n: int, path: str) -> None:
    lines = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(g):
            lines.append(to_graph6_bytes(g, header=False).decode().strip())
    with open(path, "w") as fh:
        fh.write(f"# connected graphs on 1..{max_n} vertices ({len(lines)} records)\n")
        fh.write("\n".join(lines) + "\n")
    print(len(lines))


if __name__ == "__main__":
    main(int(sys.argv[1]), sys.argv[2])
