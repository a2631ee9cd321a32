"""Sweep every edge-removed pattern of the cubic Hamiltonian graphs on 2p vertices.

Usage: python3 scripts/enumerate_patterns.py [p]   (default p=3; p=4 takes minutes)
"""

from __future__ import annotations

import sys

from anglemethod.graphs import generate_cubic_hamiltonian
from anglemethod.patterns import pattern_matrix, remove_edge, sweep


def main(p: int = 3):
    for k, graph in enumerate(generate_cubic_hamiltonian(p), start=1):
        for edge in sorted({tuple(sorted(e)) for e in graph.edges}):
            pattern = pattern_matrix(remove_edge(graph, edge))
            report = sweep(pattern)
            print(
                f"graph {k} minus {edge}: hits {report.hit_count} / {report.total}, "
                f"classes {report.symmetry_classes}, rank-deficient {len(report.rank_deficient)}"
            )


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
