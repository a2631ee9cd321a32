"""Sweep the reference eight-vertex pattern and print the hit list."""

from __future__ import annotations

import time

from anglemethod.fixtures import FIGURE4_REMOVED, figure4_text
from anglemethod.graphs import load_graph
from anglemethod.patterns import format_code, pattern_matrix, remove_edge, sweep


def main():
    pattern = pattern_matrix(remove_edge(load_graph(figure4_text()), FIGURE4_REMOVED))
    start = time.perf_counter()
    report = sweep(pattern)
    elapsed = time.perf_counter() - start
    print(f"{pattern.rows}x{pattern.width} pattern, {report.total} assignments, {elapsed:.2f}s")
    print(f"hits: {report.hit_count} / {report.total}")
    print(f"symmetry-reduced: {report.symmetry_classes} (automorphisms: {report.automorphism_count})")
    for code, thm in report.hits:
        support = ", ".join(str(c + 1) for c in sorted(thm.support))
        print(f"  {format_code(code)}  lines {support}: {thm.value}")


if __name__ == "__main__":
    main()
