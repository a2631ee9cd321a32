"""Matrix patterns from cubic graphs and the sweep over coefficient placements.

A pattern graph is a cubic graph with one edge removed. Its vertices are
matrix rows, its edges are columns with two nonzero entries, and each end
of the removed edge gets a dangling column of its own. A pattern with a
single dangling column is also supported; it has exactly one degree-2
vertex. An assignment code chooses, row by row, which of the three nonzero
positions carries the 2 (the other two carry -1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .angle_model import ConstraintSystem, Kind, RhsValue, solve_angle_detail
from .discovery import Theorem, make_theorem
from .exact_linalg import SparseRow, forward_eliminate, order_with_targets_last, support_vectors
from .graphs import CubicGraph, Edge, GraphError, _norm, automorphisms, degrees, is_hamiltonian

MAX_SWEEP_ROWS = 16


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class PatternGraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    dangling: tuple[int, ...]
    hamiltonian: bool | None = None

    def __post_init__(self):
        if len(self.dangling) not in (1, 2) or len(set(self.dangling)) != len(self.dangling):
            raise PatternError("a pattern has one or two distinct dangling vertices")
        deg = degrees(self.vertex_count, self.edges)
        for v, d in enumerate(deg):
            want = 2 if v in self.dangling else 3
            if d != want:
                raise PatternError(f"vertex {v} has degree {d}, expected {want}")

    @property
    def u(self) -> int:
        return self.dangling[0]

    @property
    def v(self) -> int | None:
        return self.dangling[1] if len(self.dangling) == 2 else None

    def relabel(self, perm: Sequence[int]) -> PatternGraph:
        return PatternGraph(
            self.vertex_count,
            tuple((perm[a], perm[b]) for a, b in self.edges),
            tuple(perm[d] for d in self.dangling),
            self.hamiltonian,
        )

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "edges": [list(e) for e in self.edges],
            "dangling": list(self.dangling),
        }


def remove_edge(graph: CubicGraph, edge: Sequence[int]) -> PatternGraph:
    """Drop one copy of ``edge``; its ends, in the given order, become dangling."""
    u, v = int(edge[0]), int(edge[1])
    target = _norm((u, v))
    for idx, e in enumerate(graph.edges):
        if _norm(e) == target:
            rest = graph.edges[:idx] + graph.edges[idx + 1:]
            return PatternGraph(graph.vertex_count, rest, (u, v), is_hamiltonian(graph))
    raise GraphError(f"edge {(u, v)} is not in the graph")


def single_dangling(vertex_count: int, edges: Sequence[Edge], u: int) -> PatternGraph:
    return PatternGraph(vertex_count, tuple(tuple(e) for e in edges), (u,))


@dataclass(frozen=True)
class PatternMatrix:
    """0/1 incidence pattern; dangling columns come after the edge columns."""

    incidence: tuple[tuple[int, ...], ...]
    dangling_columns: tuple[int, ...]
    graph: PatternGraph | None = field(default=None, compare=False)

    def __post_init__(self):
        for r, row in enumerate(self.incidence):
            if sum(1 for x in row if x) != 3:
                raise PatternError(f"row {r} must have exactly three entries")
        for c in range(self.width):
            count = sum(1 for row in self.incidence if row[c])
            want = 1 if c in self.dangling_columns else 2
            if count != want:
                raise PatternError(f"column {c} has {count} entries, expected {want}")

    @property
    def rows(self) -> int:
        return len(self.incidence)

    @property
    def width(self) -> int:
        return len(self.incidence[0]) if self.incidence else 0

    @property
    def positions(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c for c, x in enumerate(row) if x) for row in self.incidence)


def pattern_matrix(graph: PatternGraph) -> PatternMatrix:
    m, n = graph.vertex_count, len(graph.edges)
    width = n + len(graph.dangling)
    inc = [[0] * width for _ in range(m)]
    for j, (a, b) in enumerate(graph.edges):
        inc[a][j] = 1
        inc[b][j] = 1
    for k, d in enumerate(graph.dangling):
        inc[d][n + k] = 1
    return PatternMatrix(
        tuple(tuple(r) for r in inc),
        tuple(range(n, width)),
        graph,
    )


def pattern_from_matrix(matrix: Sequence[Sequence]) -> PatternMatrix:
    """Read the nonzero layout of a matrix as a pattern.

    Columns with two entries become edges in column order; single-entry
    columns are dangling and must be the last columns.
    """
    width = len(matrix[0])
    cols = [[i for i, row in enumerate(matrix) if row[c]] for c in range(width)]
    edges, dangling, dang_cols = [], [], []
    for c, rows in enumerate(cols):
        if len(rows) == 2:
            if dang_cols:
                raise PatternError("dangling columns must come last")
            edges.append((rows[0], rows[1]))
        elif len(rows) == 1:
            dangling.append(rows[0])
            dang_cols.append(c)
        else:
            raise PatternError(f"column {c} has {len(rows)} entries")
    graph = PatternGraph(len(matrix), tuple(edges), tuple(dangling))
    return pattern_matrix(graph)


# -- assignment codes -----------------------------------------------------------


def parse_code(text: str) -> tuple[int, ...]:
    if not text or any(ch not in "012" for ch in text):
        raise PatternError(f"assignment code must be a base-3 word, got {text!r}")
    return tuple(int(ch) for ch in text)


def format_code(code: Sequence[int]) -> str:
    return "".join(str(d) for d in code)


def iter_codes(m: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(3), repeat=m)


def assigned_matrix(pattern: PatternMatrix, code: Sequence[int]) -> list[list[int]]:
    if len(code) != pattern.rows:
        raise PatternError(f"code has {len(code)} digits, pattern has {pattern.rows} rows")
    out = []
    for cols, d in zip(pattern.positions, code):
        if d not in (0, 1, 2):
            raise PatternError(f"digit {d} outside 0..2")
        row = [0] * pattern.width
        for k, c in enumerate(cols):
            row[c] = 2 if k == d else -1
        out.append(row)
    return out


def assign(pattern: PatternMatrix, code: Sequence[int]) -> list[SparseRow]:
    return [SparseRow.from_dense(r) for r in assigned_matrix(pattern, code)]


def code_for_matrix(pattern: PatternMatrix, matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Inverse of :func:`assigned_matrix`."""
    code = []
    for r, cols in enumerate(pattern.positions):
        vals = [matrix[r][c] for c in cols]
        if sorted(vals) != [-1, -1, 2] or sum(1 for x in matrix[r] if x) != 3:
            raise PatternError(f"row {r} does not fit the pattern")
        code.append(vals.index(2))
    return tuple(code)


def _target_sets(pattern: PatternMatrix) -> list[frozenset[int]]:
    d = pattern.dangling_columns
    if len(d) == 2:
        return [frozenset(d)]
    return [frozenset((d[0], c)) for c in range(pattern.width) if c != d[0]]


@dataclass(frozen=True)
class AssignmentCheck:
    code: tuple[int, ...]
    rank: int
    theorem: Theorem | None

    @property
    def full_rank(self) -> bool:
        return self.rank == len(self.code)


def _check(pattern: PatternMatrix, code: Sequence[int]) -> AssignmentCheck:
    rows = assign(pattern, code)
    width = pattern.width
    rank = None
    for targets in _target_sets(pattern):
        elim = forward_eliminate(rows, order_with_targets_last(width, targets), width)
        rank = elim.rank
        found = support_vectors(elim, targets)
        if found:
            system = ConstraintSystem.from_matrix(assigned_matrix(pattern, code), Kind.BISECTOR)
            return AssignmentCheck(tuple(code), rank, make_theorem(system, *found[0]))
    return AssignmentCheck(tuple(code), rank, None)


def check_assignment(pattern: PatternMatrix, code: Sequence[int]) -> Theorem | None:
    """Theorem supported on the dangling columns, if the assignment yields one.

    With a single dangling column the partner column is searched in
    ascending order and the first hit is returned.
    """
    return _check(pattern, code).theorem


# -- sweep ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    pattern: PatternMatrix
    total: int
    hits: tuple[tuple[tuple[int, ...], Theorem], ...]
    rank_deficient: tuple[tuple[int, ...], ...]
    hit_full_rank: tuple[bool, ...]
    symmetry_classes: int
    automorphism_count: int

    @property
    def hit_count(self) -> int:
        return len(self.hits)

    def to_json(self) -> dict:
        g = self.pattern.graph
        return {
            "pattern": g.to_json() if g else None,
            "rows": self.pattern.rows,
            "columns": self.pattern.width,
            "total": self.total,
            "hit_count": self.hit_count,
            "hits": [
                {"code": format_code(code), "full_rank": fr, "theorem": thm.to_json()}
                for (code, thm), fr in zip(self.hits, self.hit_full_rank)
            ],
            "rank_deficient": [format_code(c) for c in self.rank_deficient],
            "symmetry_reduced": {
                "automorphisms": self.automorphism_count,
                "hit_classes": self.symmetry_classes,
            },
        }


def sweep(pattern: PatternMatrix) -> SweepReport:
    """Check all ``3**m`` assignment codes in ascending order."""
    m = pattern.rows
    if m > MAX_SWEEP_ROWS:
        raise PatternError(f"{m} rows exceed the sweep limit of {MAX_SWEEP_ROWS}")
    hits, full, deficient = [], [], []
    for code in iter_codes(m):
        res = _check(pattern, code)
        if not res.full_rank:
            deficient.append(code)
        if res.theorem is not None:
            hits.append((code, res.theorem))
            full.append(res.full_rank)
    group = code_symmetries(pattern)
    classes = {min(_apply(g, code) for g in group) for code, _ in hits}
    return SweepReport(
        pattern=pattern,
        total=3 ** m,
        hits=tuple(hits),
        rank_deficient=tuple(deficient),
        hit_full_rank=tuple(full),
        symmetry_classes=len(classes),
        automorphism_count=len(group),
    )


def code_symmetries(pattern: PatternMatrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pattern automorphisms as actions on codes.

    Each entry is ``(row_perm, digit_map)``: row ``i`` moves to ``row_perm[i]``
    and its digit ``d`` becomes ``digit_map[3 * i + d]``.
    """
    pos = pattern.positions
    m = pattern.rows
    col_rows = [tuple(i for i in range(m) if pattern.incidence[i][c]) for c in range(pattern.width)]
    edges = [r for c, r in enumerate(col_rows) if c not in pattern.dangling_columns]
    dang = [col_rows[c][0] for c in pattern.dangling_columns]
    group = []
    for perm in automorphisms(m, edges, [dang]):
        colmap = _column_map(pattern, col_rows, perm)
        digit_map = []
        for i in range(m):
            target = pos[perm[i]]
            for c in pos[i]:
                digit_map.append(target.index(colmap[c]))
        group.append((perm, tuple(digit_map)))
    return group


def _column_map(pattern: PatternMatrix, col_rows, perm) -> list[int]:
    avail: dict[tuple, list[int]] = {}
    for c, rows in enumerate(col_rows):
        key = (c in pattern.dangling_columns, tuple(sorted(rows)))
        avail.setdefault(key, []).append(c)
    out = []
    for c, rows in enumerate(col_rows):
        key = (c in pattern.dangling_columns, tuple(sorted(perm[r] for r in rows)))
        out.append(avail[key].pop(0))
    return out


def _apply(sym, code: Sequence[int]) -> tuple[int, ...]:
    perm, digit_map = sym
    out = [0] * len(code)
    for i, d in enumerate(code):
        out[perm[i]] = digit_map[3 * i + d]
    return tuple(out)


# -- derived graph --------------------------------------------------------------


@dataclass(frozen=True)
class DerivedGraph:
    """Columns as vertices; row ``r`` is an edge between its two -1 columns."""

    vertex_count: int
    edges: tuple[Edge, ...]

    @property
    def touched(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def components(self) -> int:
        """Connected components among touched columns."""
        parent = {v: v for v in self.touched}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(v) for v in self.touched})

    def cycle_basis(self) -> list[tuple[int, ...]]:
        """Fundamental cycles of a spanning forest, each as a tuple of row ids."""
        parent: dict[int, tuple[int, int] | None] = {}
        depth: dict[int, int] = {}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.touched}
        for r, (a, b) in enumerate(self.edges):
            adj[a].append((b, r))
            adj[b].append((a, r))
        tree_edges = set()
        for root in sorted(self.touched):
            if root in parent:
                continue
            parent[root] = None
            depth[root] = 0
            stack = [root]
            while stack:
                x = stack.pop()
                for y, r in adj[x]:
                    if y not in parent:
                        parent[y] = (x, r)
                        depth[y] = depth[x] + 1
                        tree_edges.add(r)
                        stack.append(y)
        basis = []
        for r, (a, b) in enumerate(self.edges):
            if r in tree_edges:
                continue
            left, right = [], []
            x, y = a, b
            while x != y:
                if depth[x] >= depth[y]:
                    px, rx = parent[x]
                    left.append(rx)
                    x = px
                else:
                    py, ry = parent[y]
                    right.append(ry)
                    y = py
            basis.append(tuple([r] + left + right[::-1]))
        return basis

    def simple_cycles(self, max_length: int = 8) -> list[tuple[int, ...]]:
        """All simple cycles with at most ``max_length`` edges, as vertex tuples.

        Parallel edges give 2-cycles. Each cycle is listed once, starting at
        its smallest vertex.
        """
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.touched}
        for r, (a, b) in enumerate(self.edges):
            adj[a].append((b, r))
            adj[b].append((a, r))
        seen = set()
        out = []
        for start in sorted(self.touched):
            path = [start]
            used_rows: list[int] = []

            def rec(x):
                for y, r in adj[x]:
                    if r in used_rows or y < start:
                        continue
                    if y == start:
                        key = frozenset(used_rows + [r])
                        if len(key) >= 2 and key not in seen:
                            seen.add(key)
                            out.append(tuple(path))
                        continue
                    if y in path or len(path) >= max_length:
                        continue
                    path.append(y)
                    used_rows.append(r)
                    rec(y)
                    used_rows.pop()
                    path.pop()

            rec(start)
        return out

    def report(self, max_length: int = 8) -> dict:
        return {
            "vertices": self.vertex_count,
            "edges": [list(e) for e in self.edges],
            "cycle_basis": [list(c) for c in self.cycle_basis()],
            "cycles": [list(c) for c in self.simple_cycles(max_length)],
        }


def derived_graph(matrix: Sequence[Sequence]) -> DerivedGraph:
    edges = []
    for r, row in enumerate(matrix):
        vals = row.dense() if isinstance(row, SparseRow) else list(row)
        neg = [c for c, x in enumerate(vals) if x == -1]
        if len(neg) != 2 or sum(1 for x in vals if x) != 3:
            raise PatternError(f"row {r} is not a (2, -1, -1) row")
        edges.append((neg[0], neg[1]))
    width = len(matrix[0].dense() if isinstance(matrix[0], SparseRow) else matrix[0]) if matrix else 0
    return DerivedGraph(width, tuple(edges))


# -- interpretation -------------------------------------------------------------


@dataclass(frozen=True)
class InterpretationReport:
    system: ConstraintSystem
    pair: tuple[int, int] | None
    value: RhsValue | None
    scale: Fraction | None
    combination: tuple[Fraction, ...] | None

    def to_json(self) -> dict:
        return {
            "kinds": [c.kind.value for c in self.system.constraints],
            "pair": list(self.pair) if self.pair else None,
            "value": self.value.to_json() if self.value else None,
            "scale": str(self.scale) if self.scale is not None else None,
        }


def interpret(
    matrix: Sequence[Sequence[int]],
    kinds: Sequence[Kind | str],
    names: Sequence[str] | None = None,
    dangling: Sequence[int] | None = None,
) -> InterpretationReport:
    """Read each row as a bisector, reflection or isosceles triangle.

    If the matrix defines a theorem between its dangling lines, the value of
    ``d_a - d_b`` is reported as a multiple of pi modulo 2*pi.
    """
    if len(kinds) != len(matrix):
        raise PatternError("one kind per row is required")
    for k in kinds:
        if Kind(k) not in (Kind.BISECTOR, Kind.ISOSCELES, Kind.REFLECTION):
            raise PatternError(f"rows can not be read as {Kind(k).value}")
    system = ConstraintSystem.from_matrix(matrix, kinds, names)
    if dangling is None:
        width = system.width
        dangling = [c for c in range(width) if sum(1 for row in matrix if row[c]) == 1]
    if len(dangling) == 2:
        pairs = [tuple(dangling)]
    elif len(dangling) == 1:
        d = dangling[0]
        pairs = [tuple(sorted((d, c))) for c in range(system.width) if c != d]
    else:
        pairs = []
    for a, b in pairs:
        sol = solve_angle_detail(system, a, b)
        if sol is not None:
            return InterpretationReport(system, (a, b), sol.value, sol.scale, sol.combination)
    return InterpretationReport(system, None, None, None, None)


# -- DOT ------------------------------------------------------------------------


def pattern_dot(graph: PatternGraph, name: str = "pattern") -> str:
    """Rows as filled nodes; dangling columns as dashed edges to open nodes."""
    out = [f"graph {name} {{", "  node [shape=circle, style=filled, fillcolor=black, fontcolor=white];"]
    for v in range(graph.vertex_count):
        out.append(f'  r{v} [label="{v + 1}"];')
    for j, (a, b) in enumerate(graph.edges):
        out.append(f'  r{a} -- r{b} [label="{j + 1}"];')
    n = len(graph.edges)
    for k, d in enumerate(graph.dangling):
        out.append(f'  t{k} [label="", fillcolor=white, style="filled,dashed"];')
        out.append(f'  r{d} -- t{k} [style=dashed, label="{n + k + 1}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def derived_dot(graph: DerivedGraph, dangling: Sequence[int] = (), name: str = "derived") -> str:
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for c in sorted(graph.touched | set(dangling)):
        style = ' style=dashed' if c in dangling else ""
        out.append(f'  c{c} [label="{c + 1}"{style}];')
    for r, (a, b) in enumerate(graph.edges):
        out.append(f'  c{a} -- c{b} [label="{r + 1}"];')
    out.append("}")
    return "\n".join(out) + "\n"
