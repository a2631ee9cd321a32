"""Small cubic graphs: parsing, Hamiltonicity, canonical forms, generation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

MAX_P = 6


class GraphError(ValueError):
    pass


Edge = tuple[int, int]


def _norm(e: Sequence[int]) -> Edge:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u <= v else (v, u)


def degrees(n: int, edges: Iterable[Edge]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def adjacency(n: int, edges: Iterable[Edge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


@dataclass(frozen=True)
class CubicGraph:
    """Graph with every vertex of degree 3.

    Edges keep the order they were given in; pattern matrices number their
    columns by it.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    multi: bool = False

    def __post_init__(self):
        n = self.vertex_count
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
        if not self.multi and len({_norm(e) for e in edges}) != len(edges):
            raise GraphError("repeated edge in a simple graph")
        bad = [i for i, d in enumerate(degrees(n, edges)) if d != 3]
        if bad:
            raise GraphError(f"vertices {bad} do not have degree 3")

    def has_edge(self, u: int, v: int) -> bool:
        return _norm((u, v)) in {_norm(e) for e in self.edges}

    def relabel(self, perm: Sequence[int]) -> CubicGraph:
        return CubicGraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges), self.multi)

    def to_text(self) -> str:
        out = [f"p {self.vertex_count} {len(self.edges)}"]
        out += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(out) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[Edge]]:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty graph file")
    head = lines[0].split()
    try:
        if len(head) != 3 or head[0] != "p":
            raise ValueError("header must be 'p <vertices> <edges>'")
        n, m = int(head[1]), int(head[2])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphError(str(exc)) from exc
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return n, edges


def load_graph(text: str, multi: bool = False) -> CubicGraph:
    n, edges = parse_edge_list(text)
    return CubicGraph(n, tuple(edges), multi)


# -- Hamiltonian cycles ---------------------------------------------------------


def hamiltonian_cycles(n: int, edges: Iterable[Edge]) -> Iterator[tuple[int, ...]]:
    """Every Hamiltonian cycle once, as a vertex tuple starting at 0.

    Each undirected cycle is reported in one direction only (second vertex
    smaller than the last).
    """
    if n < 3:
        return
    adj = [sorted(set(a)) for a in adjacency(n, edges)]
    path = [0]
    on_path = [False] * n
    on_path[0] = True

    def extend():
        if len(path) == n:
            if 0 in adj[path[-1]] and path[1] < path[-1]:
                yield tuple(path)
            return
        for w in adj[path[-1]]:
            if not on_path[w]:
                on_path[w] = True
                path.append(w)
                yield from extend()
                path.pop()
                on_path[w] = False

    yield from extend()


def hamiltonian_cycle(n: int, edges: Iterable[Edge]) -> tuple[int, ...] | None:
    return next(hamiltonian_cycles(n, list(edges)), None)


def is_hamiltonian(graph: CubicGraph) -> bool:
    return hamiltonian_cycle(graph.vertex_count, graph.edges) is not None


# -- canonical forms ------------------------------------------------------------


def canonical_form(n: int, edges: Iterable[Edge], marked: Sequence[int] = ()) -> tuple:
    """Lexicographically least relabelled edge list over all vertex permutations.

    ``marked`` vertices (in order) must map to ``0, 1, ...`` so that a marked
    structure such as the two ends of a removed edge is respected; pass them
    as a sorted pair when their order does not matter and call twice.
    Exhaustive, so only for small graphs.
    """
    edges = [tuple(e) for e in edges]
    k = len(marked)
    rest = [v for v in range(n) if v not in marked]
    best = None
    for tail in permutations(range(k, n)):
        perm = [0] * n
        for i, v in enumerate(marked):
            perm[v] = i
        for v, t in zip(rest, tail):
            perm[v] = t
        form = tuple(sorted(_norm((perm[u], perm[v])) for u, v in edges))
        if best is None or form < best:
            best = form
    return (n, k, best)


def hamiltonian_canonical_form(n: int, edges: Iterable[Edge]) -> tuple[int, ...]:
    """Canonical code for a cubic Hamiltonian graph.

    Each Hamiltonian cycle, start vertex and direction labels the vertices
    along the cycle; the graph is then determined by the chord partner of
    every position. The least such partner word is an isomorphism invariant
    that separates non-isomorphic graphs.
    """
    edges = [_norm(e) for e in edges]
    best = None
    for cyc in hamiltonian_cycles(n, edges):
        cycle_edges = {_norm((cyc[i], cyc[(i + 1) % n])) for i in range(n)}
        chords = [e for e in edges if e not in cycle_edges]
        if len(chords) != len(edges) - n:
            # Multi-edge shares a cycle edge; fall back to counting copies.
            chords = list(edges)
            for e in cycle_edges:
                chords.remove(e)
        partner = {}
        for u, v in chords:
            partner[u] = v
            partner[v] = u
        for seq in (cyc, cyc[:1] + cyc[:0:-1]):
            for s in range(n):
                order = seq[s:] + seq[:s]
                pos = {v: i for i, v in enumerate(order)}
                word = tuple(pos[partner[v]] for v in order)
                if best is None or word < best:
                    best = word
    if best is None:
        raise GraphError("graph is not Hamiltonian")
    return best


def _chord_matchings(n: int) -> Iterator[list[Edge]]:
    """Perfect matchings of 0..n-1 avoiding cycle neighbours."""

    def rec(free: list[int]):
        if not free:
            yield []
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            if (b - a) % n in (1, n - 1):
                continue
            rest = free[1:idx] + free[idx + 1:]
            for tail in rec(rest):
                yield [(a, b)] + tail

    yield from rec(list(range(n)))


def generate_cubic_hamiltonian(p: int) -> list[CubicGraph]:
    """All non-isomorphic simple cubic Hamiltonian graphs on ``2p`` vertices.

    Each graph is the cycle ``0..2p-1`` plus a perfect matching of chords,
    one representative per canonical code, in order of canonical code.
    """
    if not 1 <= p <= MAX_P:
        raise GraphError(f"p must lie in 1..{MAX_P}, got {p}")
    n = 2 * p
    if n < 4:
        return []
    cycle = [(i, (i + 1) % n) for i in range(n)]
    reps: dict[tuple[int, ...], CubicGraph] = {}
    for chords in _chord_matchings(n):
        # The matching itself is the code for the identity labelling; a graph
        # whose labelling is already minimal is the representative.
        own = tuple(dict(chords + [(b, a) for a, b in chords])[v] for v in range(n))
        code = hamiltonian_canonical_form(n, cycle + chords)
        if code == own and code not in reps:
            reps[code] = CubicGraph(n, tuple(_norm(e) for e in cycle + chords))
    return [reps[c] for c in sorted(reps)]


def automorphisms(n: int, edges: Iterable[Edge], fixed_sets: Sequence[Sequence[int]] = ()) -> list[tuple[int, ...]]:
    """Vertex permutations preserving the edge multiset.

    Each set in ``fixed_sets`` must be mapped onto itself.
    """
    edges = [_norm(e) for e in edges]
    count: dict[Edge, int] = {}
    for e in edges:
        count[e] = count.get(e, 0) + 1
    adj = adjacency(n, edges)
    deg = [len(a) for a in adj]
    label = [0] * n
    for i, s in enumerate(fixed_sets, start=1):
        for v in s:
            label[v] = i
    perm = [-1] * n
    used = [False] * n
    out = []

    def ok(v: int) -> bool:
        img = perm[v]
        for w in set(adj[v]):
            if perm[w] >= 0 and count.get(_norm((img, perm[w])), 0) != count[_norm((v, w))]:
                return False
        return True

    def rec(v: int):
        if v == n:
            out.append(tuple(perm))
            return
        for img in range(n):
            if used[img] or deg[img] != deg[v] or label[img] != label[v]:
                continue
            perm[v] = img
            if ok(v):
                used[img] = True
                rec(v + 1)
                used[img] = False
            perm[v] = -1

    rec(0)
    return out
