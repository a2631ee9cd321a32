import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anglemethod.angle_model import Kind
from anglemethod.exact_linalg import combine, oracle_rank, oracle_support_exists, rows_from_dense
from anglemethod.fixtures import FIG1, FIG3A, FIG3B, FIGURE4_REMOVED, figure4_text
from anglemethod.graphs import GraphError, canonical_form, generate_cubic_hamiltonian, load_graph
from anglemethod.patterns import (
    PatternError,
    PatternGraph,
    assign,
    assigned_matrix,
    check_assignment,
    code_for_matrix,
    _apply,
    code_symmetries,
    derived_dot,
    derived_graph,
    format_code,
    interpret,
    iter_codes,
    parse_code,
    pattern_dot,
    pattern_from_matrix,
    pattern_matrix,
    remove_edge,
    sweep,
)

K4 = load_graph("p 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
PRISM = load_graph("p 6 9\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n0 3\n1 4\n2 5\n")
K33 = load_graph("p 6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n")


@pytest.fixture(scope="module")
def figure4():
    return pattern_matrix(remove_edge(load_graph(figure4_text()), FIGURE4_REMOVED))


def layout(matrix):
    return [[1 if x else 0 for x in row] for row in matrix]


def oracle_hits(pattern):
    return [c for c in iter_codes(pattern.rows) if oracle_support_exists(assign(pattern, c), pattern.dangling_columns)]


class TestRemoveEdge:
    def test_k4(self):
        for u, v in K4.edges:
            g = remove_edge(K4, (u, v))
            assert g.dangling == (u, v)
            assert g.hamiltonian

    def test_missing(self):
        with pytest.raises(GraphError):
            remove_edge(PRISM, (0, 5))

    def test_prism_square_vs_triangle_edge(self):
        def canon(pg):
            return min(canonical_form(6, pg.edges, marked) for marked in (pg.dangling, pg.dangling[::-1]))

        square = remove_edge(PRISM, (0, 3))
        triangle = remove_edge(PRISM, (0, 1))
        assert canon(square) != canon(triangle)
        assert canon(triangle) == canon(remove_edge(PRISM, (4, 5)))


class TestPatternMatrix:
    def test_k4(self):
        pm = pattern_matrix(remove_edge(K4, (0, 1)))
        assert (pm.rows, pm.width) == (4, 7)
        assert all(sum(r) == 3 for r in pm.incidence)
        assert pm.dangling_columns == (5, 6)

    def test_figure4_layout(self, figure4):
        assert (figure4.rows, figure4.width) == (8, 13)
        assert layout(figure4.incidence) == layout(FIG3A) == layout(FIG3B)

    def test_single_dangling_fig1(self):
        pm = pattern_from_matrix(FIG1)
        assert (pm.rows, pm.width) == (7, 11)
        counts = [sum(r[c] for r in pm.incidence) for c in range(11)]
        assert counts.count(2) == 10 and counts.count(1) == 1
        assert layout(pm.incidence) == layout(FIG1)

    @pytest.mark.parametrize("p", [2, 3, 4])
    def test_column_counts_every_generated_pattern(self, p):
        for g in generate_cubic_hamiltonian(p):
            for e in g.edges:
                pm = pattern_matrix(remove_edge(g, e))
                cols = [sum(r[c] for r in pm.incidence) for c in range(pm.width)]
                assert cols.count(1) == 2 and cols.count(2) == pm.width - 2
                assert pm.width == 3 * p + 1

    def test_bad_pattern_graph(self):
        with pytest.raises(PatternError):
            PatternGraph(4, K4.edges, (0,))


class TestAssign:
    def test_digit_zero_lowest_column(self, figure4):
        rows = assigned_matrix(figure4, (0,) * 8)
        for cols, row in zip(figure4.positions, rows):
            assert row[cols[0]] == 2
            assert sum(row) == 0

    def test_codes_for_fixtures(self, figure4):
        for mat in (FIG3A, FIG3B):
            code = code_for_matrix(figure4, mat)
            assert assigned_matrix(figure4, code) == [list(r) for r in mat]

    def test_length_mismatch(self, figure4):
        with pytest.raises(PatternError):
            assign(figure4, (0, 1))

    def test_code_strings(self):
        assert format_code(parse_code("02121010")) == "02121010"
        with pytest.raises(PatternError):
            parse_code("0123")

    @given(st.lists(st.integers(0, 2), min_size=8, max_size=8))
    def test_rows_sum_zero(self, code):
        pm = pattern_matrix(remove_edge(load_graph(figure4_text()), FIGURE4_REMOVED))
        for row in assign(pm, code):
            assert sum(row.dense()) == 0
            assert sorted(v for _, v in row.items) == [-1, -1, 2]


class TestCheckAssignment:
    def test_fig3a_code(self, figure4):
        thm = check_assignment(figure4, code_for_matrix(figure4, FIG3A))
        assert thm is not None
        assert thm.support == {11, 12}
        assert combine(rows_from_dense(FIG3A), thm.combination, 13) == thm.vector
        assert oracle_support_exists(rows_from_dense(FIG3A), {11, 12})

    @pytest.mark.parametrize("digit", [0, 1, 2])
    def test_constant_codes_match_oracle(self, figure4, digit):
        code = (digit,) * 8
        expected = oracle_support_exists(assign(figure4, code), {11, 12})
        assert (check_assignment(figure4, code) is not None) == expected

    def test_rank_deficient_component(self):
        # A theta component (three parallel edges) has two identical rows when
        # both 2s land on the same edge.
        edges = ((0, 1), (0, 1), (0, 1), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (2, 5))
        pg = PatternGraph(6, edges[:3] + edges[3:8], (2, 5))
        pm = pattern_matrix(pg)
        report = sweep(pm)
        assert len(report.rank_deficient) == 3 * 81
        for code in report.rank_deficient[:10]:
            assert oracle_rank(assign(pm, code)) < 6
        assert report.hit_count == len(oracle_hits(pm))


class TestSweep:
    def test_k4_frozen(self):
        pm = pattern_matrix(remove_edge(K4, (0, 1)))
        report = sweep(pm)
        assert report.total == 81
        assert report.hit_count == len(oracle_hits(pm)) == 0

    @pytest.mark.parametrize("graph", [PRISM, K33], ids=["prism", "k33"])
    @pytest.mark.slow
    def test_oracle_agreement_m6(self, graph):
        for e in graph.edges[:3]:
            pm = pattern_matrix(remove_edge(graph, e))
            report = sweep(pm)
            assert [c for c, _ in report.hits] == oracle_hits(pm)

    def test_k33_frozen(self):
        report = sweep(pattern_matrix(remove_edge(K33, (0, 3))))
        assert (report.hit_count, report.symmetry_classes) == (15, 5)

    def test_deterministic(self):
        pm = pattern_matrix(remove_edge(K33, (0, 3)))
        assert sweep(pm).to_json() == sweep(pm).to_json()

    def test_isomorphism_invariance(self):
        rng = random.Random(4)
        base = remove_edge(K33, (0, 3))
        count = sweep(pattern_matrix(base)).hit_count
        for _ in range(3):
            perm = list(range(6))
            rng.shuffle(perm)
            assert sweep(pattern_matrix(base.relabel(perm))).hit_count == count

    def test_hits_closed_under_symmetry(self):
        pm = pattern_matrix(remove_edge(K33, (0, 3)))
        hits = {c for c, _ in sweep(pm).hits}
        for sym in code_symmetries(pm):
            assert {_apply(sym, c) for c in hits} == hits

    def test_row_limit(self):
        big = generate_cubic_hamiltonian(5)[0]
        pm = pattern_matrix(remove_edge(big, big.edges[0]))
        from anglemethod import patterns

        with pytest.MonkeyPatch.context() as mp:
            mp.setattr(patterns, "MAX_SWEEP_ROWS", 8)
            with pytest.raises(PatternError):
                sweep(pm)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([g for p in (3, 4) for g in generate_cubic_hamiltonian(p)]), st.data())
def test_connected_patterns_full_rank(graph, data):
    # 2 = -1 mod 3, so the assigned matrix is -P mod 3, and P has no left
    # kernel mod 3 once a dangling column pins a connected component.
    edge = data.draw(st.sampled_from(graph.edges))
    pm = pattern_matrix(remove_edge(graph, edge))
    code = data.draw(st.lists(st.integers(0, 2), min_size=pm.rows, max_size=pm.rows))
    assert oracle_rank(assign(pm, code)) == pm.rows


class TestDerivedGraph:
    def test_fig3a_cyclic_quadrilaterals(self):
        g = derived_graph(FIG3A)
        cycles = g.simple_cycles()
        assert sorted(map(sorted, cycles)) == [[0, 4, 7, 8], [2, 6, 9, 10]]
        assert len(g.cycle_basis()) == 2

    def test_tree(self):
        g = derived_graph([[2, -1, -1, 0, 0], [0, -1, 2, -1, 0]])
        assert g.cycle_basis() == []
        assert g.simple_cycles() == []

    def test_parallel_rows_give_two_cycle(self):
        g = derived_graph([[2, -1, -1, 0], [0, -1, -1, 2]])
        assert g.simple_cycles() == [(1, 2)]

    @given(st.lists(st.integers(0, 2), min_size=8, max_size=8))
    def test_basis_size_identity(self, code):
        pm = pattern_matrix(remove_edge(load_graph(figure4_text()), FIGURE4_REMOVED))
        g = derived_graph(assigned_matrix(pm, code))
        assert len(g.cycle_basis()) == len(g.edges) - len(g.touched) + g.components()
        edges = set()
        for cyc in g.cycle_basis():
            assert len(cyc) >= 2
            edges |= set(cyc)
        assert edges <= set(range(8))

    def test_rejects_angle_rows(self):
        with pytest.raises(PatternError):
            derived_graph([[1, -1, 0]])


class TestInterpret:
    def test_fig1_all_bisector(self):
        report = interpret(FIG1, [Kind.BISECTOR] * 7)
        assert report.pair == (4, 10)
        assert report.value.pi_multiple == 0
        assert report.scale == 2

    def test_fig3a_all_isosceles(self):
        report = interpret(FIG3A, [Kind.ISOSCELES] * 8)
        expected = sum(report.combination, Fraction(0)) * Fraction(1, 2) % 2
        assert report.value.pi_multiple == expected
        assert report.pair == (11, 12)

    def test_bisector_equals_reflection(self):
        a = interpret(FIG3B, [Kind.BISECTOR] * 8)
        b = interpret(FIG3B, [Kind.REFLECTION] * 8)
        assert (a.pair, a.value, a.scale, a.combination) == (b.pair, b.value, b.scale, b.combination)

    def test_length_mismatch(self):
        with pytest.raises(PatternError):
            interpret(FIG1, [Kind.BISECTOR])

    def test_bad_kind(self):
        with pytest.raises(PatternError):
            interpret(FIG1, [Kind.ANGLE] * 7)


class TestDot:
    def test_pattern_dot_dashed(self):
        text = pattern_dot(remove_edge(K4, (0, 1)))
        assert text.startswith("graph pattern {")
        assert text.count("style=dashed") == 2
        assert text.count(" -- ") == 7

    def test_derived_dot(self):
        text = derived_dot(derived_graph(FIG3A), (11, 12))
        assert text.count(" -- ") == 8
        assert 'c11 [label="12" style=dashed]' in text
