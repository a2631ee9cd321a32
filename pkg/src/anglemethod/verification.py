"""Regression checks over the reference matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import fixtures
from .angle_model import ConstraintSystem, load_system
from .exact_linalg import oracle_support_exists, row_space_support_vector, rows_from_dense
from .graphs import load_graph
from .patterns import interpret, pattern_matrix, remove_edge, sweep


@dataclass(frozen=True)
class FixtureSet:
    fig1: Sequence[Sequence[int]]
    fig3a: Sequence[Sequence[int]]
    fig3b: Sequence[Sequence[int]]
    figure4: str

    @classmethod
    def embedded(cls) -> FixtureSet:
        return cls(fixtures.FIG1, fixtures.FIG3A, fixtures.FIG3B, fixtures.figure4_text())

    @classmethod
    def from_dir(cls, path) -> FixtureSet:
        path = Path(path)
        mats = [load_system(path / f"{name}.json").matrix() for name in ("fig1", "fig3a", "fig3b")]
        return cls(*mats, (path / "figure4.txt").read_text())


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _pair_search(matrix) -> list[tuple[int, int, int]]:
    """Column pairs carrying a row-space vector, with the number of rows used."""
    rows = rows_from_dense(matrix)
    width = len(matrix[0])
    hits = []
    for a, b in itertools.combinations(range(width), 2):
        found = row_space_support_vector(rows, {a, b}, width)
        if found:
            hits.append((a, b, sum(1 for c in found[1] if c)))
    return hits


def _is_class(value: Fraction, residues: Sequence[Fraction]) -> bool:
    return value % 1 in residues


def check_fig1(matrix) -> list[CheckResult]:
    out = []
    m, width = len(matrix), len(matrix[0])
    last = width - 1
    hits = _pair_search(matrix)
    full = [(a, b) for a, b, used in hits if used == m and last in (a, b)]
    out.append(CheckResult(
        "fig1 support-2 theorem",
        bool(full),
        f"{len(hits)} of {width * (width - 1) // 2} pairs; all-hypothesis pairs with column {width}: "
        + ", ".join(f"{a + 1}-{b + 1}" for a, b in full),
    ))
    try:
        bis = interpret(matrix, ["bisector"] * m)
        mixed = interpret(matrix, [k.value for k in fixtures.FIG1_MIXED_KINDS])
    except ValueError as exc:
        return out + [CheckResult("fig1 interpretations", False, str(exc))]
    ok_bis = bis.value is not None and _is_class(bis.value.pi_multiple, (Fraction(0),))
    out.append(CheckResult(
        "fig1 all-bisector parallel",
        ok_bis,
        f"d{_label(bis.pair)} = {bis.value} (mod 2pi/{bis.scale})",
    ))
    ok_mixed = mixed.value is not None and _is_class(mixed.value.pi_multiple, (Fraction(1, 2),))
    out.append(CheckResult(
        "fig1 mixed reading perpendicular",
        ok_mixed,
        f"d{_label(mixed.pair)} = {mixed.value} (mod 2pi/{mixed.scale})",
    ))
    return out


def _label(pair) -> str:
    return "(none)" if pair is None else f"({pair[0] + 1}) - d({pair[1] + 1})"


def check_fig3(name: str, matrix) -> list[CheckResult]:
    rows = rows_from_dense(matrix)
    width = len(matrix[0])
    targets = {width - 2, width - 1}
    sparse = row_space_support_vector(rows, targets, width) is not None
    oracle = oracle_support_exists(rows, targets, width)
    system = ConstraintSystem.from_matrix(matrix, "bisector")
    res = interpret(matrix, ["bisector"] * len(matrix), dangling=sorted(targets))
    parallel = res.value is not None and _is_class(res.value.pi_multiple, (Fraction(0),))
    return [
        CheckResult(
            f"{name} columns {width - 1}-{width}",
            sparse and oracle,
            f"elimination={'present' if sparse else 'absent'} oracle={'present' if oracle else 'absent'}",
        ),
        CheckResult(
            f"{name} lines {width - 1} and {width} parallel",
            parallel and system.width == width,
            f"value {res.value} (mod 2pi/{res.scale})",
        ),
    ]


def check_figure4(text: str, fig3a, fig3b) -> list[CheckResult]:
    try:
        graph = load_graph(text)
        pattern = pattern_matrix(remove_edge(graph, fixtures.FIGURE4_REMOVED))
    except ValueError as exc:
        return [CheckResult("figure4 pattern", False, str(exc))]
    layout = [[1 if x else 0 for x in row] for row in pattern.incidence]
    same = all(
        [[1 if x else 0 for x in row] for row in mat] == layout for mat in (fig3a, fig3b)
    )
    report = sweep(pattern)
    return [
        CheckResult("figure4 layout matches fig3a/fig3b", same, f"{pattern.rows}x{pattern.width}"),
        CheckResult(
            "figure4 sweep",
            report.hit_count == 33 and report.total == 6561,
            f"hits: {report.hit_count} / {report.total} "
            f"(symmetry classes {report.symmetry_classes} under {report.automorphism_count} automorphisms)",
        ),
    ]


def run_checks(fx: FixtureSet | None = None) -> list[CheckResult]:
    fx = fx or FixtureSet.embedded()
    groups = [
        ("fig1", lambda: check_fig1(fx.fig1)),
        ("fig3a", lambda: check_fig3("fig3a", fx.fig3a)),
        ("fig3b", lambda: check_fig3("fig3b", fx.fig3b)),
        ("figure4", lambda: check_figure4(fx.figure4, fx.fig3a, fx.fig3b)),
    ]
    results = []
    for name, run in groups:
        try:
            results += run()
        except (ValueError, IndexError) as exc:
            results.append(CheckResult(name, False, f"malformed fixture: {exc}"))
    return results
