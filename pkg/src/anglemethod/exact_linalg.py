"""Exact rational sparse linear algebra.

Rows are sparse maps from column index to :class:`fractions.Fraction`.
Forward elimination tracks, for every produced row, the combination of
input rows that generates it, so each derived row can be audited exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class StructuralError(ValueError):
    """Rows of inconsistent width, bad permutations and similar misuse."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


@dataclass(frozen=True)
class SparseRow:
    """Immutable sparse row; zero entries are never stored."""

    width: int
    items: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        cleaned = {}
        for col, val in self.items:
            if not 0 <= col < self.width:
                raise StructuralError(f"column {col} outside width {self.width}")
            val = as_fraction(val)
            if val:
                cleaned[col] = cleaned.get(col, Fraction(0)) + val
        object.__setattr__(
            self, "items", tuple(sorted((c, v) for c, v in cleaned.items() if v))
        )

    @classmethod
    def from_mapping(cls, width: int, entries: Mapping[int, object]) -> SparseRow:
        return cls(width, tuple(entries.items()))

    @classmethod
    def from_dense(cls, values: Sequence) -> SparseRow:
        return cls(len(values), tuple((i, v) for i, v in enumerate(values) if v))

    @property
    def entries(self) -> dict[int, Fraction]:
        return dict(self.items)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.items)

    def __getitem__(self, col: int) -> Fraction:
        for c, v in self.items:
            if c == col:
                return v
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def dense(self) -> list[Fraction]:
        out = [Fraction(0)] * self.width
        for c, v in self.items:
            out[c] = v
        return out

    def __add__(self, other: SparseRow) -> SparseRow:
        if other.width != self.width:
            raise StructuralError("width mismatch")
        return SparseRow(self.width, self.items + other.items)

    def scale(self, factor) -> SparseRow:
        factor = as_fraction(factor)
        return SparseRow(self.width, tuple((c, v * factor) for c, v in self.items))

    def __neg__(self) -> SparseRow:
        return self.scale(-1)

    def __sub__(self, other: SparseRow) -> SparseRow:
        return self + (-other)


def combine(rows: Sequence[SparseRow], coefficients: Sequence[Fraction], width: int) -> SparseRow:
    """Return ``sum(c_i * row_i)``."""
    acc: dict[int, Fraction] = {}
    for row, coef in zip(rows, coefficients, strict=True):
        if not coef:
            continue
        for c, v in row.items:
            acc[c] = acc.get(c, Fraction(0)) + coef * v
    return SparseRow.from_mapping(width, acc)


def _common_width(rows: Sequence[SparseRow], width: int | None) -> int:
    widths = {r.width for r in rows}
    if width is not None:
        widths.add(width)
    if len(widths) > 1:
        raise StructuralError(f"rows have differing widths {sorted(widths)}")
    if not widths:
        raise StructuralError("width is required for an empty row list")
    return widths.pop()


@dataclass(frozen=True)
class EliminationResult:
    """Upper (echelon) rows in pivot order, zero rows last.

    ``combinations[k][i]`` is the multiplier of input row ``i`` in upper row
    ``k``. ``pivots`` holds ``(upper_row, column)`` pairs, and ``sources[k]``
    is the input row that was reduced into upper row ``k``.
    """

    width: int
    upper: tuple[SparseRow, ...]
    combinations: tuple[tuple[Fraction, ...], ...]
    column_order: tuple[int, ...]
    pivots: tuple[tuple[int, int], ...]
    sources: tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def zero_rows(self) -> list[int]:
        """Indices of upper rows that reduced to zero (dependency witnesses)."""
        return list(range(self.rank, len(self.upper)))


def forward_eliminate(
    rows: Sequence[SparseRow],
    column_order: Sequence[int] | None = None,
    width: int | None = None,
) -> EliminationResult:
    """Forward Gaussian elimination with columns visited in ``column_order``.

    For each column in turn the first remaining row (in input order) with a
    nonzero entry becomes the pivot and is subtracted from the rows below it.
    """
    width = _common_width(rows, width)
    order = tuple(range(width)) if column_order is None else tuple(column_order)
    if sorted(order) != list(range(width)):
        raise StructuralError("column_order must be a permutation of the columns")

    m = len(rows)
    work = [dict(r.items) for r in rows]
    combos = [{i: Fraction(1)} for i in range(m)]
    remaining = list(range(m))
    upper_idx: list[int] = []
    pivots: list[tuple[int, int]] = []

    for col in order:
        if not remaining:
            break
        pivot = next((i for i in remaining if col in work[i]), None)
        if pivot is None:
            continue
        remaining.remove(pivot)
        prow, pcombo = work[pivot], combos[pivot]
        pval = prow[col]
        for i in remaining:
            val = work[i].get(col)
            if val is None:
                continue
            f = val / pval
            target = work[i]
            for c, v in prow.items():
                nv = target.get(c, Fraction(0)) - f * v
                if nv:
                    target[c] = nv
                else:
                    target.pop(c, None)
            tc = combos[i]
            for r, v in pcombo.items():
                nv = tc.get(r, Fraction(0)) - f * v
                if nv:
                    tc[r] = nv
                else:
                    tc.pop(r, None)
        pivots.append((len(upper_idx), col))
        upper_idx.append(pivot)

    # Rows left over are zero; they stay in U as dependency witnesses.
    upper_idx.extend(remaining)

    zero = Fraction(0)
    upper = tuple(SparseRow.from_mapping(width, work[i]) for i in upper_idx)
    combinations = tuple(
        tuple(combos[i].get(r, zero) for r in range(m)) for i in upper_idx
    )
    return EliminationResult(
        width=width,
        upper=upper,
        combinations=combinations,
        column_order=order,
        pivots=tuple(pivots),
        sources=tuple(upper_idx),
    )


def rank(rows: Sequence[SparseRow], width: int | None = None) -> int:
    if not rows:
        return 0
    return forward_eliminate(rows, width=width).rank


def order_with_targets_last(width: int, target_columns: Iterable[int]) -> tuple[int, ...]:
    targets = sorted(set(target_columns))
    for t in targets:
        if not 0 <= t < width:
            raise StructuralError(f"target column {t} outside width {width}")
    tset = set(targets)
    return tuple(c for c in range(width) if c not in tset) + tuple(targets)


def support_vectors(
    result: EliminationResult, target_columns: Iterable[int]
) -> list[tuple[SparseRow, tuple[Fraction, ...]]]:
    """Upper rows whose pivot lies in ``target_columns``.

    When the targets were ordered last these rows form a basis of the
    row-space vectors supported inside the targets.
    """
    tset = set(target_columns)
    return [
        (result.upper[k], result.combinations[k])
        for k, col in result.pivots
        if col in tset and result.upper[k].support <= tset
    ]


def row_space_support_vector(
    rows: Sequence[SparseRow], target_columns: Iterable[int], width: int | None = None
) -> tuple[SparseRow, tuple[Fraction, ...]] | None:
    """First nonzero row-space vector supported inside ``target_columns``.

    Returns ``(vector, combination)`` or ``None`` when no such vector exists.
    """
    width = _common_width(rows, width)
    targets = set(target_columns)
    order = order_with_targets_last(width, targets)
    if not rows:
        return None
    found = support_vectors(forward_eliminate(rows, order, width), targets)
    return found[0] if found else None


# -- independent dense oracle -------------------------------------------------


def _dense_rref(matrix: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    mat = [list(r) for r in matrix]
    pivcols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivcols.append(c)
        r += 1
    return mat[:r], pivcols


def null_space_oracle(rows: Sequence[SparseRow], width: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : row . x = 0 for every row}`` by dense reduced echelon form.

    This is the orthogonal complement of the row space; a vector lies in the
    row space exactly when it is orthogonal to every basis vector returned.
    Kept deliberately separate from :func:`forward_eliminate` so it can serve
    as a cross-check.
    """
    width = _common_width(rows, width)
    reduced, pivcols = _dense_rref([r.dense() for r in rows], width)
    free = [c for c in range(width) if c not in pivcols]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * width
        x[fcol] = Fraction(1)
        for row, pc in zip(reduced, pivcols):
            x[pc] = -row[fcol]
        basis.append(x)
    return basis


def oracle_rank(rows: Sequence[SparseRow], width: int | None = None) -> int:
    width = _common_width(rows, width)
    return width - len(null_space_oracle(rows, width))


def oracle_support_exists(
    rows: Sequence[SparseRow], target_columns: Iterable[int], width: int | None = None
) -> bool:
    """Is there a nonzero row-space vector supported inside the targets?

    Such a vector ``y`` lives on the target coordinates and is orthogonal to
    the null space; it exists iff ``|C| > rank`` of the null basis restricted
    to ``C``.
    """
    width = _common_width(rows, width)
    targets = sorted(set(target_columns))
    basis = null_space_oracle(rows, width)
    restricted = [[vec[c] for c in targets] for vec in basis]
    _, piv = _dense_rref(restricted, len(targets))
    return len(targets) > len(piv)


# -- JSON exchange -------------------------------------------------------------


def _encode_rational(value: Fraction):
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def matrix_to_json(rows: Sequence[SparseRow], width: int | None = None) -> dict:
    width = _common_width(rows, width)
    return {
        "width": width,
        "rows": [[[c, _encode_rational(v)] for c, v in r.items] for r in rows],
    }


def matrix_from_json(data: dict | str) -> list[SparseRow]:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        width = int(data["width"])
        rows = [
            SparseRow(width, tuple((int(c), as_fraction(v)) for c, v in row))
            for row in data["rows"]
        ]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, StructuralError):
            raise
        raise StructuralError(f"malformed matrix JSON: {exc}") from exc
    return rows


def rows_from_dense(matrix: Sequence[Sequence]) -> list[SparseRow]:
    return [SparseRow.from_dense(r) for r in matrix]
