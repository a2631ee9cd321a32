"""Angle constraints over signed line directions.

Every constraint is a linear equation in the line directions ``d_0..d_{n-1}``
taken modulo 2*pi. A model is built incrementally with :class:`AngleModel`
and frozen into a :class:`ConstraintSystem` for solving.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_linalg import SparseRow, StructuralError, as_fraction, row_space_support_vector


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class RhsValue:
    """``pi_multiple * pi + sum(coef * symbol)``."""

    pi_multiple: Fraction = Fraction(0)
    symbols: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pi_multiple", as_fraction(self.pi_multiple))
        acc: dict[str, Fraction] = {}
        for name, coef in self.symbols:
            acc[name] = acc.get(name, Fraction(0)) + as_fraction(coef)
        object.__setattr__(
            self, "symbols", tuple(sorted((k, v) for k, v in acc.items() if v))
        )

    @classmethod
    def pi(cls, multiple=1) -> RhsValue:
        return cls(as_fraction(multiple))

    @classmethod
    def symbol(cls, name: str, coef=1) -> RhsValue:
        return cls(Fraction(0), ((name, as_fraction(coef)),))

    @property
    def symbol_terms(self) -> dict[str, Fraction]:
        return dict(self.symbols)

    def __add__(self, other: RhsValue) -> RhsValue:
        return RhsValue(self.pi_multiple + other.pi_multiple, self.symbols + other.symbols)

    def scale(self, factor) -> RhsValue:
        f = as_fraction(factor)
        return RhsValue(self.pi_multiple * f, tuple((k, v * f) for k, v in self.symbols))

    def __neg__(self) -> RhsValue:
        return self.scale(-1)

    def __sub__(self, other: RhsValue) -> RhsValue:
        return self + (-other)

    def mod_2pi(self) -> RhsValue:
        """Canonical residue with the pi multiple in ``[0, 2)``."""
        return RhsValue(self.pi_multiple % 2, self.symbols)

    def evaluate(self, values: Mapping[str, float] | None = None) -> float:
        values = values or {}
        return float(self.pi_multiple) * math.pi + sum(
            float(c) * values[k] for k, c in self.symbols
        )

    def to_json(self) -> dict:
        return {"pi": str(self.pi_multiple), "symbols": {k: str(v) for k, v in self.symbols}}

    @classmethod
    def from_json(cls, data: Mapping | None) -> RhsValue:
        if not data:
            return cls()
        syms = data.get("symbols", {}) or {}
        return cls(as_fraction(str(data.get("pi", "0"))), tuple((k, as_fraction(str(v))) for k, v in syms.items()))

    def __str__(self) -> str:
        parts = []
        if self.pi_multiple:
            parts.append(f"{self.pi_multiple}*pi")
        for k, v in self.symbols:
            parts.append(k if v == 1 else f"{v}*{k}")
        return " + ".join(parts) if parts else "0"


ZERO = RhsValue()
HALF_PI = RhsValue.pi(Fraction(1, 2))


class Kind(str, enum.Enum):
    ANGLE = "angle"
    BISECTOR = "bisector"
    ISOSCELES = "isosceles"
    REFLECTION = "reflection"
    RIGHT_ANGLE = "right_angle"

    @property
    def arity(self) -> int:
        return 2 if self in (Kind.ANGLE, Kind.RIGHT_ANGLE) else 3


@dataclass(frozen=True)
class Constraint:
    """One hypothesis row.

    Two-line kinds read ``d_i - d_j = rhs`` with ``lines = (i, j)``; three-line
    kinds read ``2 d_k - d_i - d_j = rhs`` with ``lines = (k, i, j)``.
    """

    kind: Kind
    lines: tuple[int, ...]
    rhs: RhsValue = ZERO

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "lines", tuple(int(x) for x in self.lines))
        if len(self.lines) != self.kind.arity:
            raise ModelError(f"{self.kind.value} takes {self.kind.arity} lines")
        if len(set(self.lines)) != len(self.lines):
            raise ModelError(f"{self.kind.value} needs distinct lines, got {self.lines}")

    @property
    def coefficients(self) -> dict[int, int]:
        if self.kind.arity == 2:
            i, j = self.lines
            coeffs = {i: 1, j: -1}
        else:
            k, i, j = self.lines
            coeffs = {k: 2, i: -1, j: -1}
        assert sum(coeffs.values()) == 0
        return coeffs

    def row(self, width: int) -> SparseRow:
        return SparseRow.from_mapping(width, self.coefficients)


@dataclass(frozen=True)
class ConstraintSystem:
    lines: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.lines)) != len(self.lines):
            raise ModelError("line names must be unique")
        for c in self.constraints:
            if max(c.lines) >= len(self.lines) or min(c.lines) < 0:
                raise ModelError(f"constraint refers to unknown line: {c.lines}")

    @property
    def width(self) -> int:
        return len(self.lines)

    @property
    def rows(self) -> list[SparseRow]:
        return [c.row(self.width) for c in self.constraints]

    @property
    def rhs(self) -> list[RhsValue]:
        return [c.rhs for c in self.constraints]

    def matrix(self) -> list[list[int]]:
        out = []
        for c in self.constraints:
            dense = [0] * self.width
            for col, v in c.coefficients.items():
                dense[col] = v
            out.append(dense)
        return out

    def line_index(self, ref: int | str) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool):
            if not 0 <= ref < self.width:
                raise ModelError(f"line index {ref} out of range")
            return ref
        try:
            return self.lines.index(str(ref))
        except ValueError:
            raise ModelError(f"unknown line {ref!r}") from None

    def combine_rhs(self, combination: Sequence[Fraction]) -> RhsValue:
        total = ZERO
        for coef, value in zip(combination, self.rhs, strict=True):
            if coef:
                total = total + value.scale(coef)
        return total

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        out = []
        for c in self.constraints:
            entry = {"kind": c.kind.value, "lines": list(c.lines)}
            if c.kind is Kind.ANGLE or c.rhs != default_rhs(c.kind):
                entry["rhs"] = c.rhs.to_json()
            out.append(entry)
        return {"lines": list(self.lines), "constraints": out}

    @classmethod
    def from_json(cls, data: Mapping | str) -> ConstraintSystem:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            names = [str(x) for x in data["lines"]]
            constraints = []
            for entry in data["constraints"]:
                kind = Kind(entry["kind"])
                refs = [_resolve(names, r) for r in entry["lines"]]
                if kind is Kind.ANGLE and "rhs" not in entry:
                    raise ModelError("angle constraints need an rhs")
                rhs = RhsValue.from_json(entry["rhs"]) if "rhs" in entry else default_rhs(kind)
                constraints.append(Constraint(kind, tuple(refs), rhs))
        except ModelError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"malformed system JSON: {exc}") from exc
        return cls(tuple(names), tuple(constraints))

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence[int]],
        kinds: Sequence[Kind | str] | Kind | str = Kind.BISECTOR,
        names: Sequence[str] | None = None,
    ) -> ConstraintSystem:
        """Read a {2, -1, -1} matrix as bisector-family constraints."""
        width = len(matrix[0]) if matrix else len(names or ())
        names = tuple(names) if names is not None else tuple(str(i + 1) for i in range(width))
        if isinstance(kinds, (str, Kind)):
            kinds = [kinds] * len(matrix)
        if len(kinds) != len(matrix):
            raise ModelError("one kind per row is required")
        constraints = []
        for row, kind in zip(matrix, kinds):
            kind = Kind(kind)
            if kind.arity != 3:
                raise ModelError("from_matrix only reads three-line rows")
            twos = [c for c, v in enumerate(row) if v == 2]
            ones = [c for c, v in enumerate(row) if v == -1]
            if len(twos) != 1 or len(ones) != 2 or sum(1 for v in row if v) != 3:
                raise ModelError(f"row {list(row)} is not of the form (2, -1, -1)")
            constraints.append(Constraint(kind, (twos[0], ones[0], ones[1]), default_rhs(kind)))
        return cls(names, tuple(constraints))


def _resolve(names: Sequence[str], ref) -> int:
    if isinstance(ref, int) and not isinstance(ref, bool):
        if not 0 <= ref < len(names):
            raise ModelError(f"line index {ref} out of range")
        return ref
    try:
        return list(names).index(str(ref))
    except ValueError:
        raise ModelError(f"unknown line {ref!r}") from None


def default_rhs(kind: Kind) -> RhsValue:
    if kind in (Kind.ISOSCELES, Kind.RIGHT_ANGLE):
        return HALF_PI
    return ZERO


@dataclass
class Circle:
    name: str
    center_ray_lines: dict[str, int] = field(default_factory=dict)
    chords: list[tuple[int, str, str]] = field(default_factory=list)


class AngleModel:
    """Mutable builder for a :class:`ConstraintSystem`."""

    def __init__(self):
        self._lines: list[str] = []
        self._constraints: list[Constraint] = []
        self.circles: dict[str, Circle] = {}

    @property
    def lines(self) -> tuple[str, ...]:
        return tuple(self._lines)

    def add_line(self, name: str) -> int:
        if name in self._lines:
            raise ModelError(f"duplicate line name {name!r}")
        self._lines.append(name)
        return len(self._lines) - 1

    def _check(self, *ids: int):
        for i in ids:
            if not 0 <= i < len(self._lines):
                raise ModelError(f"unknown line id {i}")

    def _append(self, constraint: Constraint) -> Constraint:
        self._check(*constraint.lines)
        self._constraints.append(constraint)
        return constraint

    def constrain_angle(self, i: int, j: int, value: RhsValue) -> Constraint:
        return self._append(Constraint(Kind.ANGLE, (i, j), value))

    def constrain_right_angle(self, i: int, j: int) -> Constraint:
        return self._append(Constraint(Kind.RIGHT_ANGLE, (i, j), HALF_PI))

    def constrain_bisector(self, k: int, i: int, j: int) -> Constraint:
        return self._append(Constraint(Kind.BISECTOR, (k, i, j), ZERO))

    def constrain_isosceles(self, k: int, i: int, j: int) -> Constraint:
        return self._append(Constraint(Kind.ISOSCELES, (k, i, j), HALF_PI))

    def constrain_reflection(self, k: int, i: int, j: int) -> Constraint:
        return self._append(Constraint(Kind.REFLECTION, (k, i, j), ZERO))

    def circle(self, name: str) -> Circle:
        return self.circles.setdefault(name, Circle(name))

    def radial(self, circle: Circle | str, point: str) -> int:
        """Line from the circle's centre to ``point``, created on first use."""
        if isinstance(circle, str):
            circle = self.circle(circle)
        if not point:
            raise ModelError("point labels must be nonempty")
        if point not in circle.center_ray_lines:
            circle.center_ray_lines[point] = self.add_line(f"{circle.name}{point}")
        return circle.center_ray_lines[point]

    def add_chord(self, circle: Circle | str, chord: int, end_a: str, end_b: str) -> list[Constraint]:
        if isinstance(circle, str):
            circle = self.circle(circle)
        self._check(chord)
        ra = self.radial(circle, end_a)
        rb = self.radial(circle, end_b)
        circle.chords.append((chord, end_a, end_b))
        return [self.constrain_isosceles(chord, ra, rb)]

    def add_tangent(self, circle: Circle | str, tangent: int, point: str) -> Constraint:
        self._check(tangent)
        r = self.radial(circle, point)
        return self.constrain_right_angle(tangent, r)

    def build(self) -> ConstraintSystem:
        return ConstraintSystem(tuple(self._lines), tuple(self._constraints))


@dataclass(frozen=True)
class AngleSolution:
    """Solved ``d_i - d_j``.

    ``combination`` gives ``d_i - d_j`` as a rational combination of the
    hypotheses. ``scale`` is the lcm of its denominators: only
    ``scale * (d_i - d_j)`` is an integer combination, so in the modular
    reading the value is pinned down modulo ``2*pi / scale``.
    """

    value: RhsValue
    scale: Fraction
    combination: tuple[Fraction, ...]


def solve_angle_detail(system: ConstraintSystem, i: int | str, j: int | str) -> AngleSolution | None:
    i, j = system.line_index(i), system.line_index(j)
    if i == j:
        raise ModelError("an angle needs two different lines")
    if not system.constraints:
        return None
    found = row_space_support_vector(system.rows, {i, j}, system.width)
    if found is None:
        return None
    vector, combination = found
    a, b = vector[i], vector[j]
    if not (a and b) or a != -b:
        return None
    # Normalise so d_i carries coefficient +1.
    combo = tuple(c / a for c in combination)
    value = system.combine_rhs(combo)
    scale = math.lcm(*(c.denominator for c in combo))
    return AngleSolution(value.mod_2pi(), Fraction(scale), combo)


def solve_angle(system: ConstraintSystem, i: int | str, j: int | str) -> RhsValue | None:
    """Value of ``d_i - d_j`` (mod 2*pi) if the hypotheses determine it."""
    sol = solve_angle_detail(system, i, j)
    return None if sol is None else sol.value


def load_system(path) -> ConstraintSystem:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError(f"{path}: {exc}") from exc
    return ConstraintSystem.from_json(data)


__all__ = [
    "AngleModel",
    "AngleSolution",
    "Circle",
    "Constraint",
    "ConstraintSystem",
    "HALF_PI",
    "Kind",
    "ModelError",
    "RhsValue",
    "StructuralError",
    "ZERO",
    "default_rhs",
    "load_system",
    "solve_angle",
    "solve_angle_detail",
]
