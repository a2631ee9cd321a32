"""Random system generators shared by the test modules."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from anglemethod.angle_model import AngleModel, ConstraintSystem, ModelError, RhsValue
from anglemethod.exact_linalg import SparseRow, rank


def random_bisector_rows(rng: random.Random, m: int, n: int) -> list[SparseRow]:
    """``m`` rows of the form (2, -1, -1) over ``n`` columns."""
    rows = []
    for _ in range(m):
        cols = rng.sample(range(n), 3)
        rows.append(SparseRow.from_mapping(n, {cols[0]: 2, cols[1]: -1, cols[2]: -1}))
    return rows


def random_full_rank_rows(rng: random.Random, m: int, n: int, tries: int = 200) -> list[SparseRow] | None:
    for _ in range(tries):
        rows = random_bisector_rows(rng, m, n)
        if rank(rows) == m:
            return rows
    return None


def _apply(model: AngleModel, op):
    kind, args = op
    if kind == "angle":
        model.constrain_angle(*args)
    elif kind == "bisector":
        model.constrain_bisector(*args)
    elif kind == "isosceles":
        model.constrain_isosceles(*args)
    elif kind == "reflection":
        model.constrain_reflection(*args)
    elif kind == "right":
        model.constrain_right_angle(*args)
    elif kind == "chord":
        model.add_chord("O", *args)
    else:
        model.add_tangent("O", *args)


def _replay(n: int, ops) -> AngleModel:
    model = AngleModel()
    for i in range(n):
        model.add_line(f"L{i}")
    for op in ops:
        _apply(model, op)
    return model


def random_constructible_system(rng: random.Random) -> ConstraintSystem:
    """A mixed system built through the model API, rows kept independent."""
    n = rng.randint(3, 8)
    target = rng.randint(1, n - 1)
    ops = []
    for attempt in range(40):
        model = _replay(n, ops)
        if len(model.build().constraints) >= target:
            break
        pick = rng.sample(range(len(model.lines)), 3)
        kind = rng.choice(["angle", "bisector", "isosceles", "reflection", "right", "chord", "tangent"])
        if kind == "angle":
            value = RhsValue.symbol(f"phi{attempt}") + RhsValue.pi(rng.choice([0, 1, Fraction(1, 3)]))
            op = (kind, (pick[0], pick[1], value))
        elif kind in ("right",):
            op = (kind, (pick[0], pick[1]))
        elif kind == "chord":
            a, b = rng.sample("PQRS", 2)
            op = (kind, (pick[0], a, b))
        elif kind == "tangent":
            op = (kind, (pick[0], rng.choice("PQRS")))
        else:
            op = (kind, tuple(pick))
        try:
            trial = _replay(n, ops + [op]).build()
        except ModelError:
            continue
        if rank(trial.rows) == len(trial.constraints) < trial.width:
            ops.append(op)
    return _replay(n, ops).build()


def angle_residual(x: float) -> float:
    """Distance of ``x`` from the nearest multiple of 2*pi."""
    r = math.fmod(x, 2 * math.pi)
    return min(abs(r), abs(abs(r) - 2 * math.pi))
