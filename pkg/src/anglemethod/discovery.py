"""Theorem search over column subsets of a constraint system.

A theorem is a row-space vector of the hypotheses. For every candidate
column set ``C`` the columns are reordered so ``C`` comes last, the system is
eliminated, and the echelon rows whose pivot falls in ``C`` are the
row-space vectors supported inside ``C``.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .angle_model import ConstraintSystem, RhsValue
from .exact_linalg import SparseRow, combine, forward_eliminate, support_vectors

log = logging.getLogger(__name__)

DEFAULT_SUBSET_CAP = 200_000


class DiscoveryError(ValueError):
    pass


class BudgetExceeded(DiscoveryError):
    """Exhaustive search would exceed the subset cap."""


def canonicalize(vector: SparseRow) -> SparseRow:
    """Coprime integer multiple of ``vector`` whose first nonzero entry is positive."""
    if not vector:
        raise ValueError("cannot canonicalize the zero vector")
    return vector.scale(canonical_factor(vector))


def canonical_factor(vector: SparseRow) -> Fraction:
    values = [v for _, v in vector.items]
    lcm = math.lcm(*(v.denominator for v in values))
    g = math.gcd(*(int(v * lcm) for v in values))
    factor = Fraction(lcm, g)
    return -factor if values[0] < 0 else factor


@dataclass(frozen=True, order=True)
class InterestScore:
    hypotheses_used_count: int
    support_size: int

    def sort_key(self) -> tuple[int, int]:
        # More hypotheses first, then fewer nonzero coefficients.
        return (-self.hypotheses_used_count, self.support_size)

    def beats(self, other: InterestScore) -> bool:
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class Theorem:
    vector: SparseRow
    combination: tuple[Fraction, ...]
    value: RhsValue

    @property
    def support(self) -> frozenset[int]:
        return self.vector.support

    @property
    def hypotheses_used(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.combination) if c)

    @property
    def absolute(self) -> bool:
        """Support 1: a single line direction is fixed outright."""
        return len(self.vector) == 1

    def dense_vector(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.vector.dense())

    def to_json(self) -> dict:
        return {
            "vector": list(self.dense_vector()),
            "support": sorted(self.support),
            "combination": [str(c) for c in self.combination],
            "value": self.value.to_json(),
            "score": [len(self.hypotheses_used), len(self.support)],
        }


def make_theorem(system: ConstraintSystem, vector: SparseRow, combination: Sequence[Fraction]) -> Theorem:
    f = canonical_factor(vector)
    combo = tuple(c * f for c in combination)
    canon = vector.scale(f)
    if combine(system.rows, combo, system.width) != canon:
        raise AssertionError("theorem combination does not reproduce its vector")
    return Theorem(canon, combo, system.combine_rhs(combo).mod_2pi())


def score(theorem: Theorem) -> InterestScore:
    return InterestScore(len(theorem.hypotheses_used), len(theorem.support))


def theorem_sort_key(theorem: Theorem):
    return (score(theorem).sort_key(), theorem.dense_vector())


@dataclass(frozen=True)
class SearchStrategy:
    mode: str = "exhaustive"
    seed: int = 0
    max_subsets: int = DEFAULT_SUBSET_CAP

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise DiscoveryError(f"unknown search mode {self.mode!r}")
        if self.max_subsets <= 0:
            raise DiscoveryError("budget must be positive")

    @classmethod
    def exhaustive(cls, cap: int = DEFAULT_SUBSET_CAP) -> SearchStrategy:
        return cls("exhaustive", 0, cap)

    @classmethod
    def random_permutations(cls, seed: int, budget: int) -> SearchStrategy:
        return cls("random", seed, budget)


def subset_size(system: ConstraintSystem) -> int:
    return system.width - len(system.constraints) + 1


def _orders(system: ConstraintSystem, strategy: SearchStrategy) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    n = system.width
    k = subset_size(system)
    if strategy.mode == "exhaustive":
        count = math.comb(n, k)
        if count > strategy.max_subsets:
            raise BudgetExceeded(
                f"{count} column subsets of size {k} exceed the cap of {strategy.max_subsets}; "
                "use random mode with a seed and budget"
            )
        for subset in combinations(range(n), k):
            chosen = set(subset)
            yield tuple(c for c in range(n) if c not in chosen) + subset, subset
    else:
        rng = random.Random(strategy.seed)
        cols = list(range(n))
        for _ in range(strategy.max_subsets):
            rng.shuffle(cols)
            order = tuple(cols)
            yield order, order[n - k:]


def dependency_certificates(system: ConstraintSystem) -> list[tuple[Fraction, ...]]:
    """Combinations of hypotheses that vanish; empty when rows are independent."""
    result = forward_eliminate(system.rows, width=system.width)
    return [result.combinations[k] for k in result.zero_rows()]


def discover(
    system: ConstraintSystem,
    strategy: SearchStrategy | None = None,
    min_hypotheses: int = 1,
    max_support: int | None = None,
) -> list[Theorem]:
    """Search column sets of size ``n - m + 1`` for row-space vectors.

    Returns deduplicated theorems sorted by interest, then by canonical vector.
    """
    strategy = strategy or SearchStrategy.exhaustive()
    m, n = len(system.constraints), system.width
    if m == 0:
        raise DiscoveryError("system has no hypotheses")
    if m > n - 1:
        raise DiscoveryError(
            f"{m} hypotheses over {n} lines exceed the {n - 1}-dimensional sum-zero space"
        )
    max_support = n if max_support is None else max_support

    deps = dependency_certificates(system)
    if deps:
        log.warning("hypotheses are dependent: %d zero combination(s)", len(deps))

    rows = system.rows
    found: dict[SparseRow, Theorem] = {}
    for order, subset in _orders(system, strategy):
        elim = forward_eliminate(rows, order, n)
        for vector, combo in support_vectors(elim, subset):
            if len(vector) > max_support:
                continue
            thm = make_theorem(system, vector, combo)
            if len(thm.hypotheses_used) < min_hypotheses:
                continue
            found.setdefault(thm.vector, thm)
    return sorted(found.values(), key=theorem_sort_key)


def report_json(theorems: Sequence[Theorem]) -> list[dict]:
    return [t.to_json() for t in theorems]
