"""Embedded reference matrices.

``FIG1`` is the 7x11 matrix shared by the cyclic-quadrilateral circumcentre
theorem and the quadrilateral bisector theorem. ``FIG3A`` and ``FIG3B`` are
the two 8x13 matrices with identical nonzero layout (two cyclic
quadrilaterals; reflected parallel rays). ``FIGURE4_EDGES`` is the cubic
graph whose pattern matrix has that layout once edge ``(0, 7)`` is removed.
Column and row numbers in comments are 1-based, everything in code 0-based.
"""

from __future__ import annotations

from .angle_model import ConstraintSystem, Kind

FIG1 = (
    (-1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 2),
    (-1, -1, 0, 0, 0, 0, 0, 2, 0, 0, 0),
    (0, -1, 2, 0, 0, 0, 0, 0, -1, 0, 0),
    (0, 0, 2, -1, 0, 0, 0, 0, 0, -1, 0),
    (0, 0, 0, -1, -1, 0, 0, 2, 0, 0, 0),
    (0, 0, 0, 0, -1, 2, 0, 0, 0, -1, 0),
    (0, 0, 0, 0, 0, 2, -1, 0, -1, 0, 0),
)

FIG3A = (
    (-1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 2, 0),
    (-1, 2, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0),
    (0, 2, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0),
    (0, 0, -1, 2, 0, 0, 0, 0, 0, 0, -1, 0, 0),
    (0, 0, 0, 2, -1, 0, 0, 0, -1, 0, 0, 0, 0),
    (0, 0, 0, 0, -1, 2, 0, -1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 2, -1, 0, 0, 0, -1, 0, 0),
    (0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 2),
)

FIG3B = (
    (2, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, -1, 0),
    (2, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0),
    (0, -1, -1, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0),
    (0, 0, 2, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0),
    (0, 0, 0, -1, -1, 0, 0, 0, 2, 0, 0, 0, 0),
    (0, 0, 0, 0, -1, -1, 0, 2, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, -1, 2, 0, 0, 0, -1, 0, 0),
    (0, 0, 0, 0, 0, 0, -1, 0, 0, 2, 0, 0, -1),
)

# Hamiltonian cycle 0..7 first, then the chords, then the edge to remove.
FIGURE4_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
    (0, 5), (1, 4), (2, 7), (3, 6),
    (0, 7),
)
FIGURE4_REMOVED = (0, 7)

# Lines of the all-bisector reading are named A..K.
FIG1_NAMES = tuple("ABCDEFGHIJK")
FIG3_NAMES = tuple(str(i) for i in range(1, 14))

# Rows 1, 2, 3 and 6 are isosceles triangles in the circumcentre reading.
FIG1_MIXED_KINDS = (
    Kind.ISOSCELES, Kind.ISOSCELES, Kind.ISOSCELES, Kind.BISECTOR,
    Kind.BISECTOR, Kind.ISOSCELES, Kind.BISECTOR,
)


def fig1_system(kinds=Kind.BISECTOR) -> ConstraintSystem:
    return ConstraintSystem.from_matrix(FIG1, kinds, FIG1_NAMES)


def fig3a_system(kinds=Kind.ISOSCELES) -> ConstraintSystem:
    """Both quadrilaterals are inscribed, so every row is a chord."""
    return ConstraintSystem.from_matrix(FIG3A, kinds, FIG3_NAMES)


def fig3b_system(kinds=Kind.REFLECTION) -> ConstraintSystem:
    return ConstraintSystem.from_matrix(FIG3B, kinds, FIG3_NAMES)


def figure4_text() -> str:
    lines = [f"p {8} {len(FIGURE4_EDGES)}"]
    lines += [f"{u} {v}" for u, v in FIGURE4_EDGES]
    return "\n".join(lines) + "\n"
