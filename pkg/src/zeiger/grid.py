"""Zeiger puzzle data model: grids of arrow cells, fillings, and the rule checker.

A puzzle is a k x l grid where every cell carries an arrow (up, down, left or
right) and optionally a given number.  A filling assigns a positive integer to
every cell; it solves the puzzle when each cell's number equals the count of
distinct numbers among the cells its arrow points at.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional


class GridError(ValueError):
    """Malformed grid/filling text or an invalid grid."""


class Direction(IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3

    @property
    def letter(self) -> str:
        return "UDLR"[self.value]

    @classmethod
    def from_letter(cls, ch: str) -> "Direction":
        try:
            return cls("UDLR".index(ch))
        except ValueError:
            raise GridError(f"unknown direction letter {ch!r}") from None


# (drow, dcol) step for each direction, rows growing downward.
_STEP = {
    Direction.UP: (-1, 0),
    Direction.DOWN: (1, 0),
    Direction.LEFT: (0, -1),
    Direction.RIGHT: (0, 1),
}


@dataclass(frozen=True)
class Coord:
    """1-based cell coordinate; row 1 is the top row."""

    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class Cell:
    direction: Direction
    given: Optional[int] = None

    def __post_init__(self):
        if self.given is not None and self.given < 1:
            raise GridError(f"given must be positive, got {self.given}")


_TOKEN_RE = re.compile(r"^([UDLR])(\.|[1-9][0-9]*)$")


class Grid:
    """Immutable k x l Zeiger grid, validated on construction."""

    def __init__(self, cells: list[list[Cell]]):
        k = len(cells)
        if k < 2 or any(len(row) != len(cells[0]) for row in cells):
            raise GridError("grid must be rectangular with k >= 2 rows")
        l = len(cells[0])
        if l < 2:
            raise GridError("grid must have at least 2 columns")
        self.rows = k
        self.cols = l
        self.cells = tuple(tuple(row) for row in cells)
        self._validate()

    @property
    def max_value(self) -> int:
        """Largest value any cell can hold: max(k, l) - 1."""
        return max(self.rows, self.cols) - 1

    def cell(self, c: Coord) -> Cell:
        return self.cells[c.row - 1][c.col - 1]

    def coords(self):
        """All coordinates in row-major order."""
        for r in range(1, self.rows + 1):
            for c in range(1, self.cols + 1):
                yield Coord(r, c)

    def _validate(self):
        for c in self.coords():
            cell = self.cell(c)
            if cell.given is not None and cell.given > self.max_value:
                raise GridError(
                    f"given out of range at {c}: {cell.given} > {self.max_value}"
                )
            if not sightline(self, c):
                raise GridError(
                    f"empty sightline at {c}: {cell.direction.letter} arrow "
                    "points off the board"
                )

    def __eq__(self, other) -> bool:
        return isinstance(other, Grid) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"Grid({self.rows}x{self.cols})"


class Filling:
    """Full assignment of positive integers to a grid's cells."""

    def __init__(self, values: list[list[int]]):
        if not values or any(len(row) != len(values[0]) for row in values):
            raise GridError("filling must be rectangular")
        self.rows = len(values)
        self.cols = len(values[0])
        self.values = tuple(tuple(row) for row in values)
        for row in self.values:
            for v in row:
                if not isinstance(v, int) or v < 1:
                    raise GridError(f"filling values must be positive integers, got {v!r}")

    def value(self, c: Coord) -> int:
        return self.values[c.row - 1][c.col - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Filling) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Filling({self.rows}x{self.cols})"


def parse_grid(text: str) -> Grid:
    """Parse the .puzzle format: one line per row, tokens like ``D.`` or ``R4``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GridError("empty grid file")
    cells = []
    for r, line in enumerate(lines, start=1):
        row = []
        for c, tok in enumerate(line.split(), start=1):
            m = _TOKEN_RE.match(tok)
            if m is None:
                raise GridError(f"malformed token {tok!r} at ({r},{c})")
            direction = Direction.from_letter(m.group(1))
            given = None if m.group(2) == "." else int(m.group(2))
            row.append(Cell(direction, given))
        cells.append(row)
    if any(len(row) != len(cells[0]) for row in cells):
        raise GridError("ragged rows")
    return Grid(cells)


def serialize_grid(g: Grid) -> str:
    lines = []
    for row in g.cells:
        toks = [
            cell.direction.letter + ("." if cell.given is None else str(cell.given))
            for cell in row
        ]
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def parse_filling(text: str) -> Filling:
    """Parse the .solution format: one line per row of decimal integers."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GridError("empty filling file")
    values = []
    for r, line in enumerate(lines, start=1):
        row = []
        for c, tok in enumerate(line.split(), start=1):
            if not tok.isdigit() or int(tok) < 1:
                raise GridError(f"malformed value {tok!r} at ({r},{c})")
            row.append(int(tok))
        values.append(row)
    return Filling(values)


def serialize_filling(f: Filling) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in f.values) + "\n"


def sightline(g: Grid, c: Coord) -> list[Coord]:
    """Cells strictly beyond ``c`` in its arrow's direction, nearest first."""
    dr, dc = _STEP[g.cells[c.row - 1][c.col - 1].direction]
    out = []
    r, col = c.row + dr, c.col + dc
    while 1 <= r <= g.rows and 1 <= col <= g.cols:
        out.append(Coord(r, col))
        r += dr
        col += dc
    return out


def distinct_count(vs) -> int:
    """Number of different values in ``vs``."""
    return len(set(vs))


@dataclass(frozen=True)
class Violation:
    coord: Coord
    expected: int
    actual: int
    kind: str = "arrow"  # "arrow" or "given"

    def __str__(self) -> str:
        if self.kind == "given":
            return f"given mismatch at {self.coord}: expected {self.expected}, got {self.actual}"
        return f"arrow constraint at {self.coord}: expected {self.expected}, got {self.actual}"


def verify(g: Grid, f: Filling) -> list[Violation]:
    """Check a filling against the grid; empty list means it is a solution."""
    if (f.rows, f.cols) != (g.rows, g.cols):
        raise GridError(
            f"dimension mismatch: grid is {g.rows}x{g.cols}, filling is {f.rows}x{f.cols}"
        )
    violations = []
    for c in g.coords():
        given = g.cell(c).given
        if given is not None and f.value(c) != given:
            violations.append(Violation(c, given, f.value(c), kind="given"))
    for c in g.coords():
        expected = distinct_count(f.value(s) for s in sightline(g, c))
        if f.value(c) != expected:
            violations.append(Violation(c, expected, f.value(c)))
    return violations
