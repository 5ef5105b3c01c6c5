"""Tile structures on an m x n grid and the ``.tile`` text format.

A tile is a (possibly separated) combinatorial rectangle: a set of row
indices R and column indices C whose cell set is exactly R x C.  A tile
structure partitions the whole grid into such tiles, numbered 1..s.

The text format is line based: optional comment lines starting with '#',
then a header line "m n", then exactly m lines of n whitespace-separated
tile ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

MAX_DIM = 64


class TileGridFormatError(ValueError):
    """Raised when a .tile text cannot be tokenized into an id grid."""


class TileGridContentError(ValueError):
    """Raised when a parsed id grid violates tile-structure invariants."""

    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(report.problems))
        self.report = report


@dataclass(frozen=True)
class Tile:
    """One tile: its 1-based id and sorted row/column index sets."""

    id: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(product(self.rows, self.cols))

    @property
    def size(self) -> int:
        return len(self.rows) * len(self.cols)


@dataclass(frozen=True)
class TileStructure:
    """An m x n grid partitioned into tiles, kept in both representations.

    ``tiles`` lists the index-set form sorted by id; ``cell_map`` is the
    grid of ids, row major.  The two must agree; ``validate`` checks.
    """

    m: int
    n: int
    tiles: tuple[Tile, ...]
    cell_map: tuple[tuple[int, ...], ...]

    @classmethod
    def from_grid(cls, grid: list[list[int]] | tuple[tuple[int, ...], ...]) -> TileStructure:
        """Build a structure from an id grid, reconstructing each tile's
        row and column index sets.  No invariants are enforced here; run
        ``validate`` (or use ``parse_tile_grid``) to check them."""
        cell_map = tuple(tuple(int(v) for v in row) for row in grid)
        m = len(cell_map)
        n = len(cell_map[0]) if m else 0
        by_id: dict[int, tuple[set[int], set[int]]] = {}
        for r, row in enumerate(cell_map):
            for c, tid in enumerate(row):
                rows, cols = by_id.setdefault(tid, (set(), set()))
                rows.add(r)
                cols.add(c)
        tiles = tuple(
            Tile(tid, tuple(sorted(rows)), tuple(sorted(cols)))
            for tid, (rows, cols) in sorted(by_id.items())
        )
        return cls(m, n, tiles, cell_map)

    @property
    def tile_count(self) -> int:
        return len(self.tiles)

    def tile(self, tid: int) -> Tile:
        for t in self.tiles:
            if t.id == tid:
                return t
        raise KeyError(f"no tile with id {tid}")


@dataclass(frozen=True)
class ValidationReport:
    """Plain list of invariant violations; empty means valid."""

    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(ts: TileStructure) -> ValidationReport:
    """Check every tile-structure invariant and report all violations.

    Checks grid shape and bounds, id contiguity (ids must be exactly
    1..s), agreement between tiles and cell_map, and that every tile's
    cell set is exactly rows x cols (each violation names the offending
    id and a counterexample cell).
    """
    problems: list[str] = []
    if ts.m < 1 or ts.n < 1:
        problems.append(f"grid dimensions must be positive, got {ts.m}x{ts.n}")
        return ValidationReport(tuple(problems))
    if ts.m > MAX_DIM or ts.n > MAX_DIM:
        problems.append(f"grid dimensions exceed the supported maximum {MAX_DIM}")
    if len(ts.cell_map) != ts.m or any(len(row) != ts.n for row in ts.cell_map):
        problems.append("cell_map shape does not match declared dimensions")
        return ValidationReport(tuple(problems))

    s = len(ts.tiles)
    ids = [t.id for t in ts.tiles]
    if ids != list(range(1, s + 1)):
        problems.append(f"tile ids are not contiguous 1..{s}: {sorted(set(ids))}")
    grid_ids = {tid for row in ts.cell_map for tid in row}
    if grid_ids != set(ids):
        problems.append(
            f"cell_map ids {sorted(grid_ids)} differ from tile list ids {sorted(set(ids))}"
        )

    cells_by_id: dict[int, set[tuple[int, int]]] = {}
    for r, row in enumerate(ts.cell_map):
        for c, tid in enumerate(row):
            cells_by_id.setdefault(tid, set()).add((r, c))

    for t in ts.tiles:
        if not t.rows or not t.cols:
            problems.append(f"tile {t.id} has an empty row or column set")
            continue
        if min(t.rows) < 0 or max(t.rows) >= ts.m or min(t.cols) < 0 or max(t.cols) >= ts.n:
            problems.append(f"tile {t.id} index sets fall outside the {ts.m}x{ts.n} grid")
            continue
        claimed = set(product(t.rows, t.cols))
        actual = cells_by_id.get(t.id, set())
        for cell in sorted(claimed - actual):
            problems.append(
                f"tile {t.id} is not a separated rectangle: cell {cell} of "
                f"rows x cols belongs to tile {ts.cell_map[cell[0]][cell[1]]}"
            )
            break
        extra = sorted(actual - claimed)
        if extra:
            problems.append(
                f"tile {t.id} is not a separated rectangle: cell {extra[0]} carries its id "
                f"but lies outside rows x cols"
            )
    return ValidationReport(tuple(problems))


def parse_tile_grid(text: str) -> TileStructure:
    """Parse .tile text into a validated TileStructure.

    Raises TileGridFormatError for token or shape problems and
    TileGridContentError (carrying the full report) when the grid is
    well formed but not a valid tile structure.
    """
    lines = [
        line
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise TileGridFormatError("empty input: expected an 'm n' header line")
    header = lines[0].split()
    if len(header) != 2:
        raise TileGridFormatError(f"header must be two integers 'm n', got {lines[0]!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise TileGridFormatError(f"header must be two integers 'm n', got {lines[0]!r}") from exc
    if not (1 <= m <= MAX_DIM and 1 <= n <= MAX_DIM):
        raise TileGridFormatError(
            f"dimensions must lie in 1..{MAX_DIM}, got m={m}, n={n}"
        )
    body = lines[1:]
    if len(body) != m:
        raise TileGridFormatError(f"expected {m} grid rows, found {len(body)}")
    grid: list[list[int]] = []
    for r, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != n:
            raise TileGridFormatError(f"row {r} has {len(tokens)} entries, expected {n}")
        row = []
        for tok in tokens:
            if not tok.isdigit() or int(tok) < 1:
                raise TileGridFormatError(f"row {r}: tile ids must be positive integers, got {tok!r}")
            row.append(int(tok))
        grid.append(row)
    ts = TileStructure.from_grid(grid)
    report = validate(ts)
    if not report.ok:
        raise TileGridContentError(report)
    return ts


def serialize(ts: TileStructure) -> str:
    """Canonical .tile text: header line then the id grid, LF terminated.

    Round-trips: parse_tile_grid(serialize(ts)) == ts for valid ts.
    """
    width = max(len(str(tid)) for row in ts.cell_map for tid in row)
    lines = [f"{ts.m} {ts.n}"]
    for row in ts.cell_map:
        lines.append(" ".join(str(tid).rjust(width) for tid in row))
    return "\n".join(lines) + "\n"
