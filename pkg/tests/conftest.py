"""Shared oracles and generators.

Everything here recomputes expected values from first principles with
deliberately naive algorithms (set arithmetic, explicit loops, full
Kronecker products) so the library's vectorized implementations are
checked against independent code paths.
"""

import itertools

import numpy as np
import pytest

from tileupb import TileStructure


def structure_from_grid(grid):
    return TileStructure.from_grid(grid)


# ---------------------------------------------------------------------------
# Combinatorial oracles


def brute_special_rectangles(ts):
    """All tile unions whose cells form a full row-set x column-set
    product, as (ids, rows, cols) triples, by set arithmetic."""
    found = []
    for k in range(2, ts.tile_count + 1):
        for combo in itertools.combinations(ts.tiles, k):
            cells = set()
            for tile in combo:
                cells |= set(tile.cells)
            rows = tuple(sorted({r for r, _ in cells}))
            cols = tuple(sorted({c for _, c in cells}))
            if cells == {(r, c) for r in rows for c in cols}:
                found.append((tuple(t.id for t in combo), rows, cols))
    return found


def brute_is_u_tile(ts):
    """Definitional check: no special rectangle may split into two
    groups of tiles with disjoint row unions or disjoint column
    unions."""
    for ids, _rows, _cols in brute_special_rectangles(ts):
        tiles = [ts.tile(i) for i in ids]
        for axis in ("row", "column"):
            sets = [set(t.rows if axis == "row" else t.cols) for t in tiles]
            k = len(tiles)
            for mask in range(1, 2 ** k - 1):
                one = set().union(*(sets[i] for i in range(k) if mask >> i & 1))
                two = set().union(*(sets[i] for i in range(k) if not mask >> i & 1))
                if not one & two:
                    return False
    return True


# ---------------------------------------------------------------------------
# Linear-algebra oracles


def kron_vector(state):
    """Flatten a state to the mn-dimensional vector by explicit
    Kronecker product (product states) or row-major matrix flattening."""
    if hasattr(state, "a_vec"):
        return np.kron(state.a_vec, state.b_vec)
    return np.asarray(state.matrix).reshape(-1)


def brute_inner(s1, s2):
    return complex(np.vdot(kron_vector(s1), kron_vector(s2)))


def brute_tile_matrices(tile, m, n):
    """The tile's full orthogonal family as grid matrices, built cell by
    cell, in (k, l) row-major order."""
    p, q = len(tile.rows), len(tile.cols)
    out = []
    for k in range(p):
        for l in range(q):
            mat = np.zeros((m, n), dtype=complex)
            for e, r in enumerate(tile.rows):
                for f, c in enumerate(tile.cols):
                    mat[r, c] = np.exp(2j * np.pi * k * e / p) * np.exp(2j * np.pi * l * f / q)
            out.append(mat)
    return out


def brute_partial_transpose(rho, da, db):
    out = np.zeros_like(rho)
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    out[i * db + j, k * db + l] = rho[i * db + l, k * db + j]
    return out


def brute_seesaw_objective(states, a, b):
    ab = np.kron(a, b)
    return float(sum(abs(np.vdot(kron_vector(s), ab)) ** 2 for s in states))


def brute_composite_apply(op, party, amps):
    """Apply a one-party operator through the full Kronecker lift on the
    (A, a, B, b) joint vector."""
    m, n, da, db = amps.shape
    vec = amps.transpose(0, 2, 1, 3).reshape(-1)
    if party == "alice":
        lifted = np.kron(op, np.eye(n * db))
    else:
        lifted = np.kron(np.eye(m * da), op)
    out = lifted @ vec
    return out.reshape(m, da, n, db).transpose(0, 2, 1, 3)


# ---------------------------------------------------------------------------
# Structure generators


def _free_rect(grid, rows, cols):
    return all(grid[r][c] == 0 for r in rows for c in cols)


def _paint(grid, rows, cols, tid):
    for r in rows:
        for c in cols:
            grid[r][c] = tid


def enumerate_all_structures(m, n, max_tiles):
    """Every partition of the grid into separated rectangles with at
    most max_tiles parts, each labeled once in discovery order.

    The tile covering the first free cell (row-major) is forced to have
    that cell as its minimum row and column, so each partition appears
    exactly once.
    """
    grid = [[0] * n for _ in range(m)]
    out = []

    def first_free():
        for r in range(m):
            for c in range(n):
                if grid[r][c] == 0:
                    return r, c
        return None

    def rec(next_id):
        pos = first_free()
        if pos is None:
            out.append(tuple(tuple(row) for row in grid))
            return
        if next_id > max_tiles:
            return
        r, c = pos
        later_rows = list(range(r + 1, m))
        later_cols = list(range(c + 1, n))
        for rmask in range(2 ** len(later_rows)):
            rows = [r] + [later_rows[i] for i in range(len(later_rows)) if rmask >> i & 1]
            for cmask in range(2 ** len(later_cols)):
                cols = [c] + [later_cols[i] for i in range(len(later_cols)) if cmask >> i & 1]
                if not _free_rect(grid, rows, cols):
                    continue
                _paint(grid, rows, cols, next_id)
                rec(next_id + 1)
                _paint(grid, rows, cols, 0)

    rec(1)
    return out


def random_structure(rng, m, n, grow=0.5):
    """One random partition into separated rectangles, grown greedily
    from each first free cell."""
    grid = [[0] * n for _ in range(m)]
    tid = 0
    while True:
        pos = next(((r, c) for r in range(m) for c in range(n) if grid[r][c] == 0), None)
        if pos is None:
            break
        tid += 1
        r, c = pos
        rows, cols = [r], [c]
        options = [("r", i) for i in range(r + 1, m)] + [("c", j) for j in range(c + 1, n)]
        order = rng.permutation(len(options))
        for k in order:
            kind, index = options[k]
            if rng.random() >= grow:
                continue
            trial_rows = rows + [index] if kind == "r" else rows
            trial_cols = cols + [index] if kind == "c" else cols
            if _free_rect(grid, trial_rows, trial_cols):
                rows, cols = trial_rows, trial_cols
        _paint(grid, rows, cols, tid)
    return tuple(tuple(row) for row in grid)


@pytest.fixture(scope="session")
def all_3x3_structures():
    return enumerate_all_structures(3, 3, max_tiles=6)
