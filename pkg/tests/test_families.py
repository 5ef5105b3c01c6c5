"""Built-in tile structure families."""

import numpy as np
import pytest

from tileupb import (
    build_upb,
    example1,
    extend_columns,
    fig2,
    five_tile,
    is_u_tile,
    prop2,
    prop3,
    validate,
)


class TestFixedGrids:
    def test_example_grid(self):
        assert example1().cell_map == (
            (1, 1, 2, 3),
            (6, 4, 6, 3),
            (6, 4, 6, 3),
            (5, 4, 2, 5),
        )

    def test_refuted_grid(self):
        assert fig2().cell_map == (
            (1, 1, 2, 2),
            (3, 4, 4, 3),
            (5, 4, 4, 5),
            (6, 6, 6, 6),
        )


class TestRingFamily:
    @pytest.mark.parametrize(
        "m,n", [(m, n) for m in range(3, 9) for n in range(m, 11)]
    )
    def test_valid_u_tile_with_expected_counts(self, m, n):
        ts = prop2(m, n)
        assert validate(ts).ok
        expected_tiles = 2 * m - 3 if m % 2 == 0 else 2 * m - 1
        assert ts.tile_count == expected_tiles
        assert is_u_tile(ts).is_u_tile
        assert len(build_upb(ts).states) == m * n - 4 * ((m - 1) // 2)

    def test_smallest_case_is_the_five_tile_square(self):
        assert prop2(3, 3).cell_map == five_tile(3, 3).cell_map

    def test_four_by_four_ring_plus_center(self):
        assert prop2(4, 4).cell_map == (
            (1, 1, 1, 2),
            (4, 5, 5, 2),
            (4, 5, 5, 2),
            (4, 3, 3, 3),
        )

    def test_rejects_bad_dimensions(self):
        with pytest.raises(ValueError):
            prop2(2, 5)
        with pytest.raises(ValueError):
            prop2(5, 4)


class TestTileCountFamily:
    @pytest.mark.parametrize("m", range(4, 8))
    def test_every_count_from_five_to_two_m(self, m):
        for t in range(5, 2 * m + 1):
            ts = prop3(m, t)
            assert validate(ts).ok, (m, t)
            assert ts.tile_count == t
            assert is_u_tile(ts).is_u_tile, (m, t)
            assert len(build_upb(ts).states) == m * m - t + 1

    def test_four_by_four_seeds(self):
        assert prop3(4, 5).cell_map == (
            (1, 1, 1, 2),
            (4, 5, 5, 2),
            (4, 5, 5, 2),
            (4, 3, 3, 3),
        )
        assert prop3(4, 8).tile_count == 8

    def test_rejects_out_of_range_counts(self):
        with pytest.raises(ValueError):
            prop3(4, 4)
        with pytest.raises(ValueError):
            prop3(4, 9)
        with pytest.raises(ValueError):
            prop3(3, 5)


class TestFiveTileFamily:
    @pytest.mark.parametrize("m", range(3, 9))
    def test_always_five_tiles(self, m):
        for n in range(m, 9):
            ts = five_tile(m, n)
            assert validate(ts).ok
            assert ts.tile_count == 5
            assert is_u_tile(ts).is_u_tile
            assert len(build_upb(ts).states) == m * n - 4

    def test_rejects_dimensions_below_three(self):
        with pytest.raises(ValueError):
            five_tile(2, 4)


class TestExtendColumns:
    def test_identity_when_width_matches(self):
        ts = five_tile(3, 4)
        assert extend_columns(ts, 4).cell_map == ts.cell_map

    def test_duplicates_the_last_column(self):
        ts = five_tile(3, 3)
        wider = extend_columns(ts, 5)
        assert wider.n == 5
        assert validate(wider).ok
        for row, wide_row in zip(ts.cell_map, wider.cell_map):
            assert wide_row == row + (row[-1],) * 2

    def test_preserves_the_u_tile_property_on_the_five_tile_family(self):
        wider = extend_columns(five_tile(4, 4), 7)
        assert is_u_tile(wider).is_u_tile

    def test_rejects_shrinking(self):
        with pytest.raises(ValueError):
            extend_columns(five_tile(3, 4), 3)


def _four_row_listing(n):
    """Kept states of the 4 x n ring basis written out longhand, grouped
    by tile support: the row strips carry (n-1)-point Fourier vectors,
    the 3-cell columns 3-point ones, and the 2 x (n-2) middle block pairs
    (|1>+|2>) and (|1>-|2>) with (n-2)-point vectors."""

    def w(p, e):
        return np.exp(2j * np.pi * e / p)

    def col_vec(p, i, js, dim):
        v = np.zeros(dim, dtype=complex)
        for j in js:
            v[j] = w(p, i * j)
        return v

    unit0 = np.zeros(4, dtype=complex)
    unit0[0] = 1
    unit3 = np.zeros(4, dtype=complex)
    unit3[3] = 1
    mid_plus = np.zeros(4, dtype=complex)
    mid_plus[1] = mid_plus[2] = 1
    mid_minus = np.zeros(4, dtype=complex)
    mid_minus[1], mid_minus[2] = 1, -1

    blocks = {}
    blocks[(0,), tuple(range(n - 1))] = [
        np.outer(unit0, col_vec(n - 1, i, range(n - 1), n)) for i in range(1, n - 1)
    ]
    blocks[(0, 1, 2), (n - 1,)] = [
        np.outer(col_vec(3, i, range(3), 4), _unit(n - 1, n)) for i in (1, 2)
    ]
    blocks[(3,), tuple(range(1, n))] = [
        np.outer(unit3, col_vec(n - 1, i, range(1, n), n)) for i in range(1, n - 1)
    ]
    blocks[(1, 2, 3), (0,)] = [
        np.outer(col_vec(3, i, range(1, 4), 4), _unit(0, n)) for i in (1, 2)
    ]
    blocks[(1, 2), tuple(range(1, n - 1))] = [
        np.outer(mid_plus, col_vec(n - 2, i, range(1, n - 1), n))
        for i in range(1, n - 2)
    ] + [
        np.outer(mid_minus, col_vec(n - 2, i, range(1, n - 1), n))
        for i in range(0, n - 2)
    ]
    return blocks


def _unit(i, dim):
    v = np.zeros(dim, dtype=complex)
    v[i] = 1
    return v


class TestFourRowListing:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_kept_states_span_the_reference_listing_tile_by_tile(self, n):
        ts = prop2(4, n)
        upb = build_upb(ts)
        kept = {}
        for state, label in zip(upb.states, upb.state_labels()):
            if label == ("stopper",):
                continue
            kept.setdefault(label[0], []).append(state.matrix.reshape(-1))
        listing = _four_row_listing(n)
        assert len(kept) == len(listing) == 5
        for tid, vectors in kept.items():
            tile = ts.tile(tid)
            reference = listing[tile.rows, tile.cols]
            assert len(reference) == len(vectors)
            ours = np.array(vectors)
            both = np.vstack([ours, [mat.reshape(-1) for mat in reference]])
            rank = np.linalg.matrix_rank(ours)
            assert rank == len(vectors)
            assert np.linalg.matrix_rank(both) == rank
