"""Bipartite states as coefficient matrices, tile bases, and UPB assembly.

A pure bipartite state sum_ij m_ij |i>|j> is stored as its m x n matrix
M, so <psi1|psi2> = tr(M1^dag M2) and |psi> is a product state exactly
when rank(M) = 1.  States are deliberately left unnormalized; modules
that need probabilities normalize locally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Tile, TileStructure
from .jsonio import matrix_to_pairs, pairs_to_matrix, pairs_to_vector, vector_to_pairs

__all__ = [
    "BipartiteState",
    "ProductState",
    "UPBSet",
    "NotUTileError",
    "inner_product",
    "matrix_rank",
    "tile_basis",
    "stopper",
    "build_copb",
    "build_upb",
    "upb_state_labels",
]

STOPPER_LABEL = ("stopper",)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A bipartite pure state held as its m x n coefficient matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    def to_json_dict(self) -> dict:
        return {"matrix": matrix_to_pairs(self.matrix)}


@dataclass(frozen=True, eq=False)
class ProductState:
    """A product state |a>|b>, stored by its two factor vectors."""

    a_vec: np.ndarray
    b_vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a_vec", np.asarray(self.a_vec, dtype=complex))
        object.__setattr__(self, "b_vec", np.asarray(self.b_vec, dtype=complex))

    @property
    def matrix(self) -> np.ndarray:
        return np.outer(self.a_vec, self.b_vec)

    def to_bipartite(self) -> BipartiteState:
        return BipartiteState(self.matrix)

    def to_json_dict(self) -> dict:
        return {"a": vector_to_pairs(self.a_vec), "b": vector_to_pairs(self.b_vec)}

    @classmethod
    def from_json_dict(cls, data: dict) -> ProductState:
        return cls(pairs_to_vector(data["a"]), pairs_to_vector(data["b"]))


def state_matrix(state) -> np.ndarray:
    """Coefficient matrix of a BipartiteState, ProductState, or array."""
    if isinstance(state, ProductState):
        return state.matrix
    if isinstance(state, BipartiteState):
        return state.matrix
    return np.asarray(state, dtype=complex)


def inner_product(s1, s2) -> complex:
    """<s1|s2> = tr(M1^dag M2), antilinear in the first argument."""
    m1 = state_matrix(s1)
    m2 = state_matrix(s2)
    if m1.shape != m2.shape:
        raise ValueError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    return complex(np.vdot(m1, m2))


def matrix_rank(state, tol: float = 1e-10) -> int:
    """Numerical rank: singular values above tol times the largest."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sv = np.linalg.svd(state_matrix(state), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def tile_basis(tile: Tile, m: int, n: int) -> list[ProductState]:
    """The p*q orthogonal product states of one tile.

    With rows r_0 < ... < r_{p-1} and cols c_0 < ... < c_{q-1}, state
    (k, l) has factors sum_e w_p^{ke} |r_e> and sum_e w_q^{le} |c_e>
    where w_k = exp(2 pi i / k).  States come in row-major (k, l) order;
    (0, 0) is the all-ones state on the tile.
    """
    p, q = len(tile.rows), len(tile.cols)
    states = []
    for k in range(p):
        a = np.zeros(m, dtype=complex)
        a[list(tile.rows)] = np.exp(2j * np.pi * k * np.arange(p) / p)
        for l in range(q):
            b = np.zeros(n, dtype=complex)
            b[list(tile.cols)] = np.exp(2j * np.pi * l * np.arange(q) / q)
            states.append(ProductState(a, b))
    return states


def stopper(m: int, n: int) -> ProductState:
    """The all-ones product state (sum_e |e>)(sum_j |j>)."""
    if m < 1 or n < 1:
        raise ValueError("dimensions must be positive")
    return ProductState(np.ones(m, dtype=complex), np.ones(n, dtype=complex))


def build_copb(ts: TileStructure) -> list[ProductState]:
    """Complete orthogonal product basis: all tile bases in id order."""
    states: list[ProductState] = []
    for tile in ts.tiles:
        states.extend(tile_basis(tile, ts.m, ts.n))
    return states


class NotUTileError(ValueError):
    """Raised by build_upb(check=True) on a structure that fails the
    U-tile test; carries the verdict with its witness."""

    def __init__(self, verdict):
        w = verdict.witness
        super().__init__(
            f"not a U-tile structure: special rectangle {w.rectangle.tile_ids} splits "
            f"into {w.part1} | {w.part2} on the {w.axis} axis"
        )
        self.verdict = verdict


@dataclass(frozen=True, eq=False)
class UPBSet:
    """An ordered product-state set built from a tile structure.

    ``states`` holds, tile by tile in id order, every tile-basis state
    except the tile's (0,0) all-ones state, followed by the stopper;
    ``missing`` records the s omitted (0,0) states.
    """

    states: tuple[ProductState, ...]
    missing: tuple[ProductState, ...]
    stopper: ProductState
    origin: TileStructure

    @property
    def m(self) -> int:
        return self.origin.m

    @property
    def n(self) -> int:
        return self.origin.n

    def state_labels(self) -> list[tuple]:
        """Per-state labels aligned with ``states``: (tile_id, k, l)
        triples for kept tile-basis states, then the stopper label."""
        return upb_state_labels(self.origin)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "states": [s.to_json_dict() for s in self.states],
            "missing": [s.to_json_dict() for s in self.missing],
            "stopper": self.stopper.to_json_dict(),
            "origin": {
                "m": self.origin.m,
                "n": self.origin.n,
                "grid": [list(row) for row in self.origin.cell_map],
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> UPBSet:
        origin = TileStructure.from_grid(data["origin"]["grid"])
        return cls(
            states=tuple(ProductState.from_json_dict(s) for s in data["states"]),
            missing=tuple(ProductState.from_json_dict(s) for s in data["missing"]),
            stopper=ProductState.from_json_dict(data["stopper"]),
            origin=origin,
        )


def upb_state_labels(ts: TileStructure) -> list[tuple]:
    """Labels of build_upb(ts).states in order: (tile_id, k, l) for each
    kept state, then the stopper sentinel."""
    labels: list[tuple] = []
    for tile in ts.tiles:
        p, q = len(tile.rows), len(tile.cols)
        for k in range(p):
            for l in range(q):
                if (k, l) != (0, 0):
                    labels.append((tile.id, k, l))
    labels.append(STOPPER_LABEL)
    return labels


def build_upb(ts: TileStructure, check: bool = False) -> UPBSet:
    """Assemble the UPB candidate of a tile structure.

    Keeps every tile-basis state except each tile's (0,0) state, then
    appends the stopper, for mn - s + 1 states in total.  With
    check=True the structure must pass the U-tile test first; a failing
    structure raises NotUTileError (the assembled set would then be
    extendible).
    """
    if check:
        from .rectangles import is_u_tile

        verdict = is_u_tile(ts)
        if not verdict.is_u_tile:
            raise NotUTileError(verdict)
    kept: list[ProductState] = []
    missing: list[ProductState] = []
    for tile in ts.tiles:
        basis = tile_basis(tile, ts.m, ts.n)
        missing.append(basis[0])
        kept.extend(basis[1:])
    stop = stopper(ts.m, ts.n)
    kept.append(stop)
    return UPBSet(states=tuple(kept), missing=tuple(missing), stopper=stop, origin=ts)
