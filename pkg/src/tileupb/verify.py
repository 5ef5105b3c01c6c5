"""Numerical verification: Gram reports, complement bases, and a seesaw
search for product states inside a subspace.

The seesaw search is the refuting oracle for unextendibility claims: it
maximizes ||P(a (x) b)||^2 over unit product vectors, where P projects
onto the span of an orthonormal complement basis.  Each half-step is an
exact top-eigenvector update, so the objective never decreases.  A value
near 1 certifies a product state in the subspace; failure to reach 1 is
only heuristic evidence of absence (the exact decision belongs to the
U-tile test).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .states import BipartiteState, ProductState, UPBSet, inner_product

__all__ = [
    "OrthogonalityReport",
    "SearchResult",
    "UPBCheckReport",
    "check_orthogonal_set",
    "complement_basis",
    "seesaw_search",
    "check_upb",
]

DEFAULT_RESTARTS = 200
DEFAULT_MAX_ITERS = 500
DEFAULT_CONV_TOL = 1e-12
DEFAULT_ORTH_TOL = 1e-12
PRODUCT_THRESHOLD = 1e-6  # a best overlap above 1 - this certifies a product state


@dataclass(frozen=True)
class OrthogonalityReport:
    """Pairs whose inner product exceeds the tolerance, plus the largest
    off-diagonal Gram magnitude seen."""

    violations: tuple[tuple[int, int, float], ...]
    max_offdiagonal: float
    tol: float

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True, eq=False)
class SearchResult:
    best_overlap: float
    best_product: ProductState
    restarts_run: int
    converged_restarts: int

    def to_json_dict(self) -> dict:
        return {
            "best_overlap": self.best_overlap,
            "best_product": self.best_product.to_json_dict(),
            "restarts_run": self.restarts_run,
            "converged_restarts": self.converged_restarts,
        }


def _stack_matrices(states) -> np.ndarray:
    mats = [np.asarray(s.matrix if hasattr(s, "matrix") else s, dtype=complex) for s in states]
    return np.stack(mats) if mats else np.zeros((0, 1, 1), dtype=complex)


def check_orthogonal_set(states, tol: float = DEFAULT_ORTH_TOL) -> OrthogonalityReport:
    """Report every state pair with |<psi_i|psi_j>| above tol."""
    violations = []
    worst = 0.0
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            mag = abs(inner_product(states[i], states[j]))
            worst = max(worst, mag)
            if mag > tol:
                violations.append((i, j, mag))
    return OrthogonalityReport(tuple(violations), worst, tol)


def complement_basis(states, m: int | None = None, n: int | None = None) -> list[BipartiteState]:
    """Orthonormal basis of the orthogonal complement of span(states).

    Solves <psi_w|x> = 0 for all w via an SVD of the conjugated
    coefficient rows; the input states must be linearly independent.
    An empty state list yields the standard basis of the whole space,
    in which case the dimensions must be passed explicitly.
    """
    if not states:
        if m is None or n is None:
            raise ValueError("dimensions are required for an empty state list")
        eye = np.eye(m * n, dtype=complex)
        return [BipartiteState(eye[i].reshape(m, n)) for i in range(m * n)]
    mats = _stack_matrices(states)
    k, m, n = mats.shape
    rows = mats.reshape(k, m * n).conj()
    u, sv, vh = np.linalg.svd(rows)
    cutoff = max(m * n, k) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)
    rank = int(np.sum(sv > cutoff))
    if rank < k:
        raise ValueError(f"states are linearly dependent: rank {rank} < {k}")
    return [BipartiteState(vh[i].conj().reshape(m, n)) for i in range(k, m * n)]


def _seesaw_objective(w_stack: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    amps = np.einsum("kij,i,j->k", w_stack.conj(), a, b)
    return float(np.sum(np.abs(amps) ** 2))


def _seesaw_restart(
    w_stack: np.ndarray, a: np.ndarray, b: np.ndarray, max_iters: int, conv_tol: float
) -> tuple[np.ndarray, np.ndarray, float, bool]:
    """One alternating run from the given start; returns the final unit
    factors, the recomputed objective, and whether it converged."""
    prev = _seesaw_objective(w_stack, a, b)
    converged = False
    for _ in range(max_iters):
        v = np.einsum("kij,j->ki", w_stack, b.conj())
        m_a = np.einsum("ki,kj->ij", v, v.conj())
        vals, vecs = np.linalg.eigh(m_a)
        a = vecs[:, -1]
        t = np.einsum("kij,i->kj", w_stack, a.conj())
        m_b = np.einsum("ki,kj->ij", t, t.conj())
        vals, vecs = np.linalg.eigh(m_b)
        b = vecs[:, -1]
        obj = float(vals[-1])
        # Each half-step is an exact maximization, so the objective is
        # monotone up to rounding.
        assert obj >= prev - 1e-9, "seesaw objective decreased"
        if obj - prev < conv_tol:
            converged = True
            break
        prev = obj
    return a, b, _seesaw_objective(w_stack, a, b), converged


def seesaw_search(
    complement,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    conv_tol: float = DEFAULT_CONV_TOL,
    seed: int = 0,
) -> SearchResult:
    """Best product state found inside span(complement).

    Alternating exact eigen-steps from seeded complex-Gaussian starts:
    for fixed b the optimal a is the top eigenvector of
    A(b) = sum_w (W_w conj(b))(W_w conj(b))^dag, and symmetrically for
    b.  Deterministic for fixed inputs and seed; restarts are ranked by
    recomputed objective, first-best wins.
    """
    if not complement:
        raise ValueError("empty complement basis: nothing to search")
    w_stack = _stack_matrices(complement)
    _, m, n = w_stack.shape
    rng = np.random.default_rng(seed)
    best_overlap = -1.0
    best_a = best_b = None
    converged_count = 0
    for _ in range(restarts):
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        a, b, overlap, converged = _seesaw_restart(w_stack, a, b, max_iters, conv_tol)
        converged_count += int(converged)
        if overlap > best_overlap:
            best_overlap = overlap
            best_a, best_b = a, b
    return SearchResult(
        best_overlap=best_overlap,
        best_product=ProductState(best_a, best_b),
        restarts_run=restarts,
        converged_restarts=converged_count,
    )


@dataclass(frozen=True, eq=False)
class UPBCheckReport:
    """Aggregate verdict on an assembled product-state set."""

    size: int
    expected_size: int
    size_ok: bool
    orthogonality: OrthogonalityReport
    stopper_law_ok: bool
    complement_dim: int
    expected_complement_dim: int
    search: SearchResult | None
    product_found: bool
    passed: bool
    note: str
    settings: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "expected_size": self.expected_size,
            "size_ok": self.size_ok,
            "orthogonal": self.orthogonality.ok,
            "max_offdiagonal": self.orthogonality.max_offdiagonal,
            "stopper_law_ok": self.stopper_law_ok,
            "complement_dim": self.complement_dim,
            "expected_complement_dim": self.expected_complement_dim,
            "search": None if self.search is None else self.search.to_json_dict(),
            "product_found": self.product_found,
            "passed": self.passed,
            "note": self.note,
            "settings": dict(self.settings),
        }


def check_upb(
    upb: UPBSet,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    conv_tol: float = DEFAULT_CONV_TOL,
    seed: int = 0,
    orth_tol: float = DEFAULT_ORTH_TOL,
) -> UPBCheckReport:
    """Full numerical check of a UPBSet.

    Verifies pairwise orthogonality, the size law mn - s + 1, the
    stopper overlap law (<S|phi_i^(0,0)> equals the tile's cell count,
    nonzero), the complement dimension s - 1, and runs the seesaw search
    on the complement.  Passing means no product state was certified in
    the complement; that negative is heuristic, the positive direction
    (a certificate) is conclusive.
    """
    ts = upb.origin
    s = ts.tile_count
    mn = upb.m * upb.n
    expected = mn - s + 1
    orth = check_orthogonal_set(upb.states, tol=orth_tol)
    size_ok = len(upb.states) == expected

    stopper_ok = True
    for tile, miss in zip(ts.tiles, upb.missing):
        overlap = inner_product(upb.stopper, miss)
        if abs(overlap - tile.size) > orth_tol * mn or abs(overlap) < 0.5:
            stopper_ok = False

    settings = {
        "restarts": restarts,
        "max_iters": max_iters,
        "conv_tol": conv_tol,
        "seed": seed,
        "orth_tol": orth_tol,
        "product_threshold": PRODUCT_THRESHOLD,
    }

    if expected == mn and len(upb.states) == mn:
        # Complete basis: empty complement, nothing to search.
        return UPBCheckReport(
            size=len(upb.states),
            expected_size=expected,
            size_ok=size_ok,
            orthogonality=orth,
            stopper_law_ok=stopper_ok,
            complement_dim=0,
            expected_complement_dim=0,
            search=None,
            product_found=False,
            passed=size_ok and orth.ok and stopper_ok,
            note="complement is empty; unextendibility holds vacuously",
            settings=settings,
        )

    comp = complement_basis(upb.states)
    search = seesaw_search(comp, restarts=restarts, max_iters=max_iters, conv_tol=conv_tol, seed=seed)
    found = search.best_overlap > 1.0 - PRODUCT_THRESHOLD
    passed = size_ok and orth.ok and stopper_ok and len(comp) == s - 1 and not found
    note = (
        "product state found in the complement (extendibility certificate)"
        if found
        else "no product state found in the complement (heuristic negative)"
    )
    return UPBCheckReport(
        size=len(upb.states),
        expected_size=expected,
        size_ok=size_ok,
        orthogonality=orth,
        stopper_law_ok=stopper_ok,
        complement_dim=len(comp),
        expected_complement_dim=s - 1,
        search=search,
        product_found=found,
        passed=passed,
        note=note,
        settings=settings,
    )
