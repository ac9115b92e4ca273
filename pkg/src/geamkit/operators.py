"""Dense complex Hermitian operator primitives.

Operators are plain complex128 numpy arrays of shape (d, d). Everything
here is a pure function; inputs are never mutated, so concurrent use is
safe.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .config import HERMITICITY_TOL
from .errors import DimensionMismatch


def hermitian_operator(entries, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate and return a d x d Hermitian matrix as complex128.

    Raises ValueError if the input is not square, is smaller than 2x2,
    or deviates from Hermiticity by more than ``tol``.
    """
    mat = np.asarray(entries, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] < 2:
        raise ValueError("operator dimension must be at least 2")
    deviation = float(np.max(np.abs(mat - mat.conj().T)))
    if deviation > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {deviation:.3e})")
    return mat


def density_operator(entries, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    rho = hermitian_operator(entries, tol)
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > tol:
        raise ValueError(f"density matrix must have unit trace, got {trace!r}")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return rho


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product Tr(A B), real for Hermitian arguments."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"operator shapes differ: {a.shape} vs {b.shape}")
    return float(np.einsum("ij,ji->", a, b).real)


def eigenvalues_hermitian(a: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian operator, in ascending order."""
    return np.linalg.eigvalsh(a)


def flip_operator(d: int) -> np.ndarray:
    """Swap operator on C^d (x) C^d, mapping u (x) v to v (x) u."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    flip = np.zeros((d * d, d * d), dtype=complex)
    for m in range(d):
        for n in range(d):
            flip[m * d + n, n * d + m] = 1.0
    return flip


def gram_rank(ops: Sequence[np.ndarray], tol: float = 1e-10) -> int:
    """Numerical rank of a set of Hermitian operators.

    Builds the real Gram matrix G_ij = Tr(ops_i ops_j) and counts its
    singular values above ``tol`` times the largest one. The result is
    invariant under permutations of the list and under rescaling any
    operator by a nonzero real factor.
    """
    if len(ops) == 0:
        raise ValueError("gram_rank needs at least one operator")
    shapes = {op.shape for op in ops}
    if len(shapes) != 1:
        raise DimensionMismatch(f"operators have mixed shapes: {sorted(shapes)}")
    stack = np.stack([np.asarray(op, dtype=complex) for op in ops])
    gram = np.einsum("aij,bji->ab", stack, stack).real
    svals = np.linalg.svd(gram, compute_uv=False)
    if svals[0] <= 0.0:
        return 0
    return int(np.sum(svals > tol * svals[0]))


def random_density(d: int, rank: int, seed: int) -> np.ndarray:
    """Seeded random density matrix of the requested rank.

    Ginibre construction: a d x rank matrix A of standard complex
    normals is drawn from numpy's PCG64 generator and A A*, normalized
    to unit trace, is returned. Fixed seed gives identical output.
    """
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance (1/2) || A - B ||_1 between Hermitian operators."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"operator shapes differ: {a.shape} vs {b.shape}")
    eigs = np.linalg.eigvalsh(a - b)
    return 0.5 * float(np.sum(np.abs(eigs)))
