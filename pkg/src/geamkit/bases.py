"""Hermitian orthonormal operator bases and regular-simplex geometry.

Measurement families are assembled from two ingredients: an orthonormal
basis of traceless Hermitian operators (generalized Gell-Mann matrices)
and regular simplex vertex vectors, which spread a line's elements
evenly over its basis block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SizeMismatch


@dataclass(frozen=True)
class OperatorBasis:
    """Orthonormal Hermitian basis: I/sqrt(d) plus d^2 - 1 traceless operators."""

    dim: int
    identity: np.ndarray
    traceless: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class BasisPartition:
    """Traceless basis operators grouped into disjoint per-line blocks.

    Block alpha holds sizes[alpha] - 1 operators.
    """

    sizes: tuple[int, ...]
    blocks: tuple[tuple[np.ndarray, ...], ...]


def gell_mann_basis(d: int) -> OperatorBasis:
    """Generalized Gell-Mann basis of dimension d.

    Traceless elements come in fixed order: symmetric off-diagonal,
    antisymmetric off-diagonal, then diagonal, each normalized so that
    Tr(G G) = 1. For d = 2 this is the Pauli triple over sqrt(2).
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    ops: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = 1.0
            sym[k, j] = 1.0
            ops.append(sym / np.sqrt(2.0))
    for j in range(d):
        for k in range(j + 1, d):
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1.0j
            anti[k, j] = 1.0j
            ops.append(anti / np.sqrt(2.0))
    for level in range(1, d):
        diag = np.zeros(d, dtype=complex)
        diag[:level] = 1.0
        diag[level] = -level
        ops.append(np.diag(diag) / np.sqrt(level * (level + 1)))
    identity = np.eye(d, dtype=complex) / np.sqrt(d)
    return OperatorBasis(dim=d, identity=identity, traceless=tuple(ops))


def simplex_vectors(m: int) -> np.ndarray:
    """Vertices of a regular simplex centered at the origin.

    Returns an (M, M-1) array whose rows v_k satisfy
    <v_k, v_l> = delta_kl - 1/M exactly and sum to zero.
    """
    if m < 2:
        raise ValueError("simplex needs at least 2 vertices")
    # Helmert rows: orthonormal basis of the hyperplane orthogonal to (1,...,1).
    rows = np.zeros((m - 1, m))
    for j in range(1, m):
        rows[j - 1, :j] = 1.0
        rows[j - 1, j] = -float(j)
        rows[j - 1] /= np.sqrt(j * (j + 1))
    return rows.T.copy()


def partition_basis(basis: OperatorBasis, sizes: Sequence[int]) -> BasisPartition:
    """Split the traceless basis into consecutive per-line blocks.

    Line alpha receives sizes[alpha] - 1 operators, so the blocks
    jointly exhaust the basis only when sum(sizes) - len(sizes) equals
    d^2 - 1 (the informationally complete count). Raises SizeMismatch
    otherwise.
    """
    sizes = tuple(int(m) for m in sizes)
    if any(m < 2 for m in sizes):
        raise SizeMismatch(f"every line needs at least 2 elements, got {sizes}")
    d = basis.dim
    needed = sum(m - 1 for m in sizes)
    if needed != d * d - 1:
        raise SizeMismatch(
            f"sizes {sizes} use {needed} traceless operators, "
            f"but dimension {d} provides {d * d - 1}"
        )
    blocks = []
    start = 0
    for m in sizes:
        blocks.append(tuple(basis.traceless[start : start + m - 1]))
        start += m - 1
    return BasisPartition(sizes=sizes, blocks=tuple(blocks))
