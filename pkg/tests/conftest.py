"""Shared fixtures: reference qubit families with known trace tables."""

from __future__ import annotations

import numpy as np
import pytest

import geamkit as gk

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT5 = np.sqrt(5.0)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

KET0 = np.diag([1.0, 0.0]).astype(complex)
KET1 = np.diag([0.0, 1.0]).astype(complex)


def trine_povm_a() -> tuple[np.ndarray, ...]:
    """Qubit trine in the sigma_x / sigma_y plane, anchored on sigma_x."""
    return (
        np.array([[1, 1], [1, 1]], dtype=complex) / 3.0,
        np.array([[2, -1 + 1j * SQRT3], [-1 - 1j * SQRT3, 2]], dtype=complex) / 6.0,
        np.array([[2, -1 - 1j * SQRT3], [-1 + 1j * SQRT3, 2]], dtype=complex) / 6.0,
    )


def trine_povm_b() -> tuple[np.ndarray, ...]:
    """Qubit trine in the sigma_x / sigma_y plane, anchored on sigma_y."""
    return (
        np.array([[1, -1j], [1j, 1]], dtype=complex) / 3.0,
        np.array([[2, 1j + SQRT3], [-1j + SQRT3, 2]], dtype=complex) / 6.0,
        np.array([[2, 1j - SQRT3], [-1j - SQRT3, 2]], dtype=complex) / 6.0,
    )


@pytest.fixture
def two_line_gsm() -> gk.GSMFamily:
    """d=2 symmetric family: a von Neumann line plus a trine line."""
    return gk.GSMFamily.from_elements(2, (2, 3), ((KET0, KET1), trine_povm_b()))


@pytest.fixture
def two_line_geam(two_line_gsm) -> gk.GEAM:
    """Equal-trace weighting (2/5, 3/5) of the von Neumann + trine family."""
    return gk.rescale_to_geam(two_line_gsm, (0.4, 0.6))


@pytest.fixture
def trine_pair_gsm() -> gk.GSMFamily:
    """Two coplanar trines treated as one family; cross overlaps are skewed."""
    return gk.GSMFamily.from_elements(2, (3, 3), (trine_povm_a(), trine_povm_b()))


@pytest.fixture
def trine_pair_geam() -> gk.GEAM:
    """The two coplanar trines halved into a single POVM (rank-deficient)."""
    half_a = tuple(0.5 * e for e in trine_povm_a())
    half_b = tuple(0.5 * e for e in trine_povm_b())
    return gk.GEAM.from_elements(2, (3, 3), (0.5, 0.5), (half_a, half_b))


def symmetric_overlap_matrices() -> tuple[tuple[np.ndarray, ...], ...]:
    """d=2 family whose self and pair overlaps are line-independent."""
    c = (3.0 - SQRT5) / 8.0
    q = -(2.0 + SQRT3 + 1j) * np.sqrt(2.0 - SQRT3)
    line1 = (
        c * np.diag([SQRT5 - SQRT3, SQRT5 + SQRT3]).astype(complex),
        c * np.diag([SQRT5 + SQRT3, SQRT5 - SQRT3]).astype(complex),
    )
    line2 = (
        c * np.array([[2, q], [np.conj(q), 2]], dtype=complex),
        c * np.array([[2, -1j * np.conj(q)], [1j * q, 2]], dtype=complex),
        (3.0 - SQRT5)
        / (4.0 * SQRT2)
        * np.array([[SQRT2, 1 - 1j], [1 + 1j, SQRT2]], dtype=complex),
    )
    return (line1, line2)


@pytest.fixture
def symmetric_overlap_geam() -> gk.GEAM:
    gamma1 = SQRT5 * (3.0 - SQRT5) / 4.0
    return gk.GEAM.from_elements(
        2, (2, 3), (gamma1, 1.0 - gamma1), symmetric_overlap_matrices()
    )


def random_sizes(d: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Random line sizes satisfying the completeness count for dimension d."""
    remaining = d * d - 1
    parts: list[int] = []
    while remaining > 0:
        block = int(rng.integers(1, remaining + 1))
        parts.append(block + 1)
        remaining -= block
    rng.shuffle(parts)
    return tuple(parts)


def random_geam(d: int, rng: np.random.Generator) -> gk.GEAM:
    """Random valid GEAM: random partition, random mixing, random weights."""
    sizes = random_sizes(d, rng)
    extremal = gk.build_gsm(d, sizes)
    mixing = tuple(t * rng.uniform(0.25, 1.0) for t in extremal.t)
    gsm = gk.build_gsm(d, sizes, mixing=mixing)
    raw = rng.uniform(0.1, 1.0, size=len(sizes))
    return gk.rescale_to_geam(gsm, tuple(raw / raw.sum()))


def uniform_weight_design(d: int, sizes, r: float) -> gk.GEAM:
    """Uniformly weighted family built from lines sharing the same gap r."""
    sizes = tuple(sizes)
    gsm = gk.build_gsm(d, sizes, mixing=[np.sqrt(r)] * len(sizes))
    return gk.rescale_to_geam(gsm, (1.0 / len(sizes),) * len(sizes))
