"""Born probabilities, dual-frame reconstruction, and coincidence statistics.

The outcome probabilities of a GEAM on a state form a table grouped by
line, with the line sums equal to the weights. The distinguished dual
frame inverts the measurement map exactly, so states are recovered by a
single linear combination; the index of coincidence (sum of squared
probabilities) relates linearly to the state purity whenever the
measurement is a conical 2-design, and the purity itself is recoverable
from the table for any valid GEAM.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOL
from .errors import DegenerateFrame, DimensionMismatch, PurityOutOfRange, SizeMismatch
from .designs import kappas_closed_form
from .geam import GEAM
from .operators import hs_inner


@dataclass(frozen=True)
class ProbabilityTable:
    """Outcome probabilities grouped by measurement line."""

    sizes: tuple[int, ...]
    p: tuple[tuple[float, ...], ...]

    def flat(self) -> np.ndarray:
        return np.array([v for line in self.p for v in line])

    def line_sums(self) -> tuple[float, ...]:
        return tuple(float(sum(line)) for line in self.p)

    def total(self) -> float:
        return float(sum(sum(line) for line in self.p))


@dataclass(frozen=True)
class IocBounds:
    """Closed-form index of coincidence at a given purity, and its maximum."""

    c: float
    c_max: float


def born_probabilities(rho: np.ndarray, geam: GEAM) -> ProbabilityTable:
    """Outcome distribution p_ak = Tr(rho P_ak)."""
    if rho.shape != (geam.d, geam.d):
        raise DimensionMismatch(
            f"state has shape {rho.shape}, measurement dimension is {geam.d}"
        )
    table = tuple(
        tuple(hs_inner(rho, p) for p in line) for line in geam.elements
    )
    return ProbabilityTable(sizes=geam.sizes, p=table)


def geam_dual_frame(geam: GEAM, tol: float = DEFAULT_TOL) -> tuple[tuple[np.ndarray, ...], ...]:
    """Dual frame Q of a GEAM, grouped like its elements.

    Q_ak = (P_ak - (I/d)(trace[a] - s_a / (N gamma_a))) / s_a with
    s_a = trace[a]^2 (square_ratio[a] - pair_ratio[a]). Expanding the
    Born probabilities of any state against these duals returns the
    state. Raises DegenerateFrame when some line has s_a below
    tolerance.
    """
    d = geam.d
    n = geam.n_lines
    if sum(m - 1 for m in geam.sizes) != d * d - 1:
        raise SizeMismatch("dual frame requires an informationally complete family")
    identity = np.eye(d, dtype=complex)
    duals = []
    for a in range(n):
        s = geam.trace[a] ** 2 * (geam.square_ratio[a] - geam.pair_ratio[a])
        if s <= tol:
            raise DegenerateFrame(f"line {a} has design constant {s:.3e}")
        shift = (geam.trace[a] - s / (n * geam.gammas[a])) / d
        duals.append(tuple((p - shift * identity) / s for p in geam.elements[a]))
    return tuple(duals)


def reconstruct_state(
    table: ProbabilityTable,
    duals: Sequence[Sequence[np.ndarray]],
    enforce_physical: bool = False,
) -> np.ndarray:
    """Linear-inversion estimate rho = sum p_ak Q_ak.

    With ``enforce_physical`` the estimate is projected onto the density
    operators by clipping negative eigenvalues and renormalizing the
    trace, as needed for noisy empirical tables.
    """
    if len(duals) != len(table.sizes) or any(
        len(line) != m for line, m in zip(duals, table.sizes)
    ):
        raise SizeMismatch("dual frame does not match the table layout")
    d = duals[0][0].shape[0]
    rho = np.zeros((d, d), dtype=complex)
    for probs, dual_line in zip(table.p, duals):
        for value, q in zip(probs, dual_line):
            rho += value * q
    if not enforce_physical:
        return rho
    eigvals, eigvecs = np.linalg.eigh(rho)
    clipped = np.clip(eigvals, 0.0, None)
    total = float(np.sum(clipped))
    if total <= 0.0:
        return np.eye(d, dtype=complex) / d
    clipped /= total
    return (eigvecs * clipped) @ eigvecs.conj().T


def index_of_coincidence(table: ProbabilityTable) -> float:
    """Sum of squared outcome probabilities."""
    return float(sum(v * v for line in table.p for v in line))


def ioc_closed_form(geam: GEAM, purity: float, tol: float = DEFAULT_TOL) -> IocBounds:
    """Index of coincidence of a constant-S design family, in closed form.

    c = S (purity - 1/d) + mu and c_max = S (d-1)/d + mu, the latter
    attained by pure states. Requires 1/d <= purity <= 1 and a family
    whose per-line constants agree (NotConstantS propagates from the
    certificate).
    """
    d = geam.d
    if not 1.0 / d - tol <= purity <= 1.0 + tol:
        raise PurityOutOfRange(f"purity {purity} outside [1/{d}, 1]")
    cert = kappas_closed_form(geam, tol)
    c = cert.S * (purity - 1.0 / d) + cert.mu
    c_max = cert.S * (d - 1.0) / d + cert.mu
    return IocBounds(c=float(c), c_max=float(c_max))


def purity_from_probabilities(geam: GEAM, table: ProbabilityTable) -> float:
    """Recover Tr(rho^2) from an outcome table.

    Uses the per-line identity
    Tr(rho^2) = 1/d + sum_a (sum_k p_ak^2 - trace[a] gamma_a / d) / s_a
    with s_a = trace[a]^2 (square_ratio[a] - pair_ratio[a]); no design
    property is required. Raises DegenerateFrame when some s_a vanishes.
    """
    if table.sizes != geam.sizes:
        raise SizeMismatch("table layout does not match the measurement")
    d = geam.d
    total = 1.0 / d
    for a, line in enumerate(table.p):
        s = geam.trace[a] ** 2 * (geam.square_ratio[a] - geam.pair_ratio[a])
        if s <= 1e-14:
            raise DegenerateFrame(f"line {a} has design constant {s:.3e}")
        total += (sum(v * v for v in line) - geam.trace[a] * geam.gammas[a] / d) / s
    return float(total)


def sample_measurements(
    rho: np.ndarray, geam: GEAM, shots: int, seed: int
) -> ProbabilityTable:
    """Empirical outcome frequencies from a multinomial draw.

    The flattened Born distribution is sampled ``shots`` times with
    numpy's PCG64 generator, so results are reproducible per seed.
    Probabilities that are negative by numerical noise are clamped to
    zero before sampling.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    exact = born_probabilities(rho, geam)
    probs = np.clip(exact.flat(), 0.0, None)
    probs /= probs.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, probs)
    freqs = counts / shots
    table = []
    start = 0
    for m in geam.sizes:
        table.append(tuple(float(v) for v in freqs[start : start + m]))
        start += m
    return ProbabilityTable(sizes=geam.sizes, p=tuple(table))
