"""Generalized equiangular measurements (GEAMs).

A GEAM is a single POVM assembled from N weighted lines: line alpha
carries weight gamma_alpha > 0 (the weights summing to one), its
elements sum to gamma_alpha I, and all pairwise traces are fixed by
four coefficient families:

    Tr(P_ak)        = trace[a]
    Tr(P_ak P_ak)   = square_ratio[a] * trace[a]^2
    Tr(P_ak P_al)   = pair_ratio[a]   * trace[a]^2     (k != l)
    Tr(P_ak P_bl)   = cross_ratio     * trace[a] trace[b]   (a != b)

with trace[a] = d gamma_a / M_a, cross_ratio = 1/d, and
pair_ratio = (M - d*square_ratio)/(d(M-1)). Every GEAM here arises by
rescaling a generalized symmetric measurement line-by-line; the
builders in this module produce the families with extra symmetry
(constant square/pair difference, line-independent overlaps, rescaled
MUBs) and completeness_rank classifies the span of any element set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bases import OperatorBasis
from .config import DEFAULT_TOL
from .errors import NotPrime, ROutOfRange, SizeMismatch, WeightError
from .gsm import (
    GSMFamily,
    build_gsm,
    mixing_for_overlap_ratio,
    mixing_for_square_trace,
)
from .operators import gram_rank, hs_inner

_WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class GEAM:
    """Weighted POVM with per-line trace coefficients."""

    d: int
    sizes: tuple[int, ...]
    gammas: tuple[float, ...]
    elements: tuple[tuple[np.ndarray, ...], ...]
    trace: tuple[float, ...]
    square_ratio: tuple[float, ...]
    pair_ratio: tuple[float, ...]
    cross_ratio: float

    @property
    def n_lines(self) -> int:
        return len(self.sizes)

    @property
    def element_count(self) -> int:
        return sum(self.sizes)

    def all_elements(self) -> list[np.ndarray]:
        return [e for line in self.elements for e in line]

    @classmethod
    def from_elements(cls, d, sizes, gammas, elements) -> "GEAM":
        """Wrap raw per-line matrices, fitting coefficients from mean traces."""
        sizes = tuple(int(m) for m in sizes)
        gammas = tuple(float(g) for g in gammas)
        elements = tuple(tuple(np.asarray(e, dtype=complex) for e in line) for line in elements)
        if len(elements) != len(sizes) or any(len(line) != m for line, m in zip(elements, sizes)):
            raise SizeMismatch("element grid does not match the declared sizes")
        if len(gammas) != len(sizes):
            raise SizeMismatch("one weight per line is required")
        trace, square_ratio, pair_ratio = [], [], []
        for line in elements:
            a_fit = float(np.mean([np.trace(e).real for e in line]))
            trace.append(a_fit)
            square_ratio.append(float(np.mean([hs_inner(e, e) for e in line])) / a_fit**2)
            overlaps = [
                hs_inner(line[k], line[l])
                for k in range(len(line))
                for l in range(k + 1, len(line))
            ]
            pair_ratio.append(
                float(np.mean(overlaps)) / a_fit**2 if overlaps else 0.0
            )
        cross = []
        for a in range(len(sizes)):
            for b in range(a + 1, len(sizes)):
                for ea in elements[a]:
                    for eb in elements[b]:
                        cross.append(hs_inner(ea, eb) / (trace[a] * trace[b]))
        cross_ratio = float(np.mean(cross)) if cross else 1.0 / d
        return cls(
            d=int(d),
            sizes=sizes,
            gammas=gammas,
            elements=elements,
            trace=tuple(trace),
            square_ratio=tuple(square_ratio),
            pair_ratio=tuple(pair_ratio),
            cross_ratio=cross_ratio,
        )


@dataclass(frozen=True)
class GeamReport:
    """Fitted GEAM coefficients plus deviations from the defining relations."""

    passed: bool
    deviations: dict[str, float]
    trace: tuple[float, ...]
    square_ratio: tuple[float, ...]
    pair_ratio: tuple[float, ...]
    cross_ratio: float
    positivity_margin: float


@dataclass(frozen=True)
class CompletenessReport:
    """Span classification of a measurement's elements."""

    rank: int
    element_count: int
    classification: str  # "complete" | "overcomplete" | "deficient"
    count_equality: bool | None  # element_count == d^2 + N - 1 (None for raw lists)
    within_max_bound: bool  # element_count <= 2 (d^2 - 1)


def rescale_to_geam(gsm: GSMFamily, weights: Sequence[float]) -> GEAM:
    """Turn a GSM family into a GEAM by weighting each line.

    P_ak = gamma_a E_ak. The coefficient map is exact:
    trace = gamma w, square_ratio = x / w^2, pair_ratio = y / w^2 and
    cross_ratio = 1/d; the stored values are cross-checked against
    directly fitted traces.
    """
    weights = tuple(float(g) for g in weights)
    if len(weights) != gsm.n_lines:
        raise WeightError(f"expected {gsm.n_lines} weights, got {len(weights)}")
    if any(g <= 0.0 for g in weights):
        raise WeightError(f"weights must be strictly positive, got {weights}")
    if abs(sum(weights) - 1.0) > _WEIGHT_SUM_TOL:
        raise WeightError(f"weights must sum to 1, got {sum(weights)!r}")

    elements = tuple(
        tuple(g * e for e in line) for g, line in zip(weights, gsm.elements)
    )
    geam = GEAM(
        d=gsm.d,
        sizes=gsm.sizes,
        gammas=weights,
        elements=elements,
        trace=tuple(g * w for g, w in zip(weights, gsm.trace)),
        square_ratio=tuple(x / w**2 for x, w in zip(gsm.square_trace, gsm.trace)),
        pair_ratio=tuple(y / w**2 for y, w in zip(gsm.pair_trace, gsm.trace)),
        cross_ratio=1.0 / gsm.d,
    )
    fitted = GEAM.from_elements(gsm.d, gsm.sizes, weights, elements)
    worst = max(
        max(abs(a - b) for a, b in zip(geam.trace, fitted.trace)),
        max(abs(a - b) for a, b in zip(geam.square_ratio, fitted.square_ratio)),
        max(abs(a - b) for a, b in zip(geam.pair_ratio, fitted.pair_ratio)),
        abs(geam.cross_ratio - fitted.cross_ratio) if gsm.n_lines > 1 else 0.0,
    )
    if worst > 1e-8:
        raise RuntimeError(
            f"rescaled coefficients disagree with fitted traces by {worst:.3e}"
        )
    return geam


def extract_parameters(geam: GEAM, tol: float = DEFAULT_TOL) -> GeamReport:
    """Fit the GEAM coefficients from traces and report deviations.

    Relation groups measured (all at the trace level): constancy of
    element traces, squared traces, and intra-line overlaps within each
    line; constancy of the normalized cross overlap across line pairs;
    the closed forms trace = d gamma / M,
    pair_ratio = (M - d*square_ratio)/(d(M-1)) and cross_ratio = 1/d;
    per-line and global resolutions of the identity; and positivity.
    """
    d = geam.d
    identity = np.eye(d, dtype=complex)

    trace_dev = 0.0
    square_dev = 0.0
    pair_dev = 0.0
    line_res_dev = 0.0
    trace_formula_dev = 0.0
    smallest_eig = np.inf
    a_fit: list[float] = []
    b_fit: list[float] = []
    c_fit: list[float] = []
    for line, m, gamma in zip(geam.elements, geam.sizes, geam.gammas):
        traces = [np.trace(e).real for e in line]
        a_line = float(np.mean(traces))
        a_fit.append(a_line)
        trace_dev = max(trace_dev, max(abs(v - a_line) for v in traces))
        trace_formula_dev = max(trace_formula_dev, abs(a_line - d * gamma / m))
        squares = [hs_inner(e, e) for e in line]
        square_mean = float(np.mean(squares))
        b_fit.append(square_mean / a_line**2)
        square_dev = max(square_dev, max(abs(v - square_mean) for v in squares))
        overlaps = [
            hs_inner(line[k], line[l]) for k in range(m) for l in range(k + 1, m)
        ]
        pair_mean = float(np.mean(overlaps)) if overlaps else 0.0
        c_fit.append(pair_mean / a_line**2)
        if overlaps:
            pair_dev = max(pair_dev, max(abs(v - pair_mean) for v in overlaps))
        total = sum(line)
        line_res_dev = max(
            line_res_dev, float(np.max(np.abs(total - gamma * identity)))
        )
        smallest_eig = min(
            smallest_eig, min(float(np.linalg.eigvalsh(e)[0]) for e in line)
        )

    n = geam.n_lines
    cross_vals = []
    for a in range(n):
        for b in range(a + 1, n):
            for ea in geam.elements[a]:
                for eb in geam.elements[b]:
                    cross_vals.append(hs_inner(ea, eb) / (a_fit[a] * a_fit[b]))
    f_fit = float(np.mean(cross_vals)) if cross_vals else 1.0 / d
    cross_dev = max((abs(v - f_fit) for v in cross_vals), default=0.0)

    pair_formula_dev = max(
        abs(c - (m - d * b) / (d * (m - 1.0)))
        for c, b, m in zip(c_fit, b_fit, geam.sizes)
    )
    global_total = sum(e for line in geam.elements for e in line)
    deviations = {
        "trace": trace_dev,
        "square_trace": square_dev,
        "pair_trace": pair_dev,
        "cross_trace": cross_dev,
        "trace_formula": trace_formula_dev,
        "pair_formula": pair_formula_dev,
        "cross_formula": abs(f_fit - 1.0 / d),
        "line_resolution": line_res_dev,
        "global_resolution": float(np.max(np.abs(global_total - identity))),
        "positivity": max(0.0, -float(smallest_eig)),
    }
    return GeamReport(
        passed=all(v <= tol for v in deviations.values()),
        deviations=deviations,
        trace=tuple(a_fit),
        square_ratio=tuple(b_fit),
        pair_ratio=tuple(c_fit),
        cross_ratio=f_fit,
        positivity_margin=float(smallest_eig),
    )


def verify_geam(geam: GEAM, tol: float = DEFAULT_TOL) -> GeamReport:
    """Alias of extract_parameters, named for its use as a validity check."""
    return extract_parameters(geam, tol)


def square_ratio_range(d: int, m: int) -> tuple[float, float]:
    """Open-closed interval of admissible square ratios for a line of M elements."""
    if m < 2:
        raise SizeMismatch(f"line size must be at least 2, got {m}")
    return (1.0 / d, min(d, m) / d)


def equal_trace_weights(d: int, sizes: Sequence[int]) -> tuple[float, ...]:
    """Line weights making all element traces equal.

    gamma_a = a M_a / d with a = d / (d^2 + N - 1); requires the
    informationally complete count sum(M_a - 1) = d^2 - 1, which also
    makes the weights sum to one.
    """
    sizes = tuple(int(m) for m in sizes)
    if sum(m - 1 for m in sizes) != d * d - 1:
        raise SizeMismatch(
            f"sizes {sizes} do not satisfy the completeness count for d={d}"
        )
    n = len(sizes)
    a = d / (d * d + n - 1.0)
    return tuple(a * m / d for m in sizes)


def constant_difference_family(
    d: int,
    sizes: Sequence[int],
    difference: float,
    basis: OperatorBasis | None = None,
) -> GEAM:
    """Equal-trace GEAM whose square and pair ratios differ by a constant.

    Realizes square_ratio - pair_ratio = difference on every line, with
    square_ratio = 1/d + difference (M-1)/M and
    pair_ratio = 1/d - difference / M. The admissible range is
    0 < difference <= min over lines of min(M/d, M(d-1)/(d(M-1))).
    """
    sizes = tuple(int(m) for m in sizes)
    bound = min(
        min(m / d, m * (d - 1.0) / (d * (m - 1.0))) for m in sizes
    )
    if not 0.0 < difference <= bound:
        raise ROutOfRange(
            f"difference {difference} outside (0, {bound}] for d={d}, sizes={sizes}"
        )
    mixing = []
    for m in sizes:
        b = 1.0 / d + difference * (m - 1.0) / m
        mixing.append(mixing_for_square_trace(d, m, b * (d / m) ** 2))
    gsm = build_gsm(d, sizes, mixing=mixing, basis=basis)
    return rescale_to_geam(gsm, equal_trace_weights(d, sizes))


def equal_overlap_family(
    d: int,
    sizes: Sequence[int],
    overlap_ratio: float,
    basis: OperatorBasis | None = None,
) -> GEAM:
    """GEAM with line-independent squared traces and intra-line overlaps.

    Every element satisfies Tr(P^2) = B and every intra-line pair
    Tr(P P') = overlap_ratio * B, regardless of the line, while cross
    overlaps are d gamma_a gamma_b / (M_a M_b). The weights are fixed by
    gamma_a = sqrt(B M_a (1 + overlap_ratio (M_a - 1)) / d) with B set
    by normalization.
    """
    sizes = tuple(int(m) for m in sizes)
    mixing = [mixing_for_overlap_ratio(d, m, overlap_ratio) for m in sizes]
    gsm = build_gsm(d, sizes, mixing=mixing, basis=basis)
    scale = [np.sqrt(m * (1.0 + overlap_ratio * (m - 1.0)) / d) for m in sizes]
    sqrt_b = 1.0 / sum(scale)
    return rescale_to_geam(gsm, tuple(sqrt_b * s for s in scale))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _mub_bases(d: int) -> list[np.ndarray]:
    """d + 1 mutually unbiased bases in prime dimension d, as column matrices."""
    if d == 2:
        s = 1.0 / np.sqrt(2.0)
        return [
            np.eye(2, dtype=complex),
            np.array([[s, s], [s, -s]], dtype=complex),
            np.array([[s, s], [1j * s, -1j * s]], dtype=complex),
        ]
    indices = np.arange(d)
    bases = [np.eye(d, dtype=complex)]
    for a in range(d):
        mat = np.empty((d, d), dtype=complex)
        for b in range(d):
            phases = (a * indices * indices + b * indices) % d
            mat[:, b] = np.exp(2j * np.pi * phases / d) / np.sqrt(d)
        bases.append(mat)
    return bases


def mub_geam(d: int) -> GEAM:
    """GEAM from the complete set of d + 1 mutually unbiased bases.

    Each basis contributes a line of d rank-1 projectors with weight
    1/(d + 1). Only prime d is supported, where the standard
    quadratic-phase construction yields a complete MUB set.
    """
    if not _is_prime(d):
        raise NotPrime(f"complete MUB construction requires prime d, got {d}")
    lines = []
    for mat in _mub_bases(d):
        line = tuple(
            np.outer(mat[:, k], mat[:, k].conj()) for k in range(d)
        )
        lines.append(line)
    sizes = (d,) * (d + 1)
    gsm = GSMFamily(
        d=d,
        sizes=sizes,
        t=(1.0,) * (d + 1),
        elements=tuple(lines),
        trace=(1.0,) * (d + 1),
        square_trace=(1.0,) * (d + 1),
        pair_trace=(0.0,) * (d + 1),
    )
    return rescale_to_geam(gsm, (1.0 / (d + 1),) * (d + 1))


def completeness_rank(
    measurement: GEAM | Sequence[np.ndarray],
    tol: float = DEFAULT_TOL,
) -> CompletenessReport:
    """Classify the operator span of a measurement's elements.

    Accepts a GEAM or any flat list of equal-dimension Hermitian
    operators. The rank is the numerical Gram rank of the elements;
    classification is "complete" (rank d^2 with exactly d^2 elements),
    "overcomplete" (rank d^2 with more), or "deficient".
    """
    if isinstance(measurement, GEAM):
        ops = measurement.all_elements()
        d = measurement.d
        count_equality = (
            measurement.element_count == d * d + measurement.n_lines - 1
        )
    else:
        ops = list(measurement)
        if not ops:
            raise ValueError("completeness_rank needs at least one operator")
        d = ops[0].shape[0]
        count_equality = None
    rank = gram_rank(ops, tol)
    count = len(ops)
    if rank == d * d and count == d * d:
        classification = "complete"
    elif rank == d * d and count > d * d:
        classification = "overcomplete"
    else:
        classification = "deficient"
    return CompletenessReport(
        rank=rank,
        element_count=count,
        classification=classification,
        count_equality=count_equality,
        within_max_bound=count <= 2 * (d * d - 1),
    )
