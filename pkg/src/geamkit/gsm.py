"""Generalized symmetric measurements: construction, verification, duals.

A generalized symmetric measurement (GSM) is a collection of N POVMs
("lines"), the alpha-th having M_alpha elements E, whose pairwise
Hilbert-Schmidt traces depend only on the line indices:

    Tr(E_ak)        = d / M_a                   (element trace)
    Tr(E_ak E_ak)   = square_trace[a]
    Tr(E_ak E_al)   = pair_trace[a],  k != l    (within a line)
    Tr(E_ak E_bl)   = d / (M_a M_b),  a != b    (across lines)

with d/M^2 < square_trace <= min(d^2/M^2, d/M). The builder mixes the
identity with regular-simplex combinations of a traceless operator
basis block per line:

    E_ak = I/M_a + t_a H_ak,    H_ak = sum_j (v_k)_j G_aj,

which gives square_trace = d/M^2 + t^2 (M-1)/M and
pair_trace = d/M^2 - t^2/M, so square_trace - pair_trace = t^2.
Positivity reduces to a single bound on t per line (see
max_mixing_parameter); correctness of any built family is established
by verify_gsm, not assumed from the recipe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bases import BasisPartition, OperatorBasis, gell_mann_basis, partition_basis, simplex_vectors
from .config import DEFAULT_TOL
from .errors import DegenerateFrame, DegenerateLine, EtaOutOfRange, NotPositive, SizeMismatch
from .operators import hs_inner

# Eigenvalue floor for accepting a constructed element as positive.
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class GSMFamily:
    """N POVM lines with line-indexed trace relations.

    ``t`` stores the mixing parameter per line; for families fitted from
    raw matrices it is inferred as sqrt(square_trace - pair_trace).
    """

    d: int
    sizes: tuple[int, ...]
    t: tuple[float, ...]
    elements: tuple[tuple[np.ndarray, ...], ...]
    trace: tuple[float, ...]
    square_trace: tuple[float, ...]
    pair_trace: tuple[float, ...]

    @property
    def n_lines(self) -> int:
        return len(self.sizes)

    def cross_trace(self, a: int, b: int) -> float:
        return self.d / (self.sizes[a] * self.sizes[b])

    def all_elements(self) -> list[np.ndarray]:
        return [e for line in self.elements for e in line]

    @classmethod
    def from_elements(cls, d, sizes, elements) -> "GSMFamily":
        """Wrap raw per-line matrices, fitting parameters from mean traces."""
        sizes = tuple(int(m) for m in sizes)
        elements = tuple(tuple(np.asarray(e, dtype=complex) for e in line) for line in elements)
        if len(elements) != len(sizes) or any(len(line) != m for line, m in zip(elements, sizes)):
            raise SizeMismatch("element grid does not match the declared sizes")
        trace, square, pair = [], [], []
        for line in elements:
            trace.append(float(np.mean([np.trace(e).real for e in line])))
            square.append(float(np.mean([hs_inner(e, e) for e in line])))
            overlaps = [
                hs_inner(line[k], line[l])
                for k in range(len(line))
                for l in range(k + 1, len(line))
            ]
            pair.append(float(np.mean(overlaps)) if overlaps else 0.0)
        t = tuple(float(np.sqrt(max(x - y, 0.0))) for x, y in zip(square, pair))
        return cls(
            d=int(d),
            sizes=sizes,
            t=t,
            elements=elements,
            trace=tuple(trace),
            square_trace=tuple(square),
            pair_trace=tuple(pair),
        )


@dataclass(frozen=True)
class SymmetryReport:
    """Result of checking the GSM trace relations on a family.

    ``deviations`` holds the maximum absolute deviation for each relation
    group (trace, square_trace, pair_trace, cross_trace) plus the POVM
    checks (resolution, positivity). ``passed`` is true when every entry
    is within the tolerance used for the check.
    """

    passed: bool
    deviations: dict[str, float]
    trace: tuple[float, ...]
    square_trace: tuple[float, ...]
    pair_trace: tuple[float, ...]
    cross_trace: tuple[tuple[float, ...], ...]
    positivity_margin: float


def max_mixing_parameter(h_line: Sequence[np.ndarray], m: int) -> float:
    """Largest mixing t keeping I/M + t H_k positive for every H_k in a line."""
    if len(h_line) == 0:
        raise DegenerateLine("empty line")
    t_max = np.inf
    for h in h_line:
        lam_min = float(np.linalg.eigvalsh(h)[0])
        if abs(lam_min) < 1e-14:
            raise DegenerateLine("line contains a vanishing traceless component")
        t_max = min(t_max, 1.0 / (m * abs(lam_min)))
    return float(t_max)


def mixing_for_square_trace(d: int, m: int, square_trace: float) -> float:
    """Mixing t realizing a target Tr(E^2) through the simplex construction."""
    radicand = (m / (m - 1.0)) * (square_trace - d / m**2)
    if radicand <= 0.0:
        raise ValueError(f"target square trace {square_trace} is not above the floor d/M^2")
    return float(np.sqrt(radicand))


def mixing_for_overlap_ratio(d: int, m: int, overlap_ratio: float) -> float:
    """Mixing t for a line whose pair/self overlap ratio takes a given value.

    The target self overlap is (d/M) / (1 + ratio (M-1)); admissible
    ratios lie in [max(0, (M-d)/(d(M-1))), 1). Whether the resulting t
    is positivity-feasible depends on the basis block and is checked
    when the family is built.
    """
    low = max(0.0, (m - d) / (d * (m - 1.0)))
    if not low <= overlap_ratio < 1.0:
        raise EtaOutOfRange(
            f"overlap ratio {overlap_ratio} outside [{low}, 1) for d={d}, M={m}"
        )
    target = (d / m) / (1.0 + overlap_ratio * (m - 1.0))
    return mixing_for_square_trace(d, m, target)


def _line_mixers(block: Sequence[np.ndarray], m: int) -> list[np.ndarray]:
    """Traceless operators H_k spreading a basis block over a simplex."""
    vertices = simplex_vectors(m)
    return [
        sum(float(v[j]) * block[j] for j in range(m - 1))
        for v in vertices
    ]


def build_gsm(
    d: int,
    sizes: Sequence[int],
    mixing: float | Sequence[float] | None = None,
    basis: OperatorBasis | None = None,
    partition: BasisPartition | None = None,
) -> GSMFamily:
    """Construct a GSM family by identity-plus-simplex mixing.

    Parameters
    ----------
    d, sizes : dimension and per-line element counts M_alpha. With the
        default partitioning, sum(M_alpha - 1) must equal d^2 - 1.
    mixing : per-line t, a single t shared by all lines, or None for the
        extremal (largest positive-feasible) value per line.
    basis : traceless operator basis; generalized Gell-Mann by default.
    partition : explicit block assignment. Overrides the consecutive
        partition and may cover only part of the basis, in which case
        the family is not informationally complete.

    Raises NotPositive when an element acquires an eigenvalue below
    -1e-10, and SizeMismatch from the partitioning.
    """
    sizes = tuple(int(m) for m in sizes)
    if basis is None:
        basis = gell_mann_basis(d)
    if partition is None:
        partition = partition_basis(basis, sizes)
    else:
        if len(partition.blocks) != len(sizes) or any(
            len(block) != m - 1 for block, m in zip(partition.blocks, sizes)
        ):
            raise SizeMismatch("partition blocks do not match the requested sizes")

    n = len(sizes)
    if mixing is None:
        t_list = None
    elif np.isscalar(mixing):
        t_list = [float(mixing)] * n
    else:
        t_list = [float(t) for t in mixing]
        if len(t_list) != n:
            raise SizeMismatch(f"expected {n} mixing parameters, got {len(t_list)}")

    identity = np.eye(d, dtype=complex)
    lines: list[tuple[np.ndarray, ...]] = []
    used_t: list[float] = []
    for a, m in enumerate(sizes):
        mixers = _line_mixers(partition.blocks[a], m)
        t = max_mixing_parameter(mixers, m) if t_list is None else t_list[a]
        if t <= 0.0:
            raise ValueError(f"mixing parameter must be positive, got {t} on line {a}")
        line = tuple(identity / m + t * h for h in mixers)
        smallest = min(float(np.linalg.eigvalsh(e)[0]) for e in line)
        if smallest < -POSITIVITY_TOL:
            raise NotPositive(
                f"line {a} has eigenvalue {smallest:.3e}; mixing {t} exceeds the positive range"
            )
        lines.append(line)
        used_t.append(float(t))

    trace = tuple(d / m for m in sizes)
    square = tuple(d / m**2 + t**2 * (m - 1) / m for m, t in zip(sizes, used_t))
    pair = tuple(d / m**2 - t**2 / m for m, t in zip(sizes, used_t))
    return GSMFamily(
        d=d,
        sizes=sizes,
        t=tuple(used_t),
        elements=tuple(lines),
        trace=trace,
        square_trace=square,
        pair_trace=pair,
    )


def verify_gsm(family: GSMFamily, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Check the four GSM trace relations plus POVM structure.

    Deviations reported: element traces against d/M, line-constancy of
    Tr(E^2) and of intra-line overlaps, cross-line overlaps against
    d/(M_a M_b), per-line resolution of the identity, and positivity.
    Failures are report content, never exceptions.
    """
    d = family.d
    sizes = family.sizes
    identity = np.eye(d, dtype=complex)

    trace_dev = 0.0
    square_dev = 0.0
    pair_dev = 0.0
    resolution_dev = 0.0
    smallest_eig = np.inf
    fitted_square: list[float] = []
    fitted_pair: list[float] = []
    for line, m in zip(family.elements, sizes):
        traces = [np.trace(e).real for e in line]
        trace_dev = max(trace_dev, max(abs(v - d / m) for v in traces))
        squares = [hs_inner(e, e) for e in line]
        x_fit = float(np.mean(squares))
        fitted_square.append(x_fit)
        square_dev = max(square_dev, max(abs(v - x_fit) for v in squares))
        overlaps = [
            hs_inner(line[k], line[l])
            for k in range(m)
            for l in range(k + 1, m)
        ]
        y_fit = float(np.mean(overlaps)) if overlaps else 0.0
        fitted_pair.append(y_fit)
        if overlaps:
            pair_dev = max(pair_dev, max(abs(v - y_fit) for v in overlaps))
        total = sum(line)
        resolution_dev = max(resolution_dev, float(np.max(np.abs(total - identity))))
        smallest_eig = min(
            smallest_eig, min(float(np.linalg.eigvalsh(e)[0]) for e in line)
        )

    n = family.n_lines
    cross_dev = 0.0
    cross_fit = [[0.0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            required = family.cross_trace(a, b)
            vals = [
                hs_inner(ea, eb)
                for ea in family.elements[a]
                for eb in family.elements[b]
            ]
            cross_fit[a][b] = cross_fit[b][a] = float(np.mean(vals))
            cross_dev = max(cross_dev, max(abs(v - required) for v in vals))

    deviations = {
        "trace": trace_dev,
        "square_trace": square_dev,
        "pair_trace": pair_dev,
        "cross_trace": cross_dev,
        "resolution": resolution_dev,
        "positivity": max(0.0, -float(smallest_eig)),
    }
    return SymmetryReport(
        passed=all(v <= tol for v in deviations.values()),
        deviations=deviations,
        trace=tuple(d / m for m in sizes),
        square_trace=tuple(fitted_square),
        pair_trace=tuple(fitted_pair),
        cross_trace=tuple(tuple(row) for row in cross_fit),
        positivity_margin=float(smallest_eig),
    )


def gsm_dual_frame(family: GSMFamily, tol: float = DEFAULT_TOL) -> tuple[tuple[np.ndarray, ...], ...]:
    """Dual frame of an informationally complete GSM family.

    Each dual element is (E - (I/d)(w - s/N)) / s with s the per-line
    gap square_trace - pair_trace; expanding any Hermitian X in the
    measurement outcomes against these duals reproduces X. Raises
    DegenerateFrame when some line has s below tolerance, SizeMismatch
    when the family cannot span the operator space.
    """
    d = family.d
    n = family.n_lines
    if sum(m - 1 for m in family.sizes) != d * d - 1:
        raise SizeMismatch("dual frame requires an informationally complete family")
    identity = np.eye(d, dtype=complex)
    duals = []
    for a in range(n):
        gap = family.square_trace[a] - family.pair_trace[a]
        if gap <= tol:
            raise DegenerateFrame(f"line {a} has square/pair overlap gap {gap:.3e}")
        shift = (family.trace[a] - gap / n) / d
        duals.append(tuple((e - shift * identity) / gap for e in family.elements[a]))
    return tuple(duals)
