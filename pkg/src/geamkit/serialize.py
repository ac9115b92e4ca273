"""JSON-compatible encodings shared by files, the service, and the CLI.

Matrices are encoded as {"dim": d, "entries": [[[re, im], ...], ...]}
row-major; families, probability tables, and certificates build on it.
Floats pass through json untouched (shortest round-trip representation,
up to 17 significant digits), so a dump/load cycle is exact.
"""

from __future__ import annotations

import numpy as np

from .designs import DesignCertificate
from .errors import ParseError
from .geam import GEAM
from .gsm import GSMFamily
from .operators import density_operator, hermitian_operator
from .tomography import ProbabilityTable


def matrix_to_dict(mat: np.ndarray) -> dict:
    mat = np.asarray(mat, dtype=complex)
    return {
        "dim": mat.shape[0],
        "entries": [
            [[float(v.real), float(v.imag)] for v in row] for row in mat
        ],
    }


def matrix_from_dict(doc: dict) -> np.ndarray:
    """Decode a Hermitian matrix document; malformed input raises ParseError."""
    try:
        dim = int(doc["dim"])
        entries = doc["entries"]
        mat = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in entries],
            dtype=complex,
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed matrix document: {exc}") from exc
    if mat.shape != (dim, dim):
        raise ParseError(
            f"matrix entries have shape {mat.shape}, declared dim is {dim}"
        )
    try:
        return hermitian_operator(mat)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def density_from_dict(doc: dict) -> np.ndarray:
    mat = matrix_from_dict(doc)
    try:
        return density_operator(mat, tol=1e-9)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def gsm_to_dict(family: GSMFamily) -> dict:
    n = family.n_lines
    return {
        "d": family.d,
        "sizes": list(family.sizes),
        "t": [float(v) for v in family.t],
        "elements": [
            [matrix_to_dict(e) for e in line] for line in family.elements
        ],
        "params": {
            "trace": [float(v) for v in family.trace],
            "square_trace": [float(v) for v in family.square_trace],
            "pair_trace": [float(v) for v in family.pair_trace],
            "cross_trace": [
                [family.cross_trace(a, b) for b in range(n)] for a in range(n)
            ],
        },
    }


def gsm_from_dict(doc: dict) -> GSMFamily:
    try:
        d = int(doc["d"])
        sizes = [int(m) for m in doc["sizes"]]
        t = [float(v) for v in doc["t"]]
        elements = [
            [matrix_from_dict(e) for e in line] for line in doc["elements"]
        ]
        params = doc["params"]
        trace = [float(v) for v in params["trace"]]
        square = [float(v) for v in params["square_trace"]]
        pair = [float(v) for v in params["pair_trace"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed family document: {exc}") from exc
    _check_grid(d, sizes, elements)
    if not len(sizes) == len(t) == len(trace) == len(square) == len(pair):
        raise ParseError("per-line parameter lists have inconsistent lengths")
    return GSMFamily(
        d=d,
        sizes=tuple(sizes),
        t=tuple(t),
        elements=tuple(tuple(line) for line in elements),
        trace=tuple(trace),
        square_trace=tuple(square),
        pair_trace=tuple(pair),
    )


def geam_to_dict(geam: GEAM) -> dict:
    return {
        "d": geam.d,
        "sizes": list(geam.sizes),
        "gammas": [float(g) for g in geam.gammas],
        "elements": [
            [matrix_to_dict(e) for e in line] for line in geam.elements
        ],
        "params": geam_params_dict(geam),
    }


def geam_params_dict(geam: GEAM) -> dict:
    return {
        "trace": [float(v) for v in geam.trace],
        "square_ratio": [float(v) for v in geam.square_ratio],
        "pair_ratio": [float(v) for v in geam.pair_ratio],
        "cross_ratio": float(geam.cross_ratio),
    }


def geam_from_dict(doc: dict) -> GEAM:
    try:
        d = int(doc["d"])
        sizes = [int(m) for m in doc["sizes"]]
        gammas = [float(g) for g in doc["gammas"]]
        elements = [
            [matrix_from_dict(e) for e in line] for line in doc["elements"]
        ]
        params = doc["params"]
        trace = [float(v) for v in params["trace"]]
        square_ratio = [float(v) for v in params["square_ratio"]]
        pair_ratio = [float(v) for v in params["pair_ratio"]]
        cross_ratio = float(params["cross_ratio"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed family document: {exc}") from exc
    _check_grid(d, sizes, elements)
    if not len(sizes) == len(gammas) == len(trace) == len(square_ratio) == len(pair_ratio):
        raise ParseError("per-line parameter lists have inconsistent lengths")
    return GEAM(
        d=d,
        sizes=tuple(sizes),
        gammas=tuple(gammas),
        elements=tuple(tuple(line) for line in elements),
        trace=tuple(trace),
        square_ratio=tuple(square_ratio),
        pair_ratio=tuple(pair_ratio),
        cross_ratio=cross_ratio,
    )


def _check_grid(d: int, sizes: list[int], elements: list[list[np.ndarray]]) -> None:
    if len(elements) != len(sizes):
        raise ParseError(
            f"{len(elements)} element lines for {len(sizes)} declared sizes"
        )
    for a, (line, m) in enumerate(zip(elements, sizes)):
        if len(line) != m:
            raise ParseError(f"line {a} has {len(line)} elements, declared {m}")
        for e in line:
            if e.shape != (d, d):
                raise ParseError(
                    f"line {a} holds a {e.shape} matrix in dimension {d}"
                )


def table_to_dict(table: ProbabilityTable) -> dict:
    return {
        "sizes": list(table.sizes),
        "p": [[float(v) for v in line] for line in table.p],
    }


def table_from_dict(doc: dict) -> ProbabilityTable:
    try:
        sizes = tuple(int(m) for m in doc["sizes"])
        p = tuple(tuple(float(v) for v in line) for line in doc["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed probability table: {exc}") from exc
    if len(p) != len(sizes) or any(len(line) != m for line, m in zip(p, sizes)):
        raise ParseError("probability table layout does not match sizes")
    return ProbabilityTable(sizes=sizes, p=p)


def certificate_to_dict(cert: DesignCertificate) -> dict:
    return {
        "is_design": cert.is_design,
        "kappa_plus": cert.kappa_plus,
        "kappa_minus": cert.kappa_minus,
        "S": cert.S,
        "mu": cert.mu,
        "residual": cert.residual,
    }
