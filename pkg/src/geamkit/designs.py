"""Conical 2-design certification for generalized equiangular measurements.

A POVM is a conical 2-design when the sum of self tensor products of
its elements equals kappa_plus I (x) I + kappa_minus F with the flip
operator F and kappa_plus >= kappa_minus > 0. Two certification routes
are provided: a direct least-squares fit of the tensor sum, and closed
forms that apply when the per-line constant
S_a = trace[a]^2 (square_ratio[a] - pair_ratio[a]) does not depend on
the line. The frame-operator check gives a third, map-level view of the
same identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import NotConstantS
from .geam import GEAM, extract_parameters
from .operators import flip_operator, hs_inner


@dataclass(frozen=True)
class DesignCertificate:
    """Fit of the tensor sum against identity and flip components.

    ``residual`` is the Frobenius norm of the unfitted remainder for the
    direct check; for the closed-form route it is the spread of the
    per-line constants around S (the hypothesis residual).
    """

    is_design: bool
    kappa_plus: float
    kappa_minus: float
    S: float
    mu: float
    residual: float


@dataclass(frozen=True)
class PhiMapReport:
    """Deviation of the measurement's frame operator from its design form."""

    max_deviation: float
    kappa_plus: float
    kappa_minus: float
    passed: bool


def conical_check_direct(geam: GEAM, tol: float = DEFAULT_TOL) -> DesignCertificate:
    """Certify the design property from the tensor sum itself.

    Materializes T = sum of P (x) P and solves the 2x2 normal equations
    in span{I (x) I, F} (Gram entries d^2, d, d^2). The family is a
    design when the Frobenius residual is at most tol * ||T|| and
    kappa_plus >= kappa_minus > 0.
    """
    d = geam.d
    elements = geam.all_elements()
    t_sum = np.zeros((d * d, d * d), dtype=complex)
    for p in elements:
        t_sum += np.kron(p, p)
    flip = flip_operator(d)
    b_identity = float(np.trace(t_sum).real)
    b_flip = hs_inner(t_sum, flip)
    denom = d**3 - d
    kappa_plus = (d * b_identity - b_flip) / denom
    kappa_minus = (d * b_flip - b_identity) / denom
    remainder = t_sum - kappa_plus * np.eye(d * d) - kappa_minus * flip
    residual = float(np.linalg.norm(remainder))
    norm_t = float(np.linalg.norm(t_sum))
    is_design = (
        residual <= tol * norm_t
        and kappa_plus >= kappa_minus - tol
        and kappa_minus > 0.0
    )
    return DesignCertificate(
        is_design=bool(is_design),
        kappa_plus=float(kappa_plus),
        kappa_minus=float(kappa_minus),
        S=float(kappa_minus),
        mu=float(kappa_plus + kappa_minus / d),
        residual=residual,
    )


def kappas_closed_form(geam: GEAM, tol: float = DEFAULT_TOL) -> DesignCertificate:
    """Certificate from the closed forms, valid for constant per-line S.

    Fits the coefficients from traces, requires
    S_a = trace[a]^2 (square_ratio[a] - pair_ratio[a]) to be constant
    within tol (raising NotConstantS otherwise), and returns
    kappa_minus = S, kappa_plus = mu - S/d with
    mu = (1/d) sum_a trace[a] gamma_a. The admissible window for S and
    the ordering kappa_plus >= kappa_minus are verified.
    """
    fit = extract_parameters(geam, tol)
    s_values = [
        a * a * (b - c)
        for a, b, c in zip(fit.trace, fit.square_ratio, fit.pair_ratio)
    ]
    s_mean = float(np.mean(s_values))
    spread = max(abs(s - s_mean) for s in s_values)
    if spread > tol:
        raise NotConstantS(
            f"per-line constants {s_values} are not constant (spread {spread:.3e})"
        )
    d = geam.d
    gammas_fit = [a * m / d for a, m in zip(fit.trace, geam.sizes)]
    mu = sum(a * g for a, g in zip(fit.trace, gammas_fit)) / d
    kappa_plus = mu - s_mean / d
    kappa_minus = s_mean
    s_bound = min(
        min(1.0, (d - 1.0) / (m - 1.0)) * d * g * g / m
        for g, m in zip(gammas_fit, geam.sizes)
    )
    is_design = (
        0.0 < s_mean <= s_bound + tol and kappa_plus >= kappa_minus - tol
    )
    return DesignCertificate(
        is_design=bool(is_design),
        kappa_plus=float(kappa_plus),
        kappa_minus=float(kappa_minus),
        S=s_mean,
        mu=float(mu),
        residual=float(spread),
    )


def frame_operator_check(geam: GEAM, tol: float = DEFAULT_TOL) -> PhiMapReport:
    """Check the frame operator against its design decomposition.

    Applies Phi[X] = sum P Tr(X P) to every element of an orthonormal
    operator basis and compares with
    kappa_minus X + kappa_plus Tr(X) I, using the closed-form kappas
    (so NotConstantS propagates). Reports the largest entrywise
    deviation.
    """
    from .bases import gell_mann_basis

    cert = kappas_closed_form(geam, tol)
    d = geam.d
    basis = gell_mann_basis(d)
    identity = np.eye(d, dtype=complex)
    elements = geam.all_elements()
    worst = 0.0
    for x in (*basis.traceless, basis.identity):
        phi_x = sum(p * hs_inner(x, p) for p in elements)
        expected = cert.kappa_minus * x + cert.kappa_plus * np.trace(x).real * identity
        worst = max(worst, float(np.max(np.abs(phi_x - expected))))
    return PhiMapReport(
        max_deviation=worst,
        kappa_plus=cert.kappa_plus,
        kappa_minus=cert.kappa_minus,
        passed=worst <= tol,
    )
